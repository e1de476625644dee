// Serial reference vs OpenMP kernel timings; also checks that both agree.

#include "nilgen/fraisse.hpp"
#include "nilgen/model_theory.hpp"

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace nilgen;

template <class F>
auto timed(F&& f, double& secs) {
    const auto start = std::chrono::steady_clock::now();
    auto out = f();
    secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

bool report(const std::string& name, double serial, double parallel, bool agree) {
    std::cout << std::left << std::setw(12) << name << std::right << std::fixed << std::setprecision(3)
              << " serial=" << serial << "s parallel=" << parallel << "s speedup=" << std::setprecision(2)
              << (parallel > 0 ? serial / parallel : 0.0) << " agree=" << (agree ? "yes" : "NO") << '\n';
    return agree;
}

} // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::atoi(argv[1]) : 1;
#ifdef _OPENMP
    std::cout << "threads=" << omp_get_max_threads() << '\n';
#else
    std::cout << "threads=1 (built without OpenMP)\n";
#endif
    const AltSystem stage = build_generic(3, 1, 2, 2, 0).sys;
    GenericOptions wide;
    wide.random_filler = true;
    const AltSystem stage2 = build_generic(3, 2, 2, 2, 9, wide).sys;
    const Catalog cat = enumerate_catalog(3, 2, 2);
    const auto paths = all_tp2_paths(4, 4);
    bool ok = true;
    for (int r = 0; r < reps; ++r) {
        double s = 0, p = 0;
        const KpReport ks = timed([&] { return kp_random_suite_serial(stage, 20000, 1); }, s);
        const KpReport kp = timed([&] { return kp_random_suite(stage, 20000, 1); }, p);
        ok &= report("kp-suite", s, p, ks.checks == kp.checks && ks.failures == kp.failures);

        const ExtensionReport es = timed([&] { return check_extension_property_serial(stage2, 2, cat); }, s);
        const ExtensionReport ep = timed([&] { return check_extension_property(stage2, 2, cat); }, p);
        ok &= report("sigma3", s, p,
                     es.embeddings_checked == ep.embeddings_checked && es.failures.size() == ep.failures.size());

        const Tp2Report ts = timed([&] { return tp2_build_and_check_serial(4, 4, 3, paths); }, s);
        const Tp2Report tp = timed([&] { return tp2_build_and_check(4, 4, 3, paths); }, p);
        ok &= report("tp2", s, p, ts.paths_consistent == tp.paths_consistent &&
                                      ts.row_pairs_certified == tp.row_pairs_certified);

        const SuRankReport ss = timed([&] { return su_rank_check_serial(stage); }, s);
        const SuRankReport sp = timed([&] { return su_rank_check(stage); }, p);
        ok &= report("su-rank", s, p, ss.checks == sp.checks && ss.discrepancies == sp.discrepancies);
    }
    return ok ? 0 : 1;
}
