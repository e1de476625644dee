// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "nilgen/alt_io.hpp"
#include "nilgen/error.hpp"
#include "nilgen/fraisse.hpp"
#include "nilgen/model_theory.hpp"

#include "support.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

namespace {

using namespace nilgen;
using testing::random_matrix;
using testing::random_system;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail << "first failure: " << what << "; ";
        pass = pass && ok;
    }
};

// A random injective dst_dim x src_dim matrix.
FMatrix random_injection(std::mt19937_64& rng, const Field& f, std::size_t dst_dim, std::size_t src_dim) {
    for (;;) {
        const FMatrix m = random_matrix(rng, f, dst_dim, src_dim);
        if (rank(m) == src_dim) return m;
    }
}

AltSystem generic_stage() { return build_generic(3, 1, 2, 2, 0).sys; }

void c1_functor(Outcome& o) {
    std::mt19937_64 rng(101);
    std::size_t exhaustive = 0;
    for (int i = 0; i < 200; ++i) {
        const std::uint32_t p = i % 2 ? 5 : 3;
        const std::size_t n = 1 + (i / 2) % 2;
        const std::size_t dim = (i / 4) % 6;
        const AltSystem s = random_system(rng, p, n, dim);
        const NilGroup g = group_from_system(s);
        o.require(system_from_group(g) == s, "round trip #" + std::to_string(i));
        const LawCheck laws = check_group_laws(g, 1000, i, 25);
        o.require(laws.exhaustive == (dim <= 2), "exhaustive mode #" + std::to_string(i));
        o.require(laws.failures == 0, "laws #" + std::to_string(i));
        exhaustive += laws.exhaustive;
    }
    o.detail << "systems=200 exhaustive=" << exhaustive;
}

void c2_amalgamation(Outcome& o) {
    std::mt19937_64 rng(202);
    for (int i = 0; i < 200; ++i) {
        const std::uint32_t p = i % 2 ? 5 : 3;
        const std::size_t n = 1 + i % 2;
        const Field f(p);
        const std::size_t db = i % 3, da = db + 1 + i % 2, dc = db + 1 + (i / 2) % 3;
        const AltSystem a = random_system(rng, p, n, da);
        const AltSystem c = random_system(rng, p, n, dc);
        // B is pulled back from A; C is modified so that B embeds there too
        const FMatrix fa = random_injection(rng, f, da, db);
        const AltSystem b = a.pullback(fa);
        // C' has B on its leading coordinates; C = C' pulled back along a random Q,
        // so B embeds into C through the columns Q^-1 e_k
        AltSystem adapted = c;
        for (std::size_t x = 0; x < db; ++x)
            for (std::size_t y = x + 1; y < db; ++y) adapted.set_entry(x, y, b.beta_basis(x, y));
        const FMatrix q = random_injection(rng, f, dc, dc);
        const AltSystem cc = adapted.pullback(q);
        std::vector<FVector> cols;
        for (std::size_t k = 0; k < db; ++k) cols.push_back(*solve_linear(q, unit_vector(dc, k)));
        const FMatrix fc = FMatrix::from_columns(f, cols, dc);
        const Embedding ea{b, a, fa}, ec{b, cc, fc};
        Filler filler;
        if (i % 2) {
            const std::uint64_t salt = rng();
            filler = [f, n, salt](std::size_t x, std::size_t y) {
                FVector w(n);
                for (std::size_t k = 0; k < n; ++k) w[k] = static_cast<Residue>((salt >> ((x * 7 + y * 3 + k) % 50)) % f.p());
                return w;
            };
        }
        const Amalgam am = amalgamate(a, cc, b, ea, ec, filler);
        const std::string tag = " #" + std::to_string(i);
        o.require(check_embedding(ea) && check_embedding(ec), "inputs" + tag);
        o.require(am.g_a.vmap * fa == am.g_c.vmap * fc, "square" + tag);
        o.require(check_embedding(am.g_a) && check_embedding(am.g_c), "restrictions" + tag);
        o.require(am.d.dim_v() == da + dc - db, "dimension" + tag);
    }
    o.detail << "triples=200";
}

void c3_generic(Outcome& o) {
    const GenericApprox g = build_generic(3, 1, 2, 2, 0);
    const Catalog cat = enumerate_catalog(3, 1, 2);
    const ExtensionReport ext = check_extension_property(g.sys, 2, cat);
    o.require(ext.passed(), "extension property");
    std::size_t last_radical = 0;
    std::string radicals;
    for (std::size_t k = 0; k < g.stage_count(); ++k) {
        const AltSystem st = g.stage(k);
        const SubgroupReport s = structural_subgroups(NilGroup(st), 64, k);
        if (st.dim_v() > 0 && s.center_vspan.empty()) o.require(s.extraspecial, "extraspecial at radical 0");
        last_radical = s.center_vspan.size();
        radicals += (k ? "," : "") + std::to_string(last_radical);
    }
    const SubgroupReport fin = structural_subgroups(NilGroup(g.sys), 256, 0);
    o.require(fin.derived_pspan.size() == 1, "derived = P");
    o.require(last_radical == 0 && fin.extraspecial && fin.sigma1 && fin.sigma2, "final stage");
    o.detail << "dimV=" << g.sys.dim_v() << " stages=" << g.stage_count() << " embeddings=" << ext.embeddings_checked
             << " radicals=" << radicals << " extraspecial=" << fin.extraspecial;
}

// Exhaustive Gram enumeration with pairwise isomorphism tests.
std::map<std::size_t, std::size_t> brute_counts(std::uint32_t p, std::size_t n, std::size_t dmax) {
    const Field f(p);
    std::map<std::size_t, std::size_t> out;
    for (std::size_t d = 0; d <= dmax; ++d) {
        std::vector<AltSystem> reps;
        const std::size_t slots = d * (d - (d ? 1 : 0)) / 2 * n;
        FVector code(slots, 0);
        do {
            AltSystem s(f, n, d);
            std::size_t at = 0;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = i + 1; j < d; ++j, at += n)
                    s.set_entry(i, j, FVector(code.begin() + at, code.begin() + at + n));
            bool fresh = true;
            for (const auto& r : reps) fresh = fresh && !isomorphic(r, s);
            if (fresh) reps.push_back(s);
        } while (next_vector(f, code));
        out[d] = reps.size();
    }
    return out;
}

void c4_catalog(Outcome& o) {
    const std::map<std::size_t, std::size_t> want1{{0, 1}, {1, 1}, {2, 2}}, want2{{0, 1}, {1, 1}, {2, 5}};
    const auto b1 = brute_counts(3, 1, 2), b2 = brute_counts(3, 2, 2);
    o.require(b1 == want1 && b2 == want2, "brute-force oracle");
    o.require(enumerate_catalog(3, 1, 2).counts_by_dim() == b1, "catalog n=1");
    o.require(enumerate_catalog(3, 2, 2).counts_by_dim() == b2, "catalog n=2");
    o.detail << "n=1 {" << b1.at(0) << "," << b1.at(1) << "," << b1.at(2) << "} n=2 {" << b2.at(0) << "," << b2.at(1)
             << "," << b2.at(2) << "}";
}

void c5_qe(Outcome& o) {
    const AltSystem d = generic_stage();
    o.require(d.dim_v() <= 6, "stage size");
    const NilGroup g(d);
    std::vector<GroupElement> all;
    GroupElement x = g.identity();
    do {
        do all.push_back(x);
        while (next_vector(g.field(), x.w));
    } while (next_vector(g.field(), x.v));

    std::vector<std::vector<GroupElement>> tuples;
    for (const auto& a : all) tuples.push_back({a});
    for (const auto& a : all)
        for (const auto& b : all) tuples.push_back({a, b});

    // every tuple against the first tuple of every code class of its length
    std::map<std::size_t, std::vector<std::pair<TypeCode, std::size_t>>> reps;
    std::vector<TypeCode> codes;
    codes.reserve(tuples.size());
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        codes.push_back(qf_type_code(d, tuples[i]));
        auto& list = reps[tuples[i].size()];
        bool seen = false;
        for (const auto& r : list) seen = seen || r.first == codes.back();
        if (!seen) list.emplace_back(codes.back(), i);
    }
    std::uint64_t comparisons = 0, discrepancies = 0;
    for (std::size_t i = 0; i < tuples.size(); ++i)
        for (const auto& [code, j] : reps[tuples[i].size()]) {
            ++comparisons;
            const bool iso = partial_iso_from_types(d, tuples[j], tuples[i]).has_value();
            if (iso != (code == codes[i])) ++discrepancies;
        }
    o.require(discrepancies == 0, "partial iso vs type code");
    o.detail << "tuples=" << tuples.size() << " classes_len1=" << reps[1].size() << " classes_len2=" << reps[2].size()
             << " comparisons=" << comparisons << " discrepancies=" << discrepancies;
}

void c6_kp(Outcome& o) {
    const AltSystem d = generic_stage();
    for (std::uint64_t seed : {1, 2, 3}) {
        const KpReport r = kp_random_suite(d, 1000, seed);
        const std::string tag = " seed " + std::to_string(seed);
        for (KpLaw law : {KpLaw::Symmetry, KpLaw::Monotonicity, KpLaw::Transitivity, KpLaw::FiniteCharacter})
            o.require(r.failures[static_cast<std::size_t>(law)] == 0, std::string(kp_law_name(law)) + tag);
        o.require(r.total_failures() == 0, "all laws" + tag);
        o.require(r.local_base_verified == r.trials && r.trials == 1000, "local base" + tag);
        o.detail << "seed" << seed << ":failures=" << r.total_failures() << ",local_base=" << r.local_base_verified
                 << " ";
    }
}

void c7_su(Outcome& o) {
    const AltSystem d = generic_stage();
    o.require(d.dim_v() == 4 && d.p() == 3, "stage shape");
    const SuRankReport r = su_rank_check(d);
    o.require(r.discrepancies == 0, "discrepancies");
    o.detail << "subspaces=" << r.subspaces << " pairs=" << r.pairs << " checks=" << r.checks
             << " discrepancies=" << r.discrepancies;
}

void c8_ip(Outcome& o) {
    std::size_t ok = 0;
    for (std::uint64_t mask = 0; mask < 32; ++mask) {
        const IpWitness w = ip_witness(3, 5, mask);
        bool match = w.pattern_ok;
        for (std::size_t j = 0; j < 5; ++j) {
            const bool commutes = w.group.comm(w.b[j], w.x) == w.group.identity();
            match = match && commutes == (((mask >> j) & 1u) != 0);
        }
        o.require(match, "subset " + std::to_string(mask));
        ok += match;
    }
    o.detail << "subsets=32 verified=" << ok;
}

void c9_tp2(Outcome& o) {
    const Tp2Report r = tp2_build_and_check(4, 4, 3, all_tp2_paths(4, 4));
    o.require(r.row_pairs == 24 && r.row_pairs_certified == 24, "row pairs");
    o.require(r.paths == 256 && r.paths_consistent == 256, "paths");
    o.detail << "rank=" << r.rank << " row_pairs_certified=" << r.row_pairs_certified
             << " paths_consistent=" << r.paths_consistent;
}

void c10_d1(Outcome& o) {
    std::mt19937_64 rng(1010);
    std::size_t done = 0, resampled = 0, min_len = 1000;
    while (done < 20) {
        const NilGroup g(random_system(rng, 3, 2, 10));
        if (!structural_subgroups(g, 8).center_vspan.empty()) {
            ++resampled;
            continue;
        }
        const std::string tag = " #" + std::to_string(done);
        try {
            const D1Chain ch = extract_d1_chain(g, 2);
            bool ok = ch.d.size() >= 2 && ch.d.size() == ch.e.size() && !is_zero(ch.c);
            for (std::size_t i = 0; ok && i < ch.d.size(); ++i) {
                ok = ok && g.comm(ch.d[i], ch.e[i]).w == ch.c;
                for (std::size_t j = 0; j < ch.d.size(); ++j)
                    if (i != j)
                        ok = ok && g.comm(ch.d[i], ch.d[j]) == g.identity() &&
                             g.comm(ch.d[i], ch.e[j]) == g.identity() && g.comm(ch.e[i], ch.e[j]) == g.identity();
            }
            o.require(ok, "commutators" + tag);
            o.require(check_embedding(ch.comparison), "comparison map" + tag);
            min_len = std::min(min_len, ch.d.size());
        } catch (const Error& e) {
            o.require(false, std::string(e.what()) + tag);
        }
        ++done;
    }
    o.detail << "groups=20 resampled=" << resampled << " min_chain=" << min_len;
}

void c11_serialization(Outcome& o) {
    std::mt19937_64 rng(1111);
    for (int i = 0; i < 100; ++i) {
        const AltSystem s = random_system(rng, i % 3 ? 3 : 5, 1 + i % 2, i % 6);
        const std::string text = serialize_system(s);
        const AltSystem back = parse_system(text);
        o.require(back == s && serialize_system(back) == text, "round trip #" + std::to_string(i));
    }
    struct Bad {
        std::string text;
        Errc code;
        std::size_t line;
    };
    const std::vector<Bad> bad{
        {"ALT v1\np=3 n=1 dimV=2\nbeta 1 1 : 1\n", Errc::NotAlternating, 3},
        {"ALT v1\np=3 n=1 dimV=3\n# note\nbeta 0 1 : 1\nbeta 2 1 : 1\n", Errc::ParseError, 5},
        {"ALT v1\np=3 n=1 dimV=2\nbeta 0 1 : 7\n", Errc::ParseError, 3},
        {"ALT v1\np=3 n=2 dimV=2\nbeta 0 1 : 1\n", Errc::ParseError, 3},
        {"ALT v1\np=3 n=1 dimV=2\nbeta 0 2 : 1\n", Errc::ParseError, 3},
        {"ALT v1\np=3 n=1\n", Errc::ParseError, 2},
        {"ALT v9\np=3 n=1 dimV=2\n", Errc::ParseError, 1},
        {"ALT v1\np=9 n=1 dimV=2\n", Errc::BadPrime, 2},
        {"ALT v1\np=3 n=1 dimV=2\n\ngarbage\n", Errc::ParseError, 4},
    };
    std::size_t matched = 0;
    for (std::size_t i = 0; i < bad.size(); ++i) {
        bool ok = false;
        try {
            parse_system(bad[i].text);
        } catch (const Error& e) {
            ok = e.code() == bad[i].code && e.line() == bad[i].line;
        }
        o.require(ok, "corrupted file #" + std::to_string(i));
        matched += ok;
    }
    o.detail << "round_trips=100 corrupted=" << bad.size() << " matched=" << matched;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"functor round trip and group laws", c1_functor},
        {"amalgamation", c2_amalgamation},
        {"generic stage and extension property", c3_generic},
        {"catalog counts", c4_catalog},
        {"quantifier-free types vs partial isomorphisms", c5_qe},
        {"independence laws", c6_kp},
        {"rank-one law", c7_su},
        {"independence property witnesses", c8_ip},
        {"TP2 array", c9_tp2},
        {"central product extraction", c10_d1},
        {"serialization", c11_serialization},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
                  << o.detail.str() << ") [" << std::fixed << std::setprecision(2) << secs << "s]" << std::endl;
        failed += !o.pass;
    }
    std::cout << (failed ? "FAIL" : "PASS") << " acceptance: " << criteria.size() - failed << "/" << criteria.size()
              << " criteria passed" << std::endl;
    return failed ? 1 : 0;
}
