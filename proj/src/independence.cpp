#include "nilgen/model_theory.hpp"

#include "elements.hpp"

#include <set>
#include <string>

namespace nilgen {

using detail::check_elements;
using detail::insert_all;
using detail::v_span;

bool indep0(const AltSystem& host, const Elements& a, const Elements& b, const Elements& c) {
    check_elements(host, a);
    check_elements(host, b);
    check_elements(host, c);
    // <A∪B> and <C∪B> both contain <B>, so equality of the intersection with
    // <B> is a dimension count.
    Subspace ab = v_span(host, b);
    const std::size_t db = ab.dim();
    insert_all(ab, a);
    Subspace cb = v_span(host, b);
    insert_all(cb, c);
    Subspace all = ab;
    insert_all(all, c);
    return ab.dim() + cb.dim() - all.dim() == db;
}

bool indep0(const IndepQuery& q) {
    if (q.host == nullptr) throw Error(Errc::DimensionMismatch, "query without a host system");
    return indep0(*q.host, q.a, q.b, q.c);
}

Elements local_base(const AltSystem& d, const Elements& abar, const Elements& a) {
    check_elements(d, abar);
    check_elements(d, a);
    const Subspace sa = v_span(d, a);
    const Subspace sbar = v_span(d, abar);
    const Subspace target(d.field(), d.dim_v(), subspace_intersect(d.field(), sbar.basis(), sa.basis()));

    std::vector<bool> keep(a.size(), true);
    for (std::size_t i = 0; i < a.size(); ++i) {
        keep[i] = false;
        Subspace s(d.field(), d.dim_v());
        for (std::size_t j = 0; j < a.size(); ++j)
            if (keep[j]) s.insert(a[j].v);
        if (!s.contains_all(target)) keep[i] = true;
    }
    Elements out;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (keep[i]) out.push_back(a[i]);
    return out;
}

namespace {

std::vector<std::vector<FVector>> all_subspaces(const Field& f, std::size_t dim) {
    std::set<std::vector<FVector>> seen{{}};
    std::vector<std::vector<FVector>> frontier{{}};
    // canonical representatives of the lines of F_p^dim
    std::set<FVector> lines;
    FVector v(dim, 0);
    while (next_vector(f, v)) {
        FVector line = v;
        normalize_leading(f, line);
        lines.insert(std::move(line));
    }
    while (!frontier.empty()) {
        std::vector<std::vector<FVector>> next;
        for (const auto& basis : frontier) {
            Subspace s(f, dim, basis);
            for (const FVector& line : lines) {
                if (s.contains(line)) continue;
                Subspace t = s;
                t.insert(line);
                if (seen.insert(t.basis()).second) next.push_back(t.basis());
            }
        }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

Elements as_elements(const AltSystem& d, const std::vector<FVector>& vs) {
    Elements out;
    for (const auto& v : vs) out.push_back({v, FVector(d.n(), 0)});
    return out;
}

struct SuPrep {
    std::vector<std::vector<FVector>> subspaces;
    std::vector<FVector> points;
};

SuPrep su_prepare(const AltSystem& d, std::uint64_t budget) {
    const Field& f = d.field();
    SuPrep prep;
    prep.subspaces = all_subspaces(f, d.dim_v());
    FVector v(d.dim_v(), 0);
    do prep.points.push_back(v);
    while (next_vector(f, v));
    const std::uint64_t bound = static_cast<std::uint64_t>(prep.subspaces.size()) * prep.subspaces.size();
    if (bound / prep.subspaces.size() != prep.subspaces.size() || bound * prep.points.size() / 2 > budget)
        throw Error(Errc::TooLarge, "SU-rank check needs more than " + std::to_string(budget) + " evaluations");
    return prep;
}

// Checks all pairs (B, C) with B = subspaces[bi].
void su_row(const AltSystem& d, const SuPrep& prep, std::size_t bi, SuRankReport& rep) {
    const Field& f = d.field();
    const Subspace sb(f, d.dim_v(), prep.subspaces[bi]);
    const Elements eb = as_elements(d, prep.subspaces[bi]);
    for (const auto& cbasis : prep.subspaces) {
        const Subspace sc(f, d.dim_v(), cbasis);
        if (!sc.contains_all(sb)) continue;
        ++rep.pairs;
        const Elements ec = as_elements(d, cbasis);
        for (const FVector& a : prep.points) {
            ++rep.checks;
            const bool forks = !indep0(d, {{a, FVector(d.n(), 0)}}, eb, ec);
            const bool algebraic = sc.contains(a) && !sb.contains(a);
            if (forks != algebraic) ++rep.discrepancies;
        }
    }
}

} // namespace

SuRankReport su_rank_check_serial(const AltSystem& d, std::uint64_t budget) {
    const SuPrep prep = su_prepare(d, budget);
    SuRankReport rep;
    rep.subspaces = prep.subspaces.size();
    for (std::size_t bi = 0; bi < prep.subspaces.size(); ++bi) su_row(d, prep, bi, rep);
    return rep;
}

SuRankReport su_rank_check(const AltSystem& d, std::uint64_t budget) {
    const SuPrep prep = su_prepare(d, budget);
    std::vector<SuRankReport> rows(prep.subspaces.size());
    const auto count = static_cast<std::int64_t>(rows.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t bi = 0; bi < count; ++bi) su_row(d, prep, static_cast<std::size_t>(bi), rows[static_cast<std::size_t>(bi)]);
    SuRankReport rep;
    rep.subspaces = prep.subspaces.size();
    for (const auto& r : rows) {
        rep.pairs += r.pairs;
        rep.checks += r.checks;
        rep.discrepancies += r.discrepancies;
    }
    return rep;
}

} // namespace nilgen
