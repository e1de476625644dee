#include "nilgen/model_theory.hpp"

#include "elements.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nilgen {

CentralizerData centralizer_data(const NilGroup& g, const GroupElement& a) {
    g.check_shape(a);
    const FMatrix c = g.system().contract(a.v);
    const RowEchelon e = rref(c);
    CentralizerData out;
    out.a = a;
    for (std::size_t j : e.pivots) {
        out.x_a.push_back(c.column(j));
        out.e_a.push_back(g.generator(j));
        out.index *= g.field().p();
    }
    out.centralizer = e.kernel;
    return out;
}

IpWitness ip_witness(std::uint32_t p, std::size_t m, std::uint64_t subset_mask) {
    const Field f(p);
    if (m == 0) throw Error(Errc::PreconditionFailed, "m must be at least 1");
    if (m < 64 && subset_mask >> m != 0) throw Error(Errc::DimensionMismatch, "subset mask names an index >= m");
    std::vector<GramEntry> entries;
    for (std::size_t i = 0; i < m; ++i) entries.push_back({2 * i, 2 * i + 1, {f.neg(1)}}); // beta(b_i, a_i) = c
    IpWitness out{NilGroup(make_system(p, 1, 2 * m, entries)), {}, {}, {}, {}, true};
    const NilGroup& g = out.group;
    out.x = g.identity();
    for (std::size_t i = 0; i < m; ++i) {
        out.a.push_back(g.generator(2 * i));
        out.b.push_back(g.generator(2 * i + 1));
        if ((subset_mask >> i & 1) == 0) out.x = g.mul(out.x, out.a.back());
    }
    for (std::size_t j = 0; j < m; ++j) {
        const bool commutes = g.comm(out.b[j], out.x) == g.identity();
        out.commutes.push_back(commutes);
        out.pattern_ok = out.pattern_ok && commutes == ((subset_mask >> j & 1) == 1);
    }
    return out;
}

AltSystem standard_central_product(const Field& f, std::size_t n, std::size_t k, const FVector& c) {
    if (c.size() != n) throw Error(Errc::DimensionMismatch, "commutator value has the wrong length");
    AltSystem out(f, n, 2 * k);
    for (std::size_t i = 0; i < k; ++i) out.set_entry(2 * i, 2 * i + 1, c);
    return out;
}

namespace {

constexpr std::size_t kSearchCap = 20000;

struct Pair {
    FVector d, e, c;
};

FMatrix columns_of(const Field& f, const std::vector<FVector>& basis, std::size_t dim) {
    return FMatrix::from_columns(f, basis, dim);
}

// Some pair in span(w) whose commutator is exactly `target`.
std::optional<Pair> targeted_pair(const AltSystem& s, const std::vector<FVector>& w, const FVector& target) {
    const Field& f = s.field();
    const FMatrix wm = columns_of(f, w, s.dim_v());
    FVector y(w.size(), 0);
    std::size_t tried = 0;
    while (next_vector(f, y) && tried++ < kSearchCap) {
        const FVector d = wm.apply(y);
        if (auto z = solve_linear(s.contract(d) * wm, target)) return Pair{d, wm.apply(*z), target};
    }
    return std::nullopt;
}

// First pair of basis vectors of span(w) with a nonzero commutator, with e
// rescaled so that the commutator has leading coordinate 1.
std::optional<Pair> first_pair(const AltSystem& s, const std::vector<FVector>& w) {
    const Field& f = s.field();
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            FVector c = s.eval(w[i], w[j]);
            const Residue k = normalize_leading(f, c);
            if (k != 0) return Pair{w[i], scale(f, w[j], k), c};
        }
    return std::nullopt;
}

// Basis of {x in span(w) : beta(d, x) = beta(e, x) = 0}.
std::vector<FVector> shrink(const AltSystem& s, const std::vector<FVector>& w, const Pair& pr) {
    const Field& f = s.field();
    if (w.empty()) return {};
    const FMatrix wm = columns_of(f, w, s.dim_v());
    const FMatrix cd = s.contract(pr.d) * wm;
    const FMatrix ce = s.contract(pr.e) * wm;
    std::vector<FVector> rows;
    for (std::size_t r = 0; r < cd.rows(); ++r) rows.push_back(cd.row(r));
    for (std::size_t r = 0; r < ce.rows(); ++r) rows.push_back(ce.row(r));
    const RowEchelon e = rref(FMatrix::from_rows(f, rows, w.size()));
    std::vector<FVector> out;
    for (const auto& y : e.kernel) out.push_back(wm.apply(y));
    return out;
}

} // namespace

D1Chain extract_d1_chain(const NilGroup& g, std::size_t k) {
    const AltSystem& s = g.system();
    const Field& f = s.field();
    if (k == 0) throw Error(Errc::PreconditionFailed, "chain length must be at least 1");
    const SubgroupReport rep = structural_subgroups(g, 0);
    if (rep.derived_pspan.empty()) throw Error(Errc::NotApplicable, "beta vanishes identically");
    const std::size_t nondeg = s.dim_v() - rep.center_vspan.size();
    if (nondeg < 2 * k)
        throw Error(Errc::TooSmall, "dim V/radical = " + std::to_string(nondeg) + " < 2k = " + std::to_string(2 * k));

    std::vector<FVector> w;
    for (std::size_t i = 0; i < s.dim_v(); ++i) w.push_back(unit_vector(s.dim_v(), i));
    std::vector<Pair> pairs;
    std::vector<std::pair<FVector, std::size_t>> directions; // first-seen order
    std::vector<CentralizerData> steps;
    while (true) {
        std::optional<Pair> pr;
        if (!directions.empty()) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < directions.size(); ++i)
                if (directions[i].second > directions[best].second) best = i;
            pr = targeted_pair(s, w, directions[best].first);
        }
        if (!pr) pr = first_pair(s, w);
        if (!pr) break;
        auto it = std::find_if(directions.begin(), directions.end(), [&](const auto& x) { return x.first == pr->c; });
        if (it == directions.end())
            directions.emplace_back(pr->c, 1);
        else
            ++it->second;
        steps.push_back(centralizer_data(g, g.element(pr->d, FVector(s.n(), 0))));
        w = shrink(s, w, *pr);
        pairs.push_back(std::move(*pr));
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < directions.size(); ++i)
        if (directions[i].second > directions[best].second) best = i;
    const FVector c = directions[best].first;
    Elements d, e;
    std::vector<FVector> frame;
    for (const Pair& pr : pairs) {
        if (pr.c != c || d.size() == k) continue;
        d.push_back(g.element(pr.d, FVector(s.n(), 0)));
        e.push_back(g.element(pr.e, FVector(s.n(), 0)));
        frame.push_back(pr.d);
        frame.push_back(pr.e);
    }
    if (d.size() < k)
        throw Error(Errc::TooSmall, "only " + std::to_string(d.size()) + " pairs share a commutator direction");

    D1Chain out{c, std::move(d), std::move(e), pairs.size(), std::move(steps),
                Embedding{standard_central_product(f, s.n(), k, c), s, FMatrix::from_columns(f, frame, s.dim_v())}};
    if (!check_embedding(out.comparison)) throw std::logic_error("extracted chain does not embed the central product");
    return out;
}

} // namespace nilgen
