#include "nilgen/fraisse.hpp"

#include "nilgen/error.hpp"

#include <algorithm>
#include <string>

namespace nilgen {

namespace {

struct Invariant {
    std::size_t radical = 0;
    std::size_t derived = 0;
    bool operator==(const Invariant&) const = default;
};

Invariant invariant_of(const AltSystem& s) {
    const SubgroupReport r = structural_subgroups(NilGroup(s), 0);
    return {r.center_vspan.size(), r.derived_pspan.size()};
}

// Basis of ker(phi) in reduced echelon form, followed by one complement vector.
FMatrix hyperplane_frame(const Field& f, const FVector& phi) {
    const std::size_t d = phi.size();
    const RowEchelon e = rref(FMatrix::from_rows(f, std::span<const FVector>(&phi, 1), d));
    std::vector<FVector> cols = echelon_basis(f, e.kernel, d);
    auto comp = extend_to_complement(f, cols, d);
    cols.push_back(comp.at(0));
    return FMatrix::from_columns(f, cols, d);
}

FMatrix first_columns(const FMatrix& m, std::size_t k) {
    FMatrix out(m.field(), m.rows(), k);
    for (std::size_t c = 0; c < k; ++c) out.set_column(c, m.column(c));
    return out;
}

// Some automorphism of A carries the distinguished hyperplane of `x` onto that of `y`.
// Both are A rewritten in hyperplane frames (hyperplane = first d-1 coordinates).
bool same_orbit(const AltSystem& x, const AltSystem& y) {
    const std::size_t h = x.dim_v() - 1;
    const AltSystem hx = x.restrict_prefix(h);
    const AltSystem hy = y.restrict_prefix(h);
    bool found = false;
    for_each_embedding(hx, hy, {}, [&](const FMatrix& tau) {
        PartialMap partial;
        for (std::size_t i = 0; i < h; ++i) {
            FVector img = tau.column(i);
            img.push_back(0);
            partial.emplace_back(i, std::move(img));
        }
        found = search_embedding(x, y, partial).has_value();
        return !found;
    });
    return found;
}

} // namespace

std::map<std::size_t, std::size_t> Catalog::counts_by_dim() const {
    std::map<std::size_t, std::size_t> out;
    for (std::size_t d = 0; d <= dmax; ++d) out[d] = 0;
    for (const auto& c : classes) ++out[c.dim_v()];
    return out;
}

std::optional<std::size_t> Catalog::find_class(const AltSystem& s) const {
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (isomorphic(classes[i], s)) return i;
    return std::nullopt;
}

Catalog enumerate_catalog(std::uint32_t p, std::size_t n, std::size_t dmax, std::uint64_t budget) {
    const Field f(p);
    if (dmax > 4) throw Error(Errc::TooLarge, "catalog dimension bound " + std::to_string(dmax) + " exceeds 4");
    Catalog cat;
    cat.p = p;
    cat.n = n;
    cat.dmax = dmax;
    std::vector<Invariant> inv;

    for (std::size_t d = 0; d <= dmax; ++d) {
        const std::size_t slots = d * (d > 0 ? d - 1 : 0) / 2 * n;
        std::uint64_t tables = 1;
        for (std::size_t i = 0; i < slots; ++i) {
            tables *= p;
            if (tables > budget)
                throw Error(Errc::TooLarge, "dimV=" + std::to_string(d) + " has more than " + std::to_string(budget) + " gram tables");
        }
        const std::size_t first_of_dim = cat.classes.size();
        FVector digits(slots, 0);
        do {
            AltSystem s(f, n, d);
            std::size_t pos = 0;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = i + 1; j < d; ++j, pos += n)
                    s.set_entry(i, j, FVector(digits.begin() + static_cast<std::ptrdiff_t>(pos),
                                              digits.begin() + static_cast<std::ptrdiff_t>(pos + n)));
            const Invariant si = invariant_of(s);
            bool seen = false;
            for (std::size_t c = first_of_dim; c < cat.classes.size() && !seen; ++c)
                seen = inv[c] == si && isomorphic(cat.classes[c], s);
            if (!seen) {
                cat.classes.push_back(std::move(s));
                inv.push_back(si);
            }
        } while (next_vector(f, digits));
    }

    // one-point extensions, one per Aut(A)-orbit of hyperplanes
    for (std::size_t a = 0; a < cat.classes.size(); ++a) {
        const AltSystem& big = cat.classes[a];
        const std::size_t d = big.dim_v();
        if (d == 0) continue;
        std::vector<AltSystem> reps;
        FVector phi(d, 0);
        while (next_vector(f, phi)) {
            if (*std::find_if(phi.begin(), phi.end(), [](Residue x) { return x != 0; }) != 1) continue;
            const FMatrix frame = hyperplane_frame(f, phi);
            AltSystem framed = big.pullback(frame);
            bool seen = false;
            for (const auto& r : reps)
                if (same_orbit(r, framed)) {
                    seen = true;
                    break;
                }
            if (seen) continue;
            reps.push_back(framed);

            const AltSystem hyper = framed.restrict_prefix(d - 1);
            std::optional<std::size_t> base;
            for (std::size_t c = 0; c < cat.classes.size() && !base; ++c)
                if (cat.classes[c].dim_v() == d - 1 && isomorphic(cat.classes[c], hyper)) base = c;
            const auto iota = search_embedding(cat.classes[base.value()], hyper);
            const FMatrix cols = first_columns(frame, d - 1) * iota.value().vmap;
            Embedding emb{cat.classes[*base], big, cols};

            FMatrix adapted_frame(f, d, d);
            for (std::size_t c = 0; c + 1 < d; ++c) adapted_frame.set_column(c, cols.column(c));
            adapted_frame.set_column(d - 1, frame.column(d - 1));
            cat.pairs.push_back(CatalogPair{*base, a, std::move(emb), big.pullback(adapted_frame)});
        }
    }
    return cat;
}

} // namespace nilgen
