#include "nilgen/baer_group.hpp"

#include "nilgen/error.hpp"

#include <algorithm>

namespace nilgen {

NilGroup::NilGroup(AltSystem sys) : sys_(std::move(sys)) {}

GroupElement NilGroup::identity() const { return {FVector(dim_v(), 0), FVector(n(), 0)}; }

GroupElement NilGroup::constant(std::size_t i) const {
    if (i >= n()) throw Error(Errc::DimensionMismatch, "constant index out of range");
    return {FVector(dim_v(), 0), unit_vector(n(), i)};
}

GroupElement NilGroup::generator(std::size_t i) const {
    if (i >= dim_v()) throw Error(Errc::DimensionMismatch, "generator index out of range");
    return {unit_vector(dim_v(), i), FVector(n(), 0)};
}

GroupElement NilGroup::element(FVector v, FVector w) const {
    GroupElement x{std::move(v), std::move(w)};
    check_shape(x);
    check_reduced(field(), x.v);
    check_reduced(field(), x.w);
    return x;
}

GroupElement NilGroup::random_element(std::mt19937_64& rng) const {
    std::uniform_int_distribution<Residue> coord(0, field().p() - 1);
    GroupElement x = identity();
    for (auto& c : x.v) c = coord(rng);
    for (auto& c : x.w) c = coord(rng);
    return x;
}

void NilGroup::check_shape(const GroupElement& x) const {
    if (x.v.size() != dim_v() || x.w.size() != n())
        throw Error(Errc::DimensionMismatch, "group element shape does not match (dimV, n)");
}

GroupElement NilGroup::mul(const GroupElement& x, const GroupElement& y) const {
    check_shape(x);
    check_shape(y);
    const Field& f = field();
    GroupElement r{add(f, x.v, y.v), add(f, x.w, y.w)};
    add_scaled(f, r.w, sys_.eval(x.v, y.v), half());
    return r;
}

GroupElement NilGroup::inverse(const GroupElement& x) const {
    check_shape(x);
    return {negate(field(), x.v), negate(field(), x.w)};
}

GroupElement NilGroup::comm(const GroupElement& x, const GroupElement& y) const {
    return mul(mul(inverse(x), inverse(y)), mul(x, y));
}

GroupElement NilGroup::pow(const GroupElement& x, std::int64_t k) const {
    check_shape(x);
    // beta(v, v) = 0, so the twist never contributes
    const Residue kk = field().reduce(k);
    return {scale(field(), x.v, kk), scale(field(), x.w, kk)};
}

NilGroup group_from_system(const AltSystem& sys) { return NilGroup(sys); }

AltSystem system_from_group(const NilGroup& g) {
    // V = G/P(G) with basis the images of (e_i, 0); W = P(G); beta(e_i, e_j) = [g_i, g_j]
    AltSystem out(g.field(), g.n(), g.dim_v());
    for (std::size_t i = 0; i < g.dim_v(); ++i)
        for (std::size_t j = i + 1; j < g.dim_v(); ++j) out.set_entry(i, j, g.comm(g.generator(i), g.generator(j)).w);
    return out;
}

GroupElement g_mul(const NilGroup& g, const GroupElement& x, const GroupElement& y) { return g.mul(x, y); }
GroupElement g_comm(const NilGroup& g, const GroupElement& x, const GroupElement& y) { return g.comm(x, y); }
GroupElement g_pow(const NilGroup& g, const GroupElement& x, std::int64_t k) { return g.pow(x, k); }

namespace {

bool check_triple(const NilGroup& g, const GroupElement& x, const GroupElement& y, const GroupElement& z) {
    const GroupElement one = g.identity();
    if (g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z))) return false;
    if (g.mul(x, one) != x || g.mul(one, x) != x) return false;
    if (g.mul(x, g.inverse(x)) != one) return false;
    const GroupElement c = g.comm(x, y);
    if (g.comm(c, z) != one) return false;
    if (!is_zero(c.v) || c.w != g.system().eval(x.v, y.v)) return false;
    GroupElement acc = one;
    for (std::uint32_t i = 0; i < g.field().p(); ++i) acc = g.mul(acc, x);
    return acc == one;
}

} // namespace

LawCheck check_group_laws(const NilGroup& g, std::size_t samples, std::uint64_t seed, std::size_t exhaustive_limit) {
    LawCheck out;
    std::uint64_t lifts = 1;
    bool small = true;
    for (std::size_t i = 0; i < g.dim_v(); ++i) {
        lifts *= g.field().p();
        if (lifts > exhaustive_limit) {
            small = false;
            break;
        }
    }
    if (small) {
        // P is central and its coordinates add, so triples of V-lifts plus
        // centrality of the constants cover every triple.
        std::vector<GroupElement> all;
        GroupElement x = g.identity();
        do all.push_back(x);
        while (next_vector(g.field(), x.v));
        for (const auto& a : all)
            for (const auto& b : all)
                for (const auto& c : all) {
                    ++out.triples;
                    if (!check_triple(g, a, b, c)) ++out.failures;
                }
        for (const auto& a : all)
            for (std::size_t i = 0; i < g.n(); ++i) {
                ++out.central_checks;
                const GroupElement c = g.constant(i);
                GroupElement shifted = a;
                shifted.w = add(g.field(), a.w, c.w);
                if (g.mul(a, c) != shifted || g.mul(c, a) != shifted) ++out.failures;
            }
        out.exhaustive = true;
        return out;
    }
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < samples; ++t) {
        const GroupElement a = g.random_element(rng);
        const GroupElement b = g.random_element(rng);
        const GroupElement c = g.random_element(rng);
        ++out.triples;
        if (!check_triple(g, a, b, c)) ++out.failures;
    }
    return out;
}

SubgroupReport structural_subgroups(const NilGroup& g, std::size_t samples, std::uint64_t seed) {
    const AltSystem& sys = g.system();
    const Field& f = g.field();
    const std::size_t d = sys.dim_v();
    const std::size_t n = sys.n();
    SubgroupReport r;

    // radical: kernel of v -> (beta(v, e_j))_j
    FMatrix m(f, n * d, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i) {
            const FVector b = sys.beta_basis(i, j);
            for (std::size_t k = 0; k < n; ++k) m.at(j * n + k, i) = b[k];
        }
    r.center_vspan = echelon_basis(f, rref(m).kernel, d);

    std::vector<FVector> values;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) values.push_back(sys.beta_basis(i, j));
    r.derived_pspan = echelon_basis(f, values, n);

    const LawCheck laws = check_group_laws(g, samples, seed, 0);
    r.sigma1_samples = laws.triples;
    r.sigma1 = laws.failures == 0;

    bool constants_central = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < d; ++i)
            if (g.comm(g.constant(k), g.generator(i)) != g.identity()) constants_central = false;
    // c_1..c_n are the standard basis of P, hence independent; G' lies in P by the product rule
    r.in_k = constants_central;
    r.sigma2 = r.center_vspan.empty() && r.derived_pspan.size() == n;
    r.extraspecial = n == 1 && r.sigma2;
    return r;
}

GroupHom::GroupHom(Embedding map, const NilGroup& src, const NilGroup& dst) : map_(std::move(map)) {
    if (!(map_.src == src.system()) || !(map_.dst == dst.system()))
        throw Error(Errc::BadEmbedding, "embedding does not connect the given groups");
    if (!check_embedding(map_)) throw Error(Errc::BadEmbedding, "map is not an embedding of alternating systems");

    std::vector<GroupElement> basis{src.identity()};
    for (std::size_t i = 0; i < src.dim_v(); ++i) basis.push_back(src.generator(i));
    for (std::size_t k = 0; k < src.n(); ++k) basis.push_back(src.constant(k));
    for (const auto& x : basis) {
        for (const auto& y : basis) {
            if ((*this)(src.mul(x, y)) != dst.mul((*this)(x), (*this)(y)))
                throw Error(Errc::BadEmbedding, "lifted map is not a homomorphism");
            ++verified_pairs_;
        }
    }
    for (std::size_t k = 0; k < src.n(); ++k)
        if ((*this)(src.constant(k)) != dst.constant(k)) throw Error(Errc::BadEmbedding, "lifted map moves a constant");
}

GroupElement GroupHom::operator()(const GroupElement& x) const { return {map_.vmap.apply(x.v), x.w}; }

GroupHom lift_embedding(const Embedding& gmap, const NilGroup& src, const NilGroup& dst) {
    return GroupHom(gmap, src, dst);
}

} // namespace nilgen
