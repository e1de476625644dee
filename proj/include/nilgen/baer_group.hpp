#pragma once

// Class-2 exponent-p groups realized from alternating systems through the
// 1/2-twisted product (v1, w1)(v2, w2) = (v1 + v2, w1 + w2 + beta(v1, v2)/2).

#include "nilgen/alt_system.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace nilgen {

struct GroupElement {
    FVector v; // image in V = G/P(G)
    FVector w; // P(G)-part in the basis c_1..c_n

    bool operator==(const GroupElement&) const = default;
};

class NilGroup {
public:
    explicit NilGroup(AltSystem sys);

    const AltSystem& system() const noexcept { return sys_; }
    const Field& field() const noexcept { return sys_.field(); }
    Residue half() const noexcept { return sys_.field().half(); }
    std::size_t dim_v() const noexcept { return sys_.dim_v(); }
    std::size_t n() const noexcept { return sys_.n(); }

    GroupElement identity() const;
    GroupElement constant(std::size_t i) const; // c_{i+1} = (0, e_i)
    GroupElement generator(std::size_t i) const; // (e_i, 0)
    GroupElement element(FVector v, FVector w) const; // validated
    GroupElement random_element(std::mt19937_64& rng) const;

    GroupElement mul(const GroupElement& x, const GroupElement& y) const;
    GroupElement inverse(const GroupElement& x) const;
    GroupElement comm(const GroupElement& x, const GroupElement& y) const; // x^-1 y^-1 x y
    GroupElement pow(const GroupElement& x, std::int64_t k) const;

    void check_shape(const GroupElement& x) const;

private:
    AltSystem sys_;
};

NilGroup group_from_system(const AltSystem& sys);
AltSystem system_from_group(const NilGroup& g);

GroupElement g_mul(const NilGroup& g, const GroupElement& x, const GroupElement& y);
GroupElement g_comm(const NilGroup& g, const GroupElement& x, const GroupElement& y);
GroupElement g_pow(const NilGroup& g, const GroupElement& x, std::int64_t k);

struct SubgroupReport {
    std::vector<FVector> center_vspan;  // radical of beta
    std::vector<FVector> derived_pspan; // span of all gram entries in P
    bool sigma1 = false;       // class 2, exponent p (sampled)
    bool sigma2 = false;       // radical = 0 and G' = P
    bool in_k = false;         // G' <= P <= Z(G), c_i independent
    bool extraspecial = false; // n = 1 and sigma2
    std::size_t sigma1_samples = 0;
};

// Sigma1 is certified by law checks on `samples` seeded random triples.
SubgroupReport structural_subgroups(const NilGroup& g, std::size_t samples = 256, std::uint64_t seed = 0);

struct LawCheck {
    std::size_t triples = 0;
    std::size_t central_checks = 0;
    std::size_t failures = 0;
    bool exhaustive = false;
};

// Associativity, identity, inverses, class-2 and exponent-p laws. When
// p^dimV <= exhaustive_limit: all triples of V-lifts (w = 0) plus centrality
// of every constant, which covers all triples since P is central.
// Otherwise `samples` seeded random triples.
LawCheck check_group_laws(const NilGroup& g, std::size_t samples, std::uint64_t seed,
                          std::size_t exhaustive_limit = 81);

// (v, w) -> (vmap v, w).
class GroupHom {
public:
    GroupHom(Embedding map, const NilGroup& src, const NilGroup& dst);

    GroupElement operator()(const GroupElement& x) const;
    const Embedding& embedding() const noexcept { return map_; }
    // Number of (x, y) pairs over {1} ∪ basis elements on which f(xy) = f(x)f(y)
    // was verified at construction.
    std::size_t verified_pairs() const noexcept { return verified_pairs_; }

private:
    Embedding map_;
    std::size_t verified_pairs_ = 0;
};

// Throws BadEmbedding if gmap is not an embedding between the underlying systems.
GroupHom lift_embedding(const Embedding& gmap, const NilGroup& src, const NilGroup& dst);

} // namespace nilgen
