#pragma once

// Small members of K(n) up to isomorphism, finite stages of the Fraisse
// limit D(n), the extension-property checker and quantifier-free type codes.

#include "nilgen/alt_system.hpp"
#include "nilgen/baer_group.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace nilgen {

// A one-point extension B ⊂ A taken from the catalog. `adapted` is A written
// in a basis whose first dimV_B vectors are the images of B's basis, so an
// embedding h of B extends to A iff `adapted` embeds with partial map e_i -> h e_i.
struct CatalogPair {
    std::size_t base = 0;
    std::size_t ext = 0;
    Embedding embedding; // classes[base] -> classes[ext]
    AltSystem adapted;
};

struct Catalog {
    std::uint32_t p = 3;
    std::size_t n = 1;
    std::size_t dmax = 0;
    std::vector<AltSystem> classes; // sorted by dimV
    std::vector<CatalogPair> pairs;

    std::map<std::size_t, std::size_t> counts_by_dim() const;
    std::optional<std::size_t> find_class(const AltSystem& s) const;
};

// Throws TooLarge when some dimension has more than `budget` Gram tables.
// Pairs are the one-point extensions (dimV_A = dimV_B + 1) up to
// automorphisms of A; longer extensions factor through chains of these.
Catalog enumerate_catalog(std::uint32_t p, std::size_t n, std::size_t dmax, std::uint64_t budget = 100000);

struct GenericStep {
    std::size_t pair = 0;      // catalog pair amalgamated
    std::size_t round = 0;
    FMatrix base_map;          // embedding of the pair's base into the stage it extended
    std::size_t dim_after = 0; // dimV of the stage after the step
};

// Stages only grow by appending coordinates: stage k is the restriction of
// `sys` to the first history[k-1].dim_after coordinates.
struct GenericApprox {
    AltSystem sys;
    std::vector<GenericStep> history;
    std::uint64_t seed = 0;
    std::size_t t = 0;
    std::size_t rounds = 0;
    std::size_t initial_dim = 0;

    std::size_t stage_count() const noexcept { return history.size() + 1; }
    AltSystem stage(std::size_t k) const;
};

struct GenericOptions {
    std::uint64_t embed_budget = 200000; // embeddings of B kept per step; more are reservoir-sampled
    std::uint64_t enum_limit = 2000000;  // embeddings of B enumerated per step before giving up
    std::size_t dim_cap = 40;
    bool random_filler = false;
};

// Throws TooLarge when a stage would exceed options.dim_cap or a step would
// enumerate more than options.enum_limit embeddings.
GenericApprox build_generic(std::uint32_t p, std::size_t n, std::size_t t, std::size_t rounds, std::uint64_t seed,
                            const GenericOptions& options = {});

struct ExtensionFailure {
    std::size_t pair = 0;
    FMatrix base_map;
};

struct ExtensionReport {
    std::size_t pairs_checked = 0;
    std::uint64_t embeddings_checked = 0;
    std::vector<ExtensionFailure> failures; // ordered by (pair, enumeration order)

    bool passed() const noexcept { return failures.empty(); }
};

bool extends_in(const CatalogPair& pair, const AltSystem& d, const FMatrix& base_map);

// Every embedding of B into D, for every catalog pair with dimV_A <= t, must
// extend to A. Throws TooLarge if a pair has more than `budget` embeddings.
ExtensionReport check_extension_property(const AltSystem& d, std::size_t t, const Catalog& catalog,
                                         std::uint64_t budget = 20000000);
ExtensionReport check_extension_property_serial(const AltSystem& d, std::size_t t, const Catalog& catalog,
                                                std::uint64_t budget = 20000000);

struct Relation {
    FVector lambda; // reduced kernel basis vector
    FVector value;  // P-part of prod a_i^lambda_i, ascending product order

    bool operator==(const Relation&) const = default;
};

struct TypeCode {
    std::size_t k = 0;
    std::size_t n = 0;
    std::vector<Relation> relations;
    std::vector<FVector> gram; // k*k, row-major: beta(pi a_i, pi a_j)

    bool operator==(const TypeCode&) const = default;
    const FVector& gram_at(std::size_t i, std::size_t j) const { return gram[i * k + j]; }
};

TypeCode qf_type_code(const AltSystem& d, const std::vector<GroupElement>& tuple);
// P-part of prod a_i^lambda_i for any lambda in the relation kernel,
// recovered from the code alone. Throws DimensionMismatch if lambda is not a relation.
FVector relation_value(const TypeCode& code, const Field& f, const FVector& lambda);

// a_i -> b_i extended linearly, between the V-parts of the generated substructures.
struct PartialIso {
    std::vector<std::size_t> basis_indices; // tuple positions whose V-parts form a basis
    Embedding map;                          // <a>/P -> <b>/P in those bases
};

std::optional<PartialIso> partial_iso_from_types(const AltSystem& d, const std::vector<GroupElement>& a,
                                                 const std::vector<GroupElement>& b);

} // namespace nilgen
