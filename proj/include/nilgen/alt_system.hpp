#pragma once

// Alternating bilinear systems (V, P, beta) over F_p with dim P = n fixed,
// embeddings between them, and the vector-space amalgam.

#include "nilgen/fp_linalg.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

namespace nilgen {

class AltSystem {
public:
    // The zero form on F_p^dim_v with values in P = F_p^n.
    AltSystem(const Field& f, std::size_t n, std::size_t dim_v);

    const Field& field() const noexcept { return field_; }
    std::uint32_t p() const noexcept { return field_.p(); }
    std::size_t n() const noexcept { return n_; }
    std::size_t dim_v() const noexcept { return dim_v_; }

    // beta(e_i, e_j); negated on the fly for i > j, zero on the diagonal.
    FVector beta_basis(std::size_t i, std::size_t j) const;
    // Stored upper-triangle entry, i < j.
    std::span<const Residue> entry(std::size_t i, std::size_t j) const;
    void set_entry(std::size_t i, std::size_t j, const FVector& w);

    // beta(u, v) = sum_ij u_i v_j beta(e_i, e_j). Throws DimensionMismatch.
    FVector eval(const FVector& u, const FVector& v) const;
    // The n x dim_v matrix of v -> beta(u, v).
    FMatrix contract(const FVector& u) const;

    // The form pulled back along the columns of `basis` (dim_v x k).
    AltSystem pullback(const FMatrix& basis) const;
    AltSystem restrict_prefix(std::size_t k) const;

    bool operator==(const AltSystem& o) const noexcept;

private:
    std::size_t offset(std::size_t i, std::size_t j) const noexcept {
        return (i * dim_v_ - i * (i + 1) / 2 + (j - i - 1)) * n_;
    }

    Field field_;
    std::size_t n_;
    std::size_t dim_v_;
    std::vector<Residue> entries_; // (i < j) pairs, row-major, n residues each
};

struct GramEntry {
    std::size_t i;
    std::size_t j;
    FVector value;
};

// Validated construction. Unlisted pairs are zero. Errors: BadPrime,
// DimensionMismatch, NotAlternating (nonzero diagonal entry).
AltSystem make_system(std::uint32_t p, std::size_t n, std::size_t dim_v, std::span<const GramEntry> entries);

// Common small systems.
AltSystem symplectic_plane(const Field& f, std::size_t n, const FVector& value);
AltSystem orthogonal_sum(const AltSystem& a, const AltSystem& b);

FVector eval_beta(const AltSystem& sys, const FVector& u, const FVector& v);

// A substructure: all of P together with the preimage of `vspan`.
struct SubStructure {
    const AltSystem* host = nullptr;
    std::vector<FVector> vspan; // reduced echelon basis
};

SubStructure generated_substructure(const AltSystem& sys, std::span<const FVector> gens);

struct Embedding {
    AltSystem src;
    AltSystem dst;
    FMatrix vmap; // dst.dim_v() x src.dim_v(); column i = image of source basis vector i
};

Embedding identity_embedding(const AltSystem& sys);
// Coordinate inclusion of the first src.dim_v() coordinates.
Embedding prefix_embedding(const AltSystem& src, const AltSystem& dst);
Embedding compose(const Embedding& second, const Embedding& first);

// True iff vmap is injective and preserves beta on basis pairs.
// Throws DimensionMismatch for inconsistent shapes.
bool check_embedding(const Embedding& f);

using PartialMap = std::vector<std::pair<std::size_t, FVector>>;

// Visits every embedding of src into dst extending `partial`, in ascending
// lexicographic order of the images of the unassigned source basis vectors
// (ascending index, coordinate 0 most significant). The visitor returns
// false to stop. Returns the number of embeddings visited.
// Throws BadPartial if `partial` is already not injective or not beta-compatible.
std::size_t for_each_embedding(const AltSystem& src, const AltSystem& dst, const PartialMap& partial,
                               const std::function<bool(const FMatrix&)>& visit);

std::optional<Embedding> search_embedding(const AltSystem& src, const AltSystem& dst, const PartialMap& partial = {});

// Equal dimensions plus an embedding.
bool isomorphic(const AltSystem& a, const AltSystem& b);

// Value of beta_D(x, y) for x in the basis of V_A over V_B and y in the basis
// of V_C over V_B; arguments are the standard basis indices in V_A and V_C.
using Filler = std::function<FVector(std::size_t x_index, std::size_t y_index)>;

struct Amalgam {
    AltSystem d;
    Embedding g_a;
    Embedding g_c;
    std::vector<std::size_t> x_indices; // basis of V_A over f_A(V_B)
    std::vector<std::size_t> y_indices; // basis of V_C over f_C(V_B)
};

// V_D = V_B + X + Y with coordinates in that order. An empty filler means the
// constant zero. Throws BadEmbedding if f_a or f_c fails check_embedding.
Amalgam amalgamate(const AltSystem& a, const AltSystem& c, const AltSystem& b, const Embedding& f_a,
                   const Embedding& f_c, const Filler& filler = {});

// (F_p^r, Lambda^2 F_p^r, wedge). Lambda^2 coordinates are ordered by the
// pairs (i, j), i < j, lexicographically.
class FreeSystem {
public:
    FreeSystem(std::size_t rank, std::uint32_t p);

    const Field& field() const noexcept { return field_; }
    std::size_t rank() const noexcept { return rank_; }
    std::size_t dim_w() const noexcept { return rank_ * (rank_ - 1) / 2; }
    std::size_t wedge_index(std::size_t i, std::size_t j) const; // i < j

    FVector wedge(const FVector& u, const FVector& v) const;
    FVector basis_wedge(std::size_t i, std::size_t j) const; // e_i ∧ e_j for i != j

    // The same form as an alternating system with n = dim_w().
    AltSystem as_alt_system() const;

private:
    Field field_;
    std::size_t rank_;
};

FreeSystem free_exterior_system(std::size_t rank, std::uint32_t p);

} // namespace nilgen
