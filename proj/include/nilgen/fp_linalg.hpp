#pragma once

// Exact linear algebra over a prime field F_p, p odd.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace nilgen {

using Residue = std::uint32_t;

// A coordinate vector over F_p. The modulus is carried by whatever owns the
// vector (a Field, FMatrix or AltSystem); every coordinate lies in [0, p-1].
using FVector = std::vector<Residue>;

class Field {
public:
    // Throws Error{BadPrime} unless p is an odd prime below 2^15.
    explicit Field(std::uint32_t p);

    std::uint32_t p() const noexcept { return p_; }
    Residue half() const noexcept { return half_; }

    Residue reduce(std::int64_t x) const noexcept {
        const auto m = static_cast<std::int64_t>(p_);
        x %= m;
        return static_cast<Residue>(x < 0 ? x + m : x);
    }
    Residue add(Residue a, Residue b) const noexcept {
        const Residue s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Residue mul(Residue a, Residue b) const noexcept { return (a * b) % p_; }
    Residue inv(Residue a) const; // a != 0

    bool operator==(const Field& o) const noexcept { return p_ == o.p_; }

private:
    std::uint32_t p_;
    Residue half_;
};

bool is_prime(std::uint32_t p) noexcept;

// Vector helpers. Lengths must agree; checked by callers at API boundaries.
bool is_zero(const FVector& v) noexcept;
FVector unit_vector(std::size_t dim, std::size_t i);
void add_scaled(const Field& f, FVector& acc, const FVector& v, Residue k);
FVector add(const Field& f, const FVector& a, const FVector& b);
FVector sub(const Field& f, const FVector& a, const FVector& b);
FVector scale(const Field& f, const FVector& v, Residue k);
FVector negate(const Field& f, const FVector& v);
// Scales v so its first nonzero coordinate is 1 (canonical projective
// representative). Returns the factor applied; 0 for the zero vector.
Residue normalize_leading(const Field& f, FVector& v);
// Lexicographic successor, coordinate 0 most significant. Returns false on
// wrap-around to zero.
bool next_vector(const Field& f, FVector& v) noexcept;
void check_reduced(const Field& f, const FVector& v);

class FMatrix {
public:
    FMatrix(const Field& f, std::size_t rows, std::size_t cols);
    static FMatrix identity(const Field& f, std::size_t n);
    static FMatrix from_rows(const Field& f, std::span<const FVector> rows, std::size_t cols);
    static FMatrix from_columns(const Field& f, std::span<const FVector> cols, std::size_t rows);

    const Field& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Residue& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Residue at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    FVector row(std::size_t r) const;
    FVector column(std::size_t c) const;
    void set_column(std::size_t c, const FVector& v);

    FVector apply(const FVector& x) const; // this * x
    FMatrix operator*(const FMatrix& o) const;
    FMatrix transpose() const;

    bool operator==(const FMatrix& o) const noexcept;

private:
    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Residue> data_;
};

struct RowEchelon {
    FMatrix reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
    std::vector<FVector> kernel; // size cols - rank, one per free column
};

RowEchelon rref(const FMatrix& m);
std::size_t rank(const FMatrix& m);

// Deterministic: free variables are set to zero. Throws DimensionMismatch.
std::optional<FVector> solve_linear(const FMatrix& m, const FVector& b);

// Reduced echelon basis of span(vectors).
std::vector<FVector> echelon_basis(const Field& f, std::span<const FVector> vectors, std::size_t dim);

// Echelonized basis of span(U) ∩ span(W). Throws DimensionMismatch.
std::vector<FVector> subspace_intersect(const Field& f, std::span<const FVector> u,
                                        std::span<const FVector> w);

// Standard basis vectors, chosen greedily by ascending index, completing
// span(s) to the ambient space.
std::vector<FVector> extend_to_complement(const Field& f, std::span<const FVector> s,
                                          std::size_t ambient_dim);

// Incrementally maintained reduced echelon basis of a subspace of F_p^dim.
class Subspace {
public:
    Subspace(const Field& f, std::size_t dim);
    Subspace(const Field& f, std::size_t dim, std::span<const FVector> gens);

    std::size_t ambient_dim() const noexcept { return dim_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<FVector>& basis() const noexcept { return basis_; }

    // Inserts v; returns false if v was already in the span.
    bool insert(const FVector& v);
    bool contains(const FVector& v) const;
    bool contains_all(const Subspace& o) const;
    // v minus its projection along the pivots of the basis.
    FVector reduce(const FVector& v) const;

    bool operator==(const Subspace& o) const;

private:
    Field field_;
    std::size_t dim_;
    std::vector<FVector> basis_;     // fully reduced, sorted by pivot
    std::vector<std::size_t> pivot_; // pivot column per basis row
};

} // namespace nilgen
