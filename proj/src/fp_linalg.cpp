#include "nilgen/fp_linalg.hpp"

#include "nilgen/error.hpp"

#include <algorithm>
#include <string>
#include <tuple>
#include <utility>

namespace nilgen {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotAlternating: return "NotAlternating";
    case Errc::BadPrime: return "BadPrime";
    case Errc::BadPartial: return "BadPartial";
    case Errc::BadEmbedding: return "BadEmbedding";
    case Errc::TooLarge: return "TooLarge";
    case Errc::BadBase: return "BadBase";
    case Errc::PreconditionFailed: return "PreconditionFailed";
    case Errc::NotApplicable: return "NotApplicable";
    case Errc::TooSmall: return "TooSmall";
    case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(Errc code, const std::string& what, std::size_t line)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), line_(line) {}

bool is_prime(std::uint32_t p) noexcept {
    if (p < 2) return false;
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Field::Field(std::uint32_t p) : p_(p), half_(0) {
    if (p < 3 || p >= (1u << 15) || !is_prime(p))
        throw Error(Errc::BadPrime, "modulus " + std::to_string(p) + " is not an odd prime below 32768");
    half_ = (p + 1) / 2;
}

Residue Field::inv(Residue a) const {
    // extended Euclid on (a, p)
    std::int64_t r0 = p_, r1 = a, t0 = 0, t1 = 1;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
        std::tie(t0, t1) = std::pair{t1, t0 - q * t1};
    }
    return reduce(t0);
}

bool is_zero(const FVector& v) noexcept {
    return std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; });
}

FVector unit_vector(std::size_t dim, std::size_t i) {
    FVector v(dim, 0);
    v.at(i) = 1;
    return v;
}

void add_scaled(const Field& f, FVector& acc, const FVector& v, Residue k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < acc.size(); ++i)
        acc[i] = f.add(acc[i], f.mul(k, v[i]));
}

FVector add(const Field& f, const FVector& a, const FVector& b) {
    FVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
    return r;
}

FVector sub(const Field& f, const FVector& a, const FVector& b) {
    FVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
    return r;
}

FVector scale(const Field& f, const FVector& v, Residue k) {
    FVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = f.mul(k, v[i]);
    return r;
}

FVector negate(const Field& f, const FVector& v) {
    FVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = f.neg(v[i]);
    return r;
}

Residue normalize_leading(const Field& f, FVector& v) {
    auto it = std::find_if(v.begin(), v.end(), [](Residue x) { return x != 0; });
    if (it == v.end()) return 0;
    const Residue k = f.inv(*it);
    for (auto& x : v) x = f.mul(k, x);
    return k;
}

bool next_vector(const Field& f, FVector& v) noexcept {
    for (std::size_t i = v.size(); i-- > 0;) {
        if (++v[i] < f.p()) return true;
        v[i] = 0;
    }
    return false;
}

void check_reduced(const Field& f, const FVector& v) {
    for (Residue x : v)
        if (x >= f.p()) throw Error(Errc::DimensionMismatch, "coordinate not reduced mod p");
}

// ---------------------------------------------------------------- FMatrix

FMatrix::FMatrix(const Field& f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FMatrix FMatrix::identity(const Field& f, std::size_t n) {
    FMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FMatrix FMatrix::from_rows(const Field& f, std::span<const FVector> rows, std::size_t cols) {
    FMatrix m(f, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw Error(Errc::DimensionMismatch, "row length differs from column count");
        check_reduced(f, rows[r]);
        std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(r * cols));
    }
    return m;
}

FMatrix FMatrix::from_columns(const Field& f, std::span<const FVector> cols, std::size_t rows) {
    FMatrix m(f, rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw Error(Errc::DimensionMismatch, "column length differs from row count");
        check_reduced(f, cols[c]);
        m.set_column(c, cols[c]);
    }
    return m;
}

FVector FMatrix::row(std::size_t r) const {
    const auto first = data_.begin() + static_cast<std::ptrdiff_t>(r * cols_);
    return FVector(first, first + static_cast<std::ptrdiff_t>(cols_));
}

FVector FMatrix::column(std::size_t c) const {
    FVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
}

void FMatrix::set_column(std::size_t c, const FVector& v) {
    for (std::size_t r = 0; r < rows_; ++r) at(r, c) = v[r];
}

FVector FMatrix::apply(const FVector& x) const {
    if (x.size() != cols_) throw Error(Errc::DimensionMismatch, "matrix-vector shape mismatch");
    FVector y(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint64_t acc = 0;
        for (std::size_t c = 0; c < cols_; ++c) acc += static_cast<std::uint64_t>(at(r, c)) * x[c];
        y[r] = static_cast<Residue>(acc % field_.p());
    }
    return y;
}

FMatrix FMatrix::operator*(const FMatrix& o) const {
    if (cols_ != o.rows_) throw Error(Errc::DimensionMismatch, "matrix product shape mismatch");
    FMatrix m(field_, rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < o.cols_; ++c) {
            std::uint64_t acc = 0;
            for (std::size_t k = 0; k < cols_; ++k) acc += static_cast<std::uint64_t>(at(r, k)) * o.at(k, c);
            m.at(r, c) = static_cast<Residue>(acc % field_.p());
        }
    return m;
}

FMatrix FMatrix::transpose() const {
    FMatrix m(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
    return m;
}

bool FMatrix::operator==(const FMatrix& o) const noexcept {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

// ---------------------------------------------------------------- elimination

RowEchelon rref(const FMatrix& m) {
    const Field& f = m.field();
    FMatrix r = m;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
        std::size_t sel = row;
        while (sel < r.rows() && r.at(sel, col) == 0) ++sel;
        if (sel == r.rows()) continue;
        if (sel != row)
            for (std::size_t c = 0; c < r.cols(); ++c) std::swap(r.at(sel, c), r.at(row, c));
        const Residue k = f.inv(r.at(row, col));
        for (std::size_t c = col; c < r.cols(); ++c) r.at(row, c) = f.mul(k, r.at(row, c));
        for (std::size_t other = 0; other < r.rows(); ++other) {
            if (other == row) continue;
            const Residue factor = r.at(other, col);
            if (factor == 0) continue;
            for (std::size_t c = col; c < r.cols(); ++c)
                r.at(other, c) = f.sub(r.at(other, c), f.mul(factor, r.at(row, c)));
        }
        pivots.push_back(col);
        ++row;
    }

    std::vector<FVector> kernel;
    std::size_t pi = 0;
    for (std::size_t col = 0; col < r.cols(); ++col) {
        if (pi < pivots.size() && pivots[pi] == col) {
            ++pi;
            continue;
        }
        FVector k(r.cols(), 0);
        k[col] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) k[pivots[i]] = f.neg(r.at(i, col));
        kernel.push_back(std::move(k));
    }
    const std::size_t rk = pivots.size();
    return RowEchelon{std::move(r), rk, std::move(pivots), std::move(kernel)};
}

std::size_t rank(const FMatrix& m) { return rref(m).rank; }

std::optional<FVector> solve_linear(const FMatrix& m, const FVector& b) {
    if (b.size() != m.rows()) throw Error(Errc::DimensionMismatch, "right-hand side length differs from row count");
    const Field& f = m.field();
    check_reduced(f, b);
    FMatrix aug(f, m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols()) = b[r];
    }
    const RowEchelon e = rref(aug);
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
    FVector x(m.cols(), 0);
    for (std::size_t i = 0; i < e.rank; ++i) x[e.pivots[i]] = e.reduced.at(i, m.cols());
    return x;
}

namespace {

std::size_t common_length(std::span<const FVector> a, std::span<const FVector> b) {
    std::optional<std::size_t> len;
    for (auto group : {a, b})
        for (const auto& v : group) {
            if (len && *len != v.size()) throw Error(Errc::DimensionMismatch, "vectors of different lengths");
            len = v.size();
        }
    return len.value_or(0);
}

} // namespace

std::vector<FVector> echelon_basis(const Field& f, std::span<const FVector> vectors, std::size_t dim) {
    return Subspace(f, dim, vectors).basis();
}

std::vector<FVector> subspace_intersect(const Field& f, std::span<const FVector> u, std::span<const FVector> w) {
    const std::size_t dim = common_length(u, w);
    if (u.empty() || w.empty()) return {};
    // Zassenhaus: rows [u | u] and [w | 0]; rows with vanishing left half carry the intersection.
    FMatrix z(f, u.size() + w.size(), 2 * dim);
    for (std::size_t r = 0; r < u.size(); ++r) {
        check_reduced(f, u[r]);
        for (std::size_t c = 0; c < dim; ++c) z.at(r, c) = z.at(r, dim + c) = u[r][c];
    }
    for (std::size_t r = 0; r < w.size(); ++r) {
        check_reduced(f, w[r]);
        for (std::size_t c = 0; c < dim; ++c) z.at(u.size() + r, c) = w[r][c];
    }
    const RowEchelon e = rref(z);
    std::vector<FVector> meet;
    for (std::size_t i = 0; i < e.rank; ++i) {
        if (e.pivots[i] < dim) continue;
        FVector v(dim);
        for (std::size_t c = 0; c < dim; ++c) v[c] = e.reduced.at(i, dim + c);
        meet.push_back(std::move(v));
    }
    return echelon_basis(f, meet, dim);
}

std::vector<FVector> extend_to_complement(const Field& f, std::span<const FVector> s, std::size_t ambient_dim) {
    for (const auto& v : s)
        if (v.size() != ambient_dim) throw Error(Errc::DimensionMismatch, "vector length differs from ambient dimension");
    Subspace span(f, ambient_dim, s);
    std::vector<FVector> out;
    for (std::size_t i = 0; i < ambient_dim && span.dim() < ambient_dim; ++i) {
        FVector e = unit_vector(ambient_dim, i);
        if (span.insert(e)) out.push_back(std::move(e));
    }
    return out;
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(const Field& f, std::size_t dim) : field_(f), dim_(dim) {}

Subspace::Subspace(const Field& f, std::size_t dim, std::span<const FVector> gens) : Subspace(f, dim) {
    for (const auto& g : gens) insert(g);
}

FVector Subspace::reduce(const FVector& v) const {
    if (v.size() != dim_) throw Error(Errc::DimensionMismatch, "vector length differs from subspace ambient dimension");
    FVector r = v;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const Residue k = r[pivot_[i]];
        if (k != 0) add_scaled(field_, r, basis_[i], field_.neg(k));
    }
    return r;
}

bool Subspace::insert(const FVector& v) {
    check_reduced(field_, v);
    FVector r = reduce(v);
    if (is_zero(r)) return false;
    normalize_leading(field_, r);
    const auto piv = static_cast<std::size_t>(std::find_if(r.begin(), r.end(), [](Residue x) { return x != 0; }) - r.begin());
    for (auto& b : basis_) {
        const Residue k = b[piv];
        if (k != 0) add_scaled(field_, b, r, field_.neg(k));
    }
    const auto pos = static_cast<std::size_t>(std::lower_bound(pivot_.begin(), pivot_.end(), piv) - pivot_.begin());
    basis_.insert(basis_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(r));
    pivot_.insert(pivot_.begin() + static_cast<std::ptrdiff_t>(pos), piv);
    return true;
}

bool Subspace::contains(const FVector& v) const { return is_zero(reduce(v)); }

bool Subspace::contains_all(const Subspace& o) const {
    return std::all_of(o.basis_.begin(), o.basis_.end(), [&](const FVector& b) { return contains(b); });
}

bool Subspace::operator==(const Subspace& o) const {
    return field_ == o.field_ && dim_ == o.dim_ && basis_ == o.basis_;
}

} // namespace nilgen
