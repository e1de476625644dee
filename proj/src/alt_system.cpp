#include "nilgen/alt_system.hpp"

#include "nilgen/error.hpp"

#include <algorithm>
#include <string>

namespace nilgen {

AltSystem::AltSystem(const Field& f, std::size_t n, std::size_t dim_v)
    : field_(f), n_(n), dim_v_(dim_v), entries_(dim_v * (dim_v > 0 ? dim_v - 1 : 0) / 2 * n, 0) {}

std::span<const Residue> AltSystem::entry(std::size_t i, std::size_t j) const {
    return {entries_.data() + offset(i, j), n_};
}

void AltSystem::set_entry(std::size_t i, std::size_t j, const FVector& w) {
    if (i >= j || j >= dim_v_) throw Error(Errc::DimensionMismatch, "gram entry index out of range");
    if (w.size() != n_) throw Error(Errc::DimensionMismatch, "gram entry length differs from n");
    check_reduced(field_, w);
    std::copy(w.begin(), w.end(), entries_.begin() + static_cast<std::ptrdiff_t>(offset(i, j)));
}

FVector AltSystem::beta_basis(std::size_t i, std::size_t j) const {
    if (i >= dim_v_ || j >= dim_v_) throw Error(Errc::DimensionMismatch, "basis index out of range");
    if (i == j) return FVector(n_, 0);
    if (i < j) {
        auto e = entry(i, j);
        return FVector(e.begin(), e.end());
    }
    auto e = entry(j, i);
    FVector w(n_);
    for (std::size_t k = 0; k < n_; ++k) w[k] = field_.neg(e[k]);
    return w;
}

FVector AltSystem::eval(const FVector& u, const FVector& v) const {
    if (u.size() != dim_v_ || v.size() != dim_v_) throw Error(Errc::DimensionMismatch, "eval_beta argument length differs from dimV");
    std::vector<std::int64_t> acc(n_, 0);
    const auto p = static_cast<std::int64_t>(field_.p());
    for (std::size_t i = 0; i < dim_v_; ++i)
        for (std::size_t j = i + 1; j < dim_v_; ++j) {
            const std::int64_t coef = (static_cast<std::int64_t>(u[i]) * v[j] - static_cast<std::int64_t>(u[j]) * v[i]) % p;
            if (coef == 0) continue;
            const Residue* e = entries_.data() + offset(i, j);
            for (std::size_t k = 0; k < n_; ++k) acc[k] += coef * e[k];
        }
    FVector w(n_);
    for (std::size_t k = 0; k < n_; ++k) w[k] = field_.reduce(acc[k]);
    return w;
}

FMatrix AltSystem::contract(const FVector& u) const {
    if (u.size() != dim_v_) throw Error(Errc::DimensionMismatch, "contract argument length differs from dimV");
    FMatrix m(field_, n_, dim_v_);
    for (std::size_t i = 0; i < dim_v_; ++i) {
        if (u[i] == 0) continue;
        for (std::size_t j = 0; j < dim_v_; ++j) {
            if (i == j) continue;
            const FVector b = beta_basis(i, j);
            for (std::size_t k = 0; k < n_; ++k) m.at(k, j) = field_.add(m.at(k, j), field_.mul(u[i], b[k]));
        }
    }
    return m;
}

AltSystem AltSystem::pullback(const FMatrix& basis) const {
    if (basis.rows() != dim_v_) throw Error(Errc::DimensionMismatch, "pullback basis rows differ from dimV");
    AltSystem out(field_, n_, basis.cols());
    std::vector<FVector> cols;
    for (std::size_t c = 0; c < basis.cols(); ++c) cols.push_back(basis.column(c));
    for (std::size_t a = 0; a < cols.size(); ++a)
        for (std::size_t b = a + 1; b < cols.size(); ++b) out.set_entry(a, b, eval(cols[a], cols[b]));
    return out;
}

AltSystem AltSystem::restrict_prefix(std::size_t k) const {
    if (k > dim_v_) throw Error(Errc::DimensionMismatch, "prefix longer than dimV");
    AltSystem out(field_, n_, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            auto e = entry(i, j);
            out.set_entry(i, j, FVector(e.begin(), e.end()));
        }
    return out;
}

bool AltSystem::operator==(const AltSystem& o) const noexcept {
    return field_ == o.field_ && n_ == o.n_ && dim_v_ == o.dim_v_ && entries_ == o.entries_;
}

AltSystem make_system(std::uint32_t p, std::size_t n, std::size_t dim_v, std::span<const GramEntry> entries) {
    const Field f(p);
    if (n == 0) throw Error(Errc::DimensionMismatch, "n must be at least 1");
    AltSystem sys(f, n, dim_v);
    for (const auto& e : entries) {
        if (e.i >= dim_v || e.j >= dim_v)
            throw Error(Errc::DimensionMismatch, "gram index (" + std::to_string(e.i) + "," + std::to_string(e.j) + ") out of range");
        if (e.value.size() != n)
            throw Error(Errc::DimensionMismatch, "gram value of length " + std::to_string(e.value.size()) + " but n = " + std::to_string(n));
        FVector w(n);
        for (std::size_t k = 0; k < n; ++k) w[k] = f.reduce(e.value[k]);
        if (e.i == e.j) {
            if (!is_zero(w)) throw Error(Errc::NotAlternating, "nonzero diagonal entry at (" + std::to_string(e.i) + "," + std::to_string(e.i) + ")");
            continue;
        }
        if (e.i < e.j) sys.set_entry(e.i, e.j, w);
        else sys.set_entry(e.j, e.i, negate(f, w));
    }
    return sys;
}

AltSystem symplectic_plane(const Field& f, std::size_t n, const FVector& value) {
    AltSystem s(f, n, 2);
    s.set_entry(0, 1, value);
    return s;
}

AltSystem orthogonal_sum(const AltSystem& a, const AltSystem& b) {
    if (!(a.field() == b.field()) || a.n() != b.n()) throw Error(Errc::DimensionMismatch, "orthogonal sum of incompatible systems");
    AltSystem s(a.field(), a.n(), a.dim_v() + b.dim_v());
    for (std::size_t i = 0; i < a.dim_v(); ++i)
        for (std::size_t j = i + 1; j < a.dim_v(); ++j) s.set_entry(i, j, a.beta_basis(i, j));
    const std::size_t off = a.dim_v();
    for (std::size_t i = 0; i < b.dim_v(); ++i)
        for (std::size_t j = i + 1; j < b.dim_v(); ++j) s.set_entry(off + i, off + j, b.beta_basis(i, j));
    return s;
}

FVector eval_beta(const AltSystem& sys, const FVector& u, const FVector& v) { return sys.eval(u, v); }

SubStructure generated_substructure(const AltSystem& sys, std::span<const FVector> gens) {
    for (const auto& g : gens)
        if (g.size() != sys.dim_v()) throw Error(Errc::DimensionMismatch, "generator length differs from dimV");
    return SubStructure{&sys, echelon_basis(sys.field(), gens, sys.dim_v())};
}

// ---------------------------------------------------------------- embeddings

Embedding identity_embedding(const AltSystem& sys) {
    return Embedding{sys, sys, FMatrix::identity(sys.field(), sys.dim_v())};
}

Embedding prefix_embedding(const AltSystem& src, const AltSystem& dst) {
    if (src.dim_v() > dst.dim_v()) throw Error(Errc::DimensionMismatch, "prefix embedding into a smaller system");
    FMatrix m(src.field(), dst.dim_v(), src.dim_v());
    for (std::size_t i = 0; i < src.dim_v(); ++i) m.at(i, i) = 1;
    return Embedding{src, dst, std::move(m)};
}

Embedding compose(const Embedding& second, const Embedding& first) {
    if (first.dst.dim_v() != second.src.dim_v()) throw Error(Errc::DimensionMismatch, "embeddings do not compose");
    return Embedding{first.src, second.dst, second.vmap * first.vmap};
}

bool check_embedding(const Embedding& f) {
    const AltSystem& s = f.src;
    const AltSystem& d = f.dst;
    if (!(s.field() == d.field()) || s.n() != d.n() || !(f.vmap.field() == s.field()))
        throw Error(Errc::DimensionMismatch, "embedding between systems over different P");
    if (f.vmap.rows() != d.dim_v() || f.vmap.cols() != s.dim_v())
        throw Error(Errc::DimensionMismatch, "vmap shape does not match dimV_dst x dimV_src");
    if (rank(f.vmap) != s.dim_v()) return false;
    std::vector<FVector> img;
    for (std::size_t i = 0; i < s.dim_v(); ++i) img.push_back(f.vmap.column(i));
    for (std::size_t i = 0; i < s.dim_v(); ++i)
        for (std::size_t j = i + 1; j < s.dim_v(); ++j)
            if (d.eval(img[i], img[j]) != s.beta_basis(i, j)) return false;
    return true;
}

namespace {

// Solutions of m x = b enumerated in lexicographic order of x (coordinate 0
// most significant). Eliminating on the column-reversed matrix makes every
// pivot coordinate a function of free coordinates with smaller index, so the
// order of x is the odometer order of the free coordinates.
class AffineLexEnumerator {
public:
    AffineLexEnumerator(const FMatrix& m, const FVector& b) : field_(m.field()), dim_(m.cols()) {
        FMatrix rev(field_, m.rows(), dim_ + 1);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t c = 0; c < dim_; ++c) rev.at(r, c) = m.at(r, dim_ - 1 - c);
            rev.at(r, dim_) = b[r];
        }
        const RowEchelon e = rref(rev);
        if (!e.pivots.empty() && e.pivots.back() == dim_) {
            consistent_ = false;
            return;
        }
        std::vector<bool> is_pivot(dim_, false);
        for (std::size_t r = 0; r < e.rank; ++r) {
            const std::size_t orig = dim_ - 1 - e.pivots[r];
            is_pivot[orig] = true;
            PivotRow row{orig, e.reduced.at(r, dim_), {}};
            for (std::size_t c = e.pivots[r] + 1; c < dim_; ++c)
                if (e.reduced.at(r, c) != 0) row.terms.emplace_back(dim_ - 1 - c, e.reduced.at(r, c));
            pivots_.push_back(std::move(row));
        }
        for (std::size_t i = 0; i < dim_; ++i)
            if (!is_pivot[i]) free_.push_back(i);
        // pivots depend only on smaller coordinates; evaluate in ascending order
        std::sort(pivots_.begin(), pivots_.end(), [](const PivotRow& a, const PivotRow& b) { return a.coord < b.coord; });
    }

    bool consistent() const noexcept { return consistent_; }

    template <class Visit>
    bool for_each(Visit&& visit) const {
        if (!consistent_) return true;
        FVector params(free_.size(), 0);
        FVector x(dim_, 0);
        do {
            for (std::size_t i = 0; i < free_.size(); ++i) x[free_[i]] = params[i];
            for (const auto& row : pivots_) {
                Residue v = row.rhs;
                for (const auto& [c, k] : row.terms) v = field_.sub(v, field_.mul(k, x[c]));
                x[row.coord] = v;
            }
            if (!visit(x)) return false;
        } while (next_vector(field_, params));
        return true;
    }

private:
    struct PivotRow {
        std::size_t coord;
        Residue rhs;
        std::vector<std::pair<std::size_t, Residue>> terms;
    };

    Field field_;
    std::size_t dim_;
    bool consistent_ = true;
    std::vector<std::size_t> free_;
    std::vector<PivotRow> pivots_;
};

struct EmbeddingSearch {
    const AltSystem& src;
    const AltSystem& dst;
    const std::function<bool(const FMatrix&)>& visit;
    std::vector<std::size_t> order;     // unassigned source indices, ascending
    std::vector<std::size_t> assigned;  // source indices with images, in assignment order
    std::vector<FVector> images;        // indexed by source index
    std::size_t count = 0;
    bool stopped = false;

    void run(std::size_t depth, const Subspace& span) {
        if (depth == order.size()) {
            ++count;
            FMatrix m = FMatrix::from_columns(dst.field(), images, dst.dim_v());
            if (!visit(m)) stopped = true;
            return;
        }
        const std::size_t k = order[depth];
        const std::size_t n = dst.n();
        FMatrix cons(dst.field(), n * assigned.size(), dst.dim_v());
        FVector rhs(n * assigned.size(), 0);
        // beta(x, y_j) = beta_src(e_k, e_j)  <=>  contract(y_j) x = beta_src(e_j, e_k)
        for (std::size_t a = 0; a < assigned.size(); ++a) {
            const std::size_t j = assigned[a];
            const FMatrix c = dst.contract(images[j]);
            const FVector target = src.beta_basis(j, k);
            for (std::size_t r = 0; r < n; ++r) {
                for (std::size_t col = 0; col < dst.dim_v(); ++col) cons.at(a * n + r, col) = c.at(r, col);
                rhs[a * n + r] = target[r];
            }
        }
        AffineLexEnumerator candidates(cons, rhs);
        candidates.for_each([&](const FVector& x) {
            if (span.contains(x)) return true;
            Subspace next = span;
            next.insert(x);
            images[k] = x;
            assigned.push_back(k);
            run(depth + 1, next);
            assigned.pop_back();
            return !stopped;
        });
    }
};

} // namespace

std::size_t for_each_embedding(const AltSystem& src, const AltSystem& dst, const PartialMap& partial,
                               const std::function<bool(const FMatrix&)>& visit) {
    if (!(src.field() == dst.field()) || src.n() != dst.n())
        throw Error(Errc::DimensionMismatch, "embedding search between systems over different P");
    EmbeddingSearch s{src, dst, visit, {}, {}, std::vector<FVector>(src.dim_v()), 0, false};
    std::vector<bool> fixed(src.dim_v(), false);
    Subspace span(dst.field(), dst.dim_v());
    for (const auto& [idx, img] : partial) {
        if (idx >= src.dim_v() || img.size() != dst.dim_v())
            throw Error(Errc::DimensionMismatch, "partial assignment shape mismatch");
        if (fixed[idx]) throw Error(Errc::BadPartial, "source index " + std::to_string(idx) + " assigned twice");
        check_reduced(dst.field(), img);
        if (!span.insert(img)) throw Error(Errc::BadPartial, "partial images are linearly dependent");
        for (std::size_t j : s.assigned)
            if (dst.eval(s.images[j], img) != src.beta_basis(j, idx))
                throw Error(Errc::BadPartial, "partial images violate beta-compatibility");
        fixed[idx] = true;
        s.images[idx] = img;
        s.assigned.push_back(idx);
    }
    for (std::size_t i = 0; i < src.dim_v(); ++i)
        if (!fixed[i]) s.order.push_back(i);
    if (src.dim_v() > dst.dim_v()) return 0;
    s.run(0, span);
    return s.count;
}

std::optional<Embedding> search_embedding(const AltSystem& src, const AltSystem& dst, const PartialMap& partial) {
    std::optional<Embedding> found;
    for_each_embedding(src, dst, partial, [&](const FMatrix& m) {
        found.emplace(Embedding{src, dst, m});
        return false;
    });
    return found;
}

bool isomorphic(const AltSystem& a, const AltSystem& b) {
    if (!(a.field() == b.field()) || a.n() != b.n() || a.dim_v() != b.dim_v()) return false;
    return search_embedding(a, b).has_value();
}

// ---------------------------------------------------------------- amalgamation

namespace {

// Coordinates of every standard basis vector of the ambient space in the
// basis given by the columns of q (square, invertible).
FMatrix inverse_of_basis(const FMatrix& q) {
    FMatrix inv(q.field(), q.rows(), q.cols());
    for (std::size_t k = 0; k < q.rows(); ++k) {
        auto y = solve_linear(q, unit_vector(q.rows(), k));
        inv.set_column(k, y.value());
    }
    return inv;
}

} // namespace

Amalgam amalgamate(const AltSystem& a, const AltSystem& c, const AltSystem& b, const Embedding& f_a,
                   const Embedding& f_c, const Filler& filler) {
    if (!(f_a.src == b) || !(f_a.dst == a)) throw Error(Errc::BadEmbedding, "f_A is not a map B -> A");
    if (!(f_c.src == b) || !(f_c.dst == c)) throw Error(Errc::BadEmbedding, "f_C is not a map B -> C");
    if (!check_embedding(f_a)) throw Error(Errc::BadEmbedding, "f_A is not an embedding");
    if (!check_embedding(f_c)) throw Error(Errc::BadEmbedding, "f_C is not an embedding");

    const Field& f = a.field();
    const std::size_t db = b.dim_v();
    std::vector<FVector> b_in_a, b_in_c;
    for (std::size_t i = 0; i < db; ++i) {
        b_in_a.push_back(f_a.vmap.column(i));
        b_in_c.push_back(f_c.vmap.column(i));
    }
    const auto x_basis = extend_to_complement(f, b_in_a, a.dim_v());
    const auto y_basis = extend_to_complement(f, b_in_c, c.dim_v());
    auto first_one = [](const FVector& e) {
        return static_cast<std::size_t>(std::find(e.begin(), e.end(), Residue{1}) - e.begin());
    };

    Amalgam out{AltSystem(f, a.n(), db + x_basis.size() + y_basis.size()), f_a, f_c, {}, {}};
    for (const auto& x : x_basis) out.x_indices.push_back(first_one(x));
    for (const auto& y : y_basis) out.y_indices.push_back(first_one(y));

    const std::size_t dx = x_basis.size();
    const std::size_t dd = out.d.dim_v();
    // D basis vector k, seen inside A (k < db + dx) or inside C (k < db or k >= db + dx).
    std::vector<FVector> in_a(db + dx), in_c(dd);
    for (std::size_t i = 0; i < db; ++i) {
        in_a[i] = b_in_a[i];
        in_c[i] = b_in_c[i];
    }
    for (std::size_t i = 0; i < dx; ++i) in_a[db + i] = x_basis[i];
    for (std::size_t i = 0; i < y_basis.size(); ++i) in_c[db + dx + i] = y_basis[i];

    for (std::size_t i = 0; i < dd; ++i)
        for (std::size_t j = i + 1; j < dd; ++j) {
            const bool i_in_a = i < db + dx;
            const bool j_in_a = j < db + dx;
            const bool i_in_c = i < db || i >= db + dx;
            const bool j_in_c = j < db || j >= db + dx;
            FVector w;
            if (i_in_a && j_in_a) {
                w = a.eval(in_a[i], in_a[j]);
            } else if (i_in_c && j_in_c) {
                w = c.eval(in_c[i], in_c[j]);
            } else if (filler) {
                // i in X, j in Y
                w = filler(out.x_indices[i - db], out.y_indices[j - db - dx]);
                if (w.size() != a.n()) throw Error(Errc::DimensionMismatch, "filler value length differs from n");
                check_reduced(f, w);
            } else {
                w = FVector(a.n(), 0);
            }
            out.d.set_entry(i, j, w);
        }

    auto lift = [&](const std::vector<FVector>& basis_over_b, const std::vector<FVector>& b_images, std::size_t dim,
                    std::size_t block_offset) {
        std::vector<FVector> cols = b_images;
        cols.insert(cols.end(), basis_over_b.begin(), basis_over_b.end());
        const FMatrix inv = inverse_of_basis(FMatrix::from_columns(f, cols, dim));
        FMatrix g(f, dd, dim);
        for (std::size_t k = 0; k < dim; ++k)
            for (std::size_t r = 0; r < dim; ++r) {
                const std::size_t target = r < db ? r : block_offset + (r - db);
                g.at(target, k) = inv.at(r, k);
            }
        return g;
    };
    out.g_a = Embedding{a, out.d, lift(x_basis, b_in_a, a.dim_v(), db)};
    out.g_c = Embedding{c, out.d, lift(y_basis, b_in_c, c.dim_v(), db + dx)};
    return out;
}

// ---------------------------------------------------------------- free systems

FreeSystem::FreeSystem(std::size_t rank, std::uint32_t p) : field_(p), rank_(rank) {
    if (rank == 0) throw Error(Errc::DimensionMismatch, "free system rank must be at least 1");
}

std::size_t FreeSystem::wedge_index(std::size_t i, std::size_t j) const {
    if (i >= j || j >= rank_) throw Error(Errc::DimensionMismatch, "wedge index requires i < j < rank");
    return i * rank_ - i * (i + 1) / 2 + (j - i - 1);
}

FVector FreeSystem::wedge(const FVector& u, const FVector& v) const {
    if (u.size() != rank_ || v.size() != rank_) throw Error(Errc::DimensionMismatch, "wedge argument length differs from rank");
    FVector w(dim_w(), 0);
    for (std::size_t i = 0; i < rank_; ++i)
        for (std::size_t j = i + 1; j < rank_; ++j)
            w[wedge_index(i, j)] = field_.sub(field_.mul(u[i], v[j]), field_.mul(u[j], v[i]));
    return w;
}

FVector FreeSystem::basis_wedge(std::size_t i, std::size_t j) const {
    FVector w(dim_w(), 0);
    if (i < j) w[wedge_index(i, j)] = 1;
    else if (j < i) w[wedge_index(j, i)] = field_.neg(1);
    return w;
}

AltSystem FreeSystem::as_alt_system() const {
    AltSystem s(field_, dim_w(), rank_);
    for (std::size_t i = 0; i < rank_; ++i)
        for (std::size_t j = i + 1; j < rank_; ++j) s.set_entry(i, j, basis_wedge(i, j));
    return s;
}

FreeSystem free_exterior_system(std::size_t rank, std::uint32_t p) { return FreeSystem(rank, p); }

} // namespace nilgen
