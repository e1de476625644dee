#include "nilgen/model_theory.hpp"

#include "elements.hpp"

#include <stdexcept>

namespace nilgen {

using detail::check_elements;
using detail::v_span;

GroupElement pad_element(const GroupElement& x, std::size_t dim_v) {
    if (x.v.size() > dim_v) throw Error(Errc::DimensionMismatch, "element longer than the target space");
    GroupElement out = x;
    out.v.resize(dim_v, 0);
    return out;
}

Elements pad_elements(const Elements& xs, std::size_t dim_v) {
    Elements out;
    for (const auto& x : xs) out.push_back(pad_element(x, dim_v));
    return out;
}

namespace {

// Positions i with abar[i] outside span(base ∪ abar[<i]).
std::vector<std::size_t> pivots_over(const Subspace& base, const Elements& abar) {
    Subspace s = base;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < abar.size(); ++i)
        if (s.insert(abar[i].v)) out.push_back(i);
    return out;
}

// Columns of `frame` followed by new vectors, as a growing list.
void extend_frame(std::vector<FVector>& frame, Subspace& span, const Elements& xs) {
    for (const auto& x : xs)
        if (span.insert(x.v)) frame.push_back(x.v);
}

// D extended by one coordinate per pivot. `value_on_frame(k, q)` is
// beta(e_k, frame[q]); beta among the new coordinates is taken from `inner`.
AltSystem adjoin(const AltSystem& d, const std::vector<FVector>& frame, const std::vector<std::vector<FVector>>& rows,
                 const std::vector<FVector>& inner_v) {
    const Field& f = d.field();
    const std::size_t dim = d.dim_v();
    const std::size_t k = rows.size();
    const FMatrix q = FMatrix::from_columns(f, frame, dim);
    // frame coordinates of each standard basis vector
    std::vector<FVector> qinv;
    for (std::size_t j = 0; j < dim; ++j) qinv.push_back(solve_linear(q, unit_vector(dim, j)).value());

    AltSystem out(f, d.n(), dim + k);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) out.set_entry(i, j, d.beta_basis(i, j));
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t j = 0; j < dim; ++j) {
            FVector val(d.n(), 0);
            for (std::size_t c = 0; c < dim; ++c) add_scaled(f, val, rows[a][c], qinv[j][c]);
            out.set_entry(j, dim + a, negate(f, val)); // beta(e_j, new) = -beta(new, e_j)
        }
        for (std::size_t b = a + 1; b < k; ++b) out.set_entry(dim + a, dim + b, d.eval(inner_v[a], inner_v[b]));
    }
    return out;
}

// The copy of each tuple element: its part in span(base) stays, pivot
// components move to the new coordinates.
Elements copy_tuple(const AltSystem& d, const std::vector<FVector>& base_basis, const Elements& abar,
                    const std::vector<std::size_t>& pivots) {
    const Field& f = d.field();
    std::vector<FVector> cols = base_basis;
    for (std::size_t pi : pivots) cols.push_back(abar[pi].v);
    const FMatrix m = FMatrix::from_columns(f, cols, d.dim_v());
    Elements out;
    for (const auto& a : abar) {
        const FVector coords = solve_linear(m, a.v).value();
        FVector v(d.dim_v() + pivots.size(), 0);
        for (std::size_t i = 0; i < base_basis.size(); ++i) {
            FVector part = scale(f, base_basis[i], coords[i]);
            for (std::size_t r = 0; r < d.dim_v(); ++r) v[r] = f.add(v[r], part[r]);
        }
        for (std::size_t k = 0; k < pivots.size(); ++k) v[d.dim_v() + k] = coords[base_basis.size() + k];
        out.push_back({std::move(v), a.w});
    }
    return out;
}

Elements concat(Elements a, const Elements& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::vector<FVector> complete(const Field& f, std::vector<FVector> frame, std::size_t dim) {
    for (auto& v : extend_to_complement(f, frame, dim)) frame.push_back(std::move(v));
    return frame;
}

void precondition(bool ok, const char* what) {
    if (!ok) throw Error(Errc::PreconditionFailed, what);
}

} // namespace

Extension existence_extend(const AltSystem& d, const Elements& abar, const Elements& b, const Elements& a) {
    check_elements(d, abar);
    check_elements(d, b);
    check_elements(d, a);
    const Field& f = d.field();
    const Subspace sb = v_span(d, b);
    if (!v_span(d, a).contains_all(sb)) throw Error(Errc::BadBase, "span(B) is not contained in span(A)");

    // frame = [X_B, basis of A over B, complement]
    std::vector<FVector> frame = sb.basis();
    const std::size_t nb = frame.size();
    Subspace grow = sb;
    extend_frame(frame, grow, a);
    frame = complete(f, std::move(frame), d.dim_v());

    const std::vector<std::size_t> pivots = pivots_over(sb, abar);
    std::vector<std::vector<FVector>> rows;
    std::vector<FVector> inner;
    for (std::size_t pi : pivots) {
        std::vector<FVector> row(frame.size(), FVector(d.n(), 0));
        for (std::size_t q = 0; q < nb; ++q) row[q] = d.eval(abar[pi].v, frame[q]);
        // the remaining frame vectors pair to zero
        rows.push_back(std::move(row));
        inner.push_back(abar[pi].v);
    }
    Extension ext{adjoin(d, frame, rows, inner), {}, Embedding{d, d, FMatrix::identity(f, d.dim_v())}};
    ext.witness = copy_tuple(d, sb.basis(), abar, pivots);
    ext.emb = prefix_embedding(d, ext.sys);

    const std::size_t dim2 = ext.sys.dim_v();
    const Elements b2 = pad_elements(b, dim2);
    if (qf_type_code(ext.sys, concat(ext.witness, b2)) != qf_type_code(d, concat(abar, b)))
        throw std::logic_error("existence copy changed the type over B");
    if (!indep0(ext.sys, ext.witness, b2, pad_elements(a, dim2)))
        throw std::logic_error("existence copy is not independent from A over B");
    return ext;
}

Extension independence_amalgam(const AltSystem& d, const Elements& m, const Elements& a0, const Elements& a1,
                               const Elements& b0, const Elements& b1) {
    for (const Elements* xs : {&m, &a0, &a1, &b0, &b1}) check_elements(d, *xs);
    const Field& f = d.field();
    precondition(a0.size() == a1.size(), "a0 and a1 have different lengths");
    precondition(qf_type_code(d, concat(a0, m)) == qf_type_code(d, concat(a1, m)),
                 "a0 and a1 have different types over M");
    precondition(indep0(d, b0, m, b1), "b0 and b1 are not independent over M");
    precondition(indep0(d, a0, m, b0), "a0 and b0 are not independent over M");
    precondition(indep0(d, a1, m, b1), "a1 and b1 are not independent over M");

    // frame = [X_M, basis of b0 over M, basis of b1 over M b0, complement]
    const Subspace sm = v_span(d, m);
    std::vector<FVector> frame = sm.basis();
    Subspace grow = sm;
    extend_frame(frame, grow, b0);
    const std::size_t nb0 = frame.size();
    extend_frame(frame, grow, b1);
    const std::size_t nb1 = frame.size();
    frame = complete(f, std::move(frame), d.dim_v());

    // equal kernels over M give the same pivot positions for a0 and a1
    const std::vector<std::size_t> pivots = pivots_over(sm, a0);
    std::vector<std::vector<FVector>> rows;
    std::vector<FVector> inner;
    for (std::size_t pi : pivots) {
        std::vector<FVector> row(frame.size(), FVector(d.n(), 0));
        for (std::size_t q = 0; q < nb0; ++q) row[q] = d.eval(a0[pi].v, frame[q]);
        for (std::size_t q = nb0; q < nb1; ++q) row[q] = d.eval(a1[pi].v, frame[q]);
        rows.push_back(std::move(row));
        inner.push_back(a0[pi].v);
    }
    Extension ext{adjoin(d, frame, rows, inner), {}, Embedding{d, d, FMatrix::identity(f, d.dim_v())}};
    ext.witness = copy_tuple(d, sm.basis(), a0, pivots);
    ext.emb = prefix_embedding(d, ext.sys);

    const std::size_t dim2 = ext.sys.dim_v();
    const Elements m2 = pad_elements(m, dim2);
    const Elements b02 = pad_elements(b0, dim2);
    const Elements b12 = pad_elements(b1, dim2);
    if (qf_type_code(ext.sys, concat(concat(ext.witness, m2), b02)) != qf_type_code(d, concat(concat(a0, m), b0)))
        throw std::logic_error("amalgam witness changed the type over M b0");
    if (qf_type_code(ext.sys, concat(concat(ext.witness, m2), b12)) != qf_type_code(d, concat(concat(a1, m), b1)))
        throw std::logic_error("amalgam witness changed the type over M b1");
    if (!indep0(ext.sys, ext.witness, m2, concat(b02, b12)))
        throw std::logic_error("amalgam witness is not independent from b0 b1 over M");
    return ext;
}

} // namespace nilgen
