#include "nilgen/fraisse.hpp"

#include "nilgen/error.hpp"

#include <stdexcept>

namespace nilgen {

namespace {

// q(lambda) = 1/2 sum_{i<j} lambda_i lambda_j beta(a_i, a_j)
FVector twist(const Field& f, std::size_t n, const std::vector<FVector>& gram, std::size_t k, const FVector& lambda) {
    FVector q(n, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            add_scaled(f, q, gram[i * k + j], f.mul(f.half(), f.mul(lambda[i], lambda[j])));
    return q;
}

FMatrix v_columns(const AltSystem& d, const std::vector<GroupElement>& tuple) {
    FMatrix m(d.field(), d.dim_v(), tuple.size());
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (tuple[i].v.size() != d.dim_v() || tuple[i].w.size() != d.n())
            throw Error(Errc::DimensionMismatch, "tuple element does not belong to the system's group");
        check_reduced(d.field(), tuple[i].v);
        check_reduced(d.field(), tuple[i].w);
        m.set_column(i, tuple[i].v);
    }
    return m;
}

} // namespace

TypeCode qf_type_code(const AltSystem& d, const std::vector<GroupElement>& tuple) {
    const Field& f = d.field();
    const std::size_t k = tuple.size();
    TypeCode code;
    code.k = k;
    code.n = d.n();
    const FMatrix cols = v_columns(d, tuple);

    code.gram.resize(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) code.gram[i * k + j] = d.eval(tuple[i].v, tuple[j].v);

    for (const FVector& lambda : rref(cols).kernel) {
        FVector value = twist(f, d.n(), code.gram, k, lambda);
        for (std::size_t i = 0; i < k; ++i) add_scaled(f, value, tuple[i].w, lambda[i]);
        code.relations.push_back({lambda, std::move(value)});
    }
    return code;
}

FVector relation_value(const TypeCode& code, const Field& f, const FVector& lambda) {
    if (lambda.size() != code.k) throw Error(Errc::DimensionMismatch, "lambda length differs from tuple length");
    // Each kernel basis vector has its free position as its last nonzero
    // coordinate (value 1) and vanishes at the other free positions, so the
    // coefficients of lambda are read off there.
    FVector rebuilt(code.k, 0);
    FVector linear(code.n, 0);
    for (const auto& rel : code.relations) {
        std::size_t free_pos = code.k;
        while (rel.lambda[free_pos - 1] == 0) --free_pos;
        --free_pos;
        const Residue mu = lambda[free_pos];
        add_scaled(f, rebuilt, rel.lambda, mu);
        add_scaled(f, linear, sub(f, rel.value, twist(f, code.n, code.gram, code.k, rel.lambda)), mu);
    }
    if (rebuilt != lambda) throw Error(Errc::DimensionMismatch, "lambda is not in the relation module");
    return add(f, linear, twist(f, code.n, code.gram, code.k, lambda));
}

std::optional<PartialIso> partial_iso_from_types(const AltSystem& d, const std::vector<GroupElement>& a,
                                                 const std::vector<GroupElement>& b) {
    if (a.size() != b.size()) return std::nullopt;
    if (qf_type_code(d, a) != qf_type_code(d, b)) return std::nullopt;

    const Field& f = d.field();
    const RowEchelon e = rref(v_columns(d, a));
    std::vector<FVector> src_cols, dst_cols;
    for (std::size_t idx : e.pivots) {
        src_cols.push_back(a[idx].v);
        dst_cols.push_back(b[idx].v);
    }
    const FMatrix src_frame = FMatrix::from_columns(f, src_cols, d.dim_v());
    const FMatrix dst_frame = FMatrix::from_columns(f, dst_cols, d.dim_v());
    if (rank(dst_frame) != dst_cols.size())
        throw std::logic_error("equal type codes but the image tuple has a smaller span");
    PartialIso iso{e.pivots, Embedding{d.pullback(src_frame), d.pullback(dst_frame),
                                       FMatrix::identity(f, src_cols.size())}};
    if (!check_embedding(iso.map)) throw std::logic_error("equal type codes but the span map is not beta-preserving");

    // every tuple element must land where the linear extension sends it
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto coords = solve_linear(src_frame, a[i].v);
        if (!coords || dst_frame.apply(*coords) != b[i].v)
            throw std::logic_error("equal type codes but the linear extension misplaces an element");
    }
    return iso;
}

} // namespace nilgen
