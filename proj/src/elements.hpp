#pragma once

// Helpers shared by the model-theory sources.

#include "nilgen/alt_system.hpp"
#include "nilgen/baer_group.hpp"
#include "nilgen/error.hpp"

#include <vector>

namespace nilgen::detail {

inline void check_elements(const AltSystem& host, const std::vector<GroupElement>& xs) {
    for (const auto& x : xs) {
        if (x.v.size() != host.dim_v() || x.w.size() != host.n())
            throw Error(Errc::DimensionMismatch, "element does not belong to the host group");
        check_reduced(host.field(), x.v);
        check_reduced(host.field(), x.w);
    }
}

inline Subspace v_span(const AltSystem& host, const std::vector<GroupElement>& xs) {
    Subspace s(host.field(), host.dim_v());
    for (const auto& x : xs) s.insert(x.v);
    return s;
}

inline void insert_all(Subspace& s, const std::vector<GroupElement>& xs) {
    for (const auto& x : xs) s.insert(x.v);
}

} // namespace nilgen::detail
