#pragma once

#include "nilgen/alt_system.hpp"
#include "nilgen/baer_group.hpp"

#include <random>

namespace nilgen::testing {

inline FVector random_vector(std::mt19937_64& rng, const Field& f, std::size_t len) {
    FVector v(len);
    for (auto& x : v) x = static_cast<Residue>(rng() % f.p());
    return v;
}

inline AltSystem random_system(std::mt19937_64& rng, std::uint32_t p, std::size_t n, std::size_t dim) {
    const Field f(p);
    AltSystem s(f, n, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) s.set_entry(i, j, random_vector(rng, f, n));
    return s;
}

inline FMatrix random_matrix(std::mt19937_64& rng, const Field& f, std::size_t rows, std::size_t cols) {
    FMatrix m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = static_cast<Residue>(rng() % f.p());
    return m;
}

inline FVector vec(std::initializer_list<Residue> xs) { return FVector(xs); }

} // namespace nilgen::testing
