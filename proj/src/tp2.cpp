#include "nilgen/model_theory.hpp"

#include "nilgen/error.hpp"

#include <string>

namespace nilgen {

std::vector<Tp2Path> all_tp2_paths(std::size_t rows, std::size_t cols) {
    std::vector<Tp2Path> out;
    if (cols == 0) return out;
    Tp2Path path(rows, 0);
    while (true) {
        out.push_back(path);
        std::size_t r = rows;
        while (r > 0 && path[r - 1] + 1 == cols) path[--r] = 0;
        if (r == 0) break;
        ++path[r - 1];
    }
    return out;
}

AltSystem tp2_path_extension(const Tp2Array& arr, const Tp2Path& path) {
    if (path.size() != arr.rows) throw Error(Errc::DimensionMismatch, "path length differs from the row count");
    const FreeSystem& fr = arr.free;
    const Field& f = fr.field();
    const std::size_t rank = fr.rank();
    std::vector<GramEntry> entries;
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = i + 1; j < rank; ++j) entries.push_back({i, j, fr.basis_wedge(i, j)});
    // beta(b_alpha, x) = -(c ∧ d), so beta(x, b_alpha) = c ∧ d
    for (std::size_t alpha = 0; alpha < arr.rows; ++alpha) {
        if (path[alpha] >= arr.cols) throw Error(Errc::DimensionMismatch, "path selects a column out of range");
        const std::size_t i = path[alpha];
        entries.push_back({arr.b(alpha), rank, negate(f, fr.basis_wedge(arr.c(alpha, i), arr.d(alpha, i)))});
    }
    return make_system(f.p(), fr.dim_w(), rank + 1, entries);
}

namespace {

Tp2Array make_array(std::size_t rows, std::size_t cols, std::uint32_t p, std::size_t max_rank) {
    if (rows == 0 || cols == 0) throw Error(Errc::PreconditionFailed, "rows and cols must be at least 1");
    const std::size_t rank = rows + 2 * rows * cols;
    if (rank > max_rank)
        throw Error(Errc::TooLarge, "free rank " + std::to_string(rank) + " exceeds " + std::to_string(max_rank));
    return Tp2Array{FreeSystem(rank, p), rows, cols};
}

void validate_paths(const Tp2Array& arr, const std::vector<Tp2Path>& paths) {
    for (const auto& path : paths) {
        if (path.size() != arr.rows) throw Error(Errc::DimensionMismatch, "path length differs from the row count");
        for (std::size_t col : path)
            if (col >= arr.cols) throw Error(Errc::DimensionMismatch, "path selects a column out of range");
    }
}

void certify_rows(const Tp2Array& arr, Tp2Report& rep) {
    const FreeSystem& fr = arr.free;
    for (std::size_t alpha = 0; alpha < arr.rows; ++alpha)
        for (std::size_t i = 0; i < arr.cols; ++i)
            for (std::size_t j = i + 1; j < arr.cols; ++j) {
                ++rep.row_pairs;
                if (fr.basis_wedge(arr.c(alpha, i), arr.d(alpha, i)) != fr.basis_wedge(arr.c(alpha, j), arr.d(alpha, j)))
                    ++rep.row_pairs_certified;
            }
}

bool path_consistent(const Tp2Array& arr, const Tp2Path& path) {
    const AltSystem ext = tp2_path_extension(arr, path);
    const std::size_t rank = arr.free.rank();
    // freeness: the old generators still span the free system
    if (!(ext.restrict_prefix(rank) == arr.free.as_alt_system())) return false;
    const FVector x = unit_vector(rank + 1, rank);
    for (std::size_t alpha = 0; alpha < arr.rows; ++alpha) {
        const std::size_t i = path[alpha];
        const FVector lhs = eval_beta(ext, x, unit_vector(rank + 1, arr.b(alpha)));
        const FVector rhs =
            eval_beta(ext, unit_vector(rank + 1, arr.c(alpha, i)), unit_vector(rank + 1, arr.d(alpha, i)));
        if (lhs != rhs) return false;
    }
    return true;
}

Tp2Report finish(const std::vector<char>& ok, Tp2Report rep) {
    rep.paths = ok.size();
    for (std::size_t i = 0; i < ok.size(); ++i) {
        if (ok[i])
            ++rep.paths_consistent;
        else
            rep.failed_paths.push_back(i);
    }
    return rep;
}

} // namespace

Tp2Report tp2_build_and_check_serial(std::size_t rows, std::size_t cols, std::uint32_t p,
                                     const std::vector<Tp2Path>& paths, std::size_t max_rank) {
    const Tp2Array arr = make_array(rows, cols, p, max_rank);
    Tp2Report rep;
    rep.rank = arr.free.rank();
    certify_rows(arr, rep);
    std::vector<char> ok(paths.size());
    validate_paths(arr, paths);
    for (std::size_t i = 0; i < paths.size(); ++i) ok[i] = path_consistent(arr, paths[i]) ? 1 : 0;
    return finish(ok, rep);
}

Tp2Report tp2_build_and_check(std::size_t rows, std::size_t cols, std::uint32_t p, const std::vector<Tp2Path>& paths,
                              std::size_t max_rank) {
    const Tp2Array arr = make_array(rows, cols, p, max_rank);
    Tp2Report rep;
    rep.rank = arr.free.rank();
    certify_rows(arr, rep);
    validate_paths(arr, paths);
    std::vector<char> ok(paths.size());
    const auto count = static_cast<std::int64_t>(paths.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < count; ++i)
        ok[static_cast<std::size_t>(i)] = path_consistent(arr, paths[static_cast<std::size_t>(i)]) ? 1 : 0;
    return finish(ok, rep);
}

} // namespace nilgen
