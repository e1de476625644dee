#include "nilgen/fraisse.hpp"

#include "nilgen/error.hpp"

#include <algorithm>
#include <random>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nilgen {

AltSystem GenericApprox::stage(std::size_t k) const {
    if (k >= stage_count()) throw Error(Errc::DimensionMismatch, "stage index out of range");
    return sys.restrict_prefix(k == 0 ? initial_dim : history[k - 1].dim_after);
}

bool extends_in(const CatalogPair& pair, const AltSystem& d, const FMatrix& base_map) {
    PartialMap partial;
    for (std::size_t i = 0; i < base_map.cols(); ++i) partial.emplace_back(i, base_map.column(i));
    return search_embedding(pair.adapted, d, partial).has_value();
}

namespace {

FMatrix pad_rows(const FMatrix& m, std::size_t rows) {
    FMatrix out(m.field(), rows, m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out.at(r, c) = m.at(r, c);
    return out;
}

// Amalgamates the stage with pair.adapted over h, then rewrites the amalgam so
// that the stage occupies the leading coordinates.
AltSystem extend_stage(const AltSystem& stage, const Catalog& cat, const CatalogPair& pair, const FMatrix& h,
                       const Filler& filler) {
    const AltSystem& base = cat.classes[pair.base];
    const Embedding f_a = prefix_embedding(base, pair.adapted);
    const Embedding f_c{base, stage, h};
    const Amalgam am = amalgamate(pair.adapted, stage, base, f_a, f_c, filler);
    std::vector<FVector> frame;
    for (std::size_t i = 0; i < stage.dim_v(); ++i) frame.push_back(am.g_c.vmap.column(i));
    for (std::size_t x : am.x_indices) frame.push_back(am.g_a.vmap.column(x));
    return am.d.pullback(FMatrix::from_columns(stage.field(), frame, am.d.dim_v()));
}

std::vector<FMatrix> all_embeddings(const AltSystem& src, const AltSystem& dst, std::uint64_t budget) {
    std::vector<FMatrix> out;
    for_each_embedding(src, dst, {}, [&](const FMatrix& m) {
        out.push_back(m);
        if (out.size() > budget)
            throw Error(Errc::TooLarge, "more than " + std::to_string(budget) + " embeddings to enumerate");
        return true;
    });
    return out;
}

} // namespace

GenericApprox build_generic(std::uint32_t p, std::size_t n, std::size_t t, std::size_t rounds, std::uint64_t seed,
                            const GenericOptions& options) {
    if (rounds == 0) throw Error(Errc::PreconditionFailed, "rounds must be at least 1");
    const Catalog cat = enumerate_catalog(p, n, t);
    const Field f(p);
    GenericApprox out{AltSystem(f, n, 0), {}, seed, t, rounds, 0};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Residue> coord(0, p - 1);
    Filler filler;
    if (options.random_filler)
        filler = [&](std::size_t, std::size_t) {
            FVector w(n);
            for (auto& x : w) x = coord(rng);
            return w;
        };

    for (std::size_t round = 0; round < rounds; ++round) {
        for (std::size_t pi = 0; pi < cat.pairs.size(); ++pi) {
            const CatalogPair& pair = cat.pairs[pi];
            if (cat.classes[pair.ext].dim_v() > t) continue;
            const AltSystem& base = cat.classes[pair.base];
            // embeddings of B into the stage as it was when this pair came up
            std::vector<std::pair<std::uint64_t, FMatrix>> kept;
            std::uint64_t seen = 0;
            for_each_embedding(base, out.sys, {}, [&](const FMatrix& m) {
                if (++seen > options.enum_limit)
                    throw Error(Errc::TooLarge, "more than " + std::to_string(options.enum_limit) +
                                                    " embeddings of a catalog base into the stage");
                if (kept.size() < options.embed_budget) {
                    kept.emplace_back(seen, m);
                } else {
                    // reservoir sampling under the seed
                    std::uniform_int_distribution<std::uint64_t> pick(0, seen - 1);
                    const std::uint64_t slot = pick(rng);
                    if (slot < options.embed_budget) kept[slot] = {seen, m};
                }
                return true;
            });
            // survivors are processed in enumeration order
            std::sort(kept.begin(), kept.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
            std::vector<FMatrix> snapshot;
            for (auto& [idx, m] : kept) snapshot.push_back(std::move(m));
            for (const FMatrix& h0 : snapshot) {
                const FMatrix h = pad_rows(h0, out.sys.dim_v());
                if (extends_in(pair, out.sys, h)) continue;
                AltSystem next = extend_stage(out.sys, cat, pair, h, filler);
                if (next.dim_v() > options.dim_cap)
                    throw Error(Errc::TooLarge, "stage would exceed dimV cap " + std::to_string(options.dim_cap));
                out.sys = std::move(next);
                out.history.push_back(GenericStep{pi, round, h, out.sys.dim_v()});
            }
        }
    }
    return out;
}

ExtensionReport check_extension_property_serial(const AltSystem& d, std::size_t t, const Catalog& catalog,
                                                std::uint64_t budget) {
    ExtensionReport rep;
    for (std::size_t pi = 0; pi < catalog.pairs.size(); ++pi) {
        const CatalogPair& pair = catalog.pairs[pi];
        if (catalog.classes[pair.ext].dim_v() > t) continue;
        ++rep.pairs_checked;
        for (const FMatrix& h : all_embeddings(catalog.classes[pair.base], d, budget)) {
            ++rep.embeddings_checked;
            if (!extends_in(pair, d, h)) rep.failures.push_back({pi, h});
        }
    }
    return rep;
}

ExtensionReport check_extension_property(const AltSystem& d, std::size_t t, const Catalog& catalog,
                                         std::uint64_t budget) {
    ExtensionReport rep;
    for (std::size_t pi = 0; pi < catalog.pairs.size(); ++pi) {
        const CatalogPair& pair = catalog.pairs[pi];
        if (catalog.classes[pair.ext].dim_v() > t) continue;
        ++rep.pairs_checked;
        const std::vector<FMatrix> maps = all_embeddings(catalog.classes[pair.base], d, budget);
        std::vector<char> ok(maps.size(), 1);
        const auto count = static_cast<std::int64_t>(maps.size());
#pragma omp parallel for schedule(dynamic, 64)
        for (std::int64_t i = 0; i < count; ++i)
            ok[static_cast<std::size_t>(i)] = extends_in(pair, d, maps[static_cast<std::size_t>(i)]) ? 1 : 0;
        rep.embeddings_checked += maps.size();
        for (std::size_t i = 0; i < maps.size(); ++i)
            if (!ok[i]) rep.failures.push_back({pi, maps[i]});
    }
    return rep;
}

} // namespace nilgen
