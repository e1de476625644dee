#pragma once

// Independence relation A ⫝⁰_B C  <=>  <A> ∩ <C> = <B>, checked in V = G/P,
// together with witnesses for the independence property, TP2 arrays and the
// extraction of central products of symplectic planes.

#include "nilgen/alt_system.hpp"
#include "nilgen/baer_group.hpp"
#include "nilgen/fraisse.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nilgen {

using Elements = std::vector<GroupElement>;

struct IndepQuery {
    const AltSystem* host = nullptr;
    Elements a, b, c;
};

// span(pi(A ∪ B)) ∩ span(pi(C ∪ B)) = span(pi(B)).
bool indep0(const AltSystem& host, const Elements& a, const Elements& b, const Elements& c);
bool indep0(const IndepQuery& q);

using IndepFn = bool (*)(const AltSystem&, const Elements&, const Elements&, const Elements&);

// Greedily minimal B0 ⊆ A (removal in element order) with
// span(pi B0) ⊇ span(pi abar) ∩ span(pi A).
Elements local_base(const AltSystem& d, const Elements& abar, const Elements& a);

// ---------------------------------------------------------------- KP suite

enum class KpLaw { Symmetry, Monotonicity, Transitivity, FiniteCharacter, LocalCharacter, Invariance };
inline constexpr std::size_t kKpLawCount = 6;
std::string_view kp_law_name(KpLaw law) noexcept;

// A configuration on which a law failed. `b2` is the intermediate base for
// Transitivity; `a2`/`c2` are the subsets or regenerated sets involved.
struct KpViolation {
    KpLaw law = KpLaw::Symmetry;
    std::size_t trial = 0;
    Elements a, b, c, b2, a2, c2;
};

struct KpReport {
    std::size_t trials = 0;
    std::array<std::size_t, kKpLawCount> checks{};
    std::array<std::size_t, kKpLawCount> failures{};
    std::size_t local_base_verified = 0;
    std::vector<KpViolation> violations; // ordered by trial

    std::size_t total_failures() const noexcept;
};

KpReport kp_random_suite(const AltSystem& d, std::size_t trials, std::uint64_t seed, IndepFn indep = indep0);
KpReport kp_random_suite_serial(const AltSystem& d, std::size_t trials, std::uint64_t seed, IndepFn indep = indep0);

// Re-evaluates the law named by v on its own configuration; true if it still fails.
bool kp_violation_refails(const AltSystem& d, const KpViolation& v, IndepFn indep = indep0);

// ---------------------------------------------------------------- SU-rank 1

struct SuRankReport {
    std::size_t subspaces = 0;
    std::size_t pairs = 0;       // substructure pairs B ⊆ C
    std::uint64_t checks = 0;    // singleton x pair
    std::uint64_t discrepancies = 0;
};

// Over all singletons a in V and all subspace pairs B ⊆ C:
// not indep0({a}, B, C)  <=>  a ∈ <C> and a ∉ <B>.
SuRankReport su_rank_check(const AltSystem& d, std::uint64_t budget = 2000000);
SuRankReport su_rank_check_serial(const AltSystem& d, std::uint64_t budget = 2000000);

// ---------------------------------------------------------------- constructions

struct Extension {
    AltSystem sys;     // D' ⊇ D, with D on the leading coordinates
    Elements witness;  // dbar (existence) or ebar (independence over models)
    Embedding emb;     // D -> D'
};

// Elements of D viewed in an extension whose leading coordinates are D.
GroupElement pad_element(const GroupElement& x, std::size_t dim_v);
Elements pad_elements(const Elements& xs, std::size_t dim_v);

// Fresh copy dbar of abar over B, independent from A over B.
// Throws BadBase unless span(pi B) ⊆ span(pi A).
Extension existence_extend(const AltSystem& d, const Elements& abar, const Elements& b, const Elements& a);

// Throws PreconditionFailed naming the first violated hypothesis.
Extension independence_amalgam(const AltSystem& d, const Elements& m, const Elements& a0, const Elements& a1,
                               const Elements& b0, const Elements& b1);

// ---------------------------------------------------------------- IP and D(1)

struct CentralizerData {
    GroupElement a;
    std::vector<FVector> x_a;         // independent values beta(pi a, v) in P
    Elements e_a;                     // [a, e_a[i]] = x_a[i]
    std::vector<FVector> centralizer; // basis of {v : beta(pi a, v) = 0}
    std::uint64_t index = 1;          // p^|x_a|
};

CentralizerData centralizer_data(const NilGroup& g, const GroupElement& a);

// n = 1, dimV = 2m, a_i = e_{2i}, b_i = e_{2i+1}, [b_i, a_i] = c; x = sum_{j not in S} a_j.
struct IpWitness {
    NilGroup group;
    Elements a, b;
    GroupElement x;
    std::vector<bool> commutes; // [b_j, x] = 1
    bool pattern_ok = false;    // commutes[j] <=> j in S
};

IpWitness ip_witness(std::uint32_t p, std::size_t m, std::uint64_t subset_mask);

// k orthogonal planes with beta(e_{2i}, e_{2i+1}) = c.
AltSystem standard_central_product(const Field& f, std::size_t n, std::size_t k, const FVector& c);

struct D1Chain {
    FVector c;                        // common commutator [d_i, e_i]
    Elements d, e;
    std::size_t raw_length = 0;       // pairs found before selecting one direction
    std::vector<CentralizerData> steps;
    Embedding comparison;             // standard_central_product(k) -> G's system
};

// Throws NotApplicable when beta vanishes, TooSmall when fewer than k pairs
// with a common commutator can be found.
D1Chain extract_d1_chain(const NilGroup& g, std::size_t k);

// ---------------------------------------------------------------- TP2

struct Tp2Array {
    FreeSystem free;
    std::size_t rows = 0;
    std::size_t cols = 0;

    std::size_t b(std::size_t alpha) const { return alpha; }
    std::size_t c(std::size_t alpha, std::size_t i) const { return rows + 2 * (alpha * cols + i); }
    std::size_t d(std::size_t alpha, std::size_t i) const { return c(alpha, i) + 1; }
};

using Tp2Path = std::vector<std::size_t>; // row -> column

struct Tp2Report {
    std::size_t rank = 0;
    std::size_t row_pairs = 0;
    std::size_t row_pairs_certified = 0;
    std::size_t paths = 0;
    std::size_t paths_consistent = 0;
    std::vector<std::size_t> failed_paths; // indices into the supplied list

    bool passed() const noexcept {
        return row_pairs == row_pairs_certified && paths == paths_consistent;
    }
};

std::vector<Tp2Path> all_tp2_paths(std::size_t rows, std::size_t cols);

// Throws TooLarge when the free rank rows + 2*rows*cols exceeds max_rank.
Tp2Report tp2_build_and_check(std::size_t rows, std::size_t cols, std::uint32_t p, const std::vector<Tp2Path>& paths,
                              std::size_t max_rank = 64);
Tp2Report tp2_build_and_check_serial(std::size_t rows, std::size_t cols, std::uint32_t p,
                                     const std::vector<Tp2Path>& paths, std::size_t max_rank = 64);

// One-generator extension of the free array realizing a path; x is the last basis vector.
AltSystem tp2_path_extension(const Tp2Array& arr, const Tp2Path& path);

} // namespace nilgen
