#include "nilgen/model_theory.hpp"

#include "elements.hpp"

#include <random>

namespace nilgen {

std::string_view kp_law_name(KpLaw law) noexcept {
    switch (law) {
    case KpLaw::Symmetry: return "symmetry";
    case KpLaw::Monotonicity: return "monotonicity";
    case KpLaw::Transitivity: return "transitivity";
    case KpLaw::FiniteCharacter: return "finite_character";
    case KpLaw::LocalCharacter: return "local_character";
    case KpLaw::Invariance: return "invariance";
    }
    return "unknown";
}

std::size_t KpReport::total_failures() const noexcept {
    std::size_t s = 0;
    for (std::size_t x : failures) s += x;
    return s;
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
    return splitmix(splitmix(seed) ^ static_cast<std::uint64_t>(trial));
}

class Sampler {
public:
    Sampler(const AltSystem& d, std::uint64_t seed) : d_(d), rng_(seed) {
        // a small pool makes the sampled spans overlap often
        const std::size_t pool = 1 + below(std::min<std::size_t>(d.dim_v(), 4) + 1);
        for (std::size_t i = 0; i < pool; ++i) pool_.push_back(random_vector(d.dim_v()));
    }

    std::size_t below(std::size_t k) { return std::uniform_int_distribution<std::size_t>(0, k - 1)(rng_); }

    Residue residue() { return static_cast<Residue>(below(d_.p())); }

    FVector random_vector(std::size_t len) {
        FVector v(len);
        for (auto& x : v) x = residue();
        return v;
    }

    GroupElement element() {
        FVector v(d_.dim_v(), 0);
        for (const auto& q : pool_) add_scaled(d_.field(), v, q, residue());
        return {std::move(v), random_vector(d_.n())};
    }

    Elements set(std::size_t max_size) {
        Elements out(below(max_size + 1));
        for (auto& x : out) x = element();
        return out;
    }

    GroupElement combination(const Elements& xs) {
        FVector v(d_.dim_v(), 0);
        for (const auto& x : xs) add_scaled(d_.field(), v, x.v, residue());
        return {std::move(v), random_vector(d_.n())};
    }

    Elements subset(const Elements& xs) {
        Elements out;
        for (const auto& x : xs)
            if (below(2) == 1) out.push_back(x);
        return out;
    }

    // Another generating set of the same span: invertible triangular
    // recombination, fresh P-parts, plus one redundant combination.
    Elements regenerate(const Elements& xs) {
        const Field& f = d_.field();
        Elements out;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            FVector v = scale(f, xs[i].v, 1 + static_cast<Residue>(below(d_.p() - 1)));
            for (std::size_t j = i + 1; j < xs.size(); ++j) add_scaled(f, v, xs[j].v, residue());
            out.push_back({std::move(v), random_vector(d_.n())});
        }
        if (!xs.empty()) out.push_back(combination(xs));
        return out;
    }

private:
    const AltSystem& d_;
    std::mt19937_64 rng_;
    std::vector<FVector> pool_;
};

Elements concat(Elements a, const Elements& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

bool finite_character_fails(const AltSystem& d, const KpViolation& v, IndepFn indep) {
    const bool whole = indep(d, v.a, v.b, v.c);
    bool all_parts = true;
    for (std::size_t ma = 0; ma < (std::size_t{1} << v.a.size()) && all_parts; ++ma)
        for (std::size_t mc = 0; mc < (std::size_t{1} << v.c.size()) && all_parts; ++mc) {
            Elements a0, c0;
            for (std::size_t i = 0; i < v.a.size(); ++i)
                if (ma >> i & 1) a0.push_back(v.a[i]);
            for (std::size_t i = 0; i < v.c.size(); ++i)
                if (mc >> i & 1) c0.push_back(v.c[i]);
            all_parts = indep(d, a0, v.b, c0);
        }
    return whole != all_parts;
}

bool law_fails(const AltSystem& d, const KpViolation& v, IndepFn indep) {
    switch (v.law) {
    case KpLaw::Symmetry: return indep(d, v.a, v.b, v.c) != indep(d, v.c, v.b, v.a);
    case KpLaw::Monotonicity: return indep(d, v.a, v.b, v.c) && !indep(d, v.a2, v.b, v.c2);
    case KpLaw::Transitivity:
        return indep(d, v.a, v.b, v.c2) != (indep(d, v.a, v.b, v.b2) && indep(d, v.a, v.b2, v.c2));
    case KpLaw::FiniteCharacter: return finite_character_fails(d, v, indep);
    case KpLaw::LocalCharacter: return !indep(d, v.a, local_base(d, v.a, v.c), v.c);
    case KpLaw::Invariance: return indep(d, v.a, v.b, v.c) != indep(d, v.a2, v.b2, v.c2);
    }
    return true;
}

struct TrialResult {
    std::array<std::size_t, kKpLawCount> checks{};
    std::array<std::size_t, kKpLawCount> failures{};
    std::size_t local_base_verified = 0;
    std::vector<KpViolation> violations;
};

TrialResult run_trial(const AltSystem& d, std::size_t trial, std::uint64_t seed, IndepFn indep) {
    Sampler s(d, trial_seed(seed, trial));
    KpViolation base;
    base.trial = trial;
    base.a = s.set(3);
    base.b = s.set(2);
    base.c = s.set(3);

    TrialResult r;
    auto record = [&](KpViolation v) {
        const auto li = static_cast<std::size_t>(v.law);
        ++r.checks[li];
        if (law_fails(d, v, indep)) {
            ++r.failures[li];
            r.violations.push_back(std::move(v));
        } else if (v.law == KpLaw::LocalCharacter) {
            ++r.local_base_verified;
        }
    };

    KpViolation v = base;
    v.law = KpLaw::Symmetry;
    record(v);

    v = base;
    v.law = KpLaw::Monotonicity;
    v.a2 = s.subset(base.a);
    v.c2 = s.subset(base.c);
    record(v);

    v = base;
    v.law = KpLaw::Transitivity;
    v.b2 = base.b;
    const Elements cb = concat(base.c, base.b);
    for (std::size_t i = s.below(3); i > 0; --i) v.b2.push_back(s.combination(cb));
    v.c2 = concat(base.c, v.b2);
    record(v);

    v = base;
    v.law = KpLaw::FiniteCharacter;
    record(v);

    v = base;
    v.law = KpLaw::LocalCharacter;
    v.b2 = local_base(d, base.a, base.c);
    record(v);

    v = base;
    v.law = KpLaw::Invariance;
    v.a2 = s.regenerate(base.a);
    v.b2 = s.regenerate(base.b);
    v.c2 = s.regenerate(base.c);
    record(v);
    return r;
}

KpReport merge(std::vector<TrialResult>& results) {
    KpReport rep;
    rep.trials = results.size();
    for (auto& r : results) {
        for (std::size_t i = 0; i < kKpLawCount; ++i) {
            rep.checks[i] += r.checks[i];
            rep.failures[i] += r.failures[i];
        }
        rep.local_base_verified += r.local_base_verified;
        for (auto& v : r.violations) rep.violations.push_back(std::move(v));
    }
    return rep;
}

} // namespace

KpReport kp_random_suite_serial(const AltSystem& d, std::size_t trials, std::uint64_t seed, IndepFn indep) {
    std::vector<TrialResult> results;
    results.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) results.push_back(run_trial(d, t, seed, indep));
    return merge(results);
}

KpReport kp_random_suite(const AltSystem& d, std::size_t trials, std::uint64_t seed, IndepFn indep) {
    std::vector<TrialResult> results(trials);
    const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t t = 0; t < count; ++t)
        results[static_cast<std::size_t>(t)] = run_trial(d, static_cast<std::size_t>(t), seed, indep);
    return merge(results);
}

bool kp_violation_refails(const AltSystem& d, const KpViolation& v, IndepFn indep) {
    return law_fails(d, v, indep);
}

} // namespace nilgen
