#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "moran/params.hpp"
#include "moran/realization.hpp"

namespace moran {

// log C(m, n) via lgamma; -inf when n > m.
double log_binom(std::uint64_t m, std::uint64_t n);

struct HitLawCase {
    std::uint64_t m, k, n;  // |B| = m, |A| = k, draw n without replacement
};

struct HitExact {
    double product_form;   // 1 - prod_{j<n} (1 - k/(m-j))
    double binomial_form;  // 1 - C(m-k, n) / C(m, n)
    double bound;          // 1 - exp(-nk/m)
    double value() const { return product_form; }
};

HitExact hit_exact(const HitLawCase& c);

struct HitBoundViolation {
    HitLawCase triple;
    double exact;
    double bound;
};

// Exhaustive exact-vs-bound check over all 1 <= k <= m, 1 <= n <= m, m <= max_m.
// Also verifies the two exact forms agree to 1e-12; disagreement is reported
// as a violation with bound = -1.
std::vector<HitBoundViolation> hit_bound_check(std::uint64_t max_m);

struct TailDistribution {
    enum class Kind { Constant, UniformInt, ScaledBernoulliHalf };
    Kind kind = Kind::UniformInt;
    std::uint64_t N = 1;  // support is [0, N]
};

struct LargeDeviationResult {
    double frequency;
    double sigma;
    double bound;  // e^{-n/8}
    std::uint64_t trials;
};

LargeDeviationResult large_deviation_mc(const TailDistribution& dist, std::uint64_t n,
                                        std::uint64_t trials, std::uint64_t seed);

struct TwoPointResult {
    int separation_level;      // first level where x and y fall in different cells
    double exact_joint;        // per-level inclusion law, hypergeometric at the split
    double upper_bound_joint;  // p_n^2 p_k^{-1} with k = separation_level - 1
    double empirical_joint;
    double sigma;
    std::uint64_t trials;
};

// Joint survival of two points under the constant (M, N) construction. Both
// points must be off the adic grid and distinct at some level <= depth.
TwoPointResult two_point_mc(std::uint64_t M, std::uint64_t N, int d, double x, double y,
                            int depth, std::uint64_t trials, std::uint64_t seed);
TwoPointResult two_point_mc(std::uint64_t M, std::uint64_t N, int d,
                            const std::vector<double>& x, const std::vector<double>& y,
                            int depth, std::uint64_t trials, std::uint64_t seed);

struct SpreadCoverageResult {
    std::uint64_t N_star;
    std::vector<std::uint64_t> cell_children;  // children meeting each subcell
    std::vector<double> cell_exact;            // hypergeometric hit probability
    std::vector<double> cell_frequency;
    double mean_X;                             // empirical E[X_Q]
    double exact_mean_X;
    double sigma_mean;
    std::uint64_t trials;
};

SpreadCoverageResult spread_coverage_mc(std::uint64_t M, std::uint64_t N, int d,
                                        std::uint64_t trials, std::uint64_t seed);

// Deterministic grid-pattern target F: a fixed-pattern construction on the
// same (M, d) grid. alpha = log |pattern| / log M.
struct TargetSet {
    std::uint64_t M;
    int d;
    std::vector<std::uint32_t> pattern;
    double alpha() const;
};

struct McConfig {
    std::uint64_t trials = 10'000;
    int depth = 10;
    std::uint64_t seed = 0;
    double confidence_multiplier = 3.0;
};

// Per-trial counts of #(F_n intersect E_n) for n = 1..depth; trailing zeros
// once the intersection dies out.
std::vector<std::uint64_t> simulate_intersection_counts(std::uint64_t M, std::uint64_t N,
                                                        const TargetSet& target, int depth,
                                                        std::uint64_t seed);

struct HitCurvePoint {
    int n;
    double probability;
    double ci_low;
    double ci_high;
};

struct HitCurveResult {
    std::vector<HitCurvePoint> curve;
    bool indicators_monotone;  // nonincreasing in n for every trial
};

HitCurveResult hit_probability_mc(std::uint64_t M, std::uint64_t N, const TargetSet& target,
                                  const McConfig& mc);

// Exact E[#(F_n intersect E_n)] = |F_n| (N / M^d)^n, in log space.
double expected_intersection_log(const TargetSet& target, std::uint64_t M, std::uint64_t N,
                                 int n);

struct SurvivorDimensionResult {
    std::vector<double> slopes;  // one per surviving trial
    std::uint64_t surviving_trials;
    std::uint64_t trials;
    double upper_quartile;
    double median;
    double target_exponent;  // alpha + s - d
};

SurvivorDimensionResult survivor_dimension_mc(std::uint64_t M, std::uint64_t N,
                                              const TargetSet& target, const McConfig& mc);

}  // namespace moran
