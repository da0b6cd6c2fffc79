#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "moran/realization.hpp"
#include "moran/stats.hpp"

namespace moran {

struct BoxCountCurve {
    // (log(1/delta), log count), coarse to fine.
    std::vector<std::pair<double, double>> points;
    int depth = 0;
};

// Number of origin-aligned delta-grid cells (half-open, so an aligned cube
// touches only its own cells) meeting the union of level-`depth` cubes.
// Throws ScaleTooFine when delta is below the level resolution.
std::uint64_t box_count(const Realization& realization, int depth, double log_delta);

BoxCountCurve box_count_curve(const Realization& realization, int depth,
                              const std::vector<double>& log_deltas);

SlopeFit box_dim_fit(const BoxCountCurve& curve, std::size_t first, std::size_t last);
SlopeFit box_dim_fit(const BoxCountCurve& curve);  // middle-half window

struct AssouadSample {
    std::vector<double> center;
    double log_R;
    double log_r;
    std::uint64_t count;
    double exponent;  // log count / log(R/r)
};

struct AssouadProbe {
    std::vector<AssouadSample> samples;
    double max_exponent = 0.0;
};

// Localized covering exponents. For each level pair (n, n+k) the probe counts
// the level-(n+k) cubes of the subtree under a sampled level-n cube Q; they
// all lie in B(z_Q, sqrt(d) r_n), and the sqrt(d) inflation is a constant
// factor that cancels in the exponent, so the scale pair is (r_n, r_{n+k}).
// With include_block_scales it also probes the intermediate scale pair
// (N_{n+1}^{1/d} r_{n+1}, r_{n+1}) within Q, which is where left-packed child
// runs show full-dimensional behavior.
AssouadProbe assouad_probe(const Realization& realization, int depth,
                           const std::vector<std::pair<int, int>>& level_pairs,
                           std::size_t max_centers = 256,
                           bool include_block_scales = false);

struct LocalDimResult {
    std::vector<MuSample> samples;
    std::vector<SlopeFit> fits;                     // one per sample
    std::vector<std::vector<std::pair<double, double>>> curves;  // (log r, log mass)
    double mean_slope = 0.0;
    double min_slope = 0.0;
    double max_slope = 0.0;
};

LocalDimResult local_dim_curve(const Realization& realization,
                               const std::vector<MuSample>& mu_samples,
                               const std::vector<double>& log_radii, int depth);

struct DigitFrequencyResult {
    std::vector<double> frequency;   // per digit 0..base-1
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;
    double chi_square = 0.0;
    double p_value = 0.0;
};

// d = 1 only; base must equal the construction's constant M so that the digit
// string is exact from the address path.
DigitFrequencyResult digit_frequency_test(const Realization& realization,
                                          const std::vector<MuSample>& mu_samples,
                                          std::uint64_t base, int depth);

}  // namespace moran
