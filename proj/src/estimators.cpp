#include "moran/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_set>

#include "moran/errors.hpp"

namespace moran {

std::uint64_t box_count(const Realization& realization, int depth, double log_delta) {
    const auto& scales = realization.scales();
    if (log_delta < scales.log_r[depth] - 1e-9)
        throw ScaleTooFine("delta below the level-" + std::to_string(depth) + " resolution");
    const double delta = std::exp(log_delta);
    const int d = realization.params().d;
    const double side = realization.side_length(depth);
    const std::uint64_t cells_per_axis =
        static_cast<std::uint64_t>(std::ceil(1.0 / delta - 1e-9));

    std::unordered_set<std::uint64_t> cells;
    std::vector<std::int64_t> lo(d), hi(d);
    realization.enumerate_level(depth, [&](const CubeAddress& cube) {
        auto a = realization.corner(cube);
        for (int ax = 0; ax < d; ++ax) {
            lo[ax] = static_cast<std::int64_t>(std::floor(a[ax] / delta + 1e-9));
            hi[ax] = static_cast<std::int64_t>(std::ceil((a[ax] + side) / delta - 1e-9)) - 1;
            if (hi[ax] < lo[ax]) hi[ax] = lo[ax];
            lo[ax] = std::max<std::int64_t>(lo[ax], 0);
            hi[ax] = std::min<std::int64_t>(hi[ax], static_cast<std::int64_t>(cells_per_axis) - 1);
        }
        std::vector<std::int64_t> idx(lo);
        while (true) {
            std::uint64_t linear = 0;
            for (int ax = 0; ax < d; ++ax)
                linear = linear * cells_per_axis + static_cast<std::uint64_t>(idx[ax]);
            cells.insert(linear);
            int ax = d - 1;
            while (ax >= 0 && ++idx[ax] > hi[ax]) {
                idx[ax] = lo[ax];
                --ax;
            }
            if (ax < 0) break;
        }
    });
    return cells.size();
}

BoxCountCurve box_count_curve(const Realization& realization, int depth,
                              const std::vector<double>& log_deltas) {
    BoxCountCurve curve;
    curve.depth = depth;
    for (double ld : log_deltas) {
        std::uint64_t n = box_count(realization, depth, ld);
        curve.points.emplace_back(-ld, std::log(static_cast<double>(n)));
    }
    std::sort(curve.points.begin(), curve.points.end());
    return curve;
}

SlopeFit box_dim_fit(const BoxCountCurve& curve, std::size_t first, std::size_t last) {
    return fit_slope(curve.points, first, last);
}

SlopeFit box_dim_fit(const BoxCountCurve& curve) { return fit_slope(curve.points); }

AssouadProbe assouad_probe(const Realization& realization, int depth,
                           const std::vector<std::pair<int, int>>& level_pairs,
                           std::size_t max_centers, bool include_block_scales) {
    const auto& scales = realization.scales();
    const int d = realization.params().d;
    const double sqrt_d = std::sqrt(static_cast<double>(d));
    AssouadProbe probe;

    for (auto [n, nk] : level_pairs) {
        if (n < 1 || nk <= n || nk > depth)
            throw DepthOutOfRange("assouad level pair outside [1, depth]");
        auto level_n = realization.level_cubes(n);
        std::size_t stride = std::max<std::size_t>(1, level_n.size() / max_centers);
        for (std::size_t i = 0; i < level_n.size(); i += stride) {
            const CubeAddress& Q = level_n[i];
            auto z = realization.corner(Q);

            // Window sample: descendants of Q at level n+k. They all lie in
            // B(z_Q, sqrt(d) r_n); the sqrt(d) inflation is a constant factor
            // with no effect on the exponent, so the scale pair is (r_n,
            // r_{n+k}).
            std::uint64_t count = 0;
            std::function<void(const CubeAddress&)> dfs = [&](const CubeAddress& a) {
                if (a.level() == nk) {
                    ++count;
                    return;
                }
                for (std::uint32_t digit : realization.expand(a)) dfs(a.child(digit));
            };
            dfs(Q);
            AssouadSample s;
            s.center = z;
            s.log_R = scales.log_r[n];
            s.log_r = scales.log_r[nk];
            s.count = count;
            s.exponent = std::log(static_cast<double>(count)) / (s.log_R - s.log_r);
            probe.samples.push_back(std::move(s));

            if (include_block_scales) {
                auto N_next = realization.params().seq.term(n + 1).N;
                if (N_next && *N_next >= 8) {
                    double log_r_child = scales.log_r[n + 1];
                    double block_log_R =
                        std::log(static_cast<double>(*N_next)) / d + log_r_child;
                    std::uint64_t bcount = 0;
                    double radius = sqrt_d * std::exp(block_log_R);
                    for (std::uint32_t digit : realization.expand(Q)) {
                        if (realization.distance_to_cube(z, Q.child(digit)) <=
                            radius * (1.0 + 1e-12))
                            ++bcount;
                    }
                    if (bcount > 0) {
                        AssouadSample b;
                        b.center = z;
                        b.log_R = block_log_R;
                        b.log_r = log_r_child;
                        b.count = bcount;
                        b.exponent =
                            std::log(static_cast<double>(bcount)) / (b.log_R - b.log_r);
                        probe.samples.push_back(std::move(b));
                    }
                }
            }
        }
    }
    probe.max_exponent = 0.0;
    for (const auto& s : probe.samples)
        probe.max_exponent = std::max(probe.max_exponent, s.exponent);
    return probe;
}

LocalDimResult local_dim_curve(const Realization& realization,
                               const std::vector<MuSample>& mu_samples,
                               const std::vector<double>& log_radii, int depth) {
    LocalDimResult result;
    result.samples = mu_samples;
    double sum = 0.0;
    for (const auto& sample : mu_samples) {
        std::vector<std::pair<double, double>> pts;
        for (double lr : log_radii)
            pts.emplace_back(lr, realization.mu_ball_log_mass(sample.point, lr, depth));
        std::sort(pts.begin(), pts.end());
        SlopeFit fit = fit_slope(pts, 0, pts.size());
        sum += fit.least_squares_slope;
        if (result.fits.empty()) {
            result.min_slope = result.max_slope = fit.least_squares_slope;
        } else {
            result.min_slope = std::min(result.min_slope, fit.least_squares_slope);
            result.max_slope = std::max(result.max_slope, fit.least_squares_slope);
        }
        result.curves.push_back(std::move(pts));
        result.fits.push_back(fit);
    }
    if (!result.fits.empty()) result.mean_slope = sum / result.fits.size();
    return result;
}

DigitFrequencyResult digit_frequency_test(const Realization& realization,
                                          const std::vector<MuSample>& mu_samples,
                                          std::uint64_t base, int depth) {
    const auto& params = realization.params();
    if (params.d != 1) throw ConfigError("digit_frequency_test requires d = 1");
    if (params.seq.kind != SequenceSpec::Kind::Constant || params.seq.pairs[0].first != base)
        throw ConfigError("base must equal the construction's constant M");
    if (depth > params.max_depth) throw DepthOutOfRange("digit depth exceeds max_depth");

    DigitFrequencyResult r;
    r.counts.assign(base, 0);
    for (const auto& sample : mu_samples) {
        if (sample.path.level() < depth)
            throw DepthOutOfRange("sample path shorter than requested digit depth");
        for (int k = 0; k < depth; ++k) ++r.counts[sample.path.digits[k]];
    }
    r.total = mu_samples.size() * static_cast<std::uint64_t>(depth);
    r.frequency.assign(base, 0.0);
    double expected = static_cast<double>(r.total) / base;
    for (std::uint64_t digit = 0; digit < base; ++digit) {
        r.frequency[digit] = r.counts[digit] / static_cast<double>(r.total);
        double diff = r.counts[digit] - expected;
        r.chi_square += diff * diff / expected;
    }
    r.p_value = chi2_sf(r.chi_square, static_cast<int>(base) - 1);
    return r;
}

}  // namespace moran
