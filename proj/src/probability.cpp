#include "moran/probability.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "moran/errors.hpp"
#include "moran/rng.hpp"
#include "moran/stats.hpp"

namespace moran {

namespace {

std::uint64_t ipow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// Uniform N-subset of {0..total-1} as a bitmask (total <= 64).
std::uint64_t draw_subset_mask(std::uint64_t total, std::uint64_t N, std::mt19937_64& rng) {
    std::uint64_t pool[64];
    for (std::uint64_t i = 0; i < total; ++i) pool[i] = i;
    std::uint64_t mask = 0;
    for (std::uint64_t i = 0; i < N; ++i) {
        std::uniform_int_distribution<std::uint64_t> pick(i, total - 1);
        std::swap(pool[i], pool[pick(rng)]);
        mask |= 1ULL << pool[i];
    }
    return mask;
}

}  // namespace

double log_binom(std::uint64_t m, std::uint64_t n) {
    if (n > m) return -std::numeric_limits<double>::infinity();
    return std::lgamma(static_cast<double>(m) + 1.0) -
           std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(m - n) + 1.0);
}

HitExact hit_exact(const HitLawCase& c) {
    if (c.k < 1 || c.k > c.m || c.n < 1 || c.n > c.m)
        throw ConfigError("hit law case requires 1 <= k <= m and 1 <= n <= m");
    HitExact r;
    r.bound = 1.0 - std::exp(-static_cast<double>(c.n) * static_cast<double>(c.k) /
                             static_cast<double>(c.m));
    if (c.k + c.n > c.m) {
        r.product_form = 1.0;
        r.binomial_form = 1.0;
        return r;
    }
    double miss = 1.0;
    for (std::uint64_t j = 0; j < c.n; ++j)
        miss *= 1.0 - static_cast<double>(c.k) / static_cast<double>(c.m - j);
    r.product_form = 1.0 - miss;
    r.binomial_form = 1.0 - std::exp(log_binom(c.m - c.k, c.n) - log_binom(c.m, c.n));
    return r;
}

std::vector<HitBoundViolation> hit_bound_check(std::uint64_t max_m) {
    std::vector<HitBoundViolation> violations;
    for (std::uint64_t m = 1; m <= max_m; ++m) {
        for (std::uint64_t k = 1; k <= m; ++k) {
            for (std::uint64_t n = 1; n <= m; ++n) {
                HitLawCase triple{m, k, n};
                HitExact e = hit_exact(triple);
                if (std::fabs(e.product_form - e.binomial_form) > 1e-12)
                    violations.push_back({triple, e.product_form, -1.0});
                if (e.product_form < e.bound - 1e-12)
                    violations.push_back({triple, e.product_form, e.bound});
            }
        }
    }
    return violations;
}

LargeDeviationResult large_deviation_mc(const TailDistribution& dist, std::uint64_t n,
                                        std::uint64_t trials, std::uint64_t seed) {
    if (trials < 100) throw ConfigError("statistical claims need >= 100 trials");
    std::vector<std::uint64_t> words = {0x4c44ULL, seed};
    auto rng = make_rng(seed, words);
    const double threshold = static_cast<double>(dist.N) * static_cast<double>(n) / 8.0;
    std::uint64_t below = 0;
    std::uniform_int_distribution<std::uint64_t> uniform(0, dist.N);
    std::bernoulli_distribution coin(0.5);
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::uint64_t sum = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            switch (dist.kind) {
                case TailDistribution::Kind::Constant:
                    sum += dist.N;
                    break;
                case TailDistribution::Kind::UniformInt:
                    sum += uniform(rng);
                    break;
                case TailDistribution::Kind::ScaledBernoulliHalf:
                    sum += coin(rng) ? dist.N : 0;
                    break;
            }
        }
        if (static_cast<double>(sum) < threshold) ++below;
    }
    LargeDeviationResult r;
    r.trials = trials;
    r.frequency = static_cast<double>(below) / trials;
    r.sigma = std::sqrt(std::max(r.frequency * (1.0 - r.frequency), 1.0 / trials) / trials);
    r.bound = std::exp(-static_cast<double>(n) / 8.0);
    return r;
}

namespace {

// Per-level cell index of a point under repeated M-adic subdivision.
std::vector<std::uint64_t> cell_path(const std::vector<double>& x, std::uint64_t M, int d,
                                     int depth) {
    std::vector<double> frac = x;
    std::vector<std::uint64_t> path(depth);
    for (int level = 0; level < depth; ++level) {
        std::uint64_t linear = 0;
        for (int a = 0; a < d; ++a) {
            double scaled = frac[a] * M;
            auto digit = static_cast<std::uint64_t>(scaled);
            if (digit >= M) digit = M - 1;
            frac[a] = scaled - digit;
            linear = linear * M + digit;
        }
        path[level] = linear;
    }
    return path;
}

}  // namespace

TwoPointResult two_point_mc(std::uint64_t M, std::uint64_t N, int d, double x, double y,
                            int depth, std::uint64_t trials, std::uint64_t seed) {
    return two_point_mc(M, N, d, std::vector<double>{x}, std::vector<double>{y}, depth, trials,
                        seed);
}

TwoPointResult two_point_mc(std::uint64_t M, std::uint64_t N, int d,
                            const std::vector<double>& x, const std::vector<double>& y,
                            int depth, std::uint64_t trials, std::uint64_t seed) {
    if (x == y) throw ConfigError("two_point_mc requires distinct points");
    const std::uint64_t total = ipow(M, d);
    if (total > 64) throw ConfigError("two_point_mc supports M^d <= 64");
    if (N > total) throw ConfigError("N must be <= M^d");

    auto px = cell_path(x, M, d, depth);
    auto py = cell_path(y, M, d, depth);
    int sep = depth + 1;  // level at which the cells first differ
    for (int level = 0; level < depth; ++level) {
        if (px[level] != py[level]) {
            sep = level + 1;
            break;
        }
    }

    const double p = static_cast<double>(N) / static_cast<double>(total);
    TwoPointResult r;
    r.separation_level = sep;
    r.trials = trials;
    if (sep > depth) {
        r.exact_joint = std::pow(p, depth);
        r.upper_bound_joint = r.exact_joint;
    } else {
        double split = static_cast<double>(N) * (static_cast<double>(N) - 1.0) /
                       (static_cast<double>(total) * (static_cast<double>(total) - 1.0));
        r.exact_joint = std::pow(p, sep - 1) * split * std::pow(p, 2 * (depth - sep));
        r.upper_bound_joint = std::pow(p, 2 * depth - (sep - 1));
    }
    if (r.exact_joint * trials < 10.0)
        throw ConfigError("insufficient expected joint hits at this depth/trial count");

    std::uint64_t joint = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::vector<std::uint64_t> words = {0x5450ULL, t};
        auto rng = make_rng(seed, words);
        bool both_alive = true;
        int level = 0;
        // Shared chain, then the split level where both cells must be drawn.
        for (; level < std::min(sep, depth) && both_alive; ++level) {
            std::uint64_t mask = draw_subset_mask(total, N, rng);
            bool x_in = (mask >> px[level]) & 1ULL;
            bool y_in = (mask >> py[level]) & 1ULL;
            both_alive = x_in && y_in;
        }
        // After separation the two chains live in different cubes, so the
        // choices are independent draws.
        bool x_alive = both_alive, y_alive = both_alive;
        for (; level < depth && (x_alive || y_alive); ++level) {
            if (x_alive) {
                std::uint64_t mask = draw_subset_mask(total, N, rng);
                x_alive = (mask >> px[level]) & 1ULL;
            }
            if (y_alive) {
                std::uint64_t mask = draw_subset_mask(total, N, rng);
                y_alive = (mask >> py[level]) & 1ULL;
            }
        }
        if (x_alive && y_alive) ++joint;
    }
    r.empirical_joint = static_cast<double>(joint) / trials;
    r.sigma = std::sqrt(std::max(r.exact_joint * (1.0 - r.exact_joint), 1.0 / trials) / trials);
    return r;
}

SpreadCoverageResult spread_coverage_mc(std::uint64_t M, std::uint64_t N, int d,
                                        std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1000) throw ConfigError("spread_coverage_mc needs >= 1000 trials");
    const std::uint64_t total = ipow(M, d);
    if (total > 64) throw ConfigError("spread_coverage_mc supports M^d <= 64");
    if (N < 1 || N > total) throw ConfigError("need 1 <= N <= M^d");

    std::uint64_t g = 1;
    while (ipow(g + 1, d) <= N) ++g;
    const std::uint64_t n_star = ipow(g, d);

    SpreadCoverageResult r;
    r.N_star = n_star;
    r.trials = trials;

    // Each child belongs to the subcell containing its near-origin corner:
    // per axis, offset o lands in cell floor(o*g/M). This partitions the
    // children, so X_Q is a count over disjoint cells.
    std::vector<std::vector<std::uint32_t>> child_cells(total);
    std::vector<std::uint64_t> cell_children(n_star, 0);
    for (std::uint64_t child = 0; child < total; ++child) {
        std::uint64_t cv = child;
        std::uint64_t linear = 0;
        std::vector<std::uint64_t> offs(d);
        for (int a = d - 1; a >= 0; --a) {
            offs[a] = cv % M;
            cv /= M;
        }
        for (int a = 0; a < d; ++a) linear = linear * g + offs[a] * g / M;
        child_cells[child].push_back(static_cast<std::uint32_t>(linear));
        ++cell_children[linear];
    }
    r.cell_children = cell_children;
    r.cell_exact.assign(n_star, 0.0);
    r.exact_mean_X = 0.0;
    for (std::uint64_t cell = 0; cell < n_star; ++cell) {
        std::uint64_t c = cell_children[cell];
        double miss = (N > total - c)
                          ? 0.0
                          : std::exp(log_binom(total - c, N) - log_binom(total, N));
        r.cell_exact[cell] = 1.0 - miss;
        r.exact_mean_X += r.cell_exact[cell];
    }

    std::vector<std::uint64_t> cell_hits(n_star, 0);
    double sum_X = 0.0, sum_X2 = 0.0;
    std::vector<std::uint64_t> words = {0x5343ULL, seed};
    auto rng = make_rng(seed, words);
    std::vector<char> hit(n_star);
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::uint64_t mask = draw_subset_mask(total, N, rng);
        std::fill(hit.begin(), hit.end(), 0);
        for (std::uint64_t child = 0; child < total; ++child) {
            if (!((mask >> child) & 1ULL)) continue;
            for (std::uint32_t cell : child_cells[child]) hit[cell] = 1;
        }
        std::uint64_t X = 0;
        for (std::uint64_t cell = 0; cell < n_star; ++cell) {
            if (hit[cell]) {
                ++X;
                ++cell_hits[cell];
            }
        }
        sum_X += static_cast<double>(X);
        sum_X2 += static_cast<double>(X) * static_cast<double>(X);
    }
    r.cell_frequency.assign(n_star, 0.0);
    for (std::uint64_t cell = 0; cell < n_star; ++cell)
        r.cell_frequency[cell] = static_cast<double>(cell_hits[cell]) / trials;
    r.mean_X = sum_X / trials;
    double var = std::max(sum_X2 / trials - r.mean_X * r.mean_X, 0.0);
    r.sigma_mean = std::sqrt(var / trials);
    return r;
}

double TargetSet::alpha() const {
    return std::log(static_cast<double>(pattern.size())) /
           (std::log(static_cast<double>(M)));
}

std::vector<std::uint64_t> simulate_intersection_counts(std::uint64_t M, std::uint64_t N,
                                                        const TargetSet& target, int depth,
                                                        std::uint64_t seed) {
    const std::uint64_t total = ipow(M, target.d);
    if (total > 64) throw ConfigError("simulate_intersection_counts supports M^d <= 64");
    if (target.pattern.empty()) throw ConfigError("target pattern must be nonempty");
    std::uint64_t pattern_mask = 0;
    for (std::uint32_t c : target.pattern) {
        if (c >= total) throw ConfigError("target pattern offset out of range");
        pattern_mask |= 1ULL << c;
    }
    std::vector<std::uint64_t> words = {0x4849ULL, seed};
    auto rng = make_rng(seed, words);
    std::vector<std::uint64_t> counts(depth, 0);
    std::uint64_t survivors = 1;  // the root cube
    for (int level = 0; level < depth && survivors > 0; ++level) {
        std::uint64_t next = 0;
        for (std::uint64_t cube = 0; cube < survivors; ++cube) {
            std::uint64_t mask = draw_subset_mask(total, N, rng);
            next += static_cast<std::uint64_t>(std::popcount(mask & pattern_mask));
        }
        counts[level] = next;
        survivors = next;
    }
    return counts;
}

HitCurveResult hit_probability_mc(std::uint64_t M, std::uint64_t N, const TargetSet& target,
                                  const McConfig& mc) {
    if (mc.trials < 100) throw ConfigError("statistical claims need >= 100 trials");
    HitCurveResult result;
    result.indicators_monotone = true;
    std::vector<std::uint64_t> hits(mc.depth, 0);
    for (std::uint64_t t = 0; t < mc.trials; ++t) {
        auto counts = simulate_intersection_counts(M, N, target, mc.depth,
                                                   hash_combine(mc.seed, t));
        bool seen_zero = false;
        for (int n = 0; n < mc.depth; ++n) {
            if (counts[n] > 0) {
                if (seen_zero) result.indicators_monotone = false;
                ++hits[n];
            } else {
                seen_zero = true;
            }
        }
    }
    for (int n = 1; n <= mc.depth; ++n) {
        double f = static_cast<double>(hits[n - 1]) / mc.trials;
        double s = std::sqrt(std::max(f * (1.0 - f), 1.0 / mc.trials) / mc.trials);
        result.curve.push_back(
            {n, f, f - mc.confidence_multiplier * s, f + mc.confidence_multiplier * s});
    }
    return result;
}

double expected_intersection_log(const TargetSet& target, std::uint64_t M, std::uint64_t N,
                                 int n) {
    const double log_M = std::log(static_cast<double>(M));
    return n * (std::log(static_cast<double>(target.pattern.size())) +
                std::log(static_cast<double>(N)) - target.d * log_M);
}

SurvivorDimensionResult survivor_dimension_mc(std::uint64_t M, std::uint64_t N,
                                              const TargetSet& target, const McConfig& mc) {
    if (mc.trials < 100) throw ConfigError("statistical claims need >= 100 trials");
    SurvivorDimensionResult result;
    result.trials = mc.trials;
    result.target_exponent =
        target.alpha() + std::log(static_cast<double>(N)) / std::log(static_cast<double>(M)) -
        target.d;
    const double log_M = std::log(static_cast<double>(M));
    for (std::uint64_t t = 0; t < mc.trials; ++t) {
        auto counts = simulate_intersection_counts(M, N, target, mc.depth,
                                                   hash_combine(mc.seed ^ 0x53445ULL, t));
        if (counts[mc.depth - 1] == 0) continue;
        std::vector<std::pair<double, double>> pts;
        for (int n = 1; n <= mc.depth; ++n)
            pts.emplace_back(n * log_M, std::log(static_cast<double>(counts[n - 1])));
        result.slopes.push_back(fit_slope(pts, 0, pts.size()).least_squares_slope);
    }
    result.surviving_trials = result.slopes.size();
    if (!result.slopes.empty()) {
        result.upper_quartile = quantile(result.slopes, 0.75);
        result.median = quantile(result.slopes, 0.5);
    } else {
        result.upper_quartile = result.median = 0.0;
    }
    return result;
}

}  // namespace moran
