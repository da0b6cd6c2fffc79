// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "moran/dims.hpp"
#include "moran/errors.hpp"
#include "moran/estimators.hpp"
#include "moran/probability.hpp"
#include "moran/realization.hpp"
#include "moran/rng.hpp"
#include "moran/stats.hpp"

using namespace moran;

namespace {

int failures = 0;

void verdict(int criterion, bool ok, const std::string& name, const std::string& detail) {
    std::printf("%s  %2d  %-28s %s\n", ok ? "PASS" : "FAIL", criterion, name.c_str(),
                detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

const double kCantorDim = std::log(2.0) / std::log(3.0);

ConstructionParams figure1(int depth = 3) {
    return validate(SequenceSpec::explicit_list({{2, 3}, {3, 4}, {2, 2}},
                                                SequenceSpec::Tail::RepeatLast),
                    2, depth);
}

void criterion1() {
    struct Case {
        std::uint64_t M, N;
        int d;
    } cases[] = {{3, 2, 1}, {2, 3, 2}, {4, 9, 2}, {2, 4, 2}};
    bool ok = true;
    double worst = 0.0;
    for (auto c : cases) {
        auto params = validate(SequenceSpec::constant(c.M, c.N), c.d, 12);
        double expect = std::min(
            std::log(static_cast<double>(c.N)) / std::log(static_cast<double>(c.M)),
            static_cast<double>(c.d));
        for (DimKind kind : kAllDimKinds) {
            auto p = profile(params, kind, 12);
            if (!p.exact_limit) {
                ok = false;
                continue;
            }
            double err = std::fabs(*p.exact_limit - expect);
            worst = std::max(worst, err);
            if (err > 1e-12) ok = false;
        }
    }
    verdict(1, ok, "formula engine exactness", "max |error| = " + fmt(worst));
}

void criterion2() {
    bool ok = true;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        PlacementStrategy fig_strategies[] = {PlacementStrategy::uniform_random(seed),
                                              PlacementStrategy::left_packed(),
                                              PlacementStrategy::uniform_spread()};
        for (const auto& strat : fig_strategies) {
            Realization r(figure1(), strat);
            if (r.level_cubes(3).size() != 24) ok = false;
        }
        PlacementStrategy c_strategies[] = {
            PlacementStrategy::uniform_random(seed), PlacementStrategy::left_packed(),
            PlacementStrategy::uniform_spread(), PlacementStrategy::fixed_pattern({0, 2})};
        for (const auto& strat : c_strategies) {
            Realization r(validate(SequenceSpec::constant(3, 2), 1, 10), strat);
            if (r.level_cubes(10).size() != 1024) ok = false;
        }
    }
    verdict(2, ok, "count law", "P_3 = 24, P_10 = 1024 across strategies and seeds");
}

void criterion3() {
    Realization cantor(validate(SequenceSpec::constant(3, 2), 1, 9),
                       PlacementStrategy::fixed_pattern({0, 2}));
    std::vector<double> log_deltas;
    for (int j = 2; j <= 9; ++j) log_deltas.push_back(-j * std::log(3.0));
    double cantor_slope =
        box_dim_fit(box_count_curve(cantor, 9, log_deltas)).least_squares_slope;
    bool ok = std::fabs(cantor_slope - kCantorDim) < 0.03;

    double sum = 0.0;
    const int seeds = 20;
    for (int s = 0; s < seeds; ++s) {
        Realization r(validate(SequenceSpec::constant(3, 2), 1, 10),
                      PlacementStrategy::uniform_random(s));
        std::vector<double> lds;
        for (int j = 2; j <= 10; ++j) lds.push_back(-j * std::log(3.0));
        sum += box_dim_fit(box_count_curve(r, 10, lds)).least_squares_slope;
    }
    double mean = sum / seeds;
    if (std::fabs(mean - kCantorDim) >= 0.05) ok = false;
    verdict(3, ok, "box-dimension recovery",
            "pattern slope " + fmt(cantor_slope) + ", random mean " + fmt(mean));
}

void criterion4() {
    auto params = validate(SequenceSpec::tower_schedule(), 1, 7);
    auto t_star = profile(params, DimKind::TStar, 7);
    auto s2 = profile(params, DimKind::S2, 7);
    double t6 = t_star.values[5].second;  // quotient at k = 6
    double s2_tail = s2.values[5].second;
    bool ok = t6 < 0.15 && s2_tail > 0.9;
    verdict(4, ok, "exceptional schedule",
            "t* quotient at k=6 " + fmt(t6) + ", s2 quotient " + fmt(s2_tail));
}

void criterion5() {
    auto violations = hit_bound_check(20);
    verdict(5, violations.empty(), "hitting-number lemma",
            std::to_string(violations.size()) + " violations over m <= 20");
}

void criterion6() {
    TailDistribution uni{TailDistribution::Kind::UniformInt, 10};
    auto a = large_deviation_mc(uni, 16, 100000, 1001);
    TailDistribution ber{TailDistribution::Kind::ScaledBernoulliHalf, 4};
    auto b = large_deviation_mc(ber, 32, 100000, 1002);
    bool ok = (a.frequency - 3.0 * a.sigma <= a.bound) &&
              (b.frequency - 3.0 * b.sigma <= b.bound);
    verdict(6, ok, "large-deviation bound",
            "uniform tail " + fmt(a.frequency) + " <= " + fmt(a.bound) + ", bernoulli tail " +
                fmt(b.frequency) + " <= " + fmt(b.bound));
}

void criterion7() {
    struct Case {
        double x, y;
        int depth;
    } cases[] = {{0.10, 0.10 + 1e-9, 4}, {0.10, 0.90, 4}, {0.04, 0.30, 5}};
    bool ok = true;
    double worst = 0.0;
    for (auto c : cases) {
        auto r = two_point_mc(3, 2, 1, c.x, c.y, c.depth, 100000, 2024);
        double dev = std::fabs(r.empirical_joint - r.exact_joint) / r.sigma;
        worst = std::max(worst, dev);
        if (dev > 3.0) ok = false;
        if (r.exact_joint > r.upper_bound_joint + 1e-15) ok = false;
    }
    verdict(7, ok, "two-point correlation", "worst deviation " + fmt(worst) + " sigma");
}

void criterion8() {
    bool ok = true;
    TargetSet point{3, 1, {0}};
    McConfig mc;
    mc.trials = 10000;
    mc.depth = 10;
    mc.seed = 8001;
    auto curve = hit_probability_mc(3, 2, point, mc);
    if (!curve.indicators_monotone) ok = false;
    double worst = 0.0;
    for (const auto& pt : curve.curve) {
        double exact = std::pow(2.0 / 3.0, pt.n);
        double sigma = std::sqrt(std::max(exact * (1.0 - exact), 1e-8) / mc.trials);
        double dev = std::fabs(pt.probability - exact) / sigma;
        worst = std::max(worst, dev);
        if (dev > 3.0) ok = false;
    }

    TargetSet cases[] = {{3, 1, {0, 2}}, {3, 1, {0}}, {3, 1, {0, 1, 2}}};
    int case_depth[] = {4, 6, 5};
    for (int i = 0; i < 3; ++i) {
        const int n = case_depth[i];
        const std::uint64_t trials = 20000;
        double sum = 0.0, sum2 = 0.0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            auto counts =
                simulate_intersection_counts(3, 2, cases[i], n, hash_combine(8100 + i, t));
            double c = static_cast<double>(counts[n - 1]);
            sum += c;
            sum2 += c * c;
        }
        double mean = sum / trials;
        double sigma_mean =
            std::sqrt(std::max(sum2 / trials - mean * mean, 1e-12) / trials);
        double exact = std::exp(expected_intersection_log(cases[i], 3, 2, n));
        if (std::fabs(mean - exact) > 3.0 * sigma_mean) ok = false;
    }
    verdict(8, ok, "hitting laws", "point-law worst deviation " + fmt(worst) + " sigma");
}

void criterion9() {
    TargetSet cantor{3, 1, {0, 2}};
    McConfig mc;
    mc.trials = 5000;
    mc.depth = 12;
    mc.seed = 9001;
    auto r = survivor_dimension_mc(3, 2, cantor, mc);
    const double target = 2.0 * kCantorDim - 1.0;
    bool ok = r.surviving_trials >= 1000 && std::fabs(r.upper_quartile - target) < 0.08;
    verdict(9, ok, "survivor dimension",
            "upper quartile " + fmt(r.upper_quartile) + " vs " + fmt(target) + " (" +
                std::to_string(r.surviving_trials) + " survivors)");
}

void criterion10() {
    bool ok = true;
    // subset-uniformity chi-square on small grids
    struct Small {
        std::uint64_t M, N;
        int d;
    } smalls[] = {{3, 2, 1}, {2, 2, 2}, {3, 1, 1}, {2, 3, 3}};
    for (auto c : smalls) {
        std::map<std::vector<std::uint32_t>, int> counts;
        auto params = validate(SequenceSpec::constant(c.M, c.N), c.d, 1);
        const int draws = 12000;
        for (int t = 0; t < draws; ++t) {
            Realization r(params, PlacementStrategy::uniform_random(
                                      hash_combine(10007, t * 4 + c.d)));
            counts[r.expand(CubeAddress{})]++;
        }
        double total = std::pow(static_cast<double>(c.M), c.d);
        double subsets = std::exp(log_binom(static_cast<std::uint64_t>(std::lround(total)), c.N));
        double expected = draws / subsets;
        double chi = 0.0;
        double seen = 0.0;
        for (const auto& [subset, cnt] : counts) {
            chi += (cnt - expected) * (cnt - expected) / expected;
            seen += 1.0;
        }
        chi += (subsets - seen) * expected;  // unobserved subsets
        if (chi2_sf(chi, static_cast<int>(std::lround(subsets)) - 1) <= 0.01) ok = false;
    }

    // mu-sampler multinomial over level-8 cubes: chi-square within 3 sigma
    Realization r(validate(SequenceSpec::constant(3, 2), 1, 8),
                  PlacementStrategy::uniform_random(1042));
    std::map<std::vector<std::uint32_t>, int> counts;
    const int samples = 25600;
    for (int s = 0; s < samples; ++s) counts[r.sample_mu(s).path.digits]++;
    if (counts.size() != 256) ok = false;
    double expected = samples / 256.0;
    double chi = 0.0;
    for (const auto& [path, cnt] : counts)
        chi += (cnt - expected) * (cnt - expected) / expected;
    const int dof = 255;
    if (std::fabs(chi - dof) > 3.0 * std::sqrt(2.0 * dof)) ok = false;

    // expansion order-independence across 10 seeds
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Realization a(validate(SequenceSpec::constant(4, 3), 2, 3),
                      PlacementStrategy::uniform_random(seed));
        Realization b(validate(SequenceSpec::constant(4, 3), 2, 3),
                      PlacementStrategy::uniform_random(seed));
        auto cubes = a.level_cubes(2);
        for (auto it = cubes.rbegin(); it != cubes.rend(); ++it)
            if (a.expand(*it) != b.expand(*it)) ok = false;
        if (a.level_cubes(3) != b.level_cubes(3)) ok = false;
    }
    verdict(10, ok, "sampling correctness",
            "subset chi-square, mu multinomial chi " + fmt(chi) + ", order independence");
}

void criterion11() {
    // Fixed Cantor pattern: digit 1 never appears.
    Realization cantor(validate(SequenceSpec::constant(3, 2), 1, 20),
                       PlacementStrategy::fixed_pattern({0, 2}));
    std::vector<MuSample> pattern_samples;
    for (int s = 0; s < 500; ++s) pattern_samples.push_back(cantor.sample_mu(s));
    auto fixed = digit_frequency_test(cantor, pattern_samples, 3, 20);
    bool ok = fixed.frequency[1] == 0.0;

    // Random construction: marginal digit law is uniform; a fresh realization
    // per sample removes the quenched bias of the shallow levels.
    auto params = validate(SequenceSpec::constant(3, 2), 1, 20);
    std::vector<std::uint64_t> digit_counts(3, 0);
    const int samples = 10000, digits = 20;
    for (int s = 0; s < samples; ++s) {
        Realization r(params,
                      PlacementStrategy::uniform_random(hash_combine(11001, s)));
        auto sample = r.sample_mu(static_cast<std::uint64_t>(s));
        for (int k = 0; k < digits; ++k) ++digit_counts[sample.path.digits[k]];
    }
    const double total = static_cast<double>(samples) * digits;
    const double sigma = std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / total);
    double worst = 0.0;
    for (int digit = 0; digit < 3; ++digit) {
        double f = digit_counts[digit] / total;
        worst = std::max(worst, std::fabs(f - 1.0 / 3.0));
        if (std::fabs(f - 1.0 / 3.0) > 3.0 * sigma) ok = false;
    }
    verdict(11, ok, "digit frequencies",
            "pattern digit-1 freq " + fmt(fixed.frequency[1]) + ", random worst dev " +
                fmt(worst) + " (3 sigma = " + fmt(3.0 * sigma) + ")");
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    auto dt = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::printf("%d of 11 criteria passed in %lld ms\n", 11 - failures,
                static_cast<long long>(dt));
    return failures == 0 ? 0 : 1;
}
