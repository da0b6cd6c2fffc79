#include "moran/realization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "moran/errors.hpp"
#include "moran/rng.hpp"

namespace moran {

namespace {

constexpr std::uint64_t kExpandSalt = 0x45585041ULL;   // expansion stream
constexpr std::uint64_t kSampleSalt = 0x53414d50ULL;   // mu-sampling stream
constexpr std::uint64_t kMaxChildGrid = 1ULL << 26;

std::uint64_t ipow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
            throw BudgetExhausted("child grid size overflows");
        r *= base;
    }
    return r;
}

// Largest g with g^d <= N.
std::uint64_t integer_root(std::uint64_t N, int d) {
    std::uint64_t g = static_cast<std::uint64_t>(std::floor(std::pow(
        static_cast<double>(N), 1.0 / d)));
    while (g > 1 && ipow(g, d) > N) --g;
    while (ipow(g + 1, d) <= N) ++g;
    return g;
}

}  // namespace

CubeAddress CubeAddress::child(std::uint32_t digit) const {
    CubeAddress c = *this;
    c.digits.push_back(digit);
    return c;
}

CubeAddress CubeAddress::parent() const {
    CubeAddress c = *this;
    c.digits.pop_back();
    return c;
}

std::vector<std::uint32_t> decode_offsets(std::uint32_t digit, std::uint64_t M, int d) {
    std::vector<std::uint32_t> offs(d);
    std::uint64_t v = digit;
    for (int a = d - 1; a >= 0; --a) {
        offs[a] = static_cast<std::uint32_t>(v % M);
        v /= M;
    }
    return offs;
}

PlacementStrategy PlacementStrategy::uniform_random(std::uint64_t master_seed) {
    PlacementStrategy s;
    s.kind = Kind::UniformRandom;
    s.master_seed = master_seed;
    return s;
}

PlacementStrategy PlacementStrategy::fixed_pattern(std::vector<std::uint32_t> pattern) {
    PlacementStrategy s;
    s.kind = Kind::FixedPattern;
    std::sort(pattern.begin(), pattern.end());
    s.pattern = std::move(pattern);
    return s;
}

PlacementStrategy PlacementStrategy::left_packed() {
    PlacementStrategy s;
    s.kind = Kind::LeftPacked;
    return s;
}

PlacementStrategy PlacementStrategy::uniform_spread() {
    PlacementStrategy s;
    s.kind = Kind::UniformSpread;
    return s;
}

std::string PlacementStrategy::describe() const {
    switch (kind) {
        case Kind::UniformRandom:
            return "uniform_random(seed=" + std::to_string(master_seed) + ")";
        case Kind::FixedPattern: {
            std::string r = "fixed_pattern(";
            for (std::size_t i = 0; i < pattern.size(); ++i)
                r += (i ? "," : "") + std::to_string(pattern[i]);
            return r + ")";
        }
        case Kind::LeftPacked:
            return "left_packed";
        case Kind::UniformSpread:
            return "uniform_spread";
    }
    return "?";
}

Realization::Realization(ConstructionParams params, PlacementStrategy strategy,
                         std::uint64_t budget)
    : params_(std::move(params)), strategy_(std::move(strategy)), budget_(budget) {
    scales_ = scale_table(params_);
    if (strategy_.kind == PlacementStrategy::Kind::FixedPattern) {
        if (std::adjacent_find(strategy_.pattern.begin(), strategy_.pattern.end()) !=
            strategy_.pattern.end())
            throw ConfigError("fixed pattern has duplicate offsets");
        for (int k = 1; k <= params_.max_depth; ++k) {
            if (level_N(k) != strategy_.pattern.size())
                throw ConfigError("fixed pattern size must equal N_k at every level");
            std::uint64_t total = ipow(level_M(k), params_.d);
            if (!strategy_.pattern.empty() && strategy_.pattern.back() >= total)
                throw ConfigError("fixed pattern offset out of range");
        }
    }
}

std::uint64_t Realization::level_M(int k) const {
    auto M = params_.seq.term(k).M;
    if (!M) throw BudgetExhausted("M_" + std::to_string(k) + " too large to materialize");
    return *M;
}

std::uint64_t Realization::level_N(int k) const {
    auto N = params_.seq.term(k).N;
    if (!N) throw BudgetExhausted("N_" + std::to_string(k) + " too large to materialize");
    return *N;
}

std::vector<std::uint32_t> Realization::expand(const CubeAddress& cube) const {
    int child_level = cube.level() + 1;
    if (child_level > params_.max_depth)
        throw DepthOutOfRange("expand below max_depth");
    const std::uint64_t M = level_M(child_level);
    const std::uint64_t N = level_N(child_level);
    const std::uint64_t total = ipow(M, params_.d);

    std::vector<std::uint32_t> chosen;
    chosen.reserve(N);
    switch (strategy_.kind) {
        case PlacementStrategy::Kind::FixedPattern:
            return strategy_.pattern;
        case PlacementStrategy::Kind::LeftPacked:
            // Row-major linear order is the lexicographic order of offset
            // vectors, so the first N indices pack against the origin corner.
            for (std::uint64_t i = 0; i < N; ++i)
                chosen.push_back(static_cast<std::uint32_t>(i));
            return chosen;
        case PlacementStrategy::Kind::UniformSpread: {
            const std::uint64_t g = integer_root(N, params_.d);
            std::set<std::uint32_t> picked;
            // One representative child per cell of the g^d subgrid: the child
            // whose corner is nearest the cell corner z nearest the origin,
            // ties resolved toward the origin.
            std::vector<std::uint64_t> j(params_.d, 0);
            bool done = false;
            while (!done) {
                std::uint64_t linear = 0;
                for (int a = 0; a < params_.d; ++a) {
                    std::uint64_t t = j[a] * M;  // cell corner = t/g in child units
                    std::uint64_t lo = t / g;
                    std::uint64_t o = lo;
                    if (lo + 1 <= M - 1) {
                        std::uint64_t dist_lo = t - g * lo;
                        std::uint64_t dist_hi = g * (lo + 1) - t;
                        if (dist_hi < dist_lo) o = lo + 1;
                    }
                    if (o > M - 1) o = M - 1;
                    linear = linear * M + o;
                }
                picked.insert(static_cast<std::uint32_t>(linear));
                for (int a = params_.d - 1; a >= 0; --a) {
                    if (++j[a] < g) break;
                    j[a] = 0;
                    if (a == 0) done = true;
                }
            }
            // Top up with the lexicographically smallest unused children.
            for (std::uint64_t i = 0; picked.size() < N && i < total; ++i)
                picked.insert(static_cast<std::uint32_t>(i));
            chosen.assign(picked.begin(), picked.end());
            return chosen;
        }
        case PlacementStrategy::Kind::UniformRandom:
        default: {
            if (total > kMaxChildGrid)
                throw BudgetExhausted("child grid too large for random expansion");
            // Partial Fisher-Yates; the resulting N-subset is uniform over all
            // N-subsets, matching the sequential uniform draws in distribution.
            std::vector<std::uint64_t> words;
            words.reserve(cube.digits.size() + 2);
            words.push_back(kExpandSalt);
            words.push_back(cube.digits.size());
            for (auto dgt : cube.digits) words.push_back(dgt);
            auto rng = make_rng(strategy_.master_seed, words);
            std::vector<std::uint32_t> pool(total);
            std::iota(pool.begin(), pool.end(), 0u);
            for (std::uint64_t i = 0; i < N; ++i) {
                std::uniform_int_distribution<std::uint64_t> pick(i, total - 1);
                std::swap(pool[i], pool[pick(rng)]);
            }
            chosen.assign(pool.begin(), pool.begin() + N);
            std::sort(chosen.begin(), chosen.end());
            return chosen;
        }
    }
}

void Realization::enumerate_level(
    int n, const std::function<void(const CubeAddress&)>& visit) const {
    if (n < 0 || n > params_.max_depth)
        throw DepthOutOfRange("enumerate_level outside [0, max_depth]");
    if (scales_.log_P[n] > std::log(static_cast<double>(budget_)) + 1e-9)
        throw BudgetExhausted("level-" + std::to_string(n) + " cube count exceeds budget");
    CubeAddress addr;
    std::function<void()> dfs = [&]() {
        if (addr.level() == n) {
            visit(addr);
            return;
        }
        for (std::uint32_t digit : expand(addr)) {
            addr.digits.push_back(digit);
            dfs();
            addr.digits.pop_back();
        }
    };
    dfs();
}

std::vector<CubeAddress> Realization::level_cubes(int n) const {
    std::vector<CubeAddress> out;
    enumerate_level(n, [&](const CubeAddress& a) { out.push_back(a); });
    return out;
}

MuSample Realization::sample_mu(std::uint64_t sample_seed) const {
    std::vector<std::uint64_t> words = {kSampleSalt, sample_seed};
    auto rng = make_rng(strategy_.master_seed, words);
    MuSample s;
    s.seed = sample_seed;
    for (int level = 0; level < params_.max_depth; ++level) {
        auto children = expand(s.path);
        std::uniform_int_distribution<std::size_t> pick(0, children.size() - 1);
        s.path.digits.push_back(children[pick(rng)]);
    }
    s.point = corner(s.path);
    return s;
}

std::vector<double> Realization::corner(const CubeAddress& cube) const {
    std::vector<double> x(params_.d, 0.0);
    for (int k = 1; k <= cube.level(); ++k) {
        double r_k = std::exp(scales_.log_r[k]);
        auto offs = decode_offsets(cube.digits[k - 1], level_M(k), params_.d);
        for (int a = 0; a < params_.d; ++a) x[a] += offs[a] * r_k;
    }
    return x;
}

double Realization::side_length(int level) const { return std::exp(scales_.log_r[level]); }

double Realization::distance_to_cube(const std::vector<double>& x,
                                     const CubeAddress& cube) const {
    auto lo = corner(cube);
    double side = side_length(cube.level());
    double dist2 = 0.0;
    for (int a = 0; a < params_.d; ++a) {
        double g = std::max({0.0, lo[a] - x[a], x[a] - (lo[a] + side)});
        dist2 += g * g;
    }
    return std::sqrt(dist2);
}

void Realization::cubes_in_ball(const std::vector<double>& x, double radius, int depth,
                                const std::function<void(const CubeAddress&)>& visit) const {
    if (depth < 0 || depth > params_.max_depth)
        throw DepthOutOfRange("cubes_in_ball depth outside [0, max_depth]");
    const double r_eff = radius * (1.0 + 1e-12) + 1e-300;
    std::uint64_t visited = 0;
    CubeAddress addr;
    std::function<void()> dfs = [&]() {
        if (++visited > budget_) throw BudgetExhausted("ball query exceeded cube budget");
        if (distance_to_cube(x, addr) > r_eff) return;
        if (addr.level() == depth) {
            visit(addr);
            return;
        }
        for (std::uint32_t digit : expand(addr)) {
            addr.digits.push_back(digit);
            dfs();
            addr.digits.pop_back();
        }
    };
    dfs();
}

std::uint64_t Realization::count_cubes_in_ball(const std::vector<double>& x, double radius,
                                               int depth) const {
    std::uint64_t count = 0;
    cubes_in_ball(x, radius, depth, [&](const CubeAddress&) { ++count; });
    return count;
}

double Realization::mu_ball_log_mass(const std::vector<double>& x, double log_radius,
                                     int depth) const {
    if (depth < 1 || depth > params_.max_depth)
        throw DepthOutOfRange("mu_ball_log_mass depth outside [1, max_depth]");
    if (log_radius < scales_.log_r[depth] - 1e-9)
        throw ScaleTooFine("radius below the level-" + std::to_string(depth) + " resolution");
    std::uint64_t count = count_cubes_in_ball(x, std::exp(log_radius), depth);
    if (count == 0) return -std::numeric_limits<double>::infinity();
    return std::log(static_cast<double>(count)) - scales_.log_P[depth];
}

}  // namespace moran
