#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "moran/params.hpp"

namespace moran {

// Address of a level-n cube: one child index per level, each a row-major
// linear index into the M_k^d subdivision of its parent. Addresses are exact,
// so they double as cube identities.
struct CubeAddress {
    std::vector<std::uint32_t> digits;

    int level() const { return static_cast<int>(digits.size()); }
    CubeAddress child(std::uint32_t digit) const;
    CubeAddress parent() const;
    auto operator<=>(const CubeAddress&) const = default;
};

// Decodes the linear child index at a level into per-axis offsets.
std::vector<std::uint32_t> decode_offsets(std::uint32_t digit, std::uint64_t M, int d);

struct PlacementStrategy {
    enum class Kind { UniformRandom, FixedPattern, LeftPacked, UniformSpread };

    Kind kind = Kind::UniformRandom;
    std::uint64_t master_seed = 0;
    // FixedPattern: linear child indices, same set at every level (requires a
    // constant sequence so the pattern size matches every N_k).
    std::vector<std::uint32_t> pattern;

    static PlacementStrategy uniform_random(std::uint64_t master_seed);
    static PlacementStrategy fixed_pattern(std::vector<std::uint32_t> pattern);
    static PlacementStrategy left_packed();
    static PlacementStrategy uniform_spread();
    std::string describe() const;
};

struct MuSample {
    std::vector<double> point;  // corner of the max-depth cube
    CubeAddress path;
    std::uint64_t seed;
};

class Realization {
  public:
    Realization(ConstructionParams params, PlacementStrategy strategy,
                std::uint64_t budget = 5'000'000);

    const ConstructionParams& params() const { return params_; }
    const PlacementStrategy& strategy() const { return strategy_; }
    const ScaleTable& scales() const { return scales_; }
    std::uint64_t budget() const { return budget_; }

    // Children of a cube; a pure function of (strategy, address), sorted
    // ascending. Exactly N_{level+1} distinct digits.
    std::vector<std::uint32_t> expand(const CubeAddress& cube) const;

    // Depth-first enumeration of the P_n level-n cubes. Throws BudgetExhausted
    // up front when P_n exceeds the budget.
    void enumerate_level(int n, const std::function<void(const CubeAddress&)>& visit) const;
    std::vector<CubeAddress> level_cubes(int n) const;

    // One draw from the natural measure: at each level one child uniformly
    // among the chosen N. The point is the full-depth cube corner.
    MuSample sample_mu(std::uint64_t sample_seed) const;

    // log of mu(B(x, r)) resolved at the given level; -inf when the closed
    // ball misses every level-`depth` cube.
    double mu_ball_log_mass(const std::vector<double>& x, double log_radius, int depth) const;

    std::vector<double> corner(const CubeAddress& cube) const;
    double side_length(int level) const;

    // Closed Euclidean distance from x to the cube's box.
    double distance_to_cube(const std::vector<double>& x, const CubeAddress& cube) const;

    // Level-`depth` cubes intersecting the closed ball B(x, r); prunes whole
    // subtrees by the box-ball test.
    std::uint64_t count_cubes_in_ball(const std::vector<double>& x, double radius,
                                      int depth) const;
    void cubes_in_ball(const std::vector<double>& x, double radius, int depth,
                       const std::function<void(const CubeAddress&)>& visit) const;

  private:
    std::uint64_t level_M(int level_from_1) const;  // integer M_k or throws
    std::uint64_t level_N(int level_from_1) const;

    ConstructionParams params_;
    PlacementStrategy strategy_;
    ScaleTable scales_;
    std::uint64_t budget_;
};

}  // namespace moran
