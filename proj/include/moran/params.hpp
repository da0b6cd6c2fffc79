#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace moran {

// One level of the subdivision sequence. Counts are carried as natural logs so
// that schedules like M_k = 3^{n_k} stay representable at any depth; the exact
// integer values are kept alongside whenever they fit in 64 bits (realizations
// need them, dimension formulas do not).
struct LevelTerm {
    double log_M = 0.0;
    double log_N = 0.0;
    std::optional<std::uint64_t> M;
    std::optional<std::uint64_t> N;
};

// Total (infinite) specification of the sequences {M_k}, {N_k}.
struct SequenceSpec {
    enum class Kind { Constant, Periodic, Explicit, TowerSchedule };
    enum class Tail { RepeatLast, Periodic };

    Kind kind = Kind::Constant;
    // Constant: one pair. Periodic: the period. Explicit: the finite prefix.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    Tail tail = Tail::RepeatLast;  // explicit specs only

    static SequenceSpec constant(std::uint64_t M, std::uint64_t N);
    static SequenceSpec periodic(std::vector<std::pair<std::uint64_t, std::uint64_t>> period);
    static SequenceSpec explicit_list(std::vector<std::pair<std::uint64_t, std::uint64_t>> prefix,
                                      Tail tail);
    // M_k = 3^{n_k}, N_k = 2^{n_k} with n_1 = 1, n_{k+1} = k^2 * s_k,
    // s_k = n_1 + ... + n_k (so n_k / s_k -> 1).
    static SequenceSpec tower_schedule();

    LevelTerm term(int k) const;  // 1-based level index
    bool bounded_N() const { return kind != Kind::TowerSchedule; }
    std::string describe() const;
};

struct ConstructionParams {
    int d = 1;
    SequenceSpec seq;
    int max_depth = 1;
};

// Cumulative log-scale quantities for n = 0..max_depth.
struct ScaleTable {
    std::vector<double> log_P;  // log of prod N_i
    std::vector<double> log_r;  // log of (prod M_i)^-1, negative
    std::vector<double> log_p;  // log_P + d*log_r
    int depth() const { return static_cast<int>(log_P.size()) - 1; }
};

// Checks M_k >= 2 and 1 <= N_k <= M_k^d for every materialized level.
// Throws InvalidSequence naming the first offending index.
ConstructionParams validate(const SequenceSpec& spec, int d, int max_depth);

ScaleTable scale_table(const ConstructionParams& params);

// Logs of the windowed product P(n,n+k) = prod_{i=n}^{n+k} N_i and the
// windowed scale r(n,n+k). Throws DepthOutOfRange outside [1, max_depth].
struct WindowLogs {
    double log_P_window;
    double log_r_window;
};
WindowLogs window(const ConstructionParams& params, int n, int k);

}  // namespace moran
