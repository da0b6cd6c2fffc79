#include "moran/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "moran/errors.hpp"

namespace moran {

namespace {

constexpr double kLog2 = 0.6931471805599453;
constexpr double kLog3 = 1.0986122886681098;

// n_k for the built-in exceptional schedule. Values explode, so keep doubles;
// only the first few levels have integer M_k = 3^{n_k} anyway.
double tower_schedule_n(int k) {
    double n = 1.0, s = 1.0;
    for (int j = 1; j < k; ++j) {
        double next = static_cast<double>(j) * static_cast<double>(j) * s;
        s += next;
        n = next;
    }
    return n;
}

std::optional<std::uint64_t> pow_u64(std::uint64_t base, double exponent) {
    if (exponent > 39.0) return std::nullopt;  // 3^40 > 2^63
    std::uint64_t r = 1;
    for (int i = 0; i < static_cast<int>(exponent); ++i) {
        if (r > UINT64_MAX / base) return std::nullopt;
        r *= base;
    }
    return r;
}

}  // namespace

SequenceSpec SequenceSpec::constant(std::uint64_t M, std::uint64_t N) {
    SequenceSpec s;
    s.kind = Kind::Constant;
    s.pairs = {{M, N}};
    return s;
}

SequenceSpec SequenceSpec::periodic(std::vector<std::pair<std::uint64_t, std::uint64_t>> period) {
    SequenceSpec s;
    s.kind = Kind::Periodic;
    s.pairs = std::move(period);
    return s;
}

SequenceSpec SequenceSpec::explicit_list(
    std::vector<std::pair<std::uint64_t, std::uint64_t>> prefix, Tail tail) {
    SequenceSpec s;
    s.kind = Kind::Explicit;
    s.pairs = std::move(prefix);
    s.tail = tail;
    return s;
}

SequenceSpec SequenceSpec::tower_schedule() {
    SequenceSpec s;
    s.kind = Kind::TowerSchedule;
    return s;
}

LevelTerm SequenceSpec::term(int k) const {
    if (k < 1) throw DepthOutOfRange("sequence index must be >= 1");
    if (kind == Kind::TowerSchedule) {
        double n = tower_schedule_n(k);
        LevelTerm t;
        t.log_M = n * kLog3;
        t.log_N = n * kLog2;
        t.M = pow_u64(3, n);
        t.N = pow_u64(2, n);
        return t;
    }
    if (pairs.empty()) throw ConfigError("sequence spec has no pairs");
    std::size_t i;
    switch (kind) {
        case Kind::Constant:
            i = 0;
            break;
        case Kind::Periodic:
            i = static_cast<std::size_t>(k - 1) % pairs.size();
            break;
        case Kind::Explicit:
        default:
            if (static_cast<std::size_t>(k) <= pairs.size()) {
                i = static_cast<std::size_t>(k - 1);
            } else if (tail == Tail::RepeatLast) {
                i = pairs.size() - 1;
            } else {
                i = static_cast<std::size_t>(k - 1) % pairs.size();
            }
            break;
    }
    LevelTerm t;
    t.M = pairs[i].first;
    t.N = pairs[i].second;
    t.log_M = std::log(static_cast<double>(pairs[i].first));
    t.log_N = std::log(static_cast<double>(pairs[i].second));
    return t;
}

std::string SequenceSpec::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Constant:
            os << "constant(" << pairs[0].first << "," << pairs[0].second << ")";
            break;
        case Kind::Periodic:
        case Kind::Explicit:
            os << (kind == Kind::Periodic ? "periodic(" : "explicit(");
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                if (i) os << ";";
                os << pairs[i].first << "," << pairs[i].second;
            }
            if (kind == Kind::Explicit)
                os << (tail == Tail::RepeatLast ? ";repeat_last" : ";periodic");
            os << ")";
            break;
        case Kind::TowerSchedule:
            os << "tower_schedule";
            break;
    }
    return os.str();
}

ConstructionParams validate(const SequenceSpec& spec, int d, int max_depth) {
    if (d < 1) throw ConfigError("ambient dimension d must be >= 1");
    if (max_depth < 1) throw ConfigError("max_depth must be >= 1");
    if (spec.kind != SequenceSpec::Kind::TowerSchedule && spec.pairs.empty())
        throw ConfigError("sequence spec has no pairs");
    // Finite specs repeat, so checking one pass over the distinct terms covers
    // every level; the schedule needs each materialized level checked.
    int levels_to_check = max_depth;
    if (spec.kind == SequenceSpec::Kind::Constant) levels_to_check = 1;
    if (spec.kind == SequenceSpec::Kind::Periodic)
        levels_to_check = static_cast<int>(spec.pairs.size());
    if (spec.kind == SequenceSpec::Kind::Explicit)
        levels_to_check = static_cast<int>(spec.pairs.size());
    for (int k = 1; k <= std::max(levels_to_check, 1); ++k) {
        LevelTerm t = spec.term(k);
        if (t.log_M < std::log(2.0) - 1e-12)
            throw InvalidSequence(k, "M_k must be >= 2");
        if (t.log_N < -1e-12) throw InvalidSequence(k, "N_k must be >= 1");
        if (t.log_N > d * t.log_M + 1e-12)
            throw InvalidSequence(k, "N_k must be <= M_k^d");
    }
    return ConstructionParams{d, spec, max_depth};
}

ScaleTable scale_table(const ConstructionParams& params) {
    ScaleTable t;
    t.log_P.assign(params.max_depth + 1, 0.0);
    t.log_r.assign(params.max_depth + 1, 0.0);
    t.log_p.assign(params.max_depth + 1, 0.0);
    for (int n = 1; n <= params.max_depth; ++n) {
        LevelTerm term = params.seq.term(n);
        t.log_P[n] = t.log_P[n - 1] + term.log_N;
        t.log_r[n] = t.log_r[n - 1] - term.log_M;
        t.log_p[n] = t.log_P[n] + params.d * t.log_r[n];
    }
    return t;
}

WindowLogs window(const ConstructionParams& params, int n, int k) {
    if (n < 1 || k < 0 || n + k > params.max_depth)
        throw DepthOutOfRange("window [" + std::to_string(n) + "," + std::to_string(n + k) +
                              "] outside materialized depth");
    WindowLogs w{0.0, 0.0};
    for (int i = n; i <= n + k; ++i) {
        LevelTerm t = params.seq.term(i);
        w.log_P_window += t.log_N;
        w.log_r_window -= t.log_M;
    }
    return w;
}

}  // namespace moran
