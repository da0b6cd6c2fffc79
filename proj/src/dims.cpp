#include "moran/dims.hpp"

#include <algorithm>
#include <cmath>

#include "moran/errors.hpp"

namespace moran {

std::string dim_kind_name(DimKind kind) {
    switch (kind) {
        case DimKind::S1: return "s1";
        case DimKind::S2: return "s2";
        case DimKind::S3: return "s3";
        case DimKind::TStar: return "t_star";
        case DimKind::SStar: return "s_star";
        case DimKind::SStarStar: return "s_star_star";
        case DimKind::LowerDim: return "lower_dim";
    }
    return "?";
}

namespace {

bool is_limsup_kind(DimKind kind) {
    return kind == DimKind::S2 || kind == DimKind::S3 || kind == DimKind::SStar ||
           kind == DimKind::SStarStar;
}

double tail_statistic(const std::vector<std::pair<int, double>>& values, bool take_max) {
    // liminf/limsup proxy: extremum over the tail half of the computed range.
    std::size_t start = values.size() / 2;
    if (start >= values.size()) start = values.size() - 1;
    double r = values[start].second;
    for (std::size_t i = start; i < values.size(); ++i)
        r = take_max ? std::max(r, values[i].second) : std::min(r, values[i].second);
    return r;
}

}  // namespace

const DimProfile& DimensionReport::profile_for(DimKind kind) const {
    for (const auto& p : profiles)
        if (p.kind == kind) return p;
    return profiles[0];
}

DimProfile profile(const ConstructionParams& params, DimKind kind, int depth) {
    if (depth < 2) throw DepthOutOfRange("profile needs depth >= 2");
    if (depth > params.max_depth)
        throw DepthOutOfRange("profile depth exceeds materialized max_depth");
    ScaleTable t = scale_table(params);
    const double d = static_cast<double>(params.d);

    DimProfile p;
    p.kind = kind;

    auto log_N_next = [&](int n) { return params.seq.term(n + 1).log_N; };
    // Finite-n quotients can overshoot d (s** does for full-cube specs even
    // though its limit is d); report clamped values.
    auto clamp = [&](double q) { return std::min(std::max(q, 0.0), d); };

    switch (kind) {
        case DimKind::S1:
        case DimKind::SStar:
            for (int n = 1; n <= depth; ++n)
                p.values.emplace_back(n, clamp(t.log_P[n] / (-t.log_r[n])));
            break;
        case DimKind::S2:
            for (int n = 1; n <= depth - 1; ++n)
                p.values.emplace_back(
                    n, clamp(t.log_P[n + 1] / (-t.log_r[n] + log_N_next(n) / d)));
            break;
        case DimKind::TStar:
            for (int n = 1; n <= depth - 1; ++n)
                p.values.emplace_back(
                    n, clamp(t.log_P[n] / (-t.log_r[n + 1] - log_N_next(n) / d)));
            break;
        case DimKind::SStarStar:
            for (int n = 1; n <= depth - 1; ++n)
                p.values.emplace_back(n, clamp(t.log_P[n + 1] / (-t.log_r[n])));
            break;
        case DimKind::S3:
        case DimKind::LowerDim: {
            bool sup = (kind == DimKind::S3);
            for (int k = 1; k <= depth - 1; ++k) {
                double ext = sup ? 0.0 : d + 1.0;
                for (int n = 1; n + k <= depth; ++n) {
                    // windowed quotient from the cumulative logs; window spans
                    // levels n..n+k inclusive, so shift the lower edge by one.
                    double num = t.log_P[n + k] - t.log_P[n - 1];
                    double den = -(t.log_r[n + k] - t.log_r[n - 1]);
                    double q = num / den;
                    ext = sup ? std::max(ext, q) : std::min(ext, q);
                }
                p.values.emplace_back(k, clamp(ext));
            }
            break;
        }
    }
    p.limit_estimate = tail_statistic(p.values, is_limsup_kind(kind));
    p.exact_limit = exact_limit(params, kind);
    return p;
}

std::optional<double> exact_limit(const ConstructionParams& params, DimKind kind) {
    (void)kind;
    const auto& seq = params.seq;
    if (seq.kind != SequenceSpec::Kind::Constant && seq.kind != SequenceSpec::Kind::Periodic)
        return std::nullopt;
    // For constant and periodic specs the quotient sequence of every kind
    // converges to the same ratio: the per-period N_{n+1} corrections are
    // bounded while the cumulative logs grow, and the windowed ratios of
    // s3 / lower_dim flatten to the period average as the window lengthens.
    double sum_log_N = 0.0, sum_log_M = 0.0;
    for (const auto& [M, N] : seq.pairs) {
        sum_log_M += std::log(static_cast<double>(M));
        sum_log_N += std::log(static_cast<double>(N));
    }
    return sum_log_N / sum_log_M;
}

DimensionReport report(const ConstructionParams& params, int depth) {
    DimensionReport r;
    for (std::size_t i = 0; i < kAllDimKinds.size(); ++i)
        r.profiles[i] = profile(params, kAllDimKinds[i], depth);
    auto value_of = [&](DimKind kind) {
        const DimProfile& p = r.profiles[static_cast<std::size_t>(
            std::find(kAllDimKinds.begin(), kAllDimKinds.end(), kind) - kAllDimKinds.begin())];
        return p.exact_limit ? *p.exact_limit : p.limit_estimate;
    };
    r.N_bounded = params.seq.bounded_N();
    r.as_hausdorff = value_of(DimKind::S1);
    r.as_packing = value_of(DimKind::S2);
    r.assouad = r.N_bounded ? value_of(DimKind::S3) : static_cast<double>(params.d);
    r.typical_hausdorff = value_of(DimKind::TStar);
    r.typical_packing = value_of(DimKind::S2);
    r.lower_dimension = value_of(DimKind::LowerDim);
    r.lower_dim_heuristic = !r.N_bounded;
    return r;
}

}  // namespace moran
