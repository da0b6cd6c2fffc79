#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "moran/params.hpp"

namespace moran {

enum class DimKind { S1, S2, S3, TStar, SStar, SStarStar, LowerDim };

inline constexpr std::array<DimKind, 7> kAllDimKinds = {
    DimKind::S1,     DimKind::S2,    DimKind::S3,      DimKind::TStar,
    DimKind::SStar,  DimKind::SStarStar, DimKind::LowerDim};

std::string dim_kind_name(DimKind kind);

struct DimProfile {
    DimKind kind;
    // (index, quotient). The index is the level n for pointwise kinds and the
    // window length k for S3 / LowerDim.
    std::vector<std::pair<int, double>> values;
    // min/max over the tail half of the computed range, standing in for the
    // liminf/limsup. Never a convergence claim for irregular specs.
    double limit_estimate = 0.0;
    std::optional<double> exact_limit;
};

struct DimensionReport {
    std::array<DimProfile, 7> profiles;  // indexed in kAllDimKinds order
    double as_hausdorff;                 // = s1  (also a.s. lower box)
    double as_packing;                   // = s2  (also a.s. upper box)
    double assouad;                      // = s3 if N_k bounded, else d
    double typical_hausdorff;            // = t*  (also typical lower box)
    double typical_packing;              // = s2
    double lower_dimension;
    bool lower_dim_heuristic;            // true when N_k unbounded
    bool N_bounded;

    const DimProfile& profile_for(DimKind kind) const;
};

DimProfile profile(const ConstructionParams& params, DimKind kind, int depth);

// Closed-form limit for constant and periodic specs; absent otherwise.
std::optional<double> exact_limit(const ConstructionParams& params, DimKind kind);

DimensionReport report(const ConstructionParams& params, int depth);

}  // namespace moran
