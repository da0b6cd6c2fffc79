#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "moran/dims.hpp"
#include "moran/errors.hpp"
#include "moran/params.hpp"

using namespace moran;

namespace {

const double kCantorDim = std::log(2.0) / std::log(3.0);  // 0.630930

double brute_quotient(const ConstructionParams& params, int n) {
    auto t = scale_table(params);
    return t.log_P[n] / (-t.log_r[n]);
}

}  // namespace

TEST_CASE("constant spec: every kind has the closed-form limit") {
    struct Case {
        std::uint64_t M, N;
        int d;
    } cases[] = {{3, 2, 1}, {2, 3, 2}, {4, 9, 2}, {2, 4, 2}};
    for (auto c : cases) {
        auto params = validate(SequenceSpec::constant(c.M, c.N), c.d, 12);
        double expect = std::log(static_cast<double>(c.N)) / std::log(static_cast<double>(c.M));
        for (DimKind kind : kAllDimKinds) {
            auto p = profile(params, kind, 12);
            REQUIRE(p.exact_limit.has_value());
            CHECK(*p.exact_limit == doctest::Approx(expect).epsilon(1e-13));
        }
    }
}

TEST_CASE("s1 profile of constant(3,2) is flat at ln2/ln3") {
    auto params = validate(SequenceSpec::constant(3, 2), 1, 15);
    auto p = profile(params, DimKind::S1, 15);
    for (const auto& [n, q] : p.values) CHECK(q == doctest::Approx(kCantorDim).epsilon(1e-12));
    CHECK(p.limit_estimate == doctest::Approx(kCantorDim).epsilon(1e-12));
}

TEST_CASE("periodic [(2,2),(4,2)] converges to 2/3") {
    auto params = validate(SequenceSpec::periodic({{2, 2}, {4, 2}}), 1, 200);
    auto p = profile(params, DimKind::S1, 200);
    REQUIRE(p.exact_limit.has_value());
    CHECK(*p.exact_limit == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    // Brute-force the quotient deep into the sequence: it must approach 2/3.
    CHECK(brute_quotient(params, 200) == doctest::Approx(2.0 / 3.0).epsilon(1e-3));
    CHECK(std::fabs(brute_quotient(params, 200) - 2.0 / 3.0) <=
          std::fabs(brute_quotient(params, 10) - 2.0 / 3.0));
}

TEST_CASE("degenerate specs") {
    auto single = validate(SequenceSpec::constant(5, 1), 1, 10);
    for (DimKind kind : kAllDimKinds) {
        auto p = profile(single, kind, 10);
        REQUIRE(p.exact_limit.has_value());
        CHECK(*p.exact_limit == doctest::Approx(0.0));
        for (const auto& [n, q] : p.values) CHECK(q == doctest::Approx(0.0));
    }
    auto full = validate(SequenceSpec::constant(2, 4), 2, 10);
    for (DimKind kind : kAllDimKinds) {
        auto p = profile(full, kind, 10);
        CHECK(*p.exact_limit == doctest::Approx(2.0));
    }
}

TEST_CASE("quotients stay inside [0, d]") {
    ConstructionParams specs[] = {
        validate(SequenceSpec::constant(2, 4), 2, 12),
        validate(SequenceSpec::periodic({{2, 2}, {4, 2}}), 1, 12),
        validate(SequenceSpec::explicit_list({{9, 9}, {3, 1}, {4, 2}},
                                             SequenceSpec::Tail::Periodic),
                 1, 12),
        validate(SequenceSpec::tower_schedule(), 1, 7),
    };
    for (const auto& params : specs) {
        for (DimKind kind : kAllDimKinds) {
            auto p = profile(params, kind, params.max_depth);
            for (const auto& [n, q] : p.values) {
                CHECK(q >= 0.0);
                CHECK(q <= static_cast<double>(params.d) + 1e-12);
            }
        }
    }
}

TEST_CASE("ordering chain on exact limits") {
    std::vector<ConstructionParams> specs;
    specs.push_back(validate(SequenceSpec::constant(3, 2), 1, 16));
    specs.push_back(validate(SequenceSpec::constant(5, 3), 1, 16));
    specs.push_back(validate(SequenceSpec::constant(3, 7), 2, 10));
    specs.push_back(validate(SequenceSpec::periodic({{2, 2}, {4, 2}}), 1, 16));
    specs.push_back(validate(SequenceSpec::periodic({{3, 2}, {3, 3}, {9, 2}}), 1, 16));
    for (const auto& params : specs) {
        auto rep = report(params, params.max_depth);
        double t_star = *rep.profile_for(DimKind::TStar).exact_limit;
        double s1 = *rep.profile_for(DimKind::S1).exact_limit;
        double s_star = *rep.profile_for(DimKind::SStar).exact_limit;
        double s2 = *rep.profile_for(DimKind::S2).exact_limit;
        double s_ss = *rep.profile_for(DimKind::SStarStar).exact_limit;
        double s3 = *rep.profile_for(DimKind::S3).exact_limit;
        double lower = *rep.profile_for(DimKind::LowerDim).exact_limit;
        double d = static_cast<double>(params.d);
        CHECK(t_star <= s1 + 1e-12);
        CHECK(s1 <= s_star + 1e-12);
        CHECK(s_star <= s2 + 1e-12);
        CHECK(s2 <= s_ss + 1e-12);
        CHECK(s2 <= s3 + 1e-12);
        CHECK(s3 <= d + 1e-12);
        CHECK(lower <= s1 + 1e-12);
        CHECK(t_star >= -1e-12);
    }
}

TEST_CASE("bounded-N specs: t*/s1 and s*/s2 profiles converge together") {
    auto params = validate(SequenceSpec::constant(4, 3), 1, 40);
    auto t_star = profile(params, DimKind::TStar, 40);
    auto s1 = profile(params, DimKind::S1, 40);
    auto s_star = profile(params, DimKind::SStar, 40);
    auto s2 = profile(params, DimKind::S2, 40);
    // The correction shrinks like ln(sup N) / (-log_r(n)).
    CHECK(std::fabs(t_star.values[35].second - s1.values[35].second) < 0.02);
    CHECK(std::fabs(s_star.values[35].second - s2.values[35].second) < 0.02);
    CHECK(std::fabs(t_star.values[35].second - s1.values[35].second) <
          std::fabs(t_star.values[3].second - s1.values[3].second));
}

TEST_CASE("exceptional schedule: t* collapses while s2 stays near d") {
    auto params = validate(SequenceSpec::tower_schedule(), 1, 7);
    auto t_star = profile(params, DimKind::TStar, 7);
    // values are indexed by n = 1..6
    double q6 = t_star.values[5].second;
    CHECK(t_star.values[5].first == 6);
    CHECK(q6 < 0.15);
    // Verify against the closed quotient s_k ln2 / (s_k ln3 + n_{k+1} ln(3/2)).
    const double ln2 = std::log(2.0), ln3 = std::log(3.0);
    double s6 = 1 + 1 + 8 + 90 + 1600 + 42500;  // 44200
    double n7 = 36.0 * s6;
    double closed = s6 * ln2 / (s6 * ln3 + n7 * std::log(1.5));
    CHECK(q6 == doctest::Approx(closed).epsilon(1e-9));

    auto s2 = profile(params, DimKind::S2, 7);
    CHECK(s2.values[5].second > 0.9);
    CHECK(!t_star.exact_limit.has_value());
}

TEST_CASE("report applies the almost-sure and typical assignments") {
    auto rep = report(validate(SequenceSpec::constant(3, 2), 1, 12), 12);
    CHECK(rep.as_hausdorff == doctest::Approx(kCantorDim).epsilon(1e-12));
    CHECK(rep.as_packing == doctest::Approx(kCantorDim).epsilon(1e-12));
    CHECK(rep.assouad == doctest::Approx(kCantorDim).epsilon(1e-12));
    CHECK(rep.typical_hausdorff == doctest::Approx(kCantorDim).epsilon(1e-12));
    CHECK(rep.typical_packing == doctest::Approx(kCantorDim).epsilon(1e-12));
    CHECK(rep.lower_dimension == doctest::Approx(kCantorDim).epsilon(1e-12));
    CHECK(rep.N_bounded);
    CHECK(!rep.lower_dim_heuristic);

    auto rep_tower = report(validate(SequenceSpec::tower_schedule(), 1, 7), 7);
    CHECK(!rep_tower.N_bounded);
    CHECK(rep_tower.assouad == doctest::Approx(1.0));
    CHECK(rep_tower.typical_hausdorff < 0.15);
    CHECK(rep_tower.as_packing > 0.9);
    CHECK(rep_tower.lower_dim_heuristic);

    auto rep1 = report(validate(SequenceSpec::constant(7, 1), 1, 10), 10);
    CHECK(rep1.as_hausdorff == doctest::Approx(0.0));
    CHECK(rep1.as_packing == doctest::Approx(0.0));
    CHECK(rep1.assouad == doctest::Approx(0.0));
}

TEST_CASE("profile rejects bad depths") {
    auto params = validate(SequenceSpec::constant(3, 2), 1, 10);
    CHECK_THROWS_AS(profile(params, DimKind::S1, 1), DepthOutOfRange);
    CHECK_THROWS_AS(profile(params, DimKind::S1, 11), DepthOutOfRange);
}
