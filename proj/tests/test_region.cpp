#include "framesched/region.hpp"

#include "framesched/io.hpp"

#include <doctest.h>

#include <vector>

using namespace framesched;

namespace {

NetworkModel single_model() {
    return NetworkModel(1, 1, ProbMatrix(1, 1, 0.5), ConstantCompletion{ProbMatrix(1, 1, 0.9)});
}

NetworkModel pair_model() {
    return NetworkModel(2, 2, ProbMatrix(2, 2, 0.5), ConstantCompletion{ProbMatrix(2, 2, 0.9)});
}

} // namespace

TEST_CASE("fulfillment verdicts follow the averaged-rate margin rule") {
    const NetworkModel model = single_model();
    const std::vector<std::uint64_t> seeds{1, 2, 3};

    // The 1x1 model completes at rate gen * prob = 0.45 whenever loaded.
    const FulfillmentVerdict low =
        check_fulfillment(model, Requirement({0.3}), Policy::Exact, 8000, seeds);
    CHECK(low.fulfilled);
    CHECK(low.min_margin() == doctest::Approx(0.15).epsilon(0.1));
    CHECK(low.seeds_used == seeds);

    const FulfillmentVerdict high =
        check_fulfillment(model, Requirement({0.6}), Policy::Exact, 8000, seeds);
    CHECK_FALSE(high.fulfilled);
    CHECK(high.min_margin() < -0.1);
}

TEST_CASE("epsilon widens the acceptance band") {
    const NetworkModel model = single_model();
    const std::vector<std::uint64_t> seeds{4, 5};
    // rate 0.45 misses r = 0.6 by 0.15: rejected at the default slack,
    // admitted when epsilon covers the gap
    CHECK_FALSE(check_fulfillment(model, Requirement({0.6}), Policy::Exact, 5000, seeds,
                                  0.01)
                    .fulfilled);
    CHECK(check_fulfillment(model, Requirement({0.6}), Policy::Exact, 5000, seeds, 0.2)
              .fulfilled);
}

TEST_CASE("grid sweep covers the lattice in point order") {
    RegionOptions opts;
    opts.frames = 1500;
    opts.num_seeds = 2;
    opts.base_seed = 5;
    opts.grid_step = 0.5;

    const RegionEstimate est = sweep_grid_2d(pair_model(), Policy::Exact, opts);
    REQUIRE(est.points.size() == 9);
    CHECK(est.policy_label == "exact");
    CHECK(est.grid_step == 0.5);
    for (int p = 0; p < 9; ++p) {
        const std::vector<double> want{(p / 3) * 0.5, (p % 3) * 0.5};
        CHECK(est.points[p].requirement == want);
    }
    CHECK(est.points.front().fulfilled); // (0, 0) is always achievable
    CHECK_FALSE(est.points.back().fulfilled); // (1, 1) is far above capacity
}

TEST_CASE("grid sweep results do not depend on the thread count") {
    RegionOptions serial;
    serial.frames = 1200;
    serial.num_seeds = 2;
    serial.base_seed = 11;
    serial.grid_step = 0.5;
    RegionOptions threaded = serial;
    threaded.jobs = 4;

    const RegionEstimate a = sweep_grid_2d(pair_model(), Policy::Greedy, serial);
    const RegionEstimate b = sweep_grid_2d(pair_model(), Policy::Greedy, threaded);
    CHECK(region_to_csv(a) == region_to_csv(b));
}

TEST_CASE("grid sweep demands exactly two apps") {
    CHECK_THROWS_AS(sweep_grid_2d(single_model(), Policy::Exact, RegionOptions{}), NotTwoApps);
}

TEST_CASE("symmetric sweep brackets the capacity boundary") {
    RegionOptions opts;
    opts.frames = 8000;
    opts.base_seed = 7;

    const RegionEstimate est = sweep_symmetric(single_model(), Policy::Exact, opts);
    // capacity 0.45 plus the 0.01 fulfillment slack
    CHECK(est.boundary > 0.43);
    CHECK(est.boundary < 0.47);
    CHECK(est.resolution == 0.005);
    CHECK_FALSE(est.points.empty());

    const RegionEstimate again = sweep_symmetric(single_model(), Policy::Exact, opts);
    CHECK(again.boundary == est.boundary);
}

TEST_CASE("greedy equals exact on a single worker") {
    RegionOptions opts;
    opts.frames = 4000;
    opts.base_seed = 13;
    const RegionEstimate ex = sweep_symmetric(single_model(), Policy::Exact, opts);
    const RegionEstimate gr = sweep_symmetric(single_model(), Policy::Greedy, opts);
    CHECK(ex.boundary == gr.boundary);
}

TEST_CASE("point seeds separate points and replicates") {
    CHECK(region_point_seed(1, 0, 0) != region_point_seed(1, 0, 1));
    CHECK(region_point_seed(1, 0, 0) != region_point_seed(1, 1, 0));
    CHECK(region_point_seed(1, 7, 3) == region_point_seed(1, 7, 3));
    CHECK(region_point_seed(2, 7, 3) != region_point_seed(1, 7, 3));
}

TEST_CASE("monotonicity audit counts dominated failures") {
    RegionEstimate est;
    FulfillmentVerdict pass_hi;
    pass_hi.requirement = {0.4, 0.4};
    pass_hi.fulfilled = true;
    FulfillmentVerdict fail_lo;
    fail_lo.requirement = {0.2, 0.2};
    fail_lo.fulfilled = false;
    FulfillmentVerdict fail_side;
    fail_side.requirement = {0.6, 0.2};
    fail_side.fulfilled = false;

    est.points = {pass_hi, fail_lo, fail_side};
    CHECK(audit_monotonicity(est) == 1);

    est.points = {pass_hi, fail_side};
    CHECK(audit_monotonicity(est) == 0);
}
