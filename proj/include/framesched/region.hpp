#pragma once

#include "framesched/engine.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace framesched {

/// Verdict for one requirement vector: rates averaged across seeds, fulfilled
/// iff every app's averaged rate is at least r_i - epsilon.
struct FulfillmentVerdict {
    std::vector<double> requirement;
    bool fulfilled = false;
    std::vector<double> margins; // averaged rate_i - r_i
    std::vector<std::uint64_t> seeds_used;

    double min_margin() const;
};

struct RegionOptions {
    std::int64_t frames = 10000;
    int num_seeds = 5;
    std::uint64_t base_seed = 1;
    double epsilon = 0.01;
    double grid_step = 0.02;
    double resolution = 0.005;
    int jobs = 1; // worker threads for independent points
};

/// Estimated achievable-requirement region for one policy.
struct RegionEstimate {
    std::string policy_label;
    double grid_step = 0.0;   // 2-D sweeps
    double resolution = 0.0;  // symmetric sweeps
    std::vector<FulfillmentVerdict> points;
    double boundary = 0.0; // symmetric sweeps: largest fulfilled common r
    int monotonicity_flags = 0; // dominated-point inversions, noise indicator
};

/// Seed for replicate `replicate` of sweep point `point_index`.
std::uint64_t region_point_seed(std::uint64_t base_seed, std::uint64_t point_index,
                                std::uint64_t replicate);

/// Runs one simulation per seed and averages the per-app rates.
FulfillmentVerdict check_fulfillment(const NetworkModel& model, const Requirement& requirement,
                                     Policy policy, std::int64_t frames,
                                     const std::vector<std::uint64_t>& seeds,
                                     double epsilon = 0.01);

/// Evaluates every (r1, r2) on the grid with the given spacing over [0, 1]^2.
/// Points are independent and run on `options.jobs` threads; results are
/// ordered by point index regardless of thread count. Requires N == 2.
RegionEstimate sweep_grid_2d(const NetworkModel& model, Policy policy,
                             const RegionOptions& options);

/// Binary search for the largest fulfilled common requirement r_i = r, to the
/// given resolution. Assumes fulfillment is downward-closed in r; the found
/// boundary is re-confirmed with 3x seeds and stepped down on contradiction.
RegionEstimate sweep_symmetric(const NetworkModel& model, Policy policy,
                               const RegionOptions& options);

/// Counts dominated-fulfilled inversions among the estimate's points
/// (a point componentwise below a fulfilled point that itself failed).
/// Nonzero counts flag Monte-Carlo noise near the boundary.
int audit_monotonicity(const RegionEstimate& estimate);

} // namespace framesched
