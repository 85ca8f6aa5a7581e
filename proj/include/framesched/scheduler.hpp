#pragma once

#include "framesched/model.hpp"
#include "framesched/rng.hpp"

#include <span>
#include <vector>

namespace framesched {

/// Scheduling weight of one job: queue size times the job's completion
/// probability (product over its tasks), and 0 for an absent job. This is
/// the expected number of packets the job would drain from its virtual queue.
struct Weight {
    int app_index = 0;
    double value = 0.0;
    WorkerMask tasks = 0;

    int cardinality() const { return std::popcount(tasks); }
};

struct SolveResult {
    Decision decision;
    double objective = 0.0;
};

/// One Weight per app: queues[i] * 1{job non-empty} * prod of completion
/// probabilities over the job's tasks. Throws DimensionMismatch when the
/// queue vector and frame disagree on N.
std::vector<Weight> compute_weights(std::span<const double> queues, const FrameState& frame,
                                    const NetworkModel& model);
void compute_weights_into(std::span<const double> queues, const FrameState& frame,
                          const NetworkModel& model, std::vector<Weight>& out);

/// Sum of the scheduled jobs' weights, accumulated in ascending app order.
double decision_objective(std::span<const Weight> weights, const Decision& decision);

/// Maximum-total-weight interference-free subset of the non-empty jobs, by
/// exhaustive branch and bound (include/exclude per job in descending weight
/// order, optimistic suffix-sum pruning). Among maximizing subsets the one
/// whose sorted index list is lexicographically smallest is returned, so
/// results are reproducible; pruning keeps ties alive to honor that.
SolveResult solve_exact(std::span<const Weight> weights);

/// Greedy pass: sort jobs by weight / sqrt(cardinality) descending (absent
/// jobs key 0, ties by ascending app index), then schedule each job whose
/// workers are all still unallocated. Approximation ratio to the exact
/// objective is sqrt(num_workers).
SolveResult solve_greedy(std::span<const Weight> weights, int num_workers);

/// Baselines for the harness: scan apps in a uniformly random order / in
/// fixed index order, scheduling every non-empty job that still fits.
SolveResult solve_baseline_random(std::span<const Weight> weights, RngStream& rng);
SolveResult solve_baseline_priority(std::span<const Weight> weights);

} // namespace framesched
