#pragma once

#include "framesched/errors.hpp"
#include "framesched/rng.hpp"

#include <bit>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace framesched {

/// Task set of one job as a bitmask over workers; bit j = worker j. Capped at
/// 64 workers so interference checks are single AND operations.
using WorkerMask = std::uint64_t;

inline constexpr int kMaxWorkers = 64;

/// Row-major probability matrix, apps x workers.
class ProbMatrix {
public:
    ProbMatrix() = default;
    ProbMatrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), v_(static_cast<std::size_t>(rows) * cols, fill) {}

    static ProbMatrix from_rows(const std::vector<std::vector<double>>& rows);

    double operator()(int i, int j) const { return v_[static_cast<std::size_t>(i) * cols_ + j]; }
    double& operator()(int i, int j) { return v_[static_cast<std::size_t>(i) * cols_ + j]; }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::vector<std::vector<double>> to_rows() const;

    bool operator==(const ProbMatrix&) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> v_;
};

/// Constant per-(app, worker) task completion probabilities.
struct ConstantCompletion {
    ProbMatrix probs;

    bool operator==(const ConstantCompletion&) const = default;
};

/// Time-varying workloads: each frame draws a workload level per (app, worker)
/// i.i.d. from `level_dist`, and the task completes with that level's
/// probability. The master knows the workload it dispatched, so schedulers
/// see the drawn level's probability, not the mixture average.
struct WorkloadCompletion {
    struct Level {
        std::string label;
        ProbMatrix probs;

        bool operator==(const Level&) const = default;
    };

    std::vector<Level> levels;
    /// level_dist[i][j][l] = P(level l for app i, worker j); sums to 1 per (i, j).
    std::vector<std::vector<std::vector<double>>> level_dist;

    bool operator==(const WorkloadCompletion&) const = default;
};

using CompletionModel = std::variant<ConstantCompletion, WorkloadCompletion>;

/// One application's job in one frame.
struct JobVector {
    int app_index = 0;
    WorkerMask tasks = 0;

    int cardinality() const { return std::popcount(tasks); }
    bool empty() const { return tasks == 0; }
};

/// Everything random that frame t revealed: the N jobs and, for workload
/// models, the per-(app, worker) level draw (flat app-major, worker-major).
struct FrameState {
    std::int64_t frame_index = 1;
    std::vector<JobVector> jobs;
    std::vector<int> workload_draw;

    int level_at(int app, int worker, int num_workers) const {
        return workload_draw[static_cast<std::size_t>(app) * num_workers + worker];
    }
};

/// Immutable description of the computing network: N applications, M
/// specialized workers, the per-(app, worker) task generation probabilities,
/// and the task completion model. Validated at construction; safe to share
/// across threads afterwards.
class NetworkModel {
public:
    NetworkModel(int num_apps, int num_workers, ProbMatrix gen_prob, CompletionModel completion);

    int num_apps() const { return num_apps_; }
    int num_workers() const { return num_workers_; }
    const ProbMatrix& gen_prob() const { return gen_prob_; }
    const CompletionModel& completion() const { return completion_; }

    bool has_workload_levels() const {
        return std::holds_alternative<WorkloadCompletion>(completion_);
    }

    /// Probability that worker j completes app i's task in this frame,
    /// honoring the frame's workload-level draw when there is one.
    double completion_prob(const FrameState& frame, int app, int worker) const;

    bool operator==(const NetworkModel&) const = default;

private:
    int num_apps_;
    int num_workers_;
    ProbMatrix gen_prob_;
    CompletionModel completion_;
};

/// Per-frame decision: an interference-free set of scheduled app indices
/// (ascending) plus the union of their task masks.
struct Decision {
    std::vector<int> scheduled;
    WorkerMask used_workers = 0;
};

/// Draws frame t's jobs: bit (i, j) set independently with gen_prob(i, j),
/// app-major/worker-major, then workload levels when applicable. `rng` must
/// be positioned at the frame's start (see frame_stream).
FrameState generate_frame(const NetworkModel& model, std::int64_t frame_index, RngStream& rng);
void generate_frame_into(const NetworkModel& model, std::int64_t frame_index, RngStream& rng,
                         FrameState& out);

/// Throws MalformedDecision unless every scheduled index names a distinct
/// in-range non-empty job, the jobs are pairwise interference-free, and
/// used_workers is their union.
void validate_decision(const FrameState& frame, const Decision& decision);

/// Samples task completions for the scheduled jobs. Every set bit of every
/// scheduled job is drawn (app-major/worker-major) even once a task has
/// already failed, so the frame's draw count is a function of the decision
/// alone. Returns e_i = 1 iff app i was scheduled, its job non-empty, and
/// all its tasks succeeded.
std::vector<std::uint8_t> sample_task_completions(const NetworkModel& model,
                                                  const FrameState& frame,
                                                  const Decision& decision, RngStream& rng);
void sample_task_completions_into(const NetworkModel& model, const FrameState& frame,
                                  const Decision& decision, RngStream& rng,
                                  std::vector<std::uint8_t>& out);

} // namespace framesched
