#pragma once

#include "framesched/model.hpp"
#include "framesched/scheduler.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace framesched {

/// Target long-run completion rate per app, each in [0, 1] (at most one job
/// per app can complete per frame).
struct Requirement {
    std::vector<double> values;

    Requirement() = default;
    explicit Requirement(std::vector<double> v);
    static Requirement uniform(int num_apps, double r);

    int size() const { return static_cast<int>(values.size()); }
    double operator[](int i) const { return values[i]; }
};

/// Virtual queue sizes at the start of a frame (before arrivals).
struct QueueState {
    std::vector<double> q;
    std::int64_t frame = 1;

    static QueueState zeros(int num_apps) { return {std::vector<double>(num_apps, 0.0), 1}; }
};

enum class Policy { Exact, Greedy, Random, Priority };

const char* policy_name(Policy p);
bool parse_policy(const std::string& name, Policy& out);

struct SimOptions {
    bool record_trace = true;
    int trace_stride = 10; // sample every k-th frame to bound memory
    bool record_ratio = false;
    bool record_decisions = false;
};

struct TraceSample {
    std::int64_t frame = 0;
    std::vector<double> q;
};

struct DecisionRecord {
    std::int64_t frame = 0;
    std::vector<int> scheduled;
    double objective = 0.0;
};

/// Accumulated results of one simulation run.
struct SimMetrics {
    std::int64_t frames = 0;
    std::uint64_t seed = 0;
    Policy policy = Policy::Exact;
    std::vector<double> requirement;
    std::vector<std::int64_t> completions;
    std::vector<std::int64_t> generated; // frames in which app i had a non-empty job
    std::vector<double> empirical_rate;  // completions / frames
    std::vector<double> final_queues;
    std::vector<TraceSample> queue_trace;
    std::vector<std::pair<double, double>> ratio_log; // (exact, policy) objective per frame
    std::vector<DecisionRecord> decisions;
};

struct StepOutcome {
    std::vector<std::uint8_t> completed;
    Decision decision;
    double objective = 0.0;
};

/// One frame of the scheduling loop: add the r_i arrivals, compute weights on
/// the post-arrival queues, let the policy pick a decision, sample task
/// completions, and decrement each completed app's queue by one (floored at
/// zero). Advances queues.frame. `rng` must be the frame's stream.
StepOutcome step(QueueState& queues, const NetworkModel& model, const Requirement& requirement,
                 Policy policy, RngStream& rng);

/// Runs T frames from all-zero queues; bit-reproducible given (model,
/// requirement, policy, T, seed).
SimMetrics simulate(const NetworkModel& model, const Requirement& requirement, Policy policy,
                    std::int64_t frames, std::uint64_t seed, const SimOptions& options = {});

/// Finite-horizon surrogate for queue stability: the sampled queue trace
/// never exceeds `max_queue_threshold`, and the trace's last-quartile mean
/// does not exceed its second-quartile mean by more than 50% (a linear
/// growth detector).
bool is_stable_proxy(const SimMetrics& metrics, double max_queue_threshold);

/// Default cap used by is_stable_proxy: 100 * max_i r_i * sqrt(T).
double default_stability_threshold(const Requirement& requirement, std::int64_t frames);

} // namespace framesched
