#include "framesched/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace framesched {

Requirement::Requirement(std::vector<double> v) : values(std::move(v)) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 0.0 && values[i] <= 1.0)) {
            throw std::invalid_argument("requirement[" + std::to_string(i) + "] = " +
                                        std::to_string(values[i]) + " outside [0, 1]");
        }
    }
}

Requirement Requirement::uniform(int num_apps, double r) {
    return Requirement(std::vector<double>(num_apps, r));
}

const char* policy_name(Policy p) {
    switch (p) {
    case Policy::Exact:
        return "exact";
    case Policy::Greedy:
        return "greedy";
    case Policy::Random:
        return "random";
    case Policy::Priority:
        return "priority";
    }
    return "unknown";
}

bool parse_policy(const std::string& name, Policy& out) {
    if (name == "exact") {
        out = Policy::Exact;
    } else if (name == "greedy") {
        out = Policy::Greedy;
    } else if (name == "random") {
        out = Policy::Random;
    } else if (name == "priority") {
        out = Policy::Priority;
    } else {
        return false;
    }
    return true;
}

namespace {

SolveResult solve_for(Policy policy, std::span<const Weight> weights, int num_workers,
                      RngStream& rng) {
    switch (policy) {
    case Policy::Exact:
        return solve_exact(weights);
    case Policy::Greedy:
        return solve_greedy(weights, num_workers);
    case Policy::Random:
        return solve_baseline_random(weights, rng);
    case Policy::Priority:
        return solve_baseline_priority(weights);
    }
    return {};
}

} // namespace

StepOutcome step(QueueState& queues, const NetworkModel& model, const Requirement& requirement,
                 Policy policy, RngStream& rng) {
    const int n = model.num_apps();
    if (static_cast<int>(queues.q.size()) != n || requirement.size() != n) {
        throw DimensionMismatch("queue/requirement size does not match model with " +
                                std::to_string(n) + " apps");
    }
    for (int i = 0; i < n; ++i) {
        queues.q[i] += requirement[i];
    }
    FrameState frame = generate_frame(model, queues.frame, rng);
    std::vector<Weight> weights = compute_weights(queues.q, frame, model);
    SolveResult sol = solve_for(policy, weights, model.num_workers(), rng);

    StepOutcome out;
    out.completed = sample_task_completions(model, frame, sol.decision, rng);
    for (int i = 0; i < n; ++i) {
        if (out.completed[i]) {
            queues.q[i] = std::max(queues.q[i] - 1.0, 0.0);
        }
    }
    queues.frame += 1;
    out.decision = std::move(sol.decision);
    out.objective = sol.objective;
    return out;
}

SimMetrics simulate(const NetworkModel& model, const Requirement& requirement, Policy policy,
                    std::int64_t frames, std::uint64_t seed, const SimOptions& options) {
    const int n = model.num_apps();
    if (requirement.size() != n) {
        throw DimensionMismatch("requirement has " + std::to_string(requirement.size()) +
                                " entries, model expects " + std::to_string(n));
    }
    if (frames < 0) {
        throw std::invalid_argument("frames must be non-negative");
    }

    SimMetrics mx;
    mx.frames = frames;
    mx.seed = seed;
    mx.policy = policy;
    mx.requirement = requirement.values;
    mx.completions.assign(n, 0);
    mx.generated.assign(n, 0);
    mx.empirical_rate.assign(n, 0.0);

    QueueState qs = QueueState::zeros(n);
    FrameState frame;
    std::vector<Weight> weights;
    std::vector<std::uint8_t> completed;
    const int stride = std::max(options.trace_stride, 1);

    for (std::int64_t t = 1; t <= frames; ++t) {
        RngStream rng = frame_stream(seed, t);
        for (int i = 0; i < n; ++i) {
            qs.q[i] += requirement[i];
        }
        generate_frame_into(model, t, rng, frame);
        for (int i = 0; i < n; ++i) {
            mx.generated[i] += frame.jobs[i].tasks != 0;
        }
        compute_weights_into(qs.q, frame, model, weights);

        SolveResult exact_sol;
        if (options.record_ratio && policy != Policy::Exact) {
            exact_sol = solve_exact(weights);
        }
        SolveResult sol = solve_for(policy, weights, model.num_workers(), rng);
        if (options.record_ratio) {
            const double exact_obj =
                policy == Policy::Exact ? sol.objective : exact_sol.objective;
            mx.ratio_log.emplace_back(exact_obj, sol.objective);
        }
        if (options.record_decisions) {
            mx.decisions.push_back({t, sol.decision.scheduled, sol.objective});
        }

        sample_task_completions_into(model, frame, sol.decision, rng, completed);
        for (int i = 0; i < n; ++i) {
            if (completed[i]) {
                mx.completions[i] += 1;
                qs.q[i] = std::max(qs.q[i] - 1.0, 0.0);
            }
        }
        qs.frame += 1;

        if (options.record_trace && (t % stride == 0 || t == frames)) {
            mx.queue_trace.push_back({t, qs.q});
        }
    }

    mx.final_queues = qs.q;
    if (frames > 0) {
        for (int i = 0; i < n; ++i) {
            mx.empirical_rate[i] = static_cast<double>(mx.completions[i]) / frames;
        }
    }
    return mx;
}

namespace {

double sample_peak(const TraceSample& s) {
    double peak = 0.0;
    for (double v : s.q) {
        peak = std::max(peak, v);
    }
    return peak;
}

} // namespace

bool is_stable_proxy(const SimMetrics& metrics, double max_queue_threshold) {
    double max_q = 0.0;
    for (double v : metrics.final_queues) {
        max_q = std::max(max_q, v);
    }
    for (const TraceSample& s : metrics.queue_trace) {
        max_q = std::max(max_q, sample_peak(s));
    }
    if (max_q > max_queue_threshold) {
        return false;
    }
    const std::size_t count = metrics.queue_trace.size();
    if (count < 8) {
        return true; // too few samples for the growth detector
    }
    auto mean_over = [&](std::size_t lo, std::size_t hi) {
        double sum = 0.0;
        for (std::size_t k = lo; k < hi; ++k) {
            sum += sample_peak(metrics.queue_trace[k]);
        }
        return sum / static_cast<double>(hi - lo);
    };
    const double second = mean_over(count / 4, count / 2);
    const double last = mean_over(3 * count / 4, count);
    // The max() floor keeps the ratio test from firing on near-empty queues,
    // where both means are a fraction of one job.
    return last <= 1.5 * std::max(second, 1.0);
}

double default_stability_threshold(const Requirement& requirement, std::int64_t frames) {
    double max_r = 0.0;
    for (double v : requirement.values) {
        max_r = std::max(max_r, v);
    }
    return 100.0 * max_r * std::sqrt(static_cast<double>(frames));
}

} // namespace framesched
