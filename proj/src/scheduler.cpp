#include "framesched/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace framesched {

void compute_weights_into(std::span<const double> queues, const FrameState& frame,
                          const NetworkModel& model, std::vector<Weight>& out) {
    const int n = model.num_apps();
    if (static_cast<int>(queues.size()) != n || static_cast<int>(frame.jobs.size()) != n) {
        throw DimensionMismatch("queues has " + std::to_string(queues.size()) + ", frame has " +
                                std::to_string(frame.jobs.size()) + " entries, model expects " +
                                std::to_string(n));
    }
    const int m = model.num_workers();
    out.resize(n);
    for (int i = 0; i < n; ++i) {
        const WorkerMask tasks = frame.jobs[i].tasks;
        double value = 0.0;
        if (tasks != 0) {
            value = queues[i];
            for (int j = 0; j < m; ++j) {
                if ((tasks >> j) & 1) {
                    value *= model.completion_prob(frame, i, j);
                }
            }
        }
        out[i] = Weight{i, value, tasks};
    }
}

std::vector<Weight> compute_weights(std::span<const double> queues, const FrameState& frame,
                                    const NetworkModel& model) {
    std::vector<Weight> out;
    compute_weights_into(queues, frame, model, out);
    return out;
}

double decision_objective(std::span<const Weight> weights, const Decision& decision) {
    double sum = 0.0;
    for (int app : decision.scheduled) {
        sum += weights[app].value;
    }
    return sum;
}

namespace {

// Candidate job in branch order.
struct Candidate {
    double value;
    WorkerMask tasks;
    int app;
};

struct ExactSearch {
    std::vector<Candidate> cands;
    std::vector<double> suffix; // optimistic remaining sum from position i on
    std::vector<int> chosen;    // app indices along the current branch
    std::vector<int> best_set;  // sorted ascending
    std::vector<int> scratch;
    double best_value = 0.0;

    // Objectives are re-summed in ascending app order, so equal subsets
    // always produce bit-identical values regardless of branch order.
    double resum(const std::vector<int>& sorted_apps, std::span<const Weight> weights) const {
        double s = 0.0;
        for (int app : sorted_apps) {
            s += weights[app].value;
        }
        return s;
    }

    void consider_leaf(std::span<const Weight> weights) {
        scratch = chosen;
        std::sort(scratch.begin(), scratch.end());
        const double value = resum(scratch, weights);
        if (value > best_value) {
            best_value = value;
            best_set = scratch;
        } else if (value == best_value &&
                   std::lexicographical_compare(scratch.begin(), scratch.end(), best_set.begin(),
                                                best_set.end())) {
            best_set = scratch;
        }
    }

    void dfs(std::size_t pos, WorkerMask used, double sum, std::span<const Weight> weights) {
        // Strict pruning only: branches that can still tie the incumbent
        // stay alive so the lexicographic tie-break sees every maximizer.
        if (sum + suffix[pos] < best_value - 1e-9 * (1.0 + best_value)) {
            return;
        }
        if (pos == cands.size()) {
            consider_leaf(weights);
            return;
        }
        const Candidate& c = cands[pos];
        if ((used & c.tasks) == 0) {
            chosen.push_back(c.app);
            dfs(pos + 1, used | c.tasks, sum + c.value, weights);
            chosen.pop_back();
        }
        dfs(pos + 1, used, sum, weights);
    }
};

WorkerMask full_mask(int num_workers) {
    return num_workers >= 64 ? ~WorkerMask{0} : ((WorkerMask{1} << num_workers) - 1);
}

SolveResult scan_in_order(std::span<const Weight> weights, std::span<const int> order) {
    Decision d;
    WorkerMask avail = ~WorkerMask{0};
    for (int app : order) {
        const WorkerMask tasks = weights[app].tasks;
        if (tasks != 0 && (tasks & ~avail) == 0) {
            d.scheduled.push_back(app);
            d.used_workers |= tasks;
            avail &= ~tasks;
        }
    }
    std::sort(d.scheduled.begin(), d.scheduled.end());
    return {std::move(d), 0.0};
}

} // namespace

SolveResult solve_exact(std::span<const Weight> weights) {
    // Reused per thread: the simulation loop calls this once per frame and
    // the buffers' capacity stabilises after the first few frames.
    thread_local ExactSearch s;
    s.cands.clear();
    s.cands.reserve(weights.size());
    bool any_positive = false;
    for (const Weight& w : weights) {
        if (w.tasks != 0) {
            s.cands.push_back({w.value, w.tasks, w.app_index});
            any_positive = any_positive || w.value > 0.0;
        }
    }
    // All-zero weights: every subset ties at 0 and the empty set is the
    // lexicographically smallest, so skip the search.
    if (!any_positive) {
        return {Decision{}, 0.0};
    }
    // Descending weight (ties by index) finds strong incumbents early.
    std::sort(s.cands.begin(), s.cands.end(), [](const Candidate& a, const Candidate& b) {
        return a.value != b.value ? a.value > b.value : a.app < b.app;
    });
    s.suffix.assign(s.cands.size() + 1, 0.0);
    for (std::size_t i = s.cands.size(); i-- > 0;) {
        s.suffix[i] = s.suffix[i + 1] + s.cands[i].value;
    }
    s.best_value = 0.0;
    s.best_set.clear();
    s.chosen.clear();
    s.dfs(0, 0, 0.0, weights);

    Decision d;
    d.scheduled = std::move(s.best_set);
    for (int app : d.scheduled) {
        d.used_workers |= weights[app].tasks;
    }
    return {std::move(d), s.best_value};
}

SolveResult solve_greedy(std::span<const Weight> weights, int num_workers) {
    struct Entry {
        double key;
        int app;
    };
    thread_local std::vector<Entry> order;
    order.clear();
    order.reserve(weights.size());
    for (const Weight& w : weights) {
        const int card = w.cardinality();
        order.push_back({card != 0 ? w.value / std::sqrt(static_cast<double>(card)) : 0.0,
                         w.app_index});
    }
    // Keys compare exactly; genuine ties fall back to ascending app index.
    std::sort(order.begin(), order.end(), [](const Entry& a, const Entry& b) {
        return a.key != b.key ? a.key > b.key : a.app < b.app;
    });

    Decision d;
    WorkerMask avail = full_mask(num_workers);
    for (const Entry& e : order) {
        const WorkerMask tasks = weights[e.app].tasks;
        if (tasks != 0 && (tasks & ~avail) == 0) {
            d.scheduled.push_back(e.app);
            d.used_workers |= tasks;
            avail &= ~tasks;
        }
    }
    std::sort(d.scheduled.begin(), d.scheduled.end());
    const double objective = decision_objective(weights, d);
    return {std::move(d), objective};
}

SolveResult solve_baseline_random(std::span<const Weight> weights, RngStream& rng) {
    std::vector<int> order(weights.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size(); i > 1; --i) {
        const std::size_t j = rng.next_below(i);
        std::swap(order[i - 1], order[j]);
    }
    SolveResult r = scan_in_order(weights, order);
    r.objective = decision_objective(weights, r.decision);
    return r;
}

SolveResult solve_baseline_priority(std::span<const Weight> weights) {
    std::vector<int> order(weights.size());
    std::iota(order.begin(), order.end(), 0);
    SolveResult r = scan_in_order(weights, order);
    r.objective = decision_objective(weights, r.decision);
    return r;
}

} // namespace framesched
