#include "framesched/model.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace framesched {

namespace {

std::string cell_name(const char* what, int i, int j) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%s[%d][%d]", what, i, j);
    return buf;
}

void check_probability(const char* what, int i, int j, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(cell_name(what, i, j) + " = " + std::to_string(p) +
                                    " outside [0,1]");
    }
}

void check_matrix(const char* what, const ProbMatrix& m, int rows, int cols) {
    if (m.rows() != rows || m.cols() != cols) {
        throw DimensionMismatch(std::string(what) + " is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + ", expected " + std::to_string(rows) +
                                "x" + std::to_string(cols));
    }
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            check_probability(what, i, j, m(i, j));
        }
    }
}

} // namespace

ProbMatrix ProbMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r > 0 ? static_cast<int>(rows[0].size()) : 0;
    ProbMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) {
            throw DimensionMismatch("row " + std::to_string(i) + " has " +
                                    std::to_string(rows[i].size()) + " entries, expected " +
                                    std::to_string(c));
        }
        for (int j = 0; j < c; ++j) {
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

std::vector<std::vector<double>> ProbMatrix::to_rows() const {
    std::vector<std::vector<double>> out(rows_, std::vector<double>(cols_));
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            out[i][j] = (*this)(i, j);
        }
    }
    return out;
}

NetworkModel::NetworkModel(int num_apps, int num_workers, ProbMatrix gen_prob,
                           CompletionModel completion)
    : num_apps_(num_apps),
      num_workers_(num_workers),
      gen_prob_(std::move(gen_prob)),
      completion_(std::move(completion)) {
    if (num_apps_ <= 0) {
        throw std::invalid_argument("num_apps must be positive, got " + std::to_string(num_apps_));
    }
    if (num_workers_ <= 0 || num_workers_ > kMaxWorkers) {
        throw std::invalid_argument("num_workers must be in [1," + std::to_string(kMaxWorkers) +
                                    "], got " + std::to_string(num_workers_));
    }
    check_matrix("gen_prob", gen_prob_, num_apps_, num_workers_);

    if (const auto* constant = std::get_if<ConstantCompletion>(&completion_)) {
        check_matrix("completion", constant->probs, num_apps_, num_workers_);
    } else {
        const auto& wl = std::get<WorkloadCompletion>(completion_);
        if (wl.levels.empty()) {
            throw std::invalid_argument("workload completion needs at least one level");
        }
        for (std::size_t l = 0; l < wl.levels.size(); ++l) {
            check_matrix(("completion level " + std::to_string(l)).c_str(), wl.levels[l].probs,
                         num_apps_, num_workers_);
        }
        if (static_cast<int>(wl.level_dist.size()) != num_apps_) {
            throw DimensionMismatch("level_dist has " + std::to_string(wl.level_dist.size()) +
                                    " rows, expected " + std::to_string(num_apps_));
        }
        for (int i = 0; i < num_apps_; ++i) {
            if (static_cast<int>(wl.level_dist[i].size()) != num_workers_) {
                throw DimensionMismatch("level_dist[" + std::to_string(i) + "] has " +
                                        std::to_string(wl.level_dist[i].size()) +
                                        " columns, expected " + std::to_string(num_workers_));
            }
            for (int j = 0; j < num_workers_; ++j) {
                const auto& dist = wl.level_dist[i][j];
                if (dist.size() != wl.levels.size()) {
                    throw DimensionMismatch(cell_name("level_dist", i, j) + " has " +
                                            std::to_string(dist.size()) + " entries, expected " +
                                            std::to_string(wl.levels.size()));
                }
                double sum = 0.0;
                for (std::size_t l = 0; l < dist.size(); ++l) {
                    if (!(dist[l] >= 0.0 && dist[l] <= 1.0)) {
                        throw std::invalid_argument(cell_name("level_dist", i, j) + "[" +
                                                    std::to_string(l) + "] = " +
                                                    std::to_string(dist[l]) + " outside [0,1]");
                    }
                    sum += dist[l];
                }
                if (std::abs(sum - 1.0) > 1e-9) {
                    throw std::invalid_argument(cell_name("level_dist", i, j) + " sums to " +
                                                std::to_string(sum) + ", expected 1");
                }
            }
        }
    }
}

double NetworkModel::completion_prob(const FrameState& frame, int app, int worker) const {
    if (const auto* constant = std::get_if<ConstantCompletion>(&completion_)) {
        return constant->probs(app, worker);
    }
    const auto& wl = std::get<WorkloadCompletion>(completion_);
    return wl.levels[frame.level_at(app, worker, num_workers_)].probs(app, worker);
}

void generate_frame_into(const NetworkModel& model, std::int64_t frame_index, RngStream& rng,
                         FrameState& out) {
    const int n = model.num_apps();
    const int m = model.num_workers();
    out.frame_index = frame_index;
    out.jobs.resize(n);
    // Generation bits first, app-major/worker-major; the draw order is part
    // of the reproducibility contract.
    for (int i = 0; i < n; ++i) {
        WorkerMask tasks = 0;
        for (int j = 0; j < m; ++j) {
            if (rng.bernoulli(model.gen_prob()(i, j))) {
                tasks |= WorkerMask{1} << j;
            }
        }
        out.jobs[i] = JobVector{i, tasks};
    }
    if (const auto* wl = std::get_if<WorkloadCompletion>(&model.completion())) {
        out.workload_draw.resize(static_cast<std::size_t>(n) * m);
        const int num_levels = static_cast<int>(wl->levels.size());
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < m; ++j) {
                const auto& dist = wl->level_dist[i][j];
                const double u = rng.next_u01();
                double acc = 0.0;
                int drawn = num_levels - 1;
                for (int l = 0; l < num_levels; ++l) {
                    acc += dist[l];
                    if (u < acc) {
                        drawn = l;
                        break;
                    }
                }
                out.workload_draw[static_cast<std::size_t>(i) * m + j] = drawn;
            }
        }
    } else {
        out.workload_draw.clear();
    }
}

FrameState generate_frame(const NetworkModel& model, std::int64_t frame_index, RngStream& rng) {
    FrameState out;
    generate_frame_into(model, frame_index, rng, out);
    return out;
}

void validate_decision(const FrameState& frame, const Decision& decision) {
    const int n = static_cast<int>(frame.jobs.size());
    WorkerMask used = 0;
    int prev = -1;
    for (int app : decision.scheduled) {
        if (app < 0 || app >= n) {
            throw MalformedDecision("scheduled app " + std::to_string(app) + " out of range");
        }
        if (app <= prev) {
            throw MalformedDecision("scheduled app indices must be strictly increasing");
        }
        prev = app;
        const WorkerMask tasks = frame.jobs[app].tasks;
        if (tasks == 0) {
            throw MalformedDecision("scheduled app " + std::to_string(app) + " has an empty job");
        }
        if ((used & tasks) != 0) {
            throw MalformedDecision("scheduled app " + std::to_string(app) +
                                    " interferes with an earlier scheduled job");
        }
        used |= tasks;
    }
    if (used != decision.used_workers) {
        throw MalformedDecision("used_workers mask does not match the union of scheduled jobs");
    }
}

void sample_task_completions_into(const NetworkModel& model, const FrameState& frame,
                                  const Decision& decision, RngStream& rng,
                                  std::vector<std::uint8_t>& out) {
    validate_decision(frame, decision);
    const int m = model.num_workers();
    out.assign(frame.jobs.size(), 0);
    for (int app : decision.scheduled) {
        const WorkerMask tasks = frame.jobs[app].tasks;
        bool all_done = true;
        for (int j = 0; j < m; ++j) {
            if ((tasks >> j) & 1) {
                // No early exit: the draw count per scheduled job is fixed.
                const bool done = rng.bernoulli(model.completion_prob(frame, app, j));
                all_done = all_done && done;
            }
        }
        out[app] = all_done ? 1 : 0;
    }
}

std::vector<std::uint8_t> sample_task_completions(const NetworkModel& model,
                                                  const FrameState& frame,
                                                  const Decision& decision, RngStream& rng) {
    std::vector<std::uint8_t> out;
    sample_task_completions_into(model, frame, decision, rng, out);
    return out;
}

} // namespace framesched
