#include "framesched/verify.hpp"

#include <cctype>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>
#include <string>

namespace framesched {

namespace {

bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        for (char c : line) {
            if (!std::isspace(static_cast<unsigned char>(c))) {
                return true;
            }
        }
    }
    return false;
}

} // namespace

SetPackingInstance parse_set_packing(std::istream& in) {
    std::string line;
    if (!next_content_line(in, line)) {
        throw InvalidInstance("missing header line \"m n\"");
    }
    SetPackingInstance inst;
    int num_sets = 0;
    {
        std::istringstream hdr(line);
        std::string extra;
        if (!(hdr >> inst.universe_size >> num_sets) || (hdr >> extra)) {
            throw InvalidInstance("header must be two integers, got \"" + line + "\"");
        }
    }
    if (inst.universe_size < 1) {
        throw InvalidInstance("universe size must be positive");
    }
    if (num_sets < 0) {
        throw InvalidInstance("set count must be non-negative");
    }
    inst.sets.reserve(num_sets);
    for (int s = 0; s < num_sets; ++s) {
        if (!next_content_line(in, line)) {
            throw InvalidInstance("expected " + std::to_string(num_sets) + " sets, found " +
                                  std::to_string(s));
        }
        std::istringstream row(line);
        std::vector<int> set;
        std::uint64_t seen = 0;
        int e = 0;
        while (row >> e) {
            if (e < 1 || e > inst.universe_size) {
                throw InvalidInstance("set " + std::to_string(s) + " element " +
                                      std::to_string(e) + " outside 1.." +
                                      std::to_string(inst.universe_size));
            }
            if (inst.universe_size <= 64) {
                const std::uint64_t bit = std::uint64_t{1} << (e - 1);
                if (seen & bit) {
                    throw InvalidInstance("set " + std::to_string(s) + " repeats element " +
                                          std::to_string(e));
                }
                seen |= bit;
            }
            set.push_back(e);
        }
        if (!row.eof()) {
            throw InvalidInstance("set " + std::to_string(s) + " has a non-integer token");
        }
        if (set.empty()) {
            throw InvalidInstance("set " + std::to_string(s) + " is empty");
        }
        inst.sets.push_back(std::move(set));
    }
    return inst;
}

ReducedInstance reduce_set_packing(const SetPackingInstance& instance) {
    const int n = static_cast<int>(instance.sets.size());
    const int m = instance.universe_size;
    if (n < 1) {
        throw InvalidInstance("reduction needs at least one set");
    }
    if (m > kMaxWorkers) {
        throw InvalidInstance("universe size " + std::to_string(m) + " exceeds the " +
                              std::to_string(kMaxWorkers) + "-worker cap");
    }

    ProbMatrix gen(n, m, 0.0);
    FrameState frame;
    frame.frame_index = 1;
    frame.jobs.resize(n);
    for (int i = 0; i < n; ++i) {
        WorkerMask mask = 0;
        for (int e : instance.sets[i]) {
            gen(i, e - 1) = 1.0;
            mask |= WorkerMask{1} << (e - 1);
        }
        frame.jobs[i] = JobVector{i, mask};
    }
    NetworkModel model(n, m, std::move(gen), ConstantCompletion{ProbMatrix(n, m, 1.0)});
    return ReducedInstance{std::move(model), std::move(frame), Requirement::uniform(n, 0.5)};
}

namespace {

// Both samplers draw app-major so a queue vector costs a fixed number of
// draws per frame.
void draw_queues(const QueueSampler& sampler, int n, int m, RngStream& rng,
                 std::vector<double>& out) {
    out.resize(n);
    if (const auto* u = std::get_if<UniformQueues>(&sampler)) {
        for (int i = 0; i < n; ++i) {
            out[i] = u->lo + rng.next_u01() * (u->hi - u->lo);
        }
        return;
    }
    const auto& a = std::get<AdversarialQueues>(sampler);
    for (int i = 0; i < n; ++i) {
        out[i] = a.base_lo + rng.next_u01() * (a.base_hi - a.base_lo);
    }
    // App 0 plays the heavy job: push its queue to sqrt(M) times a singleton
    // queue, plus jitter, right where the greedy sort keys collide.
    const double jitter = (2.0 * rng.next_u01() - 1.0) * a.jitter;
    out[0] = std::max(out[0] * std::sqrt(static_cast<double>(m)) + jitter, 0.0);
}

} // namespace

RatioReport audit_ratio(const NetworkModel& model, std::int64_t frames, std::uint64_t seed,
                        const QueueSampler& sampler) {
    const int m = model.num_workers();
    RatioReport rep;
    rep.frames_audited = frames;
    rep.bound = std::sqrt(static_cast<double>(m));

    std::vector<double> queues;
    FrameState frame;
    std::vector<Weight> weights;
    for (std::int64_t t = 1; t <= frames; ++t) {
        RngStream rng = frame_stream(seed, t);
        draw_queues(sampler, model.num_apps(), m, rng, queues);
        generate_frame_into(model, t, rng, frame);
        compute_weights_into(queues, frame, model, weights);

        const SolveResult exact = solve_exact(weights);
        if (exact.objective <= 0.0) {
            continue; // nothing schedulable carries weight this frame
        }
        const SolveResult greedy = solve_greedy(weights, m);
        rep.ratio_frames += 1;
        const double ratio = greedy.objective > 0.0
                                 ? exact.objective / greedy.objective
                                 : std::numeric_limits<double>::infinity();
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        if (exact.objective > rep.bound * greedy.objective + 1e-9) {
            rep.violations += 1;
        }
    }
    return rep;
}

NetworkModel make_star_model(int num_workers) {
    if (num_workers < 1 || num_workers > kMaxWorkers) {
        throw InvalidInstance("star model needs 1.." + std::to_string(kMaxWorkers) +
                              " workers, got " + std::to_string(num_workers));
    }
    const int n = num_workers + 1;
    ProbMatrix gen(n, num_workers, 0.0);
    for (int j = 0; j < num_workers; ++j) {
        gen(0, j) = 1.0;     // app 0 needs every worker
        gen(j + 1, j) = 1.0; // app j+1 needs worker j alone
    }
    return NetworkModel(n, num_workers, std::move(gen),
                        ConstantCompletion{ProbMatrix(n, num_workers, 1.0)});
}

} // namespace framesched
