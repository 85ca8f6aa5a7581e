#pragma once

#include "framesched/engine.hpp"
#include "framesched/model.hpp"
#include "framesched/scheduler.hpp"

#include <cstdint>
#include <iosfwd>
#include <variant>
#include <vector>

namespace framesched {

/// Set packing input: n non-empty sets over the universe {1..m}.
struct SetPackingInstance {
    int universe_size = 0;
    std::vector<std::vector<int>> sets;
};

/// Reads the plain-text format: first line "m n", then one line per set
/// listing its elements. Throws InvalidInstance on malformed input.
SetPackingInstance parse_set_packing(std::istream& in);

struct ReducedInstance {
    NetworkModel model;
    FrameState frame;
    Requirement requirement;
};

/// Maps a set packing instance onto the scheduling problem: n apps, m
/// workers, completion probabilities all 1, app i's job = set i, uniform
/// requirement 0.5. All weights are then equal, so maximizing the scheduled
/// total weight is exactly maximum set packing.
ReducedInstance reduce_set_packing(const SetPackingInstance& instance);

/// Queue vectors i.i.d. uniform in [lo, hi].
struct UniformQueues {
    double lo = 0.0;
    double hi = 10.0;
};

/// Heavy-job-versus-singletons generator: app 0 gets a queue near
/// sqrt(M) times the singleton apps' queues, straddling the greedy sort
/// boundary where worst-case ratios live.
struct AdversarialQueues {
    double base_lo = 0.5;
    double base_hi = 1.5;
    double jitter = 0.1;
};

using QueueSampler = std::variant<UniformQueues, AdversarialQueues>;

struct RatioReport {
    std::int64_t frames_audited = 0;
    std::int64_t ratio_frames = 0; // frames with a positive optimum
    double max_ratio = 0.0;
    double bound = 0.0; // sqrt(M)
    std::int64_t violations = 0;
};

/// Per random frame: draw queues from the sampler, generate jobs, run the
/// exact and greedy solvers on the same weights, and record
/// exact/greedy objective ratios. Frames where both objectives are zero are
/// skipped. A violation is a frame with exact > sqrt(M) * greedy beyond
/// 1e-9 slack; any violation indicates a solver bug.
RatioReport audit_ratio(const NetworkModel& model, std::int64_t frames, std::uint64_t seed,
                        const QueueSampler& sampler = UniformQueues{});

/// Star topology for adversarial audits: app 0 needs all M workers, apps
/// 1..M need one distinct worker each; all tasks generate and complete
/// with probability 1.
NetworkModel make_star_model(int num_workers);

} // namespace framesched
