// Command-line front end: simulate runs, region sweeps, solver ratio audits,
// and set-packing reductions over models described by JSON config files.

#include "framesched/config.hpp"
#include "framesched/engine.hpp"
#include "framesched/io.hpp"
#include "framesched/region.hpp"
#include "framesched/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace framesched;

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError(path + ": cannot open for writing");
    }
    out << text;
}

Policy require_policy(const std::string& name) {
    Policy p{};
    if (!parse_policy(name, p)) {
        throw ConfigError("unknown policy \"" + name + "\" (exact, greedy, random, priority)");
    }
    return p;
}

Requirement build_requirement(const NetworkModel& model, const std::vector<double>& listed,
                              std::optional<double> rate) {
    if (!listed.empty() && rate) {
        throw ConfigError("give either --requirement or --rate, not both");
    }
    if (rate) {
        return Requirement::uniform(model.num_apps(), *rate);
    }
    if (static_cast<int>(listed.size()) != model.num_apps()) {
        throw ConfigError("--requirement needs " + std::to_string(model.num_apps()) +
                          " comma-separated values");
    }
    return Requirement(listed);
}

struct SimulateArgs {
    std::string config;
    std::string policy = "exact";
    std::int64_t frames = 10000;
    std::uint64_t seed = 1;
    std::vector<double> requirement;
    std::optional<double> rate;
    std::string out;
    std::string trace;
    int stride = 10;
    bool decisions = false;
};

int run_simulate(const SimulateArgs& a) {
    const NetworkModel model = load_model_file(a.config);
    const Requirement req = build_requirement(model, a.requirement, a.rate);
    SimOptions opts;
    opts.record_trace = !a.trace.empty();
    opts.trace_stride = a.stride;
    opts.record_decisions = a.decisions;
    const SimMetrics mx =
        simulate(model, req, require_policy(a.policy), a.frames, a.seed, opts);
    if (!a.trace.empty()) {
        write_text(a.trace, trace_to_csv(mx));
    }
    write_text(a.out, metrics_to_json(mx).dump(2) + "\n");
    return 0;
}

struct SweepArgs {
    std::string config;
    std::string policy = "greedy";
    bool symmetric = false;
    RegionOptions options;
    std::string out;
};

int run_sweep(const SweepArgs& a) {
    const NetworkModel model = load_model_file(a.config);
    const Policy policy = require_policy(a.policy);
    if (a.symmetric) {
        const RegionEstimate est = sweep_symmetric(model, policy, a.options);
        nlohmann::ordered_json doc{{"policy", est.policy_label},
                                   {"resolution", est.resolution},
                                   {"boundary", est.boundary},
                                   {"points_evaluated", est.points.size()}};
        write_text(a.out, doc.dump(2) + "\n");
    } else {
        const RegionEstimate est = sweep_grid_2d(model, policy, a.options);
        write_text(a.out, region_to_csv(est));
        if (est.monotonicity_flags != 0) {
            std::cerr << "note: " << est.monotonicity_flags
                      << " dominated points failed while a dominating point passed "
                         "(Monte-Carlo noise near the boundary)\n";
        }
    }
    return 0;
}

struct RatioArgs {
    std::string config;
    int star = 0;
    std::int64_t frames = 100000;
    std::uint64_t seed = 1;
    bool adversarial = false;
    std::string out;
};

int run_ratio(const RatioArgs& a) {
    if (a.config.empty() == (a.star == 0)) {
        throw ConfigError("give exactly one of --config or --star M");
    }
    const NetworkModel model = a.star != 0 ? make_star_model(a.star)
                                           : load_model_file(a.config);
    const QueueSampler sampler = a.adversarial ? QueueSampler{AdversarialQueues{}}
                                               : QueueSampler{UniformQueues{}};
    const RatioReport rep = audit_ratio(model, a.frames, a.seed, sampler);
    write_text(a.out, ratio_report_to_json(rep).dump(2) + "\n");
    return rep.violations == 0 ? 0 : 1;
}

struct ReduceArgs {
    std::string input;
    std::string out;
};

int run_reduce(const ReduceArgs& a) {
    SetPackingInstance inst;
    if (a.input.empty() || a.input == "-") {
        inst = parse_set_packing(std::cin);
    } else {
        std::ifstream in(a.input);
        if (!in) {
            throw ConfigError(a.input + ": cannot open file");
        }
        inst = parse_set_packing(in);
    }
    const ReducedInstance red = reduce_set_packing(inst);
    const std::vector<Weight> weights =
        compute_weights(red.requirement.values, red.frame, red.model);
    const SolveResult sol = solve_exact(weights);
    nlohmann::ordered_json doc{{"universe_size", inst.universe_size},
                               {"num_sets", inst.sets.size()},
                               {"model", model_to_json(red.model)},
                               {"packing", sol.decision.scheduled},
                               {"packing_size", sol.decision.scheduled.size()}};
    write_text(a.out, doc.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frame-based scheduling of stochastic multi-task jobs on unreliable workers"};
    app.require_subcommand(1);

    SimulateArgs sim;
    CLI::App* c_sim = app.add_subcommand("simulate", "Run one policy for T frames");
    c_sim->add_option("--config", sim.config, "Model config JSON")->required();
    c_sim->add_option("--policy", sim.policy, "exact|greedy|random|priority");
    c_sim->add_option("--frames", sim.frames, "Number of frames")->check(CLI::PositiveNumber);
    c_sim->add_option("--seed", sim.seed, "Run seed");
    c_sim->add_option("--requirement", sim.requirement,
                      "Per-app completion-rate targets, comma separated")
        ->delimiter(',');
    c_sim->add_option("--rate", sim.rate, "Uniform completion-rate target");
    c_sim->add_option("--out", sim.out, "Metrics JSON path (default stdout)");
    c_sim->add_option("--trace", sim.trace, "Queue trace CSV path");
    c_sim->add_option("--stride", sim.stride, "Trace sampling stride")
        ->check(CLI::PositiveNumber);
    c_sim->add_flag("--decisions", sim.decisions, "Record per-frame decisions");

    SweepArgs sw;
    CLI::App* c_sw = app.add_subcommand("sweep", "Estimate the achievable-requirement region");
    c_sw->add_option("--config", sw.config, "Model config JSON")->required();
    c_sw->add_option("--policy", sw.policy, "exact|greedy|random|priority");
    c_sw->add_flag("--symmetric", sw.symmetric,
                   "Bisection on a common rate instead of a 2-D grid");
    c_sw->add_option("--frames", sw.options.frames, "Frames per simulation")
        ->check(CLI::PositiveNumber);
    c_sw->add_option("--seeds", sw.options.num_seeds, "Replicates per point")
        ->check(CLI::PositiveNumber);
    c_sw->add_option("--seed", sw.options.base_seed, "Base seed");
    c_sw->add_option("--epsilon", sw.options.epsilon, "Fulfillment slack");
    c_sw->add_option("--step", sw.options.grid_step, "Grid spacing (2-D sweeps)");
    c_sw->add_option("--resolution", sw.options.resolution,
                     "Bisection resolution (symmetric sweeps)");
    c_sw->add_option("--jobs", sw.options.jobs, "Worker threads")->check(CLI::PositiveNumber);
    c_sw->add_option("--out", sw.out, "Output path (default stdout)");

    RatioArgs ra;
    CLI::App* c_ra = app.add_subcommand(
        "verify-ratio", "Audit exact/greedy objective ratios against the sqrt(M) bound");
    c_ra->add_option("--config", ra.config, "Model config JSON");
    c_ra->add_option("--star", ra.star, "Use the M-worker star model instead of a config")
        ->check(CLI::Range(1, 64));
    c_ra->add_option("--frames", ra.frames, "Frames to audit")->check(CLI::PositiveNumber);
    c_ra->add_option("--seed", ra.seed, "Audit seed");
    c_ra->add_flag("--adversarial", ra.adversarial,
                   "Heavy-job-versus-singletons queue sampler");
    c_ra->add_option("--out", ra.out, "Report JSON path (default stdout)");

    ReduceArgs re;
    CLI::App* c_re = app.add_subcommand(
        "reduce", "Map a set packing instance onto a one-frame scheduling problem");
    c_re->add_option("--input", re.input, "Instance file (default stdin)");
    c_re->add_option("--out", re.out, "Result JSON path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_sim->parsed()) {
            return run_simulate(sim);
        }
        if (c_sw->parsed()) {
            return run_sweep(sw);
        }
        if (c_ra->parsed()) {
            return run_ratio(ra);
        }
        return run_reduce(re);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const InvalidInstance& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NotTwoApps& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
