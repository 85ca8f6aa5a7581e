#include "framesched/region.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace framesched {

double FulfillmentVerdict::min_margin() const {
    double m = 0.0;
    bool first = true;
    for (double v : margins) {
        m = first ? v : std::min(m, v);
        first = false;
    }
    return m;
}

std::uint64_t region_point_seed(std::uint64_t base_seed, std::uint64_t point_index,
                                std::uint64_t replicate) {
    return derive_seed({base_seed, point_index, replicate});
}

FulfillmentVerdict check_fulfillment(const NetworkModel& model, const Requirement& requirement,
                                     Policy policy, std::int64_t frames,
                                     const std::vector<std::uint64_t>& seeds, double epsilon) {
    const int n = model.num_apps();
    FulfillmentVerdict v;
    v.requirement = requirement.values;
    v.seeds_used = seeds;
    v.margins.assign(n, 0.0);

    std::vector<double> avg_rate(n, 0.0);
    SimOptions opts;
    opts.record_trace = false;
    for (std::uint64_t seed : seeds) {
        SimMetrics mx = simulate(model, requirement, policy, frames, seed, opts);
        for (int i = 0; i < n; ++i) {
            avg_rate[i] += mx.empirical_rate[i];
        }
    }
    if (!seeds.empty()) {
        for (int i = 0; i < n; ++i) {
            avg_rate[i] /= static_cast<double>(seeds.size());
        }
    }
    v.fulfilled = true;
    for (int i = 0; i < n; ++i) {
        v.margins[i] = avg_rate[i] - requirement[i];
        v.fulfilled = v.fulfilled && v.margins[i] >= -epsilon;
    }
    return v;
}

namespace {

std::vector<std::uint64_t> point_seeds(const RegionOptions& options, std::uint64_t point_index,
                                       int count) {
    std::vector<std::uint64_t> seeds(count);
    for (int s = 0; s < count; ++s) {
        seeds[s] = region_point_seed(options.base_seed, point_index, s);
    }
    return seeds;
}

} // namespace

RegionEstimate sweep_grid_2d(const NetworkModel& model, Policy policy,
                             const RegionOptions& options) {
    if (model.num_apps() != 2) {
        throw NotTwoApps("grid sweep requires a two-app model, got " +
                         std::to_string(model.num_apps()));
    }
    const double step = options.grid_step;
    const int per_axis = static_cast<int>(std::floor(1.0 / step + 1e-9)) + 1;
    const std::size_t total = static_cast<std::size_t>(per_axis) * per_axis;

    RegionEstimate est;
    est.policy_label = policy_name(policy);
    est.grid_step = step;
    est.points.resize(total);

    auto run_point = [&](std::size_t p) {
        const int i1 = static_cast<int>(p) / per_axis;
        const int i2 = static_cast<int>(p) % per_axis;
        const Requirement req(std::vector<double>{std::min(i1 * step, 1.0),
                                                  std::min(i2 * step, 1.0)});
        est.points[p] = check_fulfillment(model, req, policy, options.frames,
                                          point_seeds(options, p, options.num_seeds),
                                          options.epsilon);
    };

    const int jobs = std::max(options.jobs, 1);
    if (jobs == 1) {
        for (std::size_t p = 0; p < total; ++p) {
            run_point(p);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        auto worker = [&] {
            for (;;) {
                const std::size_t p = next.fetch_add(1);
                if (p >= total) {
                    return;
                }
                try {
                    run_point(p);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int k = 0; k < jobs; ++k) {
            pool.emplace_back(worker);
        }
        for (std::thread& th : pool) {
            th.join();
        }
        if (error) {
            std::rethrow_exception(error);
        }
    }

    est.monotonicity_flags = audit_monotonicity(est);
    return est;
}

RegionEstimate sweep_symmetric(const NetworkModel& model, Policy policy,
                               const RegionOptions& options) {
    const int n = model.num_apps();
    RegionEstimate est;
    est.policy_label = policy_name(policy);
    est.resolution = options.resolution;

    // A requirement value doubles as its own point index so replicate seeds
    // do not depend on the bisection path.
    auto index_of = [](double r) {
        return static_cast<std::uint64_t>(std::llround(r * 1e9));
    };
    auto evaluate = [&](double r, int seed_count) {
        FulfillmentVerdict v =
            check_fulfillment(model, Requirement::uniform(n, r), policy, options.frames,
                              point_seeds(options, index_of(r), seed_count), options.epsilon);
        est.points.push_back(v);
        return v.fulfilled;
    };

    double lo = 0.0; // rates are never negative, so r = 0 is always fulfilled
    double hi = 1.0;
    if (evaluate(hi, options.num_seeds)) {
        lo = hi;
    } else {
        while (hi - lo > options.resolution) {
            const double mid = 0.5 * (lo + hi);
            if (evaluate(mid, options.num_seeds)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }

    // Re-confirm the boundary with three times the seeds; a contradiction
    // steps it down until it holds (or reaches zero).
    double boundary = lo;
    while (boundary > 0.0 && !evaluate(boundary, options.num_seeds * 3)) {
        boundary = std::max(boundary - options.resolution, 0.0);
    }
    est.boundary = boundary;
    return est;
}

int audit_monotonicity(const RegionEstimate& estimate) {
    const auto& pts = estimate.points;
    auto dominated = [](const std::vector<double>& a, const std::vector<double>& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] > b[i]) {
                return false;
            }
        }
        return true;
    };
    int inversions = 0;
    for (const FulfillmentVerdict& a : pts) {
        if (a.fulfilled) {
            continue;
        }
        for (const FulfillmentVerdict& b : pts) {
            if (b.fulfilled && a.requirement != b.requirement &&
                dominated(a.requirement, b.requirement)) {
                ++inversions;
                break;
            }
        }
    }
    return inversions;
}

} // namespace framesched
