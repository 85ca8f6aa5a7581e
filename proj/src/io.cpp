#include "framesched/io.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace framesched {

std::string double_repr(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

nlohmann::ordered_json metrics_to_json(const SimMetrics& metrics) {
    nlohmann::ordered_json doc;
    doc["policy"] = policy_name(metrics.policy);
    doc["seed"] = metrics.seed;
    doc["frames"] = metrics.frames;
    doc["requirement"] = metrics.requirement;
    doc["completions"] = metrics.completions;
    doc["generated"] = metrics.generated;
    doc["empirical_rate"] = metrics.empirical_rate;
    doc["final_queues"] = metrics.final_queues;
    if (!metrics.queue_trace.empty()) {
        nlohmann::ordered_json trace = nlohmann::ordered_json::array();
        for (const TraceSample& s : metrics.queue_trace) {
            trace.push_back({{"frame", s.frame}, {"q", s.q}});
        }
        doc["queue_trace"] = std::move(trace);
    }
    if (!metrics.ratio_log.empty()) {
        double max_ratio = 0.0;
        std::int64_t positive = 0;
        for (const auto& [exact, policy] : metrics.ratio_log) {
            if (exact <= 0.0) {
                continue;
            }
            ++positive;
            max_ratio = std::max(max_ratio, policy > 0.0
                                                ? exact / policy
                                                : std::numeric_limits<double>::infinity());
        }
        doc["ratio"] = {{"frames", positive}, {"max_ratio", max_ratio}};
    }
    if (!metrics.decisions.empty()) {
        nlohmann::ordered_json ds = nlohmann::ordered_json::array();
        for (const DecisionRecord& d : metrics.decisions) {
            ds.push_back({{"frame", d.frame},
                          {"scheduled", d.scheduled},
                          {"objective", d.objective}});
        }
        doc["decisions"] = std::move(ds);
    }
    return doc;
}

std::string trace_to_csv(const SimMetrics& metrics) {
    const std::size_t n = metrics.requirement.size();
    std::string out = "frame";
    for (std::size_t i = 0; i < n; ++i) {
        out += ",q_" + std::to_string(i);
    }
    out += '\n';
    for (const TraceSample& s : metrics.queue_trace) {
        out += std::to_string(s.frame);
        for (double v : s.q) {
            out += ',';
            out += double_repr(v);
        }
        out += '\n';
    }
    return out;
}

std::string region_to_csv(const RegionEstimate& estimate) {
    std::size_t n = 0;
    for (const FulfillmentVerdict& p : estimate.points) {
        n = std::max(n, p.requirement.size());
    }
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
        out += "r_" + std::to_string(i) + ",";
    }
    out += "fulfilled,min_margin\n";
    for (const FulfillmentVerdict& p : estimate.points) {
        for (double r : p.requirement) {
            out += double_repr(r);
            out += ',';
        }
        out += p.fulfilled ? '1' : '0';
        out += ',';
        out += double_repr(p.min_margin());
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json ratio_report_to_json(const RatioReport& report) {
    return nlohmann::ordered_json{{"frames_audited", report.frames_audited},
                                  {"ratio_frames", report.ratio_frames},
                                  {"max_ratio", report.max_ratio},
                                  {"bound", report.bound},
                                  {"violations", report.violations}};
}

} // namespace framesched
