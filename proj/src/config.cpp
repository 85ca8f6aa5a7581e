#include "framesched/config.hpp"

#include <fstream>
#include <utility>

namespace framesched {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
}

int get_positive_int(const json& doc, const char* key, const std::string& where) {
    if (!doc.contains(key)) {
        fail(where, std::string("missing key \"") + key + "\"");
    }
    const json& v = doc.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
        fail(where, std::string("\"") + key + "\" must be a positive integer");
    }
    return v.get<int>();
}

std::vector<std::vector<double>> get_matrix(const json& v, int rows, int cols,
                                            const std::string& name, const std::string& where) {
    if (!v.is_array() || static_cast<int>(v.size()) != rows) {
        fail(where, name + " must be an array of " + std::to_string(rows) + " rows");
    }
    std::vector<std::vector<double>> out(rows);
    for (int i = 0; i < rows; ++i) {
        const json& row = v.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != cols) {
            fail(where, name + "[" + std::to_string(i) + "] must be an array of " +
                            std::to_string(cols) + " numbers");
        }
        out[i].resize(cols);
        for (int j = 0; j < cols; ++j) {
            const json& cell = row.at(j);
            if (!cell.is_number()) {
                fail(where, name + "[" + std::to_string(i) + "][" + std::to_string(j) +
                                "] is not a number");
            }
            out[i][j] = cell.get<double>();
        }
    }
    return out;
}

CompletionModel load_completion(const json& v, int n, int m, const std::string& where) {
    if (!v.is_object() || v.size() != 1) {
        fail(where, "\"completion\" must be an object with exactly one of "
                    "\"constant\" or \"workload\"");
    }
    if (v.contains("constant")) {
        return ConstantCompletion{
            ProbMatrix::from_rows(get_matrix(v.at("constant"), n, m, "completion.constant",
                                             where))};
    }
    if (!v.contains("workload")) {
        fail(where, "\"completion\" must contain \"constant\" or \"workload\"");
    }
    const json& w = v.at("workload");
    if (!w.is_object() || !w.contains("levels") || !w.contains("level_dist")) {
        fail(where, "\"completion.workload\" needs \"levels\" and \"level_dist\"");
    }
    const json& levels = w.at("levels");
    if (!levels.is_array() || levels.empty()) {
        fail(where, "\"completion.workload.levels\" must be a non-empty array");
    }
    WorkloadCompletion wl;
    for (std::size_t l = 0; l < levels.size(); ++l) {
        const json& lv = levels.at(l);
        const std::string name = "completion.workload.levels[" + std::to_string(l) + "]";
        if (!lv.is_object() || !lv.contains("label") || !lv.contains("probs")) {
            fail(where, name + " needs \"label\" and \"probs\"");
        }
        if (!lv.at("label").is_string()) {
            fail(where, name + ".label must be a string");
        }
        wl.levels.push_back({lv.at("label").get<std::string>(),
                             ProbMatrix::from_rows(
                                 get_matrix(lv.at("probs"), n, m, name + ".probs", where))});
    }
    const json& dist = w.at("level_dist");
    const int num_levels = static_cast<int>(levels.size());
    if (!dist.is_array() || static_cast<int>(dist.size()) != n) {
        fail(where, "\"completion.workload.level_dist\" must have one row per app");
    }
    wl.level_dist.resize(n);
    for (int i = 0; i < n; ++i) {
        wl.level_dist[i] =
            get_matrix(dist.at(i), m, num_levels,
                       "completion.workload.level_dist[" + std::to_string(i) + "]", where);
    }
    return wl;
}

} // namespace

NetworkModel load_model_json(const nlohmann::json& doc, const std::string& where) {
    if (!doc.is_object()) {
        fail(where, "top level must be an object");
    }
    const int n = get_positive_int(doc, "num_apps", where);
    const int m = get_positive_int(doc, "num_workers", where);
    if (!doc.contains("gen_prob")) {
        fail(where, "missing key \"gen_prob\"");
    }
    if (!doc.contains("completion")) {
        fail(where, "missing key \"completion\"");
    }
    ProbMatrix gen = ProbMatrix::from_rows(get_matrix(doc.at("gen_prob"), n, m, "gen_prob",
                                                      where));
    CompletionModel completion = load_completion(doc.at("completion"), n, m, where);
    try {
        return NetworkModel(n, m, std::move(gen), std::move(completion));
    } catch (const std::exception& e) {
        fail(where, e.what()); // range/sum violations, named by cell
    }
}

NetworkModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path + ": cannot open file");
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        // nlohmann anchors the message to a line/column already
        throw ConfigError(path + ": " + e.what());
    }
    return load_model_json(doc, path);
}

nlohmann::ordered_json model_to_json(const NetworkModel& model) {
    nlohmann::ordered_json doc;
    doc["num_apps"] = model.num_apps();
    doc["num_workers"] = model.num_workers();
    doc["gen_prob"] = model.gen_prob().to_rows();
    nlohmann::ordered_json completion;
    if (const auto* c = std::get_if<ConstantCompletion>(&model.completion())) {
        completion["constant"] = c->probs.to_rows();
    } else {
        const auto& w = std::get<WorkloadCompletion>(model.completion());
        nlohmann::ordered_json levels = nlohmann::ordered_json::array();
        for (const auto& lv : w.levels) {
            levels.push_back({{"label", lv.label}, {"probs", lv.probs.to_rows()}});
        }
        completion["workload"] = {{"levels", std::move(levels)}, {"level_dist", w.level_dist}};
    }
    doc["completion"] = std::move(completion);
    return doc;
}

} // namespace framesched
