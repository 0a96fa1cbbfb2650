#include "softgait/rewards.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace softgait {

namespace {

std::string shortest_decimal(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void check_table(const RewardTable& t, int k, const char* name) {
    if (t.size() != k)
        throw InputError(std::string(name) + " is " + std::to_string(t.size()) +
                         "x" + std::to_string(t.size()) + ", expected " +
                         std::to_string(k) + "x" + std::to_string(k));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (!std::isfinite(t.at(i, j)))
                throw InputError(std::string(name) + " entry (" +
                                 std::to_string(i) + "," + std::to_string(j) +
                                 ") is not finite");
        }
        if (t.at(i, i) != 0.0)
            throw InputError(std::string(name) + " diagonal entry " +
                             std::to_string(i) + " must be 0");
    }
}

nlohmann::json table_to_json(const RewardTable& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < t.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < t.size(); ++j) row.push_back(t.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

RewardTable table_from_json(const nlohmann::json& rows, int k, const char* name) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != k)
        throw InputError(std::string(name) + ": expected " + std::to_string(k) +
                         " rows");
    RewardTable t(k);
    for (int i = 0; i < k; ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || static_cast<int>(row.size()) != k)
            throw InputError(std::string(name) + " row " + std::to_string(i) +
                             ": expected " + std::to_string(k) + " columns");
        for (int j = 0; j < k; ++j) {
            if (!row[j].is_number())
                throw InputError(std::string(name) + " entry (" +
                                 std::to_string(i) + "," + std::to_string(j) +
                                 ") is not a number");
            t.at(i, j) = row[j].get<double>();
        }
    }
    return t;
}

} // namespace

RewardMatrices RewardMatrices::zero(const BehaviorSpec& spec) {
    const int k = spec.state_count();
    return RewardMatrices{spec, RewardTable(k), RewardTable(k), RewardTable(k),
                          {}, {}};
}

void RewardMatrices::validate() const {
    const int k = spec.state_count();
    check_table(t_x, k, "t_x");
    check_table(t_y, k, "t_y");
    check_table(t_theta, k, "t_theta");
}

WeightingPolicy WeightingPolicy::length_normalized(double robot_length_mm) {
    if (!(robot_length_mm > 0))
        throw InputError("length-normalized policy requires robot_length > 0");
    return {WeightingMode::LengthNormalized, robot_length_mm, 0};
}

WeightingPolicy WeightingPolicy::quantized(double quantum) {
    if (!(quantum > 0))
        throw InputError("quantized policy requires quantum > 0");
    return {WeightingMode::Quantized, 0, quantum};
}

LearnResult learn_rewards(const std::vector<TransitionObservation>& observations,
                          const BehaviorSpec& spec,
                          const WeightingPolicy& policy) {
    if (policy.mode == WeightingMode::LengthNormalized && !(policy.robot_length > 0))
        throw InputError("length-normalized policy requires robot_length > 0");
    if (policy.mode == WeightingMode::Quantized && !(policy.quantum > 0))
        throw InputError("quantized policy requires quantum > 0");

    const int k = spec.state_count();
    std::vector<double> sum_x(k * k, 0.0), sum_y(k * k, 0.0), sum_t(k * k, 0.0);
    std::vector<int> counts(k * k, 0);

    for (std::size_t n = 0; n < observations.size(); ++n) {
        const auto& obs = observations[n];
        if (obs.from_state < 0 || obs.from_state >= k || obs.to_state < 0 ||
            obs.to_state >= k)
            throw InputError("observation " + std::to_string(n) +
                             ": state index outside [0, " + std::to_string(k) +
                             ")");
        if (!std::isfinite(obs.dx) || !std::isfinite(obs.dy) ||
            !std::isfinite(obs.dtheta))
            throw InputError("observation " + std::to_string(n) +
                             ": non-finite displacement");
        const int idx = obs.from_state * k + obs.to_state;
        sum_x[idx] += obs.dx;
        sum_y[idx] += obs.dy;
        sum_t[idx] += obs.dtheta;
        counts[idx] += 1;
    }

    LearnResult result;
    result.matrices = RewardMatrices::zero(spec);
    result.sample_counts = counts;

    const auto weight = [&](double mean, bool translational) {
        switch (policy.mode) {
        case WeightingMode::RawMean:
            return mean;
        case WeightingMode::LengthNormalized:
            return translational ? mean / policy.robot_length : mean;
        case WeightingMode::Quantized:
            return std::round(mean / policy.quantum) * policy.quantum;
        }
        return mean;
    };

    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (i == j) continue; // zero diagonal by convention
            const int idx = i * k + j;
            if (counts[idx] == 0) {
                result.unobserved_pairs.emplace_back(i, j);
                continue;
            }
            const double n = counts[idx];
            result.matrices.t_x.at(i, j) = weight(sum_x[idx] / n, true);
            result.matrices.t_y.at(i, j) = weight(sum_y[idx] / n, true);
            result.matrices.t_theta.at(i, j) = weight(sum_t[idx] / n, false);
        }
    }
    return result;
}

std::string environment_to_json(const RewardMatrices& matrices) {
    matrices.validate();
    nlohmann::ordered_json doc;
    doc["p"] = matrices.spec.behaviors_per_mechanism;
    doc["m"] = matrices.spec.mechanism_count;
    nlohmann::ordered_json labels = nlohmann::json::array();
    for (int i = 0; i < matrices.spec.state_count(); ++i)
        labels.push_back(state_label(i, matrices.spec));
    doc["state_labels"] = std::move(labels);
    doc["t_x"] = table_to_json(matrices.t_x);
    doc["t_y"] = table_to_json(matrices.t_y);
    doc["t_theta"] = table_to_json(matrices.t_theta);
    if (!matrices.surface.empty()) doc["surface"] = matrices.surface;
    if (!matrices.notes.empty()) doc["notes"] = matrices.notes;
    return doc.dump(2) + "\n";
}

RewardMatrices environment_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("environment parse error: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("p") || !doc.contains("m"))
        throw InputError("environment file missing p/m fields");
    if (!doc["p"].is_number_integer() || !doc["m"].is_number_integer())
        throw InputError("environment fields p and m must be integers");

    RewardMatrices matrices;
    matrices.spec =
        BehaviorSpec::make(doc["p"].get<int>(), doc["m"].get<int>());
    const int k = matrices.spec.state_count();

    if (doc.contains("state_labels")) {
        const auto& labels = doc["state_labels"];
        if (!labels.is_array() || static_cast<int>(labels.size()) != k)
            throw InputError("state_labels must list all " + std::to_string(k) +
                             " states in index order");
        for (int i = 0; i < k; ++i) {
            if (labels[i].get<std::string>() != state_label(i, matrices.spec))
                throw InputError("state_labels[" + std::to_string(i) +
                                 "] does not match the index encoding");
        }
    }

    for (const char* field : {"t_x", "t_y", "t_theta"})
        if (!doc.contains(field))
            throw InputError(std::string("environment file missing ") + field);
    matrices.t_x = table_from_json(doc["t_x"], k, "t_x");
    matrices.t_y = table_from_json(doc["t_y"], k, "t_y");
    matrices.t_theta = table_from_json(doc["t_theta"], k, "t_theta");
    if (doc.contains("surface")) matrices.surface = doc["surface"].get<std::string>();
    if (doc.contains("notes")) matrices.notes = doc["notes"].get<std::string>();
    matrices.validate();
    return matrices;
}

void save_environment(const RewardMatrices& matrices, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    out << environment_to_json(matrices);
    if (!out) throw InputError("write to '" + path + "' failed");
}

RewardMatrices load_environment(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open environment file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return environment_from_json(buf.str());
}

std::vector<TransitionObservation>
read_observations_csv(std::istream& in, const BehaviorSpec& spec) {
    std::vector<TransitionObservation> observations;
    std::string line;
    int line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::vector<std::string> fields;
        std::stringstream row(line);
        std::string field;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (line.back() == ',') fields.push_back("");

        if (!saw_header) {
            if (fields != std::vector<std::string>{"from", "to", "dx_mm",
                                                   "dy_mm", "dtheta_deg"})
                throw InputError("line 1: expected header "
                                 "from,to,dx_mm,dy_mm,dtheta_deg");
            saw_header = true;
            continue;
        }
        if (fields.size() != 5)
            throw InputError("line " + std::to_string(line_no) + ": expected 5 "
                             "fields, got " + std::to_string(fields.size()));

        TransitionObservation obs;
        try {
            obs.from_state = parse_state_label(fields[0], spec);
            obs.to_state = parse_state_label(fields[1], spec);
            obs.dx = std::stod(fields[2]);
            obs.dy = std::stod(fields[3]);
            obs.dtheta = std::stod(fields[4]);
        } catch (const std::exception& e) {
            throw InputError("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!std::isfinite(obs.dx) || !std::isfinite(obs.dy) ||
            !std::isfinite(obs.dtheta))
            throw InputError("line " + std::to_string(line_no) +
                             ": non-finite displacement");
        observations.push_back(obs);
    }
    // A file with no rows at all yields zero observations; every pair is
    // then reported as unobserved by learn_rewards.
    return observations;
}

std::vector<TransitionObservation>
read_observations_csv(const std::string& path, const BehaviorSpec& spec) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open observation file '" + path + "'");
    return read_observations_csv(in, spec);
}

void write_observations_csv(std::ostream& out,
                            const std::vector<TransitionObservation>& observations,
                            const BehaviorSpec& spec) {
    out << "from,to,dx_mm,dy_mm,dtheta_deg\n";
    for (const auto& obs : observations) {
        out << state_label(obs.from_state, spec) << ','
            << state_label(obs.to_state, spec) << ','
            << shortest_decimal(obs.dx) << ',' << shortest_decimal(obs.dy)
            << ',' << shortest_decimal(obs.dtheta) << '\n';
    }
}

} // namespace softgait
