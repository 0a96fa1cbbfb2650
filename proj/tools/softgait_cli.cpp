// Command-line front end: observation ingestion -> learning -> circuit
// enumeration -> gait optimization -> trajectory simulation.
//
// Exit codes: 0 success, 1 input error, 2 capacity error, 3 internal error.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "softgait/gaitopt.hpp"
#include "softgait/rewards.hpp"
#include "softgait/sim.hpp"

namespace {

using namespace softgait;

constexpr std::uint64_t kDefaultSeed = 12345;

std::string num(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string gait_arrows(const PeriodicGait& gait, const BehaviorSpec& spec) {
    std::string out;
    for (std::size_t i = 0; i < gait.states.size(); ++i) {
        if (i > 0) out += "→";
        out += state_label(gait.states[i], spec);
    }
    return out;
}

PeriodicGait parse_gait_string(const std::string& text,
                               const BehaviorSpec& spec) {
    std::vector<int> states;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, '-')) {
        if (token.empty())
            throw InputError("empty state token in gait '" + text + "'");
        states.push_back(parse_state_label(token, spec));
    }
    if (states.size() < 2)
        throw InputError("gait '" + text + "' needs at least two states");
    if (states.front() != states.back())
        throw InputError("gait '" + text + "' must end on its first state");
    for (std::size_t i = 1; i + 1 < states.size(); ++i)
        for (std::size_t j = i + 1; j + 1 < states.size(); ++j)
            if (states[i] == states[j])
                throw InputError("gait '" + text +
                                 "' repeats an interior state");
    return PeriodicGait{std::move(states)};
}

nlohmann::ordered_json evaluation_json(const GaitEvaluation& eval,
                                       const BehaviorSpec& spec) {
    nlohmann::ordered_json j;
    std::vector<std::string> labels;
    for (int s : eval.gait.states) labels.push_back(state_label(s, spec));
    j["gait"] = labels;
    j["family"] = classify_gait_family(eval.gait, spec);
    j["j_x"] = eval.j_x;
    j["j_y"] = eval.j_y;
    j["j_theta"] = eval.j_theta;
    j["objective"] = eval.objective;
    j["uncoupled"] = eval.uncoupled;
    return j;
}

int cmd_learn(const std::string& obs_path, const std::string& out_path, int p,
              int m, const std::string& policy_name, double robot_length,
              double quantum, const std::string& surface,
              const std::string& notes) {
    const BehaviorSpec spec = BehaviorSpec::make(p, m);

    WeightingPolicy policy;
    if (policy_name == "raw-mean") {
        policy = WeightingPolicy::raw_mean();
    } else if (policy_name == "length-normalized") {
        policy = WeightingPolicy::length_normalized(robot_length);
    } else if (policy_name == "quantized") {
        policy = WeightingPolicy::quantized(quantum);
    } else {
        throw InputError("unknown weighting policy '" + policy_name + "'");
    }

    const auto observations = read_observations_csv(obs_path, spec);
    LearnResult result = learn_rewards(observations, spec, policy);
    result.matrices.surface = surface;
    result.matrices.notes = notes;
    save_environment(result.matrices, out_path);

    const int k = spec.state_count();
    std::cout << "learned " << k << "x" << k << " reward matrices from "
              << observations.size() << " observations\n";
    std::cout << "samples per pair:\n";
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i != j)
                std::cout << "  " << state_label(i, spec) << "→"
                          << state_label(j, spec) << ": "
                          << result.sample_counts[i * k + j] << "\n";
    for (const auto& [i, j] : result.unobserved_pairs)
        std::cout << "warning: pair " << state_label(i, spec) << "→"
                  << state_label(j, spec) << " unobserved, reward defaults to 0\n";
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_circuits(const std::string& env_path, int states,
                 std::uint64_t limit) {
    BehaviorSpec spec;
    int k = states;
    if (!env_path.empty()) {
        const RewardMatrices matrices = load_environment(env_path);
        spec = matrices.spec;
        k = spec.state_count();
    } else {
        if (k < 1) throw InputError("--states must be >= 1");
        // Index labels only; a digit label needs a behavior spec.
        spec = BehaviorSpec{};
    }

    const auto circuits = enumerate_circuits(StateDigraph::complete(k), limit);
    const bool labelled = !env_path.empty();
    for (const auto& gait : circuits) {
        if (labelled) {
            std::cout << gait_arrows(gait, spec) << "\n";
        } else {
            for (std::size_t i = 0; i < gait.states.size(); ++i)
                std::cout << (i ? "→" : "") << gait.states[i];
            std::cout << "\n";
        }
    }
    std::cerr << circuits.size() << " elementary circuits\n";
    return 0;
}

void print_evaluation_line(std::ostream& out, const GaitEvaluation& eval,
                           const BehaviorSpec& spec) {
    out << gait_arrows(eval.gait, spec) << "  ["
        << classify_gait_family(eval.gait, spec) << "]"
        << "  J_x=" << num(eval.j_x) << " J_y=" << num(eval.j_y)
        << " J_theta=" << num(eval.j_theta)
        << " objective=" << num(eval.objective)
        << (eval.uncoupled ? " uncoupled" : "") << "\n";
}

int cmd_optimize(const std::string& env_path, const std::string& task_flag,
                 const std::string& json_path, std::uint64_t limit) {
    const RewardMatrices matrices = load_environment(env_path);
    const LocomotionTask task = parse_task(task_flag);
    const OptimizationResult result = optimize(matrices, task, limit);

    std::cout << "task " << task_name(task) << ", "
              << result.ranked.size() << " circuits evaluated\n";
    std::cout << "winner: ";
    print_evaluation_line(std::cout, result.winner, matrices.spec);
    if (result.negative_best)
        std::cout << "warning: best objective is negative; residual penalties "
                     "dominate every circuit\n";
    std::cout << "ranking:\n";
    for (const auto& eval : result.ranked) {
        std::cout << "  ";
        print_evaluation_line(std::cout, eval, matrices.spec);
    }

    if (!json_path.empty()) {
        nlohmann::ordered_json doc;
        doc["task"] = task_name(task);
        doc["winner"] = evaluation_json(result.winner, matrices.spec);
        doc["negative_best"] = result.negative_best;
        nlohmann::ordered_json ranked = nlohmann::json::array();
        for (const auto& eval : result.ranked)
            ranked.push_back(evaluation_json(eval, matrices.spec));
        doc["ranking"] = std::move(ranked);
        std::ofstream out(json_path);
        if (!out) throw InputError("cannot open '" + json_path + "' for writing");
        out << doc.dump(2) << "\n";
    }
    return 0;
}

int cmd_simulate(const std::string& env_path, const std::string& gait_string,
                 const std::string& task_flag, int cycles, double sigma,
                 std::uint64_t seed, const std::string& out_path,
                 std::uint64_t limit) {
    const RewardMatrices matrices = load_environment(env_path);

    PeriodicGait gait;
    if (!gait_string.empty()) {
        gait = parse_gait_string(gait_string, matrices.spec);
    } else if (!task_flag.empty()) {
        gait = optimize(matrices, parse_task(task_flag), limit).winner.gait;
    } else {
        throw InputError("simulate needs --gait or --task");
    }

    if (sigma < 0) throw InputError("--sigma must be non-negative");
    const auto env = EnvironmentModel::canned(matrices, {sigma, sigma, sigma});
    const auto poses = run_gait(env, gait, cycles, seed);

    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw InputError("cannot open '" + out_path + "' for writing");
        write_trajectory_csv(out, poses, gait, matrices.spec);
    } else {
        write_trajectory_csv(std::cout, poses, gait, matrices.spec);
    }

    const Pose2D& last = poses.back();
    std::cout << "gait " << gait_arrows(gait, matrices.spec) << " ["
              << classify_gait_family(gait, matrices.spec) << "], " << cycles
              << " cycle(s), " << poses.size() - 1 << " transitions\n";
    std::cout << "net displacement: dx=" << num(last.x) << " mm, dy="
              << num(last.y) << " mm, dtheta=" << num(last.theta) << " deg\n";
    if (cycles > 0)
        std::cout << "per-cycle average: dx=" << num(last.x / cycles)
                  << " mm, dy=" << num(last.y / cycles) << " mm, dtheta="
                  << num(last.theta / cycles) << " deg\n";
    return 0;
}

int cmd_report(const std::string& env_path, std::uint64_t limit) {
    const RewardMatrices matrices = load_environment(env_path);
    const BehaviorSpec& spec = matrices.spec;
    const int k = spec.state_count();

    std::cout << "environment: " << env_path << "\n";
    if (!matrices.surface.empty())
        std::cout << "surface: " << matrices.surface << "\n";
    if (!matrices.notes.empty()) std::cout << "notes: " << matrices.notes << "\n";
    std::cout << "P=" << spec.behaviors_per_mechanism << " M="
              << spec.mechanism_count << " K=" << k << "\n";

    const auto print_table = [&](const char* name, const RewardTable& t) {
        std::cout << name << ":\n";
        for (int i = 0; i < k; ++i) {
            std::cout << "  " << state_label(i, spec) << " |";
            for (int j = 0; j < k; ++j) std::cout << ' ' << num(t.at(i, j));
            std::cout << "\n";
        }
    };
    print_table("T_x", matrices.t_x);
    print_table("T_y", matrices.t_y);
    print_table("T_theta", matrices.t_theta);

    bool antisymmetric = true;
    for (int i = 0; i < k && antisymmetric; ++i)
        for (int j = 0; j < k && antisymmetric; ++j)
            if (matrices.t_x.at(i, j) != -matrices.t_x.at(j, i) ||
                matrices.t_y.at(i, j) != -matrices.t_y.at(j, i))
                antisymmetric = false;
    std::cout << "translation tables reversal-antisymmetric: "
              << (antisymmetric ? "yes" : "no") << "\n";

    for (const auto task : {LocomotionTask::TranslateX, LocomotionTask::RotateCcw,
                            LocomotionTask::RotateCw}) {
        const auto result = optimize(matrices, task, limit);
        std::cout << "optimal " << task_name(task) << ": ";
        print_evaluation_line(std::cout, result.winner, spec);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-state gait synthesis for soft robots with "
                 "friction-mechanism contact points"};
    app.require_subcommand(1);

    // learn
    std::string obs_path, out_env, policy_name = "raw-mean", surface, notes;
    int learn_p = 2, learn_m = 2;
    double robot_length = 0, quantum = 0;
    auto* learn = app.add_subcommand(
        "learn", "Learn reward matrices from an observation CSV");
    learn->add_option("--obs", obs_path, "observation CSV")->required();
    learn->add_option("--out", out_env, "output environment file")->required();
    learn->add_option("--p", learn_p, "behaviors per mechanism");
    learn->add_option("--m", learn_m, "mechanism count");
    learn->add_option("--policy", policy_name,
                      "raw-mean | length-normalized | quantized");
    learn->add_option("--robot-length", robot_length,
                      "robot length in mm (length-normalized)");
    learn->add_option("--quantum", quantum, "rounding quantum (quantized)");
    learn->add_option("--surface", surface, "surface metadata");
    learn->add_option("--notes", notes, "notes metadata");

    // circuits
    std::string circ_env;
    int circ_states = 0;
    std::uint64_t limit = kDefaultCircuitLimit;
    auto* circuits = app.add_subcommand(
        "circuits", "Enumerate all periodic control sequences");
    circuits->add_option("--env", circ_env, "environment file defining K");
    circuits->add_option("--states", circ_states, "state count K");
    circuits->add_option("--limit", limit, "circuit count cap");

    // optimize
    std::string opt_env, opt_task, opt_json;
    auto* optimize_cmd = app.add_subcommand(
        "optimize", "Select the optimal gait for a locomotion task");
    optimize_cmd->add_option("--env", opt_env, "environment file")->required();
    optimize_cmd->add_option("--task", opt_task, "+x | +theta | -theta")
        ->required();
    optimize_cmd->add_option("--json", opt_json, "machine-readable output path");
    optimize_cmd->add_option("--limit", limit, "circuit count cap");

    // simulate
    std::string sim_env, sim_gait, sim_task, sim_out;
    int sim_cycles = 1;
    double sim_sigma = 0;
    std::uint64_t sim_seed = kDefaultSeed;
    auto* simulate = app.add_subcommand(
        "simulate", "Integrate a gait into a pose trajectory");
    simulate->add_option("--env", sim_env, "environment file")->required();
    simulate->add_option("--gait", sim_gait,
                         "state labels joined by '-', e.g. 00-11-00");
    simulate->add_option("--task", sim_task,
                         "optimize this task and simulate the winner");
    simulate->add_option("--cycles", sim_cycles, "gait repetitions");
    simulate->add_option("--sigma", sim_sigma,
                         "noise sigma applied to dx/dy (mm) and dtheta (deg)");
    simulate->add_option("--seed", sim_seed, "RNG seed (default 12345)");
    simulate->add_option("--out", sim_out, "trajectory CSV path");
    simulate->add_option("--limit", limit, "circuit count cap");

    // report
    std::string rep_env;
    auto* report = app.add_subcommand(
        "report", "Summarize an environment and its optimal gaits");
    report->add_option("--env", rep_env, "environment file")->required();
    report->add_option("--limit", limit, "circuit count cap");

    CLI11_PARSE(app, argc, argv);

    try {
        if (learn->parsed())
            return cmd_learn(obs_path, out_env, learn_p, learn_m, policy_name,
                             robot_length, quantum, surface, notes);
        if (circuits->parsed()) return cmd_circuits(circ_env, circ_states, limit);
        if (optimize_cmd->parsed())
            return cmd_optimize(opt_env, opt_task, opt_json, limit);
        if (simulate->parsed())
            return cmd_simulate(sim_env, sim_gait, sim_task, sim_cycles,
                                sim_sigma, sim_seed, sim_out, limit);
        if (report->parsed()) return cmd_report(rep_env, limit);
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
