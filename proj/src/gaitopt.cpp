#include "softgait/gaitopt.hpp"

#include <algorithm>
#include <cmath>

namespace softgait {

std::string task_name(LocomotionTask task) {
    switch (task) {
    case LocomotionTask::TranslateX: return "+x";
    case LocomotionTask::RotateCcw: return "+theta";
    case LocomotionTask::RotateCw: return "-theta";
    }
    return "?";
}

LocomotionTask parse_task(const std::string& s) {
    if (s == "+x") return LocomotionTask::TranslateX;
    if (s == "+theta") return LocomotionTask::RotateCcw;
    if (s == "-theta") return LocomotionTask::RotateCw;
    throw InputError("unknown task '" + s + "' (expected +x, +theta or -theta)");
}

GaitEvaluation evaluate_gait(const PeriodicGait& gait,
                             const RewardMatrices& matrices,
                             LocomotionTask task) {
    const int k = matrices.spec.state_count();
    if (gait.states.size() < 2 || gait.states.front() != gait.states.back())
        throw InputError("gait must close on its first state");
    for (int s : gait.states)
        if (s < 0 || s >= k)
            throw InputError("gait state index " + std::to_string(s) +
                             " outside [0, " + std::to_string(k) + ")");

    GaitEvaluation eval;
    eval.gait = gait;
    for (std::size_t t = 1; t < gait.states.size(); ++t) {
        const int from = gait.states[t - 1];
        const int to = gait.states[t];
        eval.j_x += matrices.t_x.at(from, to);
        eval.j_y += matrices.t_y.at(from, to);
        eval.j_theta += matrices.t_theta.at(from, to);
    }

    switch (task) {
    case LocomotionTask::TranslateX:
        eval.objective = eval.j_x - (std::abs(eval.j_y) + std::abs(eval.j_theta));
        eval.uncoupled = eval.j_y == 0 && eval.j_theta == 0;
        break;
    case LocomotionTask::RotateCcw:
        eval.objective = eval.j_theta - (std::abs(eval.j_x) + std::abs(eval.j_y));
        eval.uncoupled = eval.j_x == 0 && eval.j_y == 0;
        break;
    case LocomotionTask::RotateCw:
        eval.objective = -eval.j_theta - (std::abs(eval.j_x) + std::abs(eval.j_y));
        eval.uncoupled = eval.j_x == 0 && eval.j_y == 0;
        break;
    }
    return eval;
}

OptimizationResult optimize(const RewardMatrices& matrices, LocomotionTask task,
                            const StateDigraph& graph, std::uint64_t limit) {
    matrices.validate();
    if (graph.node_count != matrices.spec.state_count())
        throw InputError("digraph size does not match the state space");

    const std::vector<PeriodicGait> circuits = enumerate_circuits(graph, limit);
    if (circuits.empty())
        throw InputError("degenerate digraph: no periodic gait exists");

    OptimizationResult result;
    result.ranked.reserve(circuits.size());
    for (const auto& gait : circuits)
        result.ranked.push_back(evaluate_gait(gait, matrices, task));

    // Objective descending; ties prefer fewer actuations per cycle, then
    // the lexicographically smaller canonical sequence. Objectives within a
    // relative rounding margin count as tied so that rescaling the reward
    // matrices cannot reorder genuinely equal gaits.
    double spread = 1.0;
    for (const auto& eval : result.ranked)
        spread = std::max(spread, std::abs(eval.objective));
    const double margin = 1e-9 * spread;
    std::stable_sort(result.ranked.begin(), result.ranked.end(),
                     [margin](const GaitEvaluation& a, const GaitEvaluation& b) {
                         if (std::abs(a.objective - b.objective) > margin)
                             return a.objective > b.objective;
                         if (a.gait.length() != b.gait.length())
                             return a.gait.length() < b.gait.length();
                         return a.gait.states < b.gait.states;
                     });
    result.winner = result.ranked.front();
    result.negative_best = result.winner.objective < 0;
    return result;
}

OptimizationResult optimize(const RewardMatrices& matrices, LocomotionTask task,
                            std::uint64_t limit) {
    return optimize(matrices, task,
                    StateDigraph::complete(matrices.spec.state_count()), limit);
}

namespace {

// Named P=2, M=2 sequences as canonical index cycles
// ((00)=0, (01)=1, (10)=2, (11)=3).
struct NamedGait {
    const char* name;
    std::vector<int> cycle; // canonical, without the closing state
};

const std::vector<NamedGait>& named_gaits() {
    static const std::vector<NamedGait> table = {
        {"crawl (S_C1)", {1, 2}},       // (10)->(01)->(10)
        {"crawl (S_C2)", {0, 2, 1}},    // (00)->(10)->(01)->(00)
        {"inch (S_I1)", {1, 2, 3}},     // (10)->(11)->(01)->(10)
        {"inch (S_I2)", {0, 2, 3, 1}},  // (00)->(10)->(11)->(01)->(00)
        {"hop (S_H)", {0, 3}},          // (00)->(11)->(00)
    };
    return table;
}

} // namespace

std::string classify_gait_family(const PeriodicGait& gait,
                                 const BehaviorSpec& spec) {
    if (spec.behaviors_per_mechanism != 2 || spec.mechanism_count != 2)
        return "unnamed";
    if (gait.states.size() < 2 || gait.states.front() != gait.states.back())
        return "unnamed";

    std::vector<int> cycle(gait.states.begin(), gait.states.end() - 1);
    const auto min_it = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), min_it, cycle.end());

    for (const auto& named : named_gaits())
        if (cycle == named.cycle) return named.name;
    return "unnamed";
}

} // namespace softgait
