#pragma once

#include <string>
#include <vector>

#include "softgait/circuits.hpp"
#include "softgait/rewards.hpp"

namespace softgait {

enum class LocomotionTask {
    TranslateX, // maximize J_x - (|J_y| + |J_theta|)
    RotateCcw,  // maximize  J_theta - (|J_x| + |J_y|)
    RotateCw    // maximize -J_theta - (|J_x| + |J_y|)
};

std::string task_name(LocomotionTask task);      // "+x", "+theta", "-theta"
LocomotionTask parse_task(const std::string& s); // inverse of task_name

struct GaitEvaluation {
    PeriodicGait gait;
    double j_x = 0;
    double j_y = 0;
    double j_theta = 0;
    double objective = 0;
    bool uncoupled = false; // both residual components exactly 0
};

// Accumulates the reward matrices along the gait's transitions and applies
// the task objective.
GaitEvaluation evaluate_gait(const PeriodicGait& gait,
                             const RewardMatrices& matrices,
                             LocomotionTask task);

struct OptimizationResult {
    GaitEvaluation winner;
    std::vector<GaitEvaluation> ranked; // objective descending
    // Set when even the best gait has a negative objective (residual
    // penalties dominate every circuit).
    bool negative_best = false;
};

// Exhaustive argmax of the task objective over all elementary circuits of
// the graph. Ties break toward shorter circuits, then the lexicographically
// smaller canonical state sequence.
OptimizationResult optimize(const RewardMatrices& matrices, LocomotionTask task,
                            const StateDigraph& graph,
                            std::uint64_t limit = kDefaultCircuitLimit);
OptimizationResult optimize(const RewardMatrices& matrices, LocomotionTask task,
                            std::uint64_t limit = kDefaultCircuitLimit);

// Names the P=2, M=2 gait families: "crawl (S_C1)", "crawl (S_C2)",
// "inch (S_I1)", "inch (S_I2)", "hop (S_H)"; anything else (or any other
// state space) is "unnamed". Matching is rotation-invariant.
std::string classify_gait_family(const PeriodicGait& gait,
                                 const BehaviorSpec& spec);

} // namespace softgait
