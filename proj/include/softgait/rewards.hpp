#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "softgait/states.hpp"

namespace softgait {

// One observed state transition and the measured displacement of the robot's
// center of mass (mm, mm, degrees; anti-clockwise positive).
struct TransitionObservation {
    int from_state = 0;
    int to_state = 0;
    double dx = 0;
    double dy = 0;
    double dtheta = 0;
};

// Dense K x K table of transition rewards, row = from-state.
class RewardTable {
public:
    RewardTable() = default;
    explicit RewardTable(int size) : size_(size), values_(size * size, 0.0) {}

    int size() const { return size_; }
    double at(int from, int to) const { return values_[from * size_ + to]; }
    double& at(int from, int to) { return values_[from * size_ + to]; }

    bool operator==(const RewardTable&) const = default;

private:
    int size_ = 0;
    std::vector<double> values_;
};

// The learned environment: translation reward tables and the rotation
// reward table, all K x K with zero diagonals.
struct RewardMatrices {
    BehaviorSpec spec;
    RewardTable t_x;
    RewardTable t_y;
    RewardTable t_theta;
    std::string surface; // optional metadata
    std::string notes;   // optional metadata

    static RewardMatrices zero(const BehaviorSpec& spec);

    // Throws InputError if any table has the wrong size, a nonzero
    // diagonal entry or a non-finite entry.
    void validate() const;

    bool operator==(const RewardMatrices&) const = default;
};

enum class WeightingMode { RawMean, LengthNormalized, Quantized };

struct WeightingPolicy {
    WeightingMode mode = WeightingMode::RawMean;
    double robot_length = 0; // mm, length-normalized mode
    double quantum = 0;      // quantized mode

    static WeightingPolicy raw_mean() { return {}; }
    static WeightingPolicy length_normalized(double robot_length_mm);
    static WeightingPolicy quantized(double quantum);
};

struct LearnResult {
    RewardMatrices matrices;
    // Off-diagonal (from, to) pairs with no observation; their rewards
    // default to 0.
    std::vector<std::pair<int, int>> unobserved_pairs;
    // Observation count per (from, to) pair, row-major.
    std::vector<int> sample_counts;
};

// Policy-weighted mean of the observed displacements per (from, to) pair.
// Self-transitions are forced to the zero diagonal.
LearnResult learn_rewards(const std::vector<TransitionObservation>& observations,
                          const BehaviorSpec& spec,
                          const WeightingPolicy& policy = {});

// Environment file: UTF-8 JSON with fields p, m, state_labels, t_x, t_y,
// t_theta and optional surface/notes. Round-trips exactly.
std::string environment_to_json(const RewardMatrices& matrices);
RewardMatrices environment_from_json(const std::string& text);
void save_environment(const RewardMatrices& matrices, const std::string& path);
RewardMatrices load_environment(const std::string& path);

// Observation CSV: header `from,to,dx_mm,dy_mm,dtheta_deg`, states given as
// labels or integer indices.
std::vector<TransitionObservation> read_observations_csv(std::istream& in,
                                                         const BehaviorSpec& spec);
std::vector<TransitionObservation> read_observations_csv(const std::string& path,
                                                         const BehaviorSpec& spec);
void write_observations_csv(std::ostream& out,
                            const std::vector<TransitionObservation>& observations,
                            const BehaviorSpec& spec);

} // namespace softgait
