#pragma once

#include <string>
#include <vector>

#include "softgait/errors.hpp"

namespace softgait {

inline constexpr int kDefaultStateCap = 4096;

// Discretization of the friction-mechanism behaviors: P behaviors per
// mechanism, M mechanisms, K = P^M robot states.
struct BehaviorSpec {
    int behaviors_per_mechanism = 2; // P
    int mechanism_count = 2;         // M
    std::vector<std::string> mechanism_labels;
    std::vector<std::string> behavior_labels;

    // Validates P >= 2, M >= 1 and K <= cap; fills in default labels.
    static BehaviorSpec make(int p, int m, int state_cap = kDefaultStateCap);

    // Two-mechanism binary robot (P=2, M=2) and its
    // generalizations.
    static BehaviorSpec binary(int mechanisms = 2,
                               int state_cap = kDefaultStateCap);

    int state_count() const; // K

    bool operator==(const BehaviorSpec&) const = default;
};

// One robot state: the behavior index of every mechanism, front first.
struct RobotState {
    std::vector<int> behaviors;

    bool operator==(const RobotState&) const = default;
};

struct ContactAngleReading {
    double psi;      // contact angle, degrees
    double psi_star; // critical contact angle, degrees
};

struct VelocityReading {
    double v; // signed velocity along the mechanism's preferred axis, mm/s
};

// Positional base-P encoding, most-significant digit = mechanism 1 (front).
// For P=2, M=2: (00)->0, (01)->1, (10)->2, (11)->3.
int encode_state(const RobotState& state, const BehaviorSpec& spec);
RobotState decode_state(int index, const BehaviorSpec& spec);

// Virtual-grip discretization: 0 when psi <= psi*, the soft high-friction
// material is in contact; 1 otherwise.
int behavior_from_contact_angle(const ContactAngleReading& reading);

// Directional-friction discretization: 0 for the unpreferred direction
// (v > 0), 1 for the preferred direction (v < 0). v = 0 maps to 0.
int behavior_from_velocity(const VelocityReading& reading);

// Behavior digits concatenated front-to-rear, e.g. "10". For P > 10 the
// digits are dot-separated.
std::string state_label(int index, const BehaviorSpec& spec);

// Accepts a digit label ("10") or a decimal state index ("2").
int parse_state_label(const std::string& token, const BehaviorSpec& spec);

} // namespace softgait
