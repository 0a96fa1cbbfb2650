#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "softgait/circuits.hpp"
#include "softgait/rewards.hpp"

namespace softgait {

// World-frame pose; theta is cumulative (unwrapped), degrees, anti-clockwise
// positive.
struct Pose2D {
    double x = 0;
    double y = 0;
    double theta = 0;
};

enum class MechanismKind { VirtualGrip, Directional };

// Quasi-static slip-partition model for the P=2, M=2 robot. One end holds
// while the other slides in proportion to the inverse of its effective
// friction coefficient.
struct KinematicParams {
    double rest_length = 135; // mm, body length at rest
    double stroke = 20;       // mm, length change per actuation half-cycle
    double mu_high = 0.68;    // static friction, soft material engaged
    double mu_low = 0.28;     // static friction, hard material / freewheel
    MechanismKind front_kind = MechanismKind::VirtualGrip;
    MechanismKind rear_kind = MechanismKind::VirtualGrip;
    int front_preferred = +1; // +1 = +x, -1 = -x (directional ends only)
    int rear_preferred = +1;
    // Rotation coupling from tendon-path asymmetry: degrees of yaw per mm
    // of front-end slip.
    double lateral_gradient = 0;

    void validate() const;
};

struct NoiseSigma {
    double dx = 0;     // mm
    double dy = 0;     // mm
    double dtheta = 0; // deg

    void validate() const;
};

// Transition-outcome oracle: either replays one of the learned reward
// matrices (plus optional Gaussian noise) or evaluates the kinematic model.
class EnvironmentModel {
public:
    static EnvironmentModel canned(RewardMatrices matrices,
                                   NoiseSigma noise = {});
    static EnvironmentModel kinematic(KinematicParams params,
                                      NoiseSigma noise = {});

    bool is_canned() const { return canned_; }
    const BehaviorSpec& spec() const { return spec_; }
    const RewardMatrices& matrices() const;
    const KinematicParams& params() const;
    const NoiseSigma& noise() const { return noise_; }

private:
    EnvironmentModel() = default;

    bool canned_ = true;
    BehaviorSpec spec_;
    RewardMatrices matrices_;
    KinematicParams params_;
    NoiseSigma noise_;
};

// Deterministic slip-partition outcome of one state transition.
TransitionObservation kinematic_transition(const KinematicParams& params,
                                           const RobotState& from,
                                           const RobotState& to);

// One sampled transition outcome. Self-transitions yield (0,0,0) before
// noise. The caller owns the RNG stream, so identical seeds reproduce
// identical observation sequences.
TransitionObservation sample_transition(const EnvironmentModel& env, int from,
                                        int to, std::mt19937_64& rng);

// Executes `cycles` repetitions of the gait from the origin and composes
// the body-frame displacements into world-frame poses. Returns one pose per
// transition plus the initial origin pose.
std::vector<Pose2D> run_gait(const EnvironmentModel& env,
                             const PeriodicGait& gait, int cycles,
                             std::uint64_t seed);

// Trajectory CSV: header `step,from,to,x_mm,y_mm,theta_deg`; the origin row
// has empty from/to fields.
void write_trajectory_csv(std::ostream& out, const std::vector<Pose2D>& poses,
                          const PeriodicGait& gait, const BehaviorSpec& spec);

} // namespace softgait
