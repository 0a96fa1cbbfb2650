#include "softgait/sim.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>

namespace softgait {

void KinematicParams::validate() const {
    if (!(rest_length > 0)) throw InputError("rest_length must be positive");
    if (!(stroke > 0) || !(stroke < rest_length))
        throw InputError("stroke must lie in (0, rest_length)");
    if (!(mu_low > 0) || !(mu_low < mu_high))
        throw InputError("friction coefficients must satisfy 0 < mu_low < mu_high");
    if (front_preferred != 1 && front_preferred != -1)
        throw InputError("front_preferred must be +1 or -1");
    if (rear_preferred != 1 && rear_preferred != -1)
        throw InputError("rear_preferred must be +1 or -1");
    if (!std::isfinite(lateral_gradient))
        throw InputError("lateral_gradient must be finite");
}

void NoiseSigma::validate() const {
    if (dx < 0 || dy < 0 || dtheta < 0 || !std::isfinite(dx) ||
        !std::isfinite(dy) || !std::isfinite(dtheta))
        throw InputError("noise sigmas must be finite and non-negative");
}

EnvironmentModel EnvironmentModel::canned(RewardMatrices matrices,
                                          NoiseSigma noise) {
    matrices.validate();
    noise.validate();
    EnvironmentModel env;
    env.canned_ = true;
    env.spec_ = matrices.spec;
    env.matrices_ = std::move(matrices);
    env.noise_ = noise;
    return env;
}

EnvironmentModel EnvironmentModel::kinematic(KinematicParams params,
                                             NoiseSigma noise) {
    params.validate();
    noise.validate();
    EnvironmentModel env;
    env.canned_ = false;
    env.spec_ = BehaviorSpec::binary(2);
    env.params_ = params;
    env.noise_ = noise;
    return env;
}

const RewardMatrices& EnvironmentModel::matrices() const {
    if (!canned_) throw InputError("kinematic environment has no matrices");
    return matrices_;
}

const KinematicParams& EnvironmentModel::params() const {
    if (canned_) throw InputError("canned environment has no kinematic params");
    return params_;
}

namespace {

// Effective friction at one end while it slides in `direction` (+1/-1).
// Virtual grip engages the soft material for behavior 0; the freewheel is
// cheap along its preferred direction regardless of behavior.
double effective_mu(const KinematicParams& p, MechanismKind kind, int behavior,
                    int preferred, int direction) {
    if (kind == MechanismKind::VirtualGrip)
        return behavior == 0 ? p.mu_high : p.mu_low;
    return direction == preferred ? p.mu_low : p.mu_high;
}

// One length change of `amount` mm (positive = contraction). The closing
// (or opening) of the body is split between the ends inversely to their
// effective friction, i.e. the slick end does the sliding.
void apply_stroke(const KinematicParams& p, const RobotState& state,
                  double amount, bool contraction, double& front_disp,
                  double& rear_disp) {
    const int front_dir = contraction ? -1 : +1;
    const int rear_dir = -front_dir;
    const double mu_front = effective_mu(p, p.front_kind, state.behaviors[0],
                                         p.front_preferred, front_dir);
    const double mu_rear = effective_mu(p, p.rear_kind, state.behaviors[1],
                                        p.rear_preferred, rear_dir);
    front_disp += front_dir * amount * mu_rear / (mu_front + mu_rear);
    rear_disp += rear_dir * amount * mu_front / (mu_front + mu_rear);
}

} // namespace

TransitionObservation kinematic_transition(const KinematicParams& params,
                                           const RobotState& from,
                                           const RobotState& to) {
    params.validate();
    if (from.behaviors.size() != 2 || to.behaviors.size() != 2)
        throw InputError("kinematic model supports P=2, M=2 states only");
    for (int b : from.behaviors)
        if (b != 0 && b != 1)
            throw InputError("kinematic model supports binary behaviors only");
    for (int b : to.behaviors)
        if (b != 0 && b != 1)
            throw InputError("kinematic model supports binary behaviors only");

    const BehaviorSpec spec = BehaviorSpec::binary(2);
    TransitionObservation obs;
    obs.from_state = encode_state(from, spec);
    obs.to_state = encode_state(to, spec);
    if (obs.from_state == obs.to_state) return obs; // nothing actuates

    // Tendon coiling engages mechanisms (behavior 1); more engaged ends
    // mean the body is pulled shorter.
    const int engaged_from = from.behaviors[0] + from.behaviors[1];
    const int engaged_to = to.behaviors[0] + to.behaviors[1];

    double front_disp = 0, rear_disp = 0;
    if (engaged_to > engaged_from) {
        apply_stroke(params, to, params.stroke, true, front_disp, rear_disp);
    } else if (engaged_to < engaged_from) {
        apply_stroke(params, to, params.stroke, false, front_disp, rear_disp);
    } else {
        // Swap of engagement: a half-stroke contraction that releases into
        // a half-stroke extension.
        apply_stroke(params, to, params.stroke / 2, true, front_disp, rear_disp);
        apply_stroke(params, to, params.stroke / 2, false, front_disp, rear_disp);
    }

    obs.dx = (front_disp + rear_disp) / 2;
    obs.dy = 0;
    obs.dtheta = params.lateral_gradient * front_disp;
    return obs;
}

TransitionObservation sample_transition(const EnvironmentModel& env, int from,
                                        int to, std::mt19937_64& rng) {
    const int k = env.spec().state_count();
    if (from < 0 || from >= k || to < 0 || to >= k)
        throw InputError("state index outside [0, " + std::to_string(k) + ")");

    TransitionObservation obs;
    if (env.is_canned()) {
        obs.from_state = from;
        obs.to_state = to;
        if (from != to) {
            obs.dx = env.matrices().t_x.at(from, to);
            obs.dy = env.matrices().t_y.at(from, to);
            obs.dtheta = env.matrices().t_theta.at(from, to);
        }
    } else {
        obs = kinematic_transition(env.params(), decode_state(from, env.spec()),
                                   decode_state(to, env.spec()));
    }

    const NoiseSigma& sigma = env.noise();
    if (sigma.dx > 0)
        obs.dx += std::normal_distribution<double>(0, sigma.dx)(rng);
    if (sigma.dy > 0)
        obs.dy += std::normal_distribution<double>(0, sigma.dy)(rng);
    if (sigma.dtheta > 0)
        obs.dtheta += std::normal_distribution<double>(0, sigma.dtheta)(rng);
    return obs;
}

std::vector<Pose2D> run_gait(const EnvironmentModel& env,
                             const PeriodicGait& gait, int cycles,
                             std::uint64_t seed) {
    if (cycles < 0) throw InputError("cycle count must be non-negative");
    const int k = env.spec().state_count();
    if (gait.states.size() < 2 || gait.states.front() != gait.states.back())
        throw InputError("gait must close on its first state");
    for (int s : gait.states)
        if (s < 0 || s >= k)
            throw InputError("gait state index " + std::to_string(s) +
                             " outside [0, " + std::to_string(k) + ")");

    std::mt19937_64 rng(seed);
    std::vector<Pose2D> poses;
    poses.reserve(1 + static_cast<std::size_t>(cycles) * gait.length());
    poses.push_back(Pose2D{});

    constexpr double deg = std::numbers::pi / 180.0;
    for (int c = 0; c < cycles; ++c) {
        for (std::size_t t = 1; t < gait.states.size(); ++t) {
            const auto obs =
                sample_transition(env, gait.states[t - 1], gait.states[t], rng);
            const Pose2D& prev = poses.back();
            // Body-frame displacement composed with the pre-transition
            // heading; the rotation increment applies afterwards.
            Pose2D next;
            next.x = prev.x + obs.dx * std::cos(prev.theta * deg) -
                     obs.dy * std::sin(prev.theta * deg);
            next.y = prev.y + obs.dx * std::sin(prev.theta * deg) +
                     obs.dy * std::cos(prev.theta * deg);
            next.theta = prev.theta + obs.dtheta;
            poses.push_back(next);
        }
    }
    return poses;
}

void write_trajectory_csv(std::ostream& out, const std::vector<Pose2D>& poses,
                          const PeriodicGait& gait, const BehaviorSpec& spec) {
    const auto num = [](double v) {
        char buf[32];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        return std::string(buf, ptr);
    };
    out << "step,from,to,x_mm,y_mm,theta_deg\n";
    for (std::size_t i = 0; i < poses.size(); ++i) {
        out << i << ',';
        if (i == 0) {
            out << ",";
        } else {
            const std::size_t t = (i - 1) % gait.length();
            out << state_label(gait.states[t], spec) << ','
                << state_label(gait.states[t + 1], spec);
        }
        out << ',' << num(poses[i].x) << ',' << num(poses[i].y) << ','
            << num(poses[i].theta) << '\n';
    }
}

} // namespace softgait
