#include "softgait/states.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <sstream>

namespace softgait {

namespace {

int checked_state_count(int p, int m, int cap) {
    std::int64_t k = 1;
    for (int i = 0; i < m; ++i) {
        k *= p;
        if (k > cap) {
            throw CapacityError("state space P^M = " + std::to_string(p) +
                                "^" + std::to_string(m) +
                                " exceeds cap " + std::to_string(cap));
        }
    }
    return static_cast<int>(k);
}

} // namespace

BehaviorSpec BehaviorSpec::make(int p, int m, int state_cap) {
    if (p < 2) throw InputError("behaviors per mechanism must be >= 2");
    if (m < 1) throw InputError("mechanism count must be >= 1");
    checked_state_count(p, m, state_cap);

    BehaviorSpec spec;
    spec.behaviors_per_mechanism = p;
    spec.mechanism_count = m;
    if (m == 2) {
        spec.mechanism_labels = {"front", "rear"};
    } else {
        for (int i = 0; i < m; ++i)
            spec.mechanism_labels.push_back("mech" + std::to_string(i + 1));
    }
    for (int b = 0; b < p; ++b)
        spec.behavior_labels.push_back(std::to_string(b));
    return spec;
}

BehaviorSpec BehaviorSpec::binary(int mechanisms, int state_cap) {
    return make(2, mechanisms, state_cap);
}

int BehaviorSpec::state_count() const {
    std::int64_t k = 1;
    for (int i = 0; i < mechanism_count; ++i) k *= behaviors_per_mechanism;
    return static_cast<int>(k);
}

int encode_state(const RobotState& state, const BehaviorSpec& spec) {
    if (static_cast<int>(state.behaviors.size()) != spec.mechanism_count) {
        throw InputError("state has " + std::to_string(state.behaviors.size()) +
                         " behaviors, spec expects " +
                         std::to_string(spec.mechanism_count));
    }
    int index = 0;
    for (int b : state.behaviors) {
        if (b < 0 || b >= spec.behaviors_per_mechanism)
            throw InputError("behavior index " + std::to_string(b) +
                             " outside [0, " +
                             std::to_string(spec.behaviors_per_mechanism) + ")");
        index = index * spec.behaviors_per_mechanism + b;
    }
    return index;
}

RobotState decode_state(int index, const BehaviorSpec& spec) {
    const int k = spec.state_count();
    if (index < 0 || index >= k)
        throw InputError("state index " + std::to_string(index) +
                         " outside [0, " + std::to_string(k) + ")");
    RobotState state;
    state.behaviors.assign(spec.mechanism_count, 0);
    for (int i = spec.mechanism_count - 1; i >= 0; --i) {
        state.behaviors[i] = index % spec.behaviors_per_mechanism;
        index /= spec.behaviors_per_mechanism;
    }
    return state;
}

int behavior_from_contact_angle(const ContactAngleReading& reading) {
    if (!std::isfinite(reading.psi) || !std::isfinite(reading.psi_star))
        throw InputError("contact angle reading must be finite");
    if (reading.psi <= 0 || reading.psi >= 180 || reading.psi_star <= 0 ||
        reading.psi_star >= 180)
        throw InputError("contact angles must lie in (0, 180) degrees");
    return reading.psi <= reading.psi_star ? 0 : 1;
}

int behavior_from_velocity(const VelocityReading& reading) {
    if (!std::isfinite(reading.v))
        throw InputError("velocity reading must be finite");
    return reading.v < 0 ? 1 : 0;
}

std::string state_label(int index, const BehaviorSpec& spec) {
    const RobotState state = decode_state(index, spec);
    std::ostringstream out;
    const bool dotted = spec.behaviors_per_mechanism > 10;
    for (std::size_t i = 0; i < state.behaviors.size(); ++i) {
        if (dotted && i > 0) out << '.';
        out << state.behaviors[i];
    }
    return out.str();
}

int parse_state_label(const std::string& token, const BehaviorSpec& spec) {
    if (token.empty()) throw InputError("empty state label");

    // Digit-per-mechanism label, e.g. "10" for (1,0).
    if (spec.behaviors_per_mechanism <= 10 &&
        static_cast<int>(token.size()) == spec.mechanism_count) {
        RobotState state;
        bool ok = true;
        for (char c : token) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                ok = false;
                break;
            }
            state.behaviors.push_back(c - '0');
        }
        if (ok) {
            try {
                return encode_state(state, spec);
            } catch (const InputError& e) {
                throw InputError("state label '" + token + "': " + e.what());
            }
        }
    }

    std::size_t pos = 0;
    int index = 0;
    try {
        index = std::stoi(token, &pos);
    } catch (const std::exception&) {
        throw InputError("unrecognized state label '" + token + "'");
    }
    if (pos != token.size())
        throw InputError("unrecognized state label '" + token + "'");
    if (index < 0 || index >= spec.state_count())
        throw InputError("state index " + token + " outside [0, " +
                         std::to_string(spec.state_count()) + ")");
    return index;
}

} // namespace softgait
