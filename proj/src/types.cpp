#include "kuramoto/types.hpp"

#include <cmath>
#include <string>

#include "kuramoto/errors.hpp"

namespace kuramoto {

void PhaseEnsemble::validate() const {
    if (theta.size() != omega.size()) {
        throw Error("PhaseEnsemble: theta/omega size mismatch");
    }
    for (std::size_t i = 0; i < theta.size(); ++i) {
        if (!std::isfinite(theta[i]) || !std::isfinite(omega[i])) {
            throw Error("PhaseEnsemble: non-finite entry at index " + std::to_string(i));
        }
        if (theta[i] < 0.0 || theta[i] >= kTwoPi) {
            throw Error("PhaseEnsemble: theta out of [0, 2*pi) at index " + std::to_string(i));
        }
    }
    if (!(time >= 0.0)) {
        throw Error("PhaseEnsemble: negative time");
    }
}

double EmpiricalMeasure::total_mass() const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.weight;
    return s;
}

bool EmpiricalMeasure::uniform_weights() const {
    if (atoms.empty()) return true;
    const double w0 = atoms.front().weight;
    for (const auto& a : atoms) {
        if (std::abs(a.weight - w0) > 1e-12 * std::max(1.0, std::abs(w0))) return false;
    }
    return true;
}

void EmpiricalMeasure::validate() const {
    for (const auto& a : atoms) {
        if (!(a.weight > 0.0)) throw Error("EmpiricalMeasure: nonpositive weight");
        if (a.theta < 0.0 || a.theta >= kTwoPi) {
            throw Error("EmpiricalMeasure: theta out of [0, 2*pi)");
        }
    }
    if (std::abs(total_mass() - 1.0) > 1e-12) {
        throw Error("EmpiricalMeasure: total mass differs from 1 beyond 1e-12");
    }
}

} // namespace kuramoto
