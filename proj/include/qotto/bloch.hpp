// bloch.hpp — TLS state in the instantaneous eigenbasis, parametrized by
// the shifted ground population D = rho_gg - 1/2 and the coherences
// R = Re(rho_ge), I = Im(rho_ge).  The trace is 1 by construction.

#pragma once

#include <stdexcept>

namespace qotto {

struct BlochState {
    double d = 0.0;
    double r = 0.0;
    double i = 0.0;

    // Squared Bloch-vector length; <= 1/4 for a valid density matrix.
    double radius2() const { return d * d + r * r + i * i; }
};

// Positivity bound with a loose slack for states assembled from user input.
inline void validate_state(const BlochState& s) {
    if (!(s.radius2() <= 0.25 + 1e-2))
        throw std::invalid_argument("BlochState: d^2+r^2+i^2 exceeds the Bloch ball");
}

struct ThermalizationOutcome {
    BlochState state;
    double heat_to_bath = 0.0;  // dE * (d_final - d_initial)
};

} // namespace qotto
