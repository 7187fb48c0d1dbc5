// dynamics.hpp — the two evolution primitives of the cycle: sudden ramps
// (basis rotations) and fixed-splitting thermalization against one bath,
// with a Runge-Kutta reference integrator for cross-checking.
//
// Thermalization obeys
//     dD/dt = gamma_down - gamma_sum (D + 1/2),
//     dR/dt = -gamma_sum R / 2,      dI/dt = -gamma_sum I / 2,
// whose exact solution relaxes D to the bath's Gibbs value and damps the
// coherences at half the population rate.

#pragma once

#include <utility>

#include "qotto/bath.hpp"
#include "qotto/bloch.hpp"
#include "qotto/qubit.hpp"

namespace qotto {

// Sudden ramp: rotates (d, r), leaves i untouched; conserves d^2+r^2+i^2.
BlochState apply_ramp(const BlochState& s, const RampRotation& rot);

// Exact exponential relaxation for a time dt at fixed splitting de.
// gamma_sum = 0 leaves the state unchanged (no coupling).
ThermalizationOutcome thermalize_exact(const BlochState& s, const RatePair& rates,
                                       double de, double dt);

// First-order short-time map; rejects gamma_sum * dt > 0.1 where the
// linearization error exceeds ~0.5%.
ThermalizationOutcome thermalize_linear(const BlochState& s, const RatePair& rates,
                                        double de, double dt);

// Classical RK4 integration of the relaxation equations; the reference
// path thermalize_exact is tested against.  Requires steps large enough
// that the step size is at most 1e-3 / gamma_sum.
BlochState lindblad_integrate(const BlochState& s, const RatePair& rates,
                              double dt, long steps);

// Population-only steps for a classical (diagonal) TLS; the d-updates are
// identical to the thermalize_* maps with r = i = 0 absent.
// Returns (new pop_d, heat to bath).
std::pair<double, double> classical_step_linear(double pop_d, const RatePair& rates,
                                                double de, double dt);
std::pair<double, double> classical_step_exact(double pop_d, const RatePair& rates,
                                               double de, double dt);

} // namespace qotto
