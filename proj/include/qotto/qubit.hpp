// qubit.hpp — TLS Hamiltonian H = -E0 (Delta sigma_x + q sigma_z):
// eigenstructure, level splitting, and the sudden-ramp basis rotations.

#pragma once

#include <cmath>
#include <stdexcept>

namespace qotto {

struct QubitParams {
    double e0 = 1.0;     // overall energy scale (hbar = k_B = 1)
    double delta = 1.0;  // transverse coupling, > 0
    double q = 0.0;      // control parameter (field)

    void validate() const {
        if (!(e0 > 0.0) || !std::isfinite(e0))
            throw std::invalid_argument("QubitParams: e0 must be finite and > 0");
        if (!(delta > 0.0) || !std::isfinite(delta))
            throw std::invalid_argument("QubitParams: delta must be finite and > 0");
        if (!std::isfinite(q))
            throw std::invalid_argument("QubitParams: q must be finite");
    }
};

// Level separation 2 E0 sqrt(q^2 + Delta^2).
inline double level_splitting(const QubitParams& p) {
    return 2.0 * p.e0 * std::hypot(p.q, p.delta);
}

// Eigenbasis mixing parameter (q/Delta)/sqrt(1+(q/Delta)^2); odd in q,
// strictly increasing, bounded in (-1, 1).
inline double eta(const QubitParams& p) {
    const double r = p.q / p.delta;
    return r / std::hypot(1.0, r);
}

enum class RampDirection { Compress, Expand };

// Orthogonal update of (D, R) across a sudden ramp; the imaginary part I
// is untouched by ramps.  Applied as d' = c d - s r, r' = s d + c r.
struct RampRotation {
    double c = 1.0;
    double s = 0.0;
};

// Rotation between the eigenbases of two operating points, given their
// mixing parameters.  Uses the angle-subtraction identities directly so
// that eta_from = 0 reproduces {sqrt(1-eta_to^2), eta_to} exactly.
inline RampRotation basis_rotation(double eta_from, double eta_to) {
    if (!(std::abs(eta_from) <= 1.0) || !(std::abs(eta_to) <= 1.0))
        throw std::invalid_argument("basis_rotation: |eta| must be <= 1");
    const double cf = std::sqrt(1.0 - eta_from * eta_from);
    const double ct = std::sqrt(1.0 - eta_to * eta_to);
    return RampRotation{ct * cf + eta_to * eta_from, eta_to * cf - eta_from * ct};
}

// Canonical ramp between q = 0 and q = q_M: Compress rotates by the full
// mixing angle of the far point, Expand is the inverse rotation.
inline RampRotation ramp_rotation(double eta_m, RampDirection direction) {
    if (!(std::abs(eta_m) <= 1.0))
        throw std::invalid_argument("ramp_rotation: |eta_m| must be <= 1");
    return direction == RampDirection::Compress ? basis_rotation(0.0, eta_m)
                                                : basis_rotation(eta_m, 0.0);
}

} // namespace qotto
