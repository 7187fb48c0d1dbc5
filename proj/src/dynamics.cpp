#include "qotto/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace qotto {

namespace {

void check_dt(double dt) {
    if (!(dt >= 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("thermalization: dt must be finite and >= 0");
}

// Population change over dt with exact relaxation, computed through expm1
// so it keeps full relative accuracy when gamma_sum * dt is tiny.
double exact_delta_d(double d, const RatePair& rates, double dt) {
    const double d_eq = rates.down / rates.total - 0.5;
    return (d_eq - d) * (-std::expm1(-rates.total * dt));
}

} // namespace

BlochState apply_ramp(const BlochState& s, const RampRotation& rot) {
    validate_state(s);
    return BlochState{rot.c * s.d - rot.s * s.r, rot.s * s.d + rot.c * s.r, s.i};
}

ThermalizationOutcome thermalize_exact(const BlochState& s, const RatePair& rates,
                                       double de, double dt) {
    validate_state(s);
    check_dt(dt);
    if (rates.total == 0.0 || dt == 0.0) return ThermalizationOutcome{s, 0.0};
    const double delta_d = exact_delta_d(s.d, rates, dt);
    const double coh = std::exp(-0.5 * rates.total * dt);
    return ThermalizationOutcome{BlochState{s.d + delta_d, coh * s.r, coh * s.i},
                                 de * delta_d};
}

ThermalizationOutcome thermalize_linear(const BlochState& s, const RatePair& rates,
                                        double de, double dt) {
    validate_state(s);
    check_dt(dt);
    const double x = rates.total * dt;
    if (!(x <= 0.1))
        throw std::invalid_argument("thermalize_linear: gamma_sum*dt > 0.1, outside the short-time regime");
    const double delta_d = (rates.down - rates.total * (s.d + 0.5)) * dt;
    const double coh = 1.0 - 0.5 * x;
    return ThermalizationOutcome{BlochState{s.d + delta_d, coh * s.r, coh * s.i},
                                 de * delta_d};
}

BlochState lindblad_integrate(const BlochState& s, const RatePair& rates,
                              double dt, long steps) {
    validate_state(s);
    check_dt(dt);
    if (dt == 0.0) return s;
    const long needed = std::max<long>(1, static_cast<long>(std::ceil(1e3 * rates.total * dt)));
    if (steps < needed)
        throw std::invalid_argument("lindblad_integrate: step count too small for the requested accuracy");

    const double h = dt / static_cast<double>(steps);
    const double g = rates.total;
    const double b = rates.down - 0.5 * g;  // dD/dt = -g D + b
    auto fd = [&](double d) { return b - g * d; };
    auto fc = [&](double c) { return -0.5 * g * c; };

    BlochState x = s;
    for (long k = 0; k < steps; ++k) {
        const double k1 = fd(x.d);
        const double k2 = fd(x.d + 0.5 * h * k1);
        const double k3 = fd(x.d + 0.5 * h * k2);
        const double k4 = fd(x.d + h * k3);
        x.d += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const double r1 = fc(x.r);
        const double r2 = fc(x.r + 0.5 * h * r1);
        const double r3 = fc(x.r + 0.5 * h * r2);
        const double r4 = fc(x.r + h * r3);
        x.r += h / 6.0 * (r1 + 2.0 * r2 + 2.0 * r3 + r4);

        const double i1 = fc(x.i);
        const double i2 = fc(x.i + 0.5 * h * i1);
        const double i3 = fc(x.i + 0.5 * h * i2);
        const double i4 = fc(x.i + h * i3);
        x.i += h / 6.0 * (i1 + 2.0 * i2 + 2.0 * i3 + i4);
    }
    return x;
}

std::pair<double, double> classical_step_linear(double pop_d, const RatePair& rates,
                                                double de, double dt) {
    check_dt(dt);
    if (!(std::abs(pop_d) <= 0.5 + 1e-12))
        throw std::invalid_argument("classical_step: pop_d outside [-1/2, 1/2]");
    const double delta_d = (rates.down - rates.total * (pop_d + 0.5)) * dt;
    return {pop_d + delta_d, de * delta_d};
}

std::pair<double, double> classical_step_exact(double pop_d, const RatePair& rates,
                                               double de, double dt) {
    check_dt(dt);
    if (!(std::abs(pop_d) <= 0.5 + 1e-12))
        throw std::invalid_argument("classical_step: pop_d outside [-1/2, 1/2]");
    if (rates.total == 0.0 || dt == 0.0) return {pop_d, 0.0};
    const double delta_d = exact_delta_d(pop_d, rates, dt);
    return {pop_d + delta_d, de * delta_d};
}

} // namespace qotto
