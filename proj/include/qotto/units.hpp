// units.hpp — conversions between the internal natural units
// (hbar = k_B = 1, energies in multiples of a reference energy) and SI.
// The reference energy is declared in kelvin: E_ref = k_B * T_ref.

#pragma once

namespace qotto::units {

inline constexpr double k_boltzmann = 1.380649e-23;  // J/K, exact (SI 2019)
inline constexpr double hbar = 1.054571817e-34;      // J s, CODATA 2018

struct SiScale {
    double reference_kelvin = 1.0;

    double energy_joule() const { return k_boltzmann * reference_kelvin; }

    // energy <-> J and K; rate <-> 1/s; power <-> W; time <-> s
    double energy_to_joule(double e) const { return e * energy_joule(); }
    double energy_from_joule(double e_j) const { return e_j / energy_joule(); }
    double energy_to_kelvin(double e) const { return e * reference_kelvin; }
    double energy_from_kelvin(double t_k) const { return t_k / reference_kelvin; }
    double rate_to_hz(double g) const { return g * energy_joule() / hbar; }
    double rate_from_hz(double g_hz) const { return g_hz * hbar / energy_joule(); }
    double power_to_watt(double p) const { return p * energy_joule() * energy_joule() / hbar; }
    double power_from_watt(double p_w) const { return p_w * hbar / (energy_joule() * energy_joule()); }
    double time_to_seconds(double t) const { return t * hbar / energy_joule(); }
    double time_from_seconds(double t_s) const { return t_s * energy_joule() / hbar; }
};

} // namespace qotto::units
