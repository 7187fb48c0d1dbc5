// bath.hpp — heat-bath descriptions and the transition rates they induce:
// detailed balance plus the golden-rule rate filtered by a lossy resonator.

#pragma once

#include <variant>

#include "qotto/qubit.hpp"

namespace qotto {

enum class BathLabel { Cold, Hot };

// Downward/upward transition rates induced by one bath at a fixed splitting.
// Invariant: up = exp(-beta dE) down (detailed balance), total = down + up.
struct RatePair {
    double down = 0.0;
    double up = 0.0;
    double total = 0.0;
};

RatePair detailed_balance_rates(double gamma_down, double beta, double de);

// Fixed base relaxation rate, independent of the operating point.
struct DirectRate {
    double gamma_down = 1.0;
};

// Qubit coupled to the bath through a lossy resonator: emission rate from
// the golden rule, band-pass filtered by the resonator Lorentzian.
struct ResonatorRate {
    double kappa = 1e-2;     // dimensionless qubit-resonator coupling
    double quality = 10.0;   // resonator quality factor, >= 1
    double omega_res = 1.0;  // resonance frequency = resonator splitting (hbar = 1)
};

using RateModel = std::variant<DirectRate, ResonatorRate>;

struct BathSpec {
    BathLabel label = BathLabel::Cold;
    double beta = 1.0;  // inverse temperature, > 0
    RateModel rate_model = DirectRate{};

    void validate() const;
};

// Resonator band-pass factor [1 + Q^2 (x - 1/x)^2]^-1 with x = de/de_res.
// Equal to 1 at resonance, strictly decreasing in |x - 1/x|.
double lorentzian_suppression(double de, double de_res, double quality);

// Golden-rule relaxation rate of a resonator-coupled bath at operating
// point p: kappa * (1 - eta^2) * de / (1 - e^{-beta de}) * lorentzian.
double resonator_rate_down(const BathSpec& bath, const QubitParams& p);

// Rate pair the bath induces at operating point p, for either rate model.
RatePair bath_rate_pair(const BathSpec& bath, const QubitParams& p);

} // namespace qotto
