// analytics.hpp — closed-form sudden-limit results for the two-bath Otto
// cycle, used both as fast evaluators and as oracles for the numeric
// engine.  All formulas take pre-built rate pairs; detailed-balance
// consistency is validated once on construction, never re-derived.

#pragma once

#include <cmath>
#include <stdexcept>

#include "qotto/bath.hpp"

namespace qotto {

struct PowerPair {
    double cold = 0.0;
    double hot = 0.0;
};

struct SuddenLimitInputs {
    RatePair rates_cold;
    RatePair rates_hot;
    double de_cold = 1.0;
    double de_hot = 1.0;
    double beta_cold = 1.0;
    double beta_hot = 1.0;
};

inline void validate(const SuddenLimitInputs& in) {
    if (!(in.de_cold > 0.0) || !(in.de_hot > 0.0))
        throw std::invalid_argument("SuddenLimitInputs: splittings must be > 0");
    if (!(in.beta_cold > 0.0) || !(in.beta_hot > 0.0))
        throw std::invalid_argument("SuddenLimitInputs: betas must be > 0");
    auto consistent = [](const RatePair& rp, double beta, double de) {
        const double expect = std::exp(-beta * de) * rp.down;
        return std::abs(rp.up - expect) <= 1e-12 * std::max(rp.down, 1e-300) &&
               std::abs(rp.total - (rp.down + rp.up)) <= 1e-12 * std::max(rp.total, 1e-300);
    };
    if (!consistent(in.rates_cold, in.beta_cold, in.de_cold) ||
        !consistent(in.rates_hot, in.beta_hot, in.de_hot))
        throw std::invalid_argument("SuddenLimitInputs: rate pair breaks detailed balance");
}

inline SuddenLimitInputs make_sudden_inputs(double gamma_down_cold, double beta_cold, double de_cold,
                                            double gamma_down_hot, double beta_hot, double de_hot) {
    SuddenLimitInputs in;
    in.rates_cold = detailed_balance_rates(gamma_down_cold, beta_cold, de_cold);
    in.rates_hot = detailed_balance_rates(gamma_down_hot, beta_hot, de_hot);
    in.de_cold = de_cold;
    in.de_hot = de_hot;
    in.beta_cold = beta_cold;
    in.beta_hot = beta_hot;
    validate(in);
    return in;
}

// Coherent sudden-cycle powers in the full-rotation limit (q_M/Delta -> inf):
//   P_C(H) = dE Gdown^C(H) Gsum^H(C) (1 - e^{-beta dE}) / [4 (2 Gsum^C(H) + Gsum^H(C))].
// Both strictly positive for positive rates: both baths are heated.
inline PowerPair coherent_sudden_power(const SuddenLimitInputs& in) {
    const double gc = in.rates_cold.total;
    const double gh = in.rates_hot.total;
    PowerPair p;
    p.cold = in.de_cold * in.rates_cold.down * gh * (-std::expm1(-in.beta_cold * in.de_cold)) /
             (4.0 * (2.0 * gc + gh));
    p.hot = in.de_hot * in.rates_hot.down * gc * (-std::expm1(-in.beta_hot * in.de_hot)) /
            (4.0 * (2.0 * gh + gc));
    return p;
}

// Leading finite-rotation correction: dP_C(H) = gamma_C(H) * Delta/q_M with
//   gamma_C(H) = -dE (Gdown^H(C) - Gup^H(C)) Gsum^C(H) (Gsum^C + Gsum^H)
//                / [2 (2 Gsum^C + Gsum^H)(2 Gsum^H + Gsum^C)].
inline PowerPair coherent_correction_gamma(const SuddenLimitInputs& in) {
    const double gc = in.rates_cold.total;
    const double gh = in.rates_hot.total;
    const double denom = 2.0 * (2.0 * gc + gh) * (2.0 * gh + gc);
    PowerPair g;
    g.cold = -in.de_cold * (in.rates_hot.down - in.rates_hot.up) * gc * (gc + gh) / denom;
    g.hot = -in.de_hot * (in.rates_cold.down - in.rates_cold.up) * gh * (gc + gh) / denom;
    return g;
}

// Two-term expansion P(Delta/q_M) = P(0) + gamma * Delta/q_M, valid for
// Delta/q_M below ~1e-2.
inline PowerPair coherent_power_two_term(const SuddenLimitInputs& in, double delta_over_qm) {
    const PowerPair p0 = coherent_sudden_power(in);
    const PowerPair g = coherent_correction_gamma(in);
    return PowerPair{p0.cold + g.cold * delta_over_qm, p0.hot + g.hot * delta_over_qm};
}

// Classical (coherence-free) sudden-cycle powers:
//   P_C(H) = 1/2 Gdown^C Gdown^H / (Gsum^C + Gsum^H)
//            * (e^{-beta_H(C) dE_H(C)} - e^{-beta_C(H) dE_C(H)}) * dE_C(H).
inline PowerPair classical_sudden_power(const SuddenLimitInputs& in) {
    const double pre = 0.5 * in.rates_cold.down * in.rates_hot.down /
                       (in.rates_cold.total + in.rates_hot.total);
    const double ec = std::exp(-in.beta_cold * in.de_cold);
    const double eh = std::exp(-in.beta_hot * in.de_hot);
    return PowerPair{pre * (eh - ec) * in.de_cold, pre * (ec - eh) * in.de_hot};
}

// Per-cycle population swing of the classical limit cycle, linear in dt:
//   dD = (Gdown^C Gup^H - Gup^C Gdown^H) dt / (Gsum^C + Gsum^H).
// The cold-bath power is +dD dE_C / (2 dt), the hot-bath power the negative
// counterpart at dE_H.
inline double classical_delta_d(const SuddenLimitInputs& in, double dt) {
    return (in.rates_cold.down * in.rates_hot.up - in.rates_cold.up * in.rates_hot.down) * dt /
           (in.rates_cold.total + in.rates_hot.total);
}

// Ideal Otto coefficient of performance dE_C / (dE_H - dE_C); also the
// sudden-limit value of -P_C/(P_C+P_H) for the classical cycle.
inline double otto_cop(double de_cold, double de_hot) {
    if (!(de_cold > 0.0) || !(de_hot > de_cold))
        throw std::invalid_argument("otto_cop: requires de_hot > de_cold > 0");
    return de_cold / (de_hot - de_cold);
}

// Deep-refrigeration limit (beta dE >> 1, cold excitation slowest rate):
// P_C = -Gup^C dE_C / 2.
inline double slow_rate_limit_power(double gamma_up_cold, double de_cold) {
    return -0.5 * gamma_up_cold * de_cold;
}

} // namespace qotto
