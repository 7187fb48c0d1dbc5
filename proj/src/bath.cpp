#include "qotto/bath.hpp"

#include <cmath>
#include <stdexcept>

namespace qotto {

RatePair detailed_balance_rates(double gamma_down, double beta, double de) {
    if (!(gamma_down >= 0.0) || !std::isfinite(gamma_down))
        throw std::invalid_argument("detailed_balance_rates: gamma_down must be >= 0");
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("detailed_balance_rates: beta must be >= 0");
    if (!(de >= 0.0) || !std::isfinite(de))
        throw std::invalid_argument("detailed_balance_rates: de must be >= 0");
    RatePair rp;
    rp.down = gamma_down;
    rp.up = std::exp(-beta * de) * gamma_down;
    rp.total = rp.down + rp.up;
    return rp;
}

void BathSpec::validate() const {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("BathSpec: beta must be finite and > 0");
    if (const auto* d = std::get_if<DirectRate>(&rate_model)) {
        if (!(d->gamma_down >= 0.0) || !std::isfinite(d->gamma_down))
            throw std::invalid_argument("BathSpec: gamma_down must be >= 0");
    } else {
        const auto& r = std::get<ResonatorRate>(rate_model);
        if (!(r.kappa > 0.0)) throw std::invalid_argument("BathSpec: kappa must be > 0");
        if (!(r.quality >= 1.0)) throw std::invalid_argument("BathSpec: quality must be >= 1");
        if (!(r.omega_res > 0.0)) throw std::invalid_argument("BathSpec: omega_res must be > 0");
    }
}

double lorentzian_suppression(double de, double de_res, double quality) {
    if (!(de > 0.0) || !(de_res > 0.0))
        throw std::invalid_argument("lorentzian_suppression: splittings must be > 0");
    const double x = de / de_res;
    const double detune = x - 1.0 / x;
    return 1.0 / (1.0 + quality * quality * detune * detune);
}

double resonator_rate_down(const BathSpec& bath, const QubitParams& p) {
    const auto* model = std::get_if<ResonatorRate>(&bath.rate_model);
    if (model == nullptr)
        throw std::invalid_argument("resonator_rate_down: bath has no resonator rate model");
    bath.validate();
    p.validate();
    const double de = level_splitting(p);
    if (!(de > 0.0))
        throw std::invalid_argument("resonator_rate_down: level splitting must be > 0");
    // Transverse matrix element Delta^2/(q^2+Delta^2) = 1 - eta^2.
    const double e = eta(p);
    const double coupling = 1.0 - e * e;
    const double thermal = de / (-std::expm1(-bath.beta * de));
    return model->kappa * coupling * thermal * lorentzian_suppression(de, model->omega_res, model->quality);
}

RatePair bath_rate_pair(const BathSpec& bath, const QubitParams& p) {
    bath.validate();
    p.validate();
    const double de = level_splitting(p);
    const double down = std::holds_alternative<DirectRate>(bath.rate_model)
                            ? std::get<DirectRate>(bath.rate_model).gamma_down
                            : resonator_rate_down(bath, p);
    return detailed_balance_rates(down, bath.beta, de);
}

} // namespace qotto
