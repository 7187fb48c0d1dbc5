// Shared generators for randomized tests; fixed seeds keep runs reproducible.

#pragma once

#include <random>

#include "qotto/bath.hpp"
#include "qotto/bloch.hpp"

namespace qotto::testing {

// Uniform state inside the Bloch ball (radius <= 1/2).
inline BlochState random_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    while (true) {
        BlochState s{u(rng), u(rng), u(rng)};
        if (s.radius2() <= 0.25) return s;
    }
}

inline RatePair random_rates(std::mt19937_64& rng, double gamma_min = 0.05, double gamma_max = 2.0,
                             double beta_de_min = 0.0, double beta_de_max = 5.0) {
    std::uniform_real_distribution<double> g(gamma_min, gamma_max);
    std::uniform_real_distribution<double> bd(beta_de_min, beta_de_max);
    return detailed_balance_rates(g(rng), 1.0, bd(rng));
}

} // namespace qotto::testing
