#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "qotto/dynamics.hpp"

using namespace qotto;
using qotto::testing::random_rates;
using qotto::testing::random_state;

namespace {

double max_component_diff(const BlochState& a, const BlochState& b) {
    return std::max({std::abs(a.d - b.d), std::abs(a.r - b.r), std::abs(a.i - b.i)});
}

long rk4_steps(const RatePair& rates, double dt) {
    return std::max<long>(1, static_cast<long>(std::ceil(1e3 * rates.total * dt)));
}

} // namespace

TEST_CASE("apply_ramp") {
    SUBCASE("identity rotation leaves the state unchanged") {
        const BlochState s{0.2, -0.1, 0.05};
        const auto out = apply_ramp(s, ramp_rotation(0.0, RampDirection::Compress));
        CHECK(out.d == s.d);
        CHECK(out.r == s.r);
        CHECK(out.i == s.i);
    }
    SUBCASE("quarter rotation at eta = 1") {
        const auto out = apply_ramp({0.4, 0.0, 0.0}, ramp_rotation(1.0, RampDirection::Compress));
        CHECK(out.d == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(out.r == doctest::Approx(0.4).epsilon(1e-15));
        CHECK(out.i == 0.0);
    }
    SUBCASE("purity and i are conserved") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> etas(-1.0, 1.0);
        for (int k = 0; k < 200; ++k) {
            const BlochState s = random_state(rng);
            const auto rot = ramp_rotation(etas(rng), RampDirection::Compress);
            const auto out = apply_ramp(s, rot);
            CHECK(out.radius2() == doctest::Approx(s.radius2()).epsilon(1e-14));
            CHECK(out.i == s.i);
        }
    }
}

TEST_CASE("thermalize_exact") {
    SUBCASE("dt = 0 is the identity with zero heat") {
        const BlochState s{0.1, 0.2, -0.1};
        const auto out = thermalize_exact(s, detailed_balance_rates(1.0, 1.0, 1.0), 1.0, 0.0);
        CHECK(out.state.d == s.d);
        CHECK(out.heat_to_bath == 0.0);
    }
    SUBCASE("gamma_sum = 0 leaves the state unchanged") {
        const BlochState s{0.1, 0.2, -0.1};
        const auto out = thermalize_exact(s, RatePair{}, 1.0, 3.0);
        CHECK(out.state.d == s.d);
        CHECK(out.state.r == s.r);
        CHECK(out.heat_to_bath == 0.0);
    }
    SUBCASE("long times relax to the Gibbs population") {
        // beta de = ln 3: populations 3/4, 1/4, so d_eq = 1/4
        const auto rates = detailed_balance_rates(1.0, std::log(3.0), 1.0);
        const auto out = thermalize_exact({-0.3, 0.3, 0.2}, rates, 1.0, 1e3);
        CHECK(out.state.d == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(out.state.r == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(out.state.i == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("heat bookkeeping equals de * delta d") {
        const auto rates = detailed_balance_rates(1.0, 0.5, 2.0);
        const BlochState s{-0.2, 0.1, 0.0};
        const auto out = thermalize_exact(s, rates, 2.0, 0.7);
        CHECK(out.heat_to_bath == doctest::Approx(2.0 * (out.state.d - s.d)).epsilon(1e-12));
    }
    SUBCASE("agrees with the RK4 reference on random inputs") {
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> dts(0.0, 3.0);
        for (int k = 0; k < 300; ++k) {
            const BlochState s = random_state(rng);
            const RatePair rates = random_rates(rng);
            const double dt = dts(rng);
            const auto exact = thermalize_exact(s, rates, 1.0, dt).state;
            const auto rk4 = lindblad_integrate(s, rates, dt, rk4_steps(rates, dt));
            CHECK(max_component_diff(exact, rk4) < 1e-8);
        }
    }
    SUBCASE("semigroup property") {
        std::mt19937_64 rng(31);
        for (int k = 0; k < 100; ++k) {
            const BlochState s = random_state(rng);
            const RatePair rates = random_rates(rng);
            const auto whole = thermalize_exact(s, rates, 1.0, 1.3).state;
            const auto split =
                thermalize_exact(thermalize_exact(s, rates, 1.0, 0.5).state, rates, 1.0, 0.8).state;
            CHECK(max_component_diff(whole, split) < 1e-12);
        }
    }
    SUBCASE("stays inside the Bloch ball and never exceeds start/equilibrium purity") {
        std::mt19937_64 rng(37);
        std::uniform_real_distribution<double> dts(0.0, 8.0);
        for (int k = 0; k < 300; ++k) {
            const BlochState s = random_state(rng);
            const RatePair rates = random_rates(rng);
            const double d_eq = rates.down / rates.total - 0.5;
            const auto out = thermalize_exact(s, rates, 1.0, dts(rng)).state;
            CHECK(out.radius2() <= 0.25 + 1e-12);
            CHECK(out.radius2() <= std::max(s.radius2(), d_eq * d_eq) + 1e-12);
        }
    }
    SUBCASE("rejects negative dt") {
        CHECK_THROWS_AS(thermalize_exact({}, RatePair{}, 1.0, -0.1), std::invalid_argument);
    }
}

TEST_CASE("thermalize_linear") {
    const auto rates = detailed_balance_rates(1.0, 1.0, 1.0);

    SUBCASE("dt = 0 is the identity") {
        const BlochState s{0.1, -0.2, 0.3};
        const auto out = thermalize_linear(s, rates, 1.0, 0.0);
        CHECK(out.state.d == s.d);
        CHECK(out.state.r == s.r);
    }
    SUBCASE("rejects gamma_sum*dt > 0.1") {
        CHECK_THROWS_AS(thermalize_linear({}, rates, 1.0, 0.2), std::invalid_argument);
    }
    SUBCASE("Gibbs population is a fixed point of the d update") {
        const double d_eq = rates.down / rates.total - 0.5;
        const auto out = thermalize_linear({d_eq, 0.0, 0.0}, rates, 1.0, 0.05);
        CHECK(out.state.d == doctest::Approx(d_eq).epsilon(1e-15));
        CHECK(out.heat_to_bath == doctest::Approx(0.0).epsilon(1e-16));
    }
    SUBCASE("second-order agreement with the exact map") {
        // halving dt must quarter the worst-case discrepancy
        std::mt19937_64 rng(41);
        for (int k = 0; k < 50; ++k) {
            const BlochState s = random_state(rng);
            const RatePair rp = random_rates(rng);
            const double dt = 0.08 / rp.total;
            const double e1 = max_component_diff(thermalize_linear(s, rp, 1.0, dt).state,
                                                 thermalize_exact(s, rp, 1.0, dt).state);
            const double e2 = max_component_diff(thermalize_linear(s, rp, 1.0, 0.5 * dt).state,
                                                 thermalize_exact(s, rp, 1.0, 0.5 * dt).state);
            if (e2 > 1e-13) {  // skip states that start too close to equilibrium
                const double order = std::log2(e1 / e2);
                CHECK(order > 1.8);
                CHECK(order < 2.2);
            }
        }
    }
}

TEST_CASE("lindblad_integrate") {
    SUBCASE("Gibbs state is stationary") {
        const auto rates = detailed_balance_rates(1.0, 1.0, 2.0);
        const double d_eq = rates.down / rates.total - 0.5;
        const auto out = lindblad_integrate({d_eq, 0.0, 0.0}, rates, 2.0, rk4_steps(rates, 2.0));
        CHECK(std::abs(out.d - d_eq) < 1e-12);
    }
    SUBCASE("coherence decays as exp(-gamma_sum dt / 2)") {
        const auto rates = detailed_balance_rates(0.8, 1.3, 1.0);
        const double dt = 1.7;
        const auto out = lindblad_integrate({0.0, 0.4, -0.2}, rates, dt, rk4_steps(rates, dt));
        const double decay = std::exp(-0.5 * rates.total * dt);
        CHECK(out.r == doctest::Approx(0.4 * decay).epsilon(1e-8));
        CHECK(out.i == doctest::Approx(-0.2 * decay).epsilon(1e-8));
    }
    SUBCASE("rejects insufficient step counts") {
        const auto rates = detailed_balance_rates(1.0, 1.0, 1.0);
        CHECK_THROWS_AS(lindblad_integrate({}, rates, 1.0, rk4_steps(rates, 1.0) - 1),
                        std::invalid_argument);
    }
}

TEST_CASE("classical_step matches the full maps restricted to d") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> pops(-0.5, 0.5);
    for (int k = 0; k < 100; ++k) {
        const double d0 = pops(rng);
        const RatePair rates = random_rates(rng);

        const auto [d_lin, q_lin] = classical_step_linear(d0, rates, 1.5, 0.03);
        const auto lin = thermalize_linear({d0, 0.0, 0.0}, rates, 1.5, 0.03);
        CHECK(d_lin == lin.state.d);
        CHECK(q_lin == lin.heat_to_bath);

        const auto [d_ex, q_ex] = classical_step_exact(d0, rates, 1.5, 0.9);
        const auto ex = thermalize_exact({d0, 0.0, 0.0}, rates, 1.5, 0.9);
        CHECK(d_ex == ex.state.d);
        CHECK(q_ex == ex.heat_to_bath);
    }

    SUBCASE("dt = 0 and Gibbs inputs are fixed points") {
        const auto rates = detailed_balance_rates(1.0, 2.0, 1.0);
        CHECK(classical_step_exact(0.3, rates, 1.0, 0.0).first == 0.3);
        const double d_eq = rates.down / rates.total - 0.5;
        CHECK(classical_step_exact(d_eq, rates, 1.0, 5.0).first ==
              doctest::Approx(d_eq).epsilon(1e-14));
    }
}
