// cycle.hpp — the four-stroke sudden Otto cycle as a composed affine map
// on (D, R, I), its limit cycle, and the per-cycle thermodynamics.
//
// One period:  a --thermalize(cold)--> b --compress--> c
//              --thermalize(hot)--> d --expand--> a'.
// The composition is affine, x -> M x + v, and contracting whenever a
// thermalization leg has nonzero total rate; the limit cycle is its fixed
// point, solved directly from (I - M) x = v.

#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "qotto/analytics.hpp"
#include "qotto/bath.hpp"
#include "qotto/bloch.hpp"
#include "qotto/dynamics.hpp"
#include "qotto/qubit.hpp"

namespace qotto {

enum class Protocol {
    CoherentSudden,    // ramps rotate the eigenbasis and generate coherence
    IncoherentScaled,  // q/Delta held constant: eigenbasis fixed, no coherence
    Classical          // diagonal rate-equation dynamics
};

enum class ThermalizationMode { Exact, LinearOrder };

struct CycleSpec {
    QubitParams qubit_low;   // operating point of the cold leg
    QubitParams qubit_high;  // operating point of the hot leg
    BathSpec cold;
    BathSpec hot;
    double dt = 1e-3;  // duration of each thermalization leg
    Protocol protocol = Protocol::CoherentSudden;
    ThermalizationMode thermalization_mode = ThermalizationMode::Exact;

    double de_cold() const { return level_splitting(qubit_low); }
    double de_hot() const { return level_splitting(qubit_high); }

    // dt = 0 is accepted here (the composition degenerates to the identity
    // and solve_limit_cycle reports it as non-contractive).
    void validate() const;
};

// Rate pairs of the two thermalization legs, resolved from the bath specs
// at their operating points.
struct LegRates {
    RatePair cold;
    RatePair hot;
};

LegRates resolve_rates(const CycleSpec& spec);

// Full-period affine update x -> m x + v on x = (d, r, i).
struct AffineCycleMap {
    Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
    Eigen::Vector3d v = Eigen::Vector3d::Zero();

    double spectral_radius() const;
};

struct LimitCycleResult {
    BlochState a, b, c, d;     // corner states of the limit cycle
    double q_cold = 0.0;       // per-cycle heat into the cold bath
    double q_hot = 0.0;        // per-cycle heat into the hot bath
    double w_compress = 0.0;   // work into the system, compression ramp
    double w_expand = 0.0;     // work into the system, expansion ramp
    double p_cold = 0.0;       // q_cold / (2 dt)
    double p_hot = 0.0;        // q_hot / (2 dt)
    std::optional<double> cop; // -P_C/(P_C+P_H); absent unless total work > 0
    double spectral_radius = 0.0;
    long cycles_to_converge = 0;  // transient runs only
};

struct SuddenPowers {
    double p_cold = 0.0;
    double p_hot = 0.0;
};

struct NonContractiveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularSolveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonConvergentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

AffineCycleMap compose_cycle_map(const CycleSpec& spec);
AffineCycleMap compose_cycle_map(const CycleSpec& spec, const LegRates& rates);

// Direct limit-cycle solve; throws NonContractiveError when the spectral
// radius is not below 1 - 1e-12 (degenerate spec) and SingularSolveError
// when I - M is numerically singular.
LimitCycleResult solve_limit_cycle(const CycleSpec& spec);
LimitCycleResult solve_limit_cycle(const CycleSpec& spec, const LegRates& rates);

// Iterates the four legs from `initial`, one snapshot per cycle; serves as
// the iterative verification path for the direct solve.
std::vector<LimitCycleResult> run_transient(const CycleSpec& spec, const BlochState& initial,
                                            long n_cycles);

// Powers extrapolated to dt -> 0 by two-stage Richardson over
// (dt, dt/2, dt/4); throws NonConvergentError when the two first-order
// eliminations disagree beyond 1e-6 relative.
SuddenPowers sudden_limit_powers(const CycleSpec& spec);
SuddenPowers sudden_limit_powers(const CycleSpec& spec, const LegRates& rates);

// Closed-form inputs matching this spec's legs, for oracle comparisons.
SuddenLimitInputs sudden_inputs(const CycleSpec& spec);
SuddenLimitInputs sudden_inputs(const CycleSpec& spec, const LegRates& rates);

} // namespace qotto
