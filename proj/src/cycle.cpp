#include "qotto/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace qotto {

namespace {

constexpr double kContractionMargin = 1e-12;

// Thermalization leg as a diagonal affine update on (d, r, i).
struct ThermalLeg {
    Eigen::Vector3d scale = Eigen::Vector3d::Ones();
    Eigen::Vector3d offset = Eigen::Vector3d::Zero();
};

ThermalLeg thermal_leg(const RatePair& rates, double dt, ThermalizationMode mode) {
    ThermalLeg leg;
    if (rates.total == 0.0 || dt == 0.0) return leg;
    const double x = rates.total * dt;
    if (mode == ThermalizationMode::Exact) {
        const double d_eq = rates.down / rates.total - 0.5;
        leg.scale[0] = std::exp(-x);
        leg.scale[1] = leg.scale[2] = std::exp(-0.5 * x);
        leg.offset[0] = d_eq * (-std::expm1(-x));
    } else {
        if (!(x <= 0.1))
            throw std::invalid_argument("compose_cycle_map: gamma_sum*dt > 0.1 in LinearOrder mode");
        leg.scale[0] = 1.0 - x;
        leg.scale[1] = leg.scale[2] = 1.0 - 0.5 * x;
        leg.offset[0] = (rates.down - 0.5 * rates.total) * dt;
    }
    return leg;
}

Eigen::Matrix3d rotation_matrix(const RampRotation& rot) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
    m(0, 0) = rot.c;
    m(0, 1) = -rot.s;
    m(1, 0) = rot.s;
    m(1, 1) = rot.c;
    return m;
}

// Ramp rotations of the cycle; identity for the coherence-free protocols.
struct CycleRotations {
    RampRotation compress;
    RampRotation expand;
};

CycleRotations cycle_rotations(const CycleSpec& spec) {
    if (spec.protocol != Protocol::CoherentSudden) return {};
    const double eta_low = eta(spec.qubit_low);
    const double eta_high = eta(spec.qubit_high);
    return {basis_rotation(eta_low, eta_high), basis_rotation(eta_high, eta_low)};
}

ThermalizationOutcome thermalize(const BlochState& s, const RatePair& rates, double de,
                                 double dt, ThermalizationMode mode) {
    return mode == ThermalizationMode::Exact ? thermalize_exact(s, rates, de, dt)
                                             : thermalize_linear(s, rates, de, dt);
}

// Per-cycle bookkeeping shared by the direct solve and the transient run;
// `back` is the state after the closing expansion ramp.
struct CycleReplay {
    LimitCycleResult result;
    BlochState back;
};

CycleReplay replay_cycle(const CycleSpec& spec, const LegRates& rates, const BlochState& start) {
    const auto rot = cycle_rotations(spec);
    const double de_c = spec.de_cold();
    const double de_h = spec.de_hot();

    LimitCycleResult res;
    res.a = start;
    const auto cold_leg = thermalize(res.a, rates.cold, de_c, spec.dt, spec.thermalization_mode);
    res.b = cold_leg.state;
    res.q_cold = cold_leg.heat_to_bath;
    res.c = spec.protocol == Protocol::CoherentSudden ? apply_ramp(res.b, rot.compress) : res.b;
    const auto hot_leg = thermalize(res.c, rates.hot, de_h, spec.dt, spec.thermalization_mode);
    res.d = hot_leg.state;
    res.q_hot = hot_leg.heat_to_bath;
    const BlochState back =
        spec.protocol == Protocol::CoherentSudden ? apply_ramp(res.d, rot.expand) : res.d;

    // System energy is -dE * d in the leg's eigenbasis; ramps do work, the
    // thermalization legs exchange heat.
    res.w_compress = de_c * res.b.d - de_h * res.c.d;
    res.w_expand = de_h * res.d.d - de_c * back.d;
    res.p_cold = res.q_cold / (2.0 * spec.dt);
    res.p_hot = res.q_hot / (2.0 * spec.dt);
    const double work = res.p_cold + res.p_hot;
    if (work > 0.0) res.cop = -res.p_cold / work;
    return CycleReplay{res, back};
}

} // namespace

void CycleSpec::validate() const {
    qubit_low.validate();
    qubit_high.validate();
    cold.validate();
    hot.validate();
    if (cold.label == hot.label)
        throw std::invalid_argument("CycleSpec: cold and hot baths must carry distinct labels");
    if (!(dt >= 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("CycleSpec: dt must be finite and >= 0");
    if (protocol == Protocol::IncoherentScaled) {
        const double rl = qubit_low.q / qubit_low.delta;
        const double rh = qubit_high.q / qubit_high.delta;
        if (std::abs(rl - rh) > 1e-12 * std::max({1.0, std::abs(rl), std::abs(rh)}))
            throw std::invalid_argument(
                "CycleSpec: IncoherentScaled requires equal q/delta at both operating points");
    }
}

LegRates resolve_rates(const CycleSpec& spec) {
    return LegRates{bath_rate_pair(spec.cold, spec.qubit_low),
                    bath_rate_pair(spec.hot, spec.qubit_high)};
}

double AffineCycleMap::spectral_radius() const {
    Eigen::EigenSolver<Eigen::Matrix3d> es(m, /*computeEigenvectors=*/false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

AffineCycleMap compose_cycle_map(const CycleSpec& spec) {
    return compose_cycle_map(spec, resolve_rates(spec));
}

AffineCycleMap compose_cycle_map(const CycleSpec& spec, const LegRates& rates) {
    spec.validate();
    const auto cold = thermal_leg(rates.cold, spec.dt, spec.thermalization_mode);
    const auto hot = thermal_leg(rates.hot, spec.dt, spec.thermalization_mode);
    const auto rot = cycle_rotations(spec);
    const Eigen::Matrix3d comp = rotation_matrix(rot.compress);
    const Eigen::Matrix3d expd = rotation_matrix(rot.expand);

    const Eigen::Matrix3d t_cold = cold.scale.asDiagonal();
    const Eigen::Matrix3d t_hot = hot.scale.asDiagonal();

    AffineCycleMap map;
    map.m = expd * t_hot * comp * t_cold;
    map.v = expd * (t_hot * (comp * cold.offset) + hot.offset);
    return map;
}

LimitCycleResult solve_limit_cycle(const CycleSpec& spec) {
    return solve_limit_cycle(spec, resolve_rates(spec));
}

LimitCycleResult solve_limit_cycle(const CycleSpec& spec, const LegRates& rates) {
    const AffineCycleMap map = compose_cycle_map(spec, rates);
    const double rho = map.spectral_radius();
    if (!(rho < 1.0 - kContractionMargin))
        throw NonContractiveError("solve_limit_cycle: cycle map is not contracting (spectral radius " +
                                  std::to_string(rho) + ")");

    const Eigen::Matrix3d a = Eigen::Matrix3d::Identity() - map.m;
    Eigen::FullPivLU<Eigen::Matrix3d> lu(a);
    if (!lu.isInvertible())
        throw SingularSolveError("solve_limit_cycle: I - M is numerically singular");
    const Eigen::Vector3d x = lu.solve(map.v);

    LimitCycleResult res = replay_cycle(spec, rates, BlochState{x[0], x[1], x[2]}).result;
    res.spectral_radius = rho;
    return res;
}

std::vector<LimitCycleResult> run_transient(const CycleSpec& spec, const BlochState& initial,
                                            long n_cycles) {
    if (n_cycles < 1) throw std::invalid_argument("run_transient: n_cycles must be >= 1");
    validate_state(initial);
    const LegRates rates = resolve_rates(spec);
    const AffineCycleMap map = compose_cycle_map(spec, rates);
    const double rho = map.spectral_radius();
    if (!(rho < 1.0 - kContractionMargin))
        throw NonContractiveError("run_transient: cycle map is not contracting");

    std::vector<LimitCycleResult> snapshots;
    snapshots.reserve(static_cast<size_t>(n_cycles));
    BlochState state = initial;
    for (long k = 0; k < n_cycles; ++k) {
        CycleReplay replay = replay_cycle(spec, rates, state);
        replay.result.spectral_radius = rho;
        replay.result.cycles_to_converge = k + 1;
        state = replay.back;
        snapshots.push_back(replay.result);
    }
    return snapshots;
}

SuddenPowers sudden_limit_powers(const CycleSpec& spec) {
    return sudden_limit_powers(spec, resolve_rates(spec));
}

SuddenPowers sudden_limit_powers(const CycleSpec& spec, const LegRates& rates) {
    spec.validate();
    if (!(spec.dt > 0.0))
        throw std::invalid_argument("sudden_limit_powers: spec.dt must be > 0");
    auto powers_at = [&](double dt) {
        CycleSpec s = spec;
        s.dt = dt;
        const LimitCycleResult r = solve_limit_cycle(s, rates);
        return SuddenPowers{r.p_cold, r.p_hot};
    };
    const SuddenPowers p1 = powers_at(spec.dt);
    const SuddenPowers p2 = powers_at(0.5 * spec.dt);
    const SuddenPowers p3 = powers_at(0.25 * spec.dt);

    // Leading error is linear in dt; eliminate it twice, then the quadratic.
    auto richardson = [&](double a, double b, double c, double scale, const char* which) {
        const double r1 = 2.0 * b - a;
        const double r2 = 2.0 * c - b;
        const double cauchy = std::max({std::abs(r1), std::abs(r2), 1e-9 * scale});
        if (std::abs(r2 - r1) > 1e-6 * cauchy)
            throw NonConvergentError(std::string("sudden_limit_powers: dt->0 sequence not Cauchy for ") +
                                     which);
        return (4.0 * r2 - r1) / 3.0;
    };
    const double scale_c = spec.de_cold() * (rates.cold.total + rates.hot.total);
    const double scale_h = spec.de_hot() * (rates.cold.total + rates.hot.total);
    return SuddenPowers{richardson(p1.p_cold, p2.p_cold, p3.p_cold, scale_c, "p_cold"),
                        richardson(p1.p_hot, p2.p_hot, p3.p_hot, scale_h, "p_hot")};
}

SuddenLimitInputs sudden_inputs(const CycleSpec& spec) {
    return sudden_inputs(spec, resolve_rates(spec));
}

SuddenLimitInputs sudden_inputs(const CycleSpec& spec, const LegRates& rates) {
    SuddenLimitInputs in;
    in.rates_cold = rates.cold;
    in.rates_hot = rates.hot;
    in.de_cold = spec.de_cold();
    in.de_hot = spec.de_hot();
    in.beta_cold = spec.cold.beta;
    in.beta_hot = spec.hot.beta;
    validate(in);
    return in;
}

} // namespace qotto
