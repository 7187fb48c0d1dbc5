#include "qotto/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace qotto::cli {

namespace {

// Validity range of the two-term coherent expansion in Delta/q_M.
constexpr double kTwoTermRange = 1e-2;

std::optional<double> coherent_expansion_parameter(const CycleSpec& spec) {
    if (spec.protocol != Protocol::CoherentSudden) return std::nullopt;
    if (!(spec.qubit_high.q > 0.0)) return std::nullopt;
    const double v = spec.qubit_high.delta / spec.qubit_high.q;
    if (v > kTwoTermRange) return std::nullopt;
    return v;
}

double relative_deviation(double value, double reference) {
    const double scale = std::max({std::abs(value), std::abs(reference), 1e-300});
    return std::abs(value - reference) / scale;
}

// Sudden-limit reference powers for the row's protocol, where applicable.
void attach_reference(ResultRow& row, const CycleSpec& spec, const LegRates& rates) {
    const SuddenLimitInputs in = sudden_inputs(spec, rates);
    std::optional<PowerPair> ref;
    if (spec.protocol == Protocol::CoherentSudden) {
        if (const auto v = coherent_expansion_parameter(spec)) ref = coherent_power_two_term(in, *v);
    } else {
        ref = classical_sudden_power(in);
    }
    if (!ref || !row.cycle) return;
    row.ref_p_cold = ref->cold;
    row.ref_p_hot = ref->hot;
    row.dev_p_cold = relative_deviation(row.cycle->p_cold, ref->cold);
    row.dev_p_hot = relative_deviation(row.cycle->p_hot, ref->hot);
}

ResultRow evaluate_row(const CycleSpec& spec, std::vector<double> swept) {
    ResultRow row;
    row.swept = std::move(swept);
    try {
        const LegRates rates = resolve_rates(spec);
        row.dt = spec.dt;
        row.de_cold = spec.de_cold();
        row.de_hot = spec.de_hot();
        row.cycle = solve_limit_cycle(spec, rates);
        attach_reference(row, spec, rates);
    } catch (const std::exception& e) {
        row.status = e.what();
        row.cycle.reset();
    }
    return row;
}

QubitParams diagonal_point_with_splitting(double de) {
    return QubitParams{0.5 * de, 1.0, 0.0};
}

} // namespace

ResultRow simulate_row(const RunConfig& cfg) {
    if (!cfg.axes.empty())
        throw ConfigError("simulate takes no sweep axes; use the sweep command");
    ResultRow row = evaluate_row(cfg.cycle, {});
    if (!row.cycle) throw ConfigError("simulate failed: " + row.status);
    return row;
}

std::vector<std::string> axis_names(const RunConfig& cfg) {
    std::vector<std::string> names;
    names.reserve(cfg.axes.size());
    for (const auto& a : cfg.axes) names.push_back(a.param);
    return names;
}

std::vector<ResultRow> sweep_rows(const RunConfig& cfg) {
    if (cfg.axes.empty()) throw ConfigError("sweep requires at least one sweep axis");

    struct Point {
        std::vector<double> values;
    };
    std::vector<Point> grid;
    const auto outer = grid_values(cfg.axes[0].min, cfg.axes[0].max, cfg.axes[0].points,
                                   cfg.axes[0].spacing);
    if (cfg.axes.size() == 1) {
        for (double v : outer) grid.push_back({{v}});
    } else {
        const auto inner = grid_values(cfg.axes[1].min, cfg.axes[1].max, cfg.axes[1].points,
                                       cfg.axes[1].spacing);
        for (double vo : outer)
            for (double vi : inner) grid.push_back({{vo, vi}});
    }

    std::vector<ResultRow> rows(grid.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t k = next.fetch_add(1); k < grid.size(); k = next.fetch_add(1)) {
            try {
                CycleSpec spec = cfg.cycle;
                for (size_t a = 0; a < cfg.axes.size(); ++a)
                    spec = apply_parameter(spec, cfg.axes[a].param, grid[k].values[a]);
                rows[k] = evaluate_row(spec, grid[k].values);
            } catch (const std::exception& e) {
                rows[k].swept = grid[k].values;
                rows[k].status = e.what();
                rows[k].cycle.reset();
            }
        }
    };
    const unsigned n_threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return rows;
}

std::vector<RateRow> rates_rows(const RunConfig& cfg) {
    struct NamedBath {
        std::string name;
        const BathSpec* bath;
        const ResonatorRate* model;
    };
    std::vector<NamedBath> baths;
    if (const auto* m = std::get_if<ResonatorRate>(&cfg.cycle.cold.rate_model))
        baths.push_back({"cold", &cfg.cycle.cold, m});
    if (const auto* m = std::get_if<ResonatorRate>(&cfg.cycle.hot.rate_model))
        baths.push_back({"hot", &cfg.cycle.hot, m});
    if (baths.empty())
        throw ConfigError("rates requires at least one bath with a resonator rate model");

    // Cross-coupling condition needs both resonator frequencies.
    std::optional<double> cross_ratio;
    if (baths.size() == 2) {
        const double w1 = baths[0].model->omega_res;
        const double w2 = baths[1].model->omega_res;
        const double lo = std::min(w1, w2);
        const double hi = std::max(w1, w2);
        cross_ratio = hi > lo ? std::optional<double>(lo / (hi - lo)) : std::nullopt;
    }

    GridSpec grid;
    if (cfg.rates_grid) {
        grid = *cfg.rates_grid;
    } else {
        double lo = baths[0].model->omega_res, hi = lo;
        for (const auto& b : baths) {
            lo = std::min(lo, b.model->omega_res);
            hi = std::max(hi, b.model->omega_res);
        }
        grid = GridSpec{0.5 * lo, 1.5 * hi, 25, Spacing::Linear};
    }

    std::vector<RateRow> rows;
    for (const auto& b : baths) {
        std::vector<double> des = grid_values(grid.min, grid.max, grid.points, grid.spacing);
        des.push_back(b.model->omega_res);
        std::sort(des.begin(), des.end());
        des.erase(std::unique(des.begin(), des.end()), des.end());
        for (double de : des) {
            if (!(de > 0.0)) continue;
            RateRow row;
            row.bath = b.name;
            row.de = de;
            const RatePair rp = bath_rate_pair(*b.bath, diagonal_point_with_splitting(de));
            row.gamma_down = rp.down;
            row.gamma_up = rp.up;
            row.gamma_sum = rp.total;
            row.lorentz_factor = lorentzian_suppression(de, b.model->omega_res, b.model->quality);
            row.on_resonance = de == b.model->omega_res;
            if (row.on_resonance) {
                row.power_scale = rp.down * de;
                row.cross_ratio = cross_ratio;
                if (cross_ratio) row.cross_coupling_ok = b.model->quality >= 10.0 * *cross_ratio;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<CompareRow> compare_rows(const RunConfig& cfg) {
    // All protocols run on the leg rates resolved from the configured
    // operating points, so the contrast is purely in the dynamics.
    const LegRates rates = resolve_rates(cfg.cycle);
    const double de_c = cfg.cycle.de_cold();
    const double de_h = cfg.cycle.de_hot();

    auto spec_for = [&](Protocol protocol) {
        CycleSpec s = cfg.cycle;
        s.protocol = protocol;
        if (protocol != Protocol::CoherentSudden) {
            s.qubit_low = diagonal_point_with_splitting(de_c);
            s.qubit_high = diagonal_point_with_splitting(de_h);
        }
        return s;
    };

    std::vector<CompareRow> rows;
    for (const auto& [protocol, name] :
         {std::pair{Protocol::CoherentSudden, "coherent_sudden"},
          std::pair{Protocol::IncoherentScaled, "incoherent_scaled"},
          std::pair{Protocol::Classical, "classical"}}) {
        const CycleSpec spec = spec_for(protocol);
        CompareRow row;
        row.protocol = name;
        row.cycle = solve_limit_cycle(spec, rates);
        const SuddenLimitInputs in = sudden_inputs(spec, rates);
        if (protocol == Protocol::CoherentSudden) {
            if (const auto v = coherent_expansion_parameter(spec)) {
                const PowerPair p = coherent_power_two_term(in, *v);
                row.ref_p_cold = p.cold;
                row.ref_p_hot = p.hot;
            }
        } else {
            const PowerPair p = classical_sudden_power(in);
            row.ref_p_cold = p.cold;
            row.ref_p_hot = p.hot;
        }
        rows.push_back(row);
    }
    return rows;
}

std::string run_simulate(const RunConfig& cfg) {
    const std::vector<ResultRow> rows{simulate_row(cfg)};
    return cfg.output.format == OutputFormat::Csv ? render_rows_csv({}, rows, cfg.si)
                                                  : render_rows_json({}, rows, cfg.si);
}

std::string run_sweep(const RunConfig& cfg) {
    const auto rows = sweep_rows(cfg);
    const auto names = axis_names(cfg);
    return cfg.output.format == OutputFormat::Csv ? render_rows_csv(names, rows, cfg.si)
                                                  : render_rows_json(names, rows, cfg.si);
}

std::string run_rates(const RunConfig& cfg) {
    const auto rows = rates_rows(cfg);
    return cfg.output.format == OutputFormat::Csv ? render_rates_csv(rows, cfg.si)
                                                  : render_rates_json(rows, cfg.si);
}

std::string run_compare(const RunConfig& cfg) {
    const auto rows = compare_rows(cfg);
    return cfg.output.format == OutputFormat::Csv ? render_compare_csv(rows, cfg.si)
                                                  : render_compare_json(rows, cfg.si);
}

} // namespace qotto::cli
