// result_io.hpp — result rows and their deterministic CSV/JSON rendering.
// Floats are serialized with the shortest round-trip representation so the
// same configuration always produces byte-identical output.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qotto/config.hpp"
#include "qotto/cycle.hpp"

namespace qotto::cli {

// One limit-cycle solution with its closed-form comparators.  Rows that
// failed carry the error in `status` and leave the numeric fields unset.
struct ResultRow {
    std::vector<double> swept;  // values of the sweep axes, outer first
    std::string status = "ok";
    double dt = 0.0;
    double de_cold = 0.0;
    double de_hot = 0.0;
    std::optional<LimitCycleResult> cycle;
    // Sudden-limit reference powers for this protocol and their relative
    // deviations; absent where no closed form applies.
    std::optional<double> ref_p_cold, ref_p_hot;
    std::optional<double> dev_p_cold, dev_p_hot;
};

struct RateRow {
    std::string bath;  // "cold" or "hot"
    double de = 0.0;
    double gamma_down = 0.0;
    double gamma_up = 0.0;
    double gamma_sum = 0.0;
    double lorentz_factor = 1.0;
    bool on_resonance = false;
    std::optional<double> power_scale;          // gamma_down * de, resonance rows only
    std::optional<double> cross_ratio;          // dE_C / (dE_H - dE_C)
    std::optional<bool> cross_coupling_ok;      // quality >= 10 * cross_ratio
};

struct CompareRow {
    std::string protocol;
    LimitCycleResult cycle;
    std::optional<double> ref_p_cold, ref_p_hot;
};

// Shortest round-trip decimal representation (std::to_chars).
std::string format_double(double value);

std::string render_rows_csv(const std::vector<std::string>& axis_names,
                            const std::vector<ResultRow>& rows, const SiSpec& si);
std::string render_rows_json(const std::vector<std::string>& axis_names,
                             const std::vector<ResultRow>& rows, const SiSpec& si);

std::string render_rates_csv(const std::vector<RateRow>& rows, const SiSpec& si);
std::string render_rates_json(const std::vector<RateRow>& rows, const SiSpec& si);

std::string render_compare_csv(const std::vector<CompareRow>& rows, const SiSpec& si);
std::string render_compare_json(const std::vector<CompareRow>& rows, const SiSpec& si);

} // namespace qotto::cli
