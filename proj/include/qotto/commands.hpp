// commands.hpp — the batch front end behind the CLI subcommands.  Each
// command is a pure function from a RunConfig to rows/rendered text so the
// binary stays a thin argument-parsing shell.

#pragma once

#include <string>
#include <vector>

#include "qotto/config.hpp"
#include "qotto/result_io.hpp"

namespace qotto::cli {

// Single limit-cycle run with closed-form comparators attached.
ResultRow simulate_row(const RunConfig& cfg);

// Full-grid evaluation over the sweep axes (outer axis major); rows are
// evaluated in parallel and failures are reported per row.
std::vector<ResultRow> sweep_rows(const RunConfig& cfg);

// Names of the sweep axes in declaration order.
std::vector<std::string> axis_names(const RunConfig& cfg);

// gamma tables versus splitting for every resonator bath, including the
// exact on-resonance point and the cross-coupling flag.
std::vector<RateRow> rates_rows(const RunConfig& cfg);

// All three protocols on identical leg rates and temperatures.
std::vector<CompareRow> compare_rows(const RunConfig& cfg);

// Rendered output (CSV or JSON per config).
std::string run_simulate(const RunConfig& cfg);
std::string run_sweep(const RunConfig& cfg);
std::string run_rates(const RunConfig& cfg);
std::string run_compare(const RunConfig& cfg);

} // namespace qotto::cli
