// config.hpp — run configuration loaded from a single JSON document.
// Unknown keys are errors; every field diagnostic carries its JSON path.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qotto/cycle.hpp"

namespace qotto::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Spacing { Linear, Log };

struct SweepAxis {
    std::string param;
    double min = 0.0;
    double max = 0.0;
    int points = 1;
    Spacing spacing = Spacing::Linear;
};

enum class OutputFormat { Csv, Json };

struct OutputSpec {
    OutputFormat format = OutputFormat::Csv;
    std::string path = "-";  // "-" writes to stdout
};

struct SiSpec {
    bool enabled = false;
    double reference_kelvin = 1.0;
};

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    int points = 1;
    Spacing spacing = Spacing::Linear;
};

struct RunConfig {
    CycleSpec cycle;
    std::vector<SweepAxis> axes;  // at most 2
    OutputSpec output;
    SiSpec si;
    std::optional<GridSpec> rates_grid;  // splitting grid for the rates command
};

// Sweepable parameter names accepted in sweep axes.
const std::vector<std::string>& sweep_parameter_names();

// Returns a copy of the spec with one named parameter replaced; throws
// ConfigError for parameters that do not apply (e.g. a gamma_down sweep on
// a resonator bath).
CycleSpec apply_parameter(const CycleSpec& spec, const std::string& param, double value);

std::vector<double> grid_values(double min, double max, int points, Spacing spacing);

RunConfig parse_config(const std::string& text, const std::string& origin);
RunConfig load_config(const std::string& path);

} // namespace qotto::cli
