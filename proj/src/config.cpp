#include "qotto/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qotto::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError(path + ": " + msg);
}

void require_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    for (const auto& [key, _] : obj.items()) {
        if (allowed.find(key) == allowed.end())
            fail(path.empty() ? key : path + "." + key, "unknown key");
    }
}

double get_number(const json& obj, const std::string& path, const std::string& key) {
    if (!obj.contains(key)) fail(path + "." + key, "missing required field");
    if (!obj[key].is_number()) fail(path + "." + key, "expected a number");
    return obj[key].get<double>();
}

double get_number_or(const json& obj, const std::string& path, const std::string& key, double def) {
    if (!obj.contains(key)) return def;
    if (!obj[key].is_number()) fail(path + "." + key, "expected a number");
    return obj[key].get<double>();
}

std::string get_string(const json& obj, const std::string& path, const std::string& key) {
    if (!obj.contains(key)) fail(path + "." + key, "missing required field");
    if (!obj[key].is_string()) fail(path + "." + key, "expected a string");
    return obj[key].get<std::string>();
}

QubitParams parse_point(const json& obj, const std::string& path) {
    require_keys(obj, path, {"e0", "delta", "q"});
    QubitParams p;
    p.e0 = get_number(obj, path, "e0");
    p.delta = get_number(obj, path, "delta");
    p.q = get_number_or(obj, path, "q", 0.0);
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    return p;
}

BathSpec parse_bath(const json& obj, const std::string& path, BathLabel label) {
    require_keys(obj, path, {"beta", "rate_model"});
    BathSpec b;
    b.label = label;
    b.beta = get_number(obj, path, "beta");
    if (!obj.contains("rate_model")) fail(path + ".rate_model", "missing required field");
    const json& rm = obj["rate_model"];
    const std::string rm_path = path + ".rate_model";
    const std::string type = get_string(rm, rm_path, "type");
    if (type == "direct") {
        require_keys(rm, rm_path, {"type", "gamma_down"});
        b.rate_model = DirectRate{get_number(rm, rm_path, "gamma_down")};
    } else if (type == "resonator") {
        require_keys(rm, rm_path, {"type", "kappa", "quality", "omega_res"});
        b.rate_model = ResonatorRate{get_number(rm, rm_path, "kappa"),
                                     get_number(rm, rm_path, "quality"),
                                     get_number(rm, rm_path, "omega_res")};
    } else {
        fail(rm_path + ".type", "must be \"direct\" or \"resonator\"");
    }
    try {
        b.validate();
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    return b;
}

Spacing parse_spacing(const json& obj, const std::string& path) {
    const std::string s = obj.contains("spacing") ? get_string(obj, path, "spacing") : "linear";
    if (s == "linear") return Spacing::Linear;
    if (s == "log") return Spacing::Log;
    fail(path + ".spacing", "must be \"linear\" or \"log\"");
}

GridSpec parse_grid(const json& obj, const std::string& path) {
    require_keys(obj, path, {"min", "max", "points", "spacing"});
    GridSpec g;
    g.min = get_number(obj, path, "min");
    g.max = get_number(obj, path, "max");
    if (!obj.contains("points") || !obj["points"].is_number_integer())
        fail(path + ".points", "expected an integer");
    g.points = obj["points"].get<int>();
    g.spacing = parse_spacing(obj, path);
    if (g.points < 1) fail(path + ".points", "must be >= 1");
    if (g.spacing == Spacing::Log && !(g.min > 0.0 && g.max > 0.0))
        fail(path, "log spacing requires positive endpoints");
    return g;
}

} // namespace

const std::vector<std::string>& sweep_parameter_names() {
    static const std::vector<std::string> names = {
        "dt",        "f",           "beta_cold",       "beta_hot", "gamma_down_cold",
        "gamma_down_hot", "q_high", "delta_over_q_high", "e0_high",
    };
    return names;
}

CycleSpec apply_parameter(const CycleSpec& spec, const std::string& param, double value) {
    CycleSpec s = spec;
    auto set_gamma = [&](BathSpec& bath, const char* which) {
        auto* d = std::get_if<DirectRate>(&bath.rate_model);
        if (d == nullptr)
            throw ConfigError(std::string("sweep parameter ") + which +
                              " requires a direct rate model");
        d->gamma_down = value;
    };
    if (param == "dt") {
        s.dt = value;
    } else if (param == "f") {
        if (!(value > 0.0)) throw ConfigError("sweep parameter f must be > 0");
        s.dt = 1.0 / (2.0 * value);
    } else if (param == "beta_cold") {
        s.cold.beta = value;
    } else if (param == "beta_hot") {
        s.hot.beta = value;
    } else if (param == "gamma_down_cold") {
        set_gamma(s.cold, "gamma_down_cold");
    } else if (param == "gamma_down_hot") {
        set_gamma(s.hot, "gamma_down_hot");
    } else if (param == "q_high") {
        s.qubit_high.q = value;
    } else if (param == "delta_over_q_high") {
        if (!(value > 0.0)) throw ConfigError("sweep parameter delta_over_q_high must be > 0");
        s.qubit_high.q = s.qubit_high.delta / value;
    } else if (param == "e0_high") {
        s.qubit_high.e0 = value;
    } else {
        throw ConfigError("unknown sweep parameter \"" + param + "\"");
    }
    return s;
}

std::vector<double> grid_values(double min, double max, int points, Spacing spacing) {
    std::vector<double> out;
    out.reserve(static_cast<size_t>(points));
    if (points == 1) {
        out.push_back(min);
        return out;
    }
    for (int k = 0; k < points; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(points - 1);
        out.push_back(spacing == Spacing::Linear ? min + (max - min) * t
                                                 : min * std::pow(max / min, t));
    }
    return out;
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    if (!root.is_object()) throw ConfigError(origin + ": top level must be an object");
    require_keys(root, "", {"protocol", "thermalization", "dt", "operating_points", "baths",
                            "sweep", "output", "si", "rates_grid"});

    RunConfig cfg;

    const std::string protocol = get_string(root, "", "protocol");
    if (protocol == "coherent_sudden") {
        cfg.cycle.protocol = Protocol::CoherentSudden;
    } else if (protocol == "incoherent_scaled") {
        cfg.cycle.protocol = Protocol::IncoherentScaled;
    } else if (protocol == "classical") {
        cfg.cycle.protocol = Protocol::Classical;
    } else {
        fail("protocol", "must be \"coherent_sudden\", \"incoherent_scaled\" or \"classical\"");
    }

    if (root.contains("thermalization")) {
        const std::string mode = get_string(root, "", "thermalization");
        if (mode == "exact") {
            cfg.cycle.thermalization_mode = ThermalizationMode::Exact;
        } else if (mode == "linear") {
            cfg.cycle.thermalization_mode = ThermalizationMode::LinearOrder;
        } else {
            fail("thermalization", "must be \"exact\" or \"linear\"");
        }
    }

    cfg.cycle.dt = get_number(root, "", "dt");

    if (!root.contains("operating_points")) fail("operating_points", "missing required field");
    const json& pts = root["operating_points"];
    require_keys(pts, "operating_points", {"low", "high"});
    if (!pts.contains("low") || !pts.contains("high"))
        fail("operating_points", "must provide both \"low\" and \"high\"");
    cfg.cycle.qubit_low = parse_point(pts["low"], "operating_points.low");
    cfg.cycle.qubit_high = parse_point(pts["high"], "operating_points.high");

    if (!root.contains("baths")) fail("baths", "missing required field");
    const json& baths = root["baths"];
    require_keys(baths, "baths", {"cold", "hot"});
    if (!baths.contains("cold") || !baths.contains("hot"))
        fail("baths", "must provide both \"cold\" and \"hot\"");
    cfg.cycle.cold = parse_bath(baths["cold"], "baths.cold", BathLabel::Cold);
    cfg.cycle.hot = parse_bath(baths["hot"], "baths.hot", BathLabel::Hot);

    if (root.contains("sweep")) {
        const json& sweep = root["sweep"];
        if (!sweep.is_array()) fail("sweep", "expected an array of axes");
        if (sweep.size() > 2) fail("sweep", "at most 2 sweep axes are supported");
        int idx = 0;
        for (const json& axis : sweep) {
            const std::string path = "sweep[" + std::to_string(idx++) + "]";
            require_keys(axis, path, {"param", "min", "max", "points", "spacing"});
            SweepAxis a;
            a.param = get_string(axis, path, "param");
            const auto& names = sweep_parameter_names();
            if (std::find(names.begin(), names.end(), a.param) == names.end())
                fail(path + ".param", "unknown sweep parameter \"" + a.param + "\"");
            a.min = get_number(axis, path, "min");
            a.max = get_number(axis, path, "max");
            if (!axis.contains("points") || !axis["points"].is_number_integer())
                fail(path + ".points", "expected an integer");
            a.points = axis["points"].get<int>();
            if (a.points < 1) fail(path + ".points", "must be >= 1");
            a.spacing = parse_spacing(axis, path);
            if (a.spacing == Spacing::Log && !(a.min > 0.0 && a.max > 0.0))
                fail(path, "log spacing requires positive endpoints");
            cfg.axes.push_back(a);
        }
    }

    if (root.contains("output")) {
        const json& out = root["output"];
        require_keys(out, "output", {"format", "path"});
        if (out.contains("format")) {
            const std::string fmt = get_string(out, "output", "format");
            if (fmt == "csv") {
                cfg.output.format = OutputFormat::Csv;
            } else if (fmt == "json") {
                cfg.output.format = OutputFormat::Json;
            } else {
                fail("output.format", "must be \"csv\" or \"json\"");
            }
        }
        if (out.contains("path")) cfg.output.path = get_string(out, "output", "path");
    }

    if (root.contains("si")) {
        const json& si = root["si"];
        require_keys(si, "si", {"enabled", "reference_kelvin"});
        if (si.contains("enabled")) {
            if (!si["enabled"].is_boolean()) fail("si.enabled", "expected a boolean");
            cfg.si.enabled = si["enabled"].get<bool>();
        }
        cfg.si.reference_kelvin = get_number_or(si, "si", "reference_kelvin", 1.0);
        if (!(cfg.si.reference_kelvin > 0.0)) fail("si.reference_kelvin", "must be > 0");
    }

    if (root.contains("rates_grid")) cfg.rates_grid = parse_grid(root["rates_grid"], "rates_grid");

    try {
        cfg.cycle.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

} // namespace qotto::cli
