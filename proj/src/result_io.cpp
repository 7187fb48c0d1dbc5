#include "qotto/result_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qotto/units.hpp"

namespace qotto::cli {

namespace {

using nlohmann::json;

std::string opt_field(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string{};
}

json opt_json(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

// Emission-time guard: every successful row must close the first law.
void check_first_law(const LimitCycleResult& r) {
    const double lhs = r.w_compress + r.w_expand;
    const double rhs = r.q_cold + r.q_hot;
    const double scale = std::max({std::abs(r.w_compress), std::abs(r.w_expand),
                                   std::abs(r.q_cold), std::abs(r.q_hot), 1e-300});
    if (std::abs(lhs - rhs) > 1e-12 * scale)
        throw std::logic_error("result row violates first-law closure");
}

void append_state_csv(std::ostream& os, const BlochState& s) {
    os << ',' << format_double(s.d) << ',' << format_double(s.r) << ',' << format_double(s.i);
}

json state_json(const BlochState& s) {
    return json{{"d", s.d}, {"r", s.r}, {"i", s.i}};
}

} // namespace

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string render_rows_csv(const std::vector<std::string>& axis_names,
                            const std::vector<ResultRow>& rows, const SiSpec& si) {
    std::ostringstream os;
    for (const auto& name : axis_names) os << name << ',';
    os << "status,dt,de_cold,de_hot,p_cold,p_hot,cop,spectral_radius,"
          "q_cold,q_hot,w_compress,w_expand,"
          "d_a,r_a,i_a,d_b,r_b,i_b,d_c,r_c,i_c,d_d,r_d,i_d,"
          "ref_p_cold,ref_p_hot,dev_p_cold,dev_p_hot";
    if (si.enabled) os << ",dt_s,de_cold_k,de_hot_k,p_cold_w,p_hot_w";
    os << '\n';

    const units::SiScale scale{si.reference_kelvin};
    for (const auto& row : rows) {
        for (double v : row.swept) os << format_double(v) << ',';
        os << row.status;
        if (row.cycle) {
            const LimitCycleResult& r = *row.cycle;
            check_first_law(r);
            os << ',' << format_double(row.dt) << ',' << format_double(row.de_cold) << ','
               << format_double(row.de_hot) << ',' << format_double(r.p_cold) << ','
               << format_double(r.p_hot) << ',' << opt_field(r.cop) << ','
               << format_double(r.spectral_radius) << ',' << format_double(r.q_cold) << ','
               << format_double(r.q_hot) << ',' << format_double(r.w_compress) << ','
               << format_double(r.w_expand);
            append_state_csv(os, r.a);
            append_state_csv(os, r.b);
            append_state_csv(os, r.c);
            append_state_csv(os, r.d);
            os << ',' << opt_field(row.ref_p_cold) << ',' << opt_field(row.ref_p_hot) << ','
               << opt_field(row.dev_p_cold) << ',' << opt_field(row.dev_p_hot);
            if (si.enabled) {
                os << ',' << format_double(scale.time_to_seconds(row.dt)) << ','
                   << format_double(scale.energy_to_kelvin(row.de_cold)) << ','
                   << format_double(scale.energy_to_kelvin(row.de_hot)) << ','
                   << format_double(scale.power_to_watt(r.p_cold)) << ','
                   << format_double(scale.power_to_watt(r.p_hot));
            }
        } else {
            // 27 empty data cells, plus the SI block when enabled
            const int blanks = 27 + (si.enabled ? 5 : 0);
            for (int k = 0; k < blanks; ++k) os << ',';
        }
        os << '\n';
    }
    return os.str();
}

std::string render_rows_json(const std::vector<std::string>& axis_names,
                             const std::vector<ResultRow>& rows, const SiSpec& si) {
    const units::SiScale scale{si.reference_kelvin};
    json out = json::array();
    for (const auto& row : rows) {
        json j;
        for (size_t k = 0; k < row.swept.size(); ++k) j[axis_names[k]] = row.swept[k];
        j["status"] = row.status;
        if (row.cycle) {
            const LimitCycleResult& r = *row.cycle;
            check_first_law(r);
            j["dt"] = row.dt;
            j["de_cold"] = row.de_cold;
            j["de_hot"] = row.de_hot;
            j["p_cold"] = r.p_cold;
            j["p_hot"] = r.p_hot;
            j["cop"] = opt_json(r.cop);
            j["spectral_radius"] = r.spectral_radius;
            j["q_cold"] = r.q_cold;
            j["q_hot"] = r.q_hot;
            j["w_compress"] = r.w_compress;
            j["w_expand"] = r.w_expand;
            j["corners"] = json{{"a", state_json(r.a)},
                                {"b", state_json(r.b)},
                                {"c", state_json(r.c)},
                                {"d", state_json(r.d)}};
            j["ref_p_cold"] = opt_json(row.ref_p_cold);
            j["ref_p_hot"] = opt_json(row.ref_p_hot);
            j["dev_p_cold"] = opt_json(row.dev_p_cold);
            j["dev_p_hot"] = opt_json(row.dev_p_hot);
            if (si.enabled) {
                j["si"] = json{{"dt_s", scale.time_to_seconds(row.dt)},
                               {"de_cold_k", scale.energy_to_kelvin(row.de_cold)},
                               {"de_hot_k", scale.energy_to_kelvin(row.de_hot)},
                               {"p_cold_w", scale.power_to_watt(r.p_cold)},
                               {"p_hot_w", scale.power_to_watt(r.p_hot)}};
            }
        }
        out.push_back(std::move(j));
    }
    return out.dump(2) + "\n";
}

std::string render_rates_csv(const std::vector<RateRow>& rows, const SiSpec& si) {
    std::ostringstream os;
    os << "bath,de,gamma_down,gamma_up,gamma_sum,lorentz_factor,on_resonance,"
          "power_scale,cross_ratio,cross_coupling_ok";
    if (si.enabled) os << ",de_k,gamma_down_hz,gamma_up_hz,gamma_sum_hz,power_scale_w";
    os << '\n';
    const units::SiScale scale{si.reference_kelvin};
    for (const auto& r : rows) {
        os << r.bath << ',' << format_double(r.de) << ',' << format_double(r.gamma_down) << ','
           << format_double(r.gamma_up) << ',' << format_double(r.gamma_sum) << ','
           << format_double(r.lorentz_factor) << ',' << (r.on_resonance ? 1 : 0) << ','
           << opt_field(r.power_scale) << ',' << opt_field(r.cross_ratio) << ',';
        if (r.cross_coupling_ok) os << (*r.cross_coupling_ok ? 1 : 0);
        if (si.enabled) {
            os << ',' << format_double(scale.energy_to_kelvin(r.de)) << ','
               << format_double(scale.rate_to_hz(r.gamma_down)) << ','
               << format_double(scale.rate_to_hz(r.gamma_up)) << ','
               << format_double(scale.rate_to_hz(r.gamma_sum)) << ',';
            if (r.power_scale) os << format_double(scale.power_to_watt(*r.power_scale));
        }
        os << '\n';
    }
    return os.str();
}

std::string render_rates_json(const std::vector<RateRow>& rows, const SiSpec& si) {
    const units::SiScale scale{si.reference_kelvin};
    json out = json::array();
    for (const auto& r : rows) {
        json j{{"bath", r.bath},
               {"de", r.de},
               {"gamma_down", r.gamma_down},
               {"gamma_up", r.gamma_up},
               {"gamma_sum", r.gamma_sum},
               {"lorentz_factor", r.lorentz_factor},
               {"on_resonance", r.on_resonance},
               {"power_scale", opt_json(r.power_scale)},
               {"cross_ratio", opt_json(r.cross_ratio)}};
        j["cross_coupling_ok"] = r.cross_coupling_ok ? json(*r.cross_coupling_ok) : json(nullptr);
        if (si.enabled) {
            j["si"] = json{{"de_k", scale.energy_to_kelvin(r.de)},
                           {"gamma_down_hz", scale.rate_to_hz(r.gamma_down)},
                           {"gamma_up_hz", scale.rate_to_hz(r.gamma_up)},
                           {"gamma_sum_hz", scale.rate_to_hz(r.gamma_sum)},
                           {"power_scale_w", r.power_scale
                                                 ? json(scale.power_to_watt(*r.power_scale))
                                                 : json(nullptr)}};
        }
        out.push_back(std::move(j));
    }
    return out.dump(2) + "\n";
}

std::string render_compare_csv(const std::vector<CompareRow>& rows, const SiSpec& si) {
    std::ostringstream os;
    os << "protocol,p_cold,p_hot,cop,spectral_radius,q_cold,q_hot,w_compress,w_expand,"
          "ref_p_cold,ref_p_hot";
    if (si.enabled) os << ",p_cold_w,p_hot_w";
    os << '\n';
    const units::SiScale scale{si.reference_kelvin};
    for (const auto& row : rows) {
        const LimitCycleResult& r = row.cycle;
        check_first_law(r);
        os << row.protocol << ',' << format_double(r.p_cold) << ',' << format_double(r.p_hot)
           << ',' << opt_field(r.cop) << ',' << format_double(r.spectral_radius) << ','
           << format_double(r.q_cold) << ',' << format_double(r.q_hot) << ','
           << format_double(r.w_compress) << ',' << format_double(r.w_expand) << ','
           << opt_field(row.ref_p_cold) << ',' << opt_field(row.ref_p_hot);
        if (si.enabled)
            os << ',' << format_double(scale.power_to_watt(r.p_cold)) << ','
               << format_double(scale.power_to_watt(r.p_hot));
        os << '\n';
    }
    return os.str();
}

std::string render_compare_json(const std::vector<CompareRow>& rows, const SiSpec& si) {
    const units::SiScale scale{si.reference_kelvin};
    json out = json::array();
    for (const auto& row : rows) {
        const LimitCycleResult& r = row.cycle;
        check_first_law(r);
        json j{{"protocol", row.protocol},
               {"p_cold", r.p_cold},
               {"p_hot", r.p_hot},
               {"cop", opt_json(r.cop)},
               {"spectral_radius", r.spectral_radius},
               {"q_cold", r.q_cold},
               {"q_hot", r.q_hot},
               {"w_compress", r.w_compress},
               {"w_expand", r.w_expand},
               {"ref_p_cold", opt_json(row.ref_p_cold)},
               {"ref_p_hot", opt_json(row.ref_p_hot)}};
        if (si.enabled) {
            j["si"] = json{{"p_cold_w", scale.power_to_watt(r.p_cold)},
                           {"p_hot_w", scale.power_to_watt(r.p_hot)}};
        }
        out.push_back(std::move(j));
    }
    return out.dump(2) + "\n";
}

} // namespace qotto::cli
