#include <doctest.h>

#include <string>

#include "qotto/commands.hpp"
#include "qotto/config.hpp"
#include "qotto/result_io.hpp"

using namespace qotto;
using namespace qotto::cli;

namespace {

const char* kClassicalConfig = R"json({
  "protocol": "classical",
  "dt": 0.0001,
  "operating_points": {
    "low":  {"e0": 0.5, "delta": 1.0, "q": 0.0},
    "high": {"e0": 1.0, "delta": 1.0, "q": 0.0}
  },
  "baths": {
    "cold": {"beta": 1.0, "rate_model": {"type": "direct", "gamma_down": 1.0}},
    "hot":  {"beta": 1.0, "rate_model": {"type": "direct", "gamma_down": 1.0}}
  },
  "output": {"format": "csv", "path": "-"}
})json";

std::string with_sweep(const std::string& base, const std::string& sweep) {
    std::string s = base;
    s.insert(s.rfind('}'), ",\n  \"sweep\": " + sweep + "\n");
    return s;
}

} // namespace

TEST_CASE("config parsing") {
    SUBCASE("valid classical config") {
        const RunConfig cfg = parse_config(kClassicalConfig, "test");
        CHECK(cfg.cycle.protocol == Protocol::Classical);
        CHECK(cfg.cycle.dt == 1e-4);
        CHECK(cfg.cycle.de_cold() == 1.0);
        CHECK(cfg.cycle.de_hot() == 2.0);
        CHECK(cfg.output.format == OutputFormat::Csv);
        CHECK(cfg.axes.empty());
    }
    SUBCASE("unknown keys are rejected with their path") {
        std::string bad = kClassicalConfig;
        bad.insert(bad.rfind('}'), ",\n  \"typo_key\": 1\n");
        CHECK_THROWS_WITH_AS(parse_config(bad, "test"), "typo_key: unknown key", ConfigError);

        std::string nested = kClassicalConfig;
        nested.replace(nested.find("\"beta\": 1.0, \"rate_model\""), 12, "\"beta_\": 1.0,");
        CHECK_THROWS_AS(parse_config(nested, "test"), ConfigError);
    }
    SUBCASE("missing required fields are reported") {
        CHECK_THROWS_AS(parse_config(R"({"protocol": "classical"})", "test"), ConfigError);
    }
    SUBCASE("malformed JSON is reported with the origin") {
        CHECK_THROWS_AS(parse_config("{not json", "broken.json"), ConfigError);
    }
    SUBCASE("at most two sweep axes") {
        const std::string sweep =
            R"([{"param": "dt", "min": 1e-5, "max": 1e-3, "points": 3, "spacing": "log"},
                {"param": "beta_cold", "min": 0.5, "max": 2.0, "points": 2},
                {"param": "beta_hot", "min": 0.5, "max": 2.0, "points": 2}])";
        CHECK_THROWS_AS(parse_config(with_sweep(kClassicalConfig, sweep), "test"), ConfigError);
    }
    SUBCASE("unknown sweep parameters are rejected") {
        const std::string sweep = R"([{"param": "warp", "min": 1, "max": 2, "points": 2}])";
        CHECK_THROWS_AS(parse_config(with_sweep(kClassicalConfig, sweep), "test"), ConfigError);
    }
    SUBCASE("log spacing needs positive endpoints") {
        const std::string sweep =
            R"([{"param": "dt", "min": 0.0, "max": 1e-3, "points": 3, "spacing": "log"}])";
        CHECK_THROWS_AS(parse_config(with_sweep(kClassicalConfig, sweep), "test"), ConfigError);
    }
}

TEST_CASE("grid values") {
    const auto lin = grid_values(0.0, 1.0, 5, Spacing::Linear);
    CHECK(lin.size() == 5);
    CHECK(lin.front() == 0.0);
    CHECK(lin.back() == 1.0);
    CHECK(lin[2] == doctest::Approx(0.5));

    const auto log = grid_values(1e-4, 1.0, 5, Spacing::Log);
    CHECK(log[1] / log[0] == doctest::Approx(10.0).epsilon(1e-12));

    CHECK(grid_values(3.0, 9.0, 1, Spacing::Linear) == std::vector<double>{3.0});
}

TEST_CASE("apply_parameter") {
    const RunConfig cfg = parse_config(kClassicalConfig, "test");
    CHECK(apply_parameter(cfg.cycle, "dt", 0.5).dt == 0.5);
    CHECK(apply_parameter(cfg.cycle, "f", 10.0).dt == doctest::Approx(0.05));
    CHECK(apply_parameter(cfg.cycle, "beta_hot", 2.5).hot.beta == 2.5);
    CHECK(apply_parameter(cfg.cycle, "q_high", 7.0).qubit_high.q == 7.0);
    CHECK(apply_parameter(cfg.cycle, "delta_over_q_high", 1e-3).qubit_high.q ==
          doctest::Approx(1e3));
    CHECK_THROWS_AS(apply_parameter(cfg.cycle, "nope", 1.0), ConfigError);

    CycleSpec resonator = cfg.cycle;
    resonator.hot.rate_model = ResonatorRate{0.01, 10.0, 2.0};
    CHECK_THROWS_AS(apply_parameter(resonator, "gamma_down_hot", 1.0), ConfigError);
}

TEST_CASE("simulate row carries the classical comparator") {
    RunConfig cfg = parse_config(kClassicalConfig, "test");
    const ResultRow row = simulate_row(cfg);
    CHECK(row.status == "ok");
    REQUIRE(row.cycle.has_value());
    REQUIRE(row.dev_p_cold.has_value());
    CHECK(*row.dev_p_cold < 1e-4);
    CHECK(*row.dev_p_hot < 1e-4);
    CHECK(row.cycle->p_cold < 0.0);
}

TEST_CASE("sweep rows") {
    RunConfig cfg = parse_config(
        with_sweep(kClassicalConfig,
                   R"([{"param": "dt", "min": 1e-5, "max": 1e-3, "points": 3, "spacing": "log"}])"),
        "test");

    SUBCASE("row count and deterministic order") {
        const auto rows = sweep_rows(cfg);
        REQUIRE(rows.size() == 3);
        CHECK(rows[0].swept[0] == doctest::Approx(1e-5));
        CHECK(rows[2].swept[0] == doctest::Approx(1e-3));
        for (const auto& r : rows) CHECK(r.status == "ok");
    }
    SUBCASE("rendering is byte-identical across runs") {
        const auto names = axis_names(cfg);
        const std::string a = render_rows_csv(names, sweep_rows(cfg), cfg.si);
        const std::string b = render_rows_csv(names, sweep_rows(cfg), cfg.si);
        CHECK(a == b);
        CHECK(a.substr(0, 10) == "dt,status,");
        const std::string ja = render_rows_json(names, sweep_rows(cfg), cfg.si);
        const std::string jb = render_rows_json(names, sweep_rows(cfg), cfg.si);
        CHECK(ja == jb);
    }
    SUBCASE("failing rows are reported without aborting the sweep") {
        RunConfig broken = cfg;
        broken.axes[0].min = 0.0;  // dt = 0 row is non-contracting
        broken.axes[0].spacing = Spacing::Linear;
        const auto rows = sweep_rows(broken);
        REQUIRE(rows.size() == 3);
        CHECK(rows[0].status != "ok");
        CHECK(!rows[0].cycle.has_value());
        CHECK(rows[1].status == "ok");
        CHECK(rows[2].status == "ok");
        // error rows still render
        CHECK(render_rows_csv(axis_names(broken), rows, broken.si).size() > 0);
    }
}

TEST_CASE("two-axis sweeps are outer-axis major") {
    RunConfig cfg = parse_config(
        with_sweep(kClassicalConfig,
                   R"([{"param": "beta_cold", "min": 1.0, "max": 2.0, "points": 2},
                       {"param": "dt", "min": 1e-4, "max": 1e-3, "points": 3, "spacing": "log"}])"),
        "test");
    const auto rows = sweep_rows(cfg);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].swept == std::vector<double>{1.0, 1e-4});
    CHECK(rows[3].swept[0] == 2.0);
    CHECK(rows[5].swept[1] == doctest::Approx(1e-3));
}

TEST_CASE("format_double is shortest round-trip") {
    CHECK(format_double(0.5) == "0.5");
    for (double v : {1e-4, -0.04644910316070074, 130926283.25127008, 2.0 / 3.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}
