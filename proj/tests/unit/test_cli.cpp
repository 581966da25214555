#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rydcp/cli/config.hpp"
#include "rydcp/cli/fit.hpp"
#include "rydcp/cli/presets.hpp"
#include "rydcp/cli/scan.hpp"
#include "rydcp/error.hpp"

using namespace rydcp;
using namespace rydcp::cli;

namespace {

const char* kDoubleLayer = R"(version: 1
name: test stack
stack:
  - sheet: graphene-kubo
  - layer: {material: hbn, thickness: 10.0e-9}
  - sheet: {model: kubo, fermi_energy_ev: 0.2}
)";

int error_line(const std::string& text) {
  try {
    parse_stack(text, "t.yaml");
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("stack file parses into layers and sheets") {
    const auto s = parse_stack(kDoubleLayer);
    CHECK(s.name == "test stack");
    REQUIRE(s.stack.layers().size() == 3);
    CHECK(std::get<materials::Dielectric>(s.stack.layers()[1].medium).eps_r == 3.58);
    CHECK(s.stack.layers()[1].thickness == 10e-9);
    CHECK(std::get<materials::KuboGraphene>(*s.stack.sheets()[1]).params.fermi_energy_ev == 0.2);
    CHECK(s.stack.describe().find("3.58") != std::string::npos);
  }

  TEST_CASE("stack errors name the field and line") {
    const std::string bad = "version: 1\nstack:\n  - sheet: graphene-kubo\n  - layer: {material: hbn, thickness: -3}\n";
    CHECK(error_line(bad) == 4);
    try {
      parse_stack(bad, "t.yaml");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("thickness") != std::string::npos);
      CHECK(std::string(e.what()).find("t.yaml:4") != std::string::npos);
    }
    CHECK(error_line("version: 2\nstack: []\n") == 1);
    CHECK(error_line("version: 1\nstack:\n  - sheet: {model: kubo}\n  - sheet: graphene-kubo\n") == 4);
    CHECK(error_line("version: 1\nstack:\n  - slab: hbn\n") == 3);
    CHECK(error_line("version: 1\nstack:\n  - layer: {material: hbn}\n") == 3);
    CHECK(error_line("version: 1\nstack: [\n") > 0);
  }

  TEST_CASE("shipped stack files resolve by name") {
    const auto s = resolve_stack("graphene-hbn-graphene");
    CHECK(s.stack.sheets().size() == 2);
    CHECK(resolve_stack("stacks/graphene-vacuum-graphene.yaml").stack.layers().size() == 3);
    CHECK_THROWS_AS(resolve_stack("no-such-stack"), InvalidArgument);
  }

  TEST_CASE("scan configs validate their axes") {
    const auto c = parse_scan("version: 1\nn: 25\naxes:\n  - {name: z0, start: 1.0e-6, stop: 1.0e-5, count: 5, spacing: log}\n");
    REQUIRE(c.axes.size() == 1);
    CHECK(c.axes[0].values.size() == 5);
    CHECK(c.axes[0].values.back() == 1e-5);
    CHECK(c.axes[0].values[1] == doctest::Approx(1e-6 * std::pow(10.0, 0.25)));
    CHECK_THROWS_AS(parse_scan("version: 1\naxes: []\n"), ConfigError);
    CHECK_THROWS_AS(parse_scan("version: 1\naxes:\n  - {name: z0, values: []}\n"), ConfigError);
    CHECK_THROWS_AS(parse_scan("version: 1\naxes:\n  - {name: z0, values: [3, 1, 2]}\n"), ConfigError);
    CHECK_THROWS_AS(parse_scan("version: 1\naxes:\n  - {name: omega, values: [1]}\n"), ConfigError);
    CHECK_THROWS_AS(parse_scan("version: 1\ncolour: red\naxes:\n  - {name: T, values: [1]}\n"), ConfigError);
  }

  TEST_CASE("linear grids hit round numbers") {
    const auto g = make_grid(10, 400, 40, false);
    CHECK(g[5] == 60.0);
    CHECK_THROWS_AS(make_grid(0.0, 1.0, 5, true), InvalidArgument);
  }

  TEST_CASE("scans are identical for any number of workers and add up") {
    auto c = parse_scan("version: 1\nn: 28\ntemperature: 300\naxes:\n  - {name: z0, start: 1.0e-6, stop: 2.0e-5, count: 6, spacing: log}\n");
    c.per_transition = true;
    ScanOptions one, three;
    three.workers = 3;
    const auto a = run_scan(c, one);
    const auto b = run_scan(c, three);
    std::ostringstream sa, sb;
    write_csv(sa, a.table);
    write_csv(sb, b.table);
    CHECK(sa.str() == sb.str());
    CHECK(a.failures == 0);
    CHECK(a.transitions.rows.size() > 6);
    const auto& t = a.table;
    for (const auto& r : t.rows) {
      const double total = std::stod(r[t.column("u_total_Hz")]);
      const double parts = std::stod(r[t.column("u_nres_Hz")]) + std::stod(r[t.column("u_res_evan_Hz")]) +
                           std::stod(r[t.column("u_res_prop_Hz")]);
      CHECK(std::abs(total - parts) <= 1e-10 * std::abs(total));
      CHECK(r[t.column("error")].empty());
    }
  }

  TEST_CASE("per-point failures are recorded, not thrown") {
    auto c = parse_scan("version: 1\nstack: gold-drude\naxes:\n  - {name: ef, values: [0.1, 0.2]}\n");
    const auto r = run_scan(c);
    CHECK(r.failures == 2);
    CHECK(r.table.rows[0].back().find("graphene") != std::string::npos);
  }

  TEST_CASE("joules and timing columns") {
    auto c = parse_scan("version: 1\naxes:\n  - {name: z0, values: [5.0e-6]}\n");
    ScanOptions o;
    o.joules = true;
    o.timing = true;
    const auto r = run_scan(c, o);
    CHECK(r.table.has_column("u_total_J"));
    CHECK(r.table.has_column("wall_ms"));
    CHECK_FALSE(r.table.has_column("u_total_Hz"));
  }

  TEST_CASE("csv round trip with quoting") {
    Table t{{"a", "b"}, {{"1", "x, \"y\""}, {"2", ""}}};
    std::ostringstream out;
    write_csv(out, t);
    std::istringstream in(out.str());
    const auto back = read_csv(in);
    CHECK(back.header == t.header);
    CHECK(back.rows == t.rows);
    std::istringstream ragged("a,b\n1\n");
    CHECK_THROWS_AS(read_csv(ragged), InvalidArgument);
  }

  TEST_CASE("fit reports and schema errors") {
    Table t{{"n", "z0_m", "T_K", "model", "u_total_Hz", "error"}, {}};
    for (int n = 20; n <= 50; n += 5) {
      const double c3 = 1.923e-16 * std::pow(n, 4) - 1.840e-15 * std::pow(n, 3);
      t.rows.push_back({std::to_string(n), "1e-05", "10", "kubo", format_number(-c3 / 1e-15), ""});
    }
    FitRequest req;
    req.kind = FitKind::C3TwoTerm;
    const auto j = run_fit(t, req);
    CHECK(j["results"][0]["q1"].get<double>() == doctest::Approx(1.923e-16).epsilon(1e-9));
    req.column = "u_missing";
    CHECK_THROWS_AS(run_fit(t, req), InvalidArgument);
    CHECK_THROWS_AS(parse_fit_kind("spline"), InvalidArgument);
  }

  TEST_CASE("presets") {
    const auto names = preset_names();
    CHECK(names.size() >= 15);
    const auto fig6 = expand_preset("fig6");
    REQUIRE(fig6.size() == 2);
    CHECK(fig6[0].name == "fig6a");
    CHECK(fig6[1].output == "fig6b.csv");
    CHECK(expand_preset("fig3").size() == 3);
    for (const auto& n : names) CHECK_NOTHROW(expand_preset(n));
    CHECK_THROWS_AS(expand_preset("fig99"), InvalidArgument);
  }

  TEST_CASE("plot script references the table") {
    const auto c = expand_preset("fig6b")[0];
    const auto s = plot_script(c, "out/fig6b.csv");
    CHECK(s.find("fig6b.csv") != std::string::npos);
    CHECK(s.find("matplotlib") != std::string::npos);
  }
}
