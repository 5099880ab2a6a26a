#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "superatom/master_equation.hpp"
#include "superatom_cli/commands.hpp"
#include "superatom_cli/config.hpp"
#include "superatom_cli/output.hpp"

using namespace superatom;
using namespace superatom::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / "superatom_cli_tests" / name;
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<double>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

int call(std::vector<std::string> args) {
  args.insert(args.begin(), "superatom");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return main_entry(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("defaults form a valid config for every command") {
    for (const auto& spec : command_specs()) {
      const auto c = build_config(spec.name, {}, {});
      CHECK(c.values.size() == spec.params.size());
      CHECK(c.units == "natural");
    }
  }

  TEST_CASE("errors name the key") {
    try {
      build_config("simulate", {}, {{"kappa", "-1"}});
      FAIL("expected a config error");
    } catch (const ConfigError& e) {
      CHECK(e.key() == "kappa");
    }
    try {
      build_config("simulate", parse_config_text("kapa = 1\n"), {});
      FAIL("expected a config error");
    } catch (const ConfigError& e) {
      CHECK(e.key() == "kapa");
    }
    try {
      build_config("simulate", {}, {{"samples", "many"}});
      FAIL("expected a config error");
    } catch (const ConfigError& e) {
      CHECK(e.key() == "samples");
    }
    CHECK_THROWS_AS(build_config("simulate", {}, {{"units", "furlongs"}}), ConfigError);
    CHECK_THROWS_AS(build_config("simulate", {}, {{"preset", "fig2"}}), ConfigError);
    // A repeated key collects both values, which a scalar key then rejects.
    CHECK_THROWS_AS(build_config("simulate", parse_config_text("kappa = 1\nkappa = 2\n"), {}), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[section]\na = 1\n"), ConfigError);
  }

  TEST_CASE("flags override the file and the file overrides the preset") {
    const auto file = parse_config_text("# comment\nlambda_min = 0.5\nn_lambda = 8\n");
    const auto c = build_config("phase-diagram", file, {{"preset", "fig2"}, {"n_lambda", "4"}});
    CHECK(c.text("lambda_min") == "0.5");
    CHECK(c.integer("n_lambda") == 4);
    CHECK(c.integer("n_n_bar") == 64);
  }

  TEST_CASE("presets round-trip through the config text") {
    for (const auto& [preset, command] : preset_commands())
      for (const char* units : {"natural", "um-us"}) {
        const auto c = build_config(command, {}, {{"preset", preset}, {"units", units}, {"seed", "7"}});
        const auto again = build_config("", parse_config_text(serialize_config(c)), {});
        CHECK(again == c);
      }
    const auto natural = build_config("phase-diagram", {}, {{"preset", "fig2"}});
    CHECK(natural.number("kappa") == 1.0);
    CHECK(natural.number("lambda_min") == 0.01);
    CHECK(natural.integer("n_lambda") == 64);
    const auto lab = build_config("subtract", {}, {{"preset", "fig6"}, {"units", "um-us"}});
    CHECK(lab.number("kappa") == 0.25);
    CHECK(lab.number("tau") == 20.0);
    CHECK(lab.numbers("n_bar") == std::vector<double>{5.65, 15.76});
    const auto nat6 = build_config("subtract", {}, {{"preset", "fig6"}});
    CHECK(nat6.number("tau") == doctest::Approx(5.0));
    CHECK(nat6.number("gamma_d") == doctest::Approx(10.0));
  }

  TEST_CASE("simulate trace matches the closed form") {
    auto c = build_config("simulate", {}, {{"r_in", "2"}, {"tau", "6"}, {"t_end", "6"}, {"samples", "601"}});
    c.out_dir = scratch("simulate").string();
    run(c);
    const auto rows = read_csv(fs::path(c.out_dir) / "trace.csv");
    REQUIRE(rows.size() == 601);
    double worst = 0.0;
    for (const auto& r : rows) {
      if (r[0] >= 6.0) continue;
      worst = std::max(worst, std::abs(r[2] - analytic_rho22(1.0, 2.0, r[0])));
    }
    CHECK(worst < 1e-6);
  }

  TEST_CASE("manifest lists every file with its checksum, and reruns are byte-identical") {
    auto c = build_config("emission-pattern", {}, {{"n_atoms", "200"}, {"realizations", "5"}, {"n_theta", "9"}});
    c.seed = 11;
    c.out_dir = scratch("pattern_a").string();
    const auto manifest = run(c);
    const auto written = nlohmann::json::parse(slurp(fs::path(c.out_dir) / "manifest.json"));
    for (const auto& f : written["files"]) {
      const auto path = fs::path(c.out_dir) / f["path"].get<std::string>();
      REQUIRE(fs::exists(path));
      CHECK(sha256_file(path) == f["sha256"].get<std::string>());
    }
    CHECK(written["files"].size() == manifest["files"].size());
    CHECK(written["library_version"].is_string());

    auto again = c;
    again.out_dir = scratch("pattern_b").string();
    again.threads = 3;
    run(again);
    CHECK(slurp(fs::path(c.out_dir) / "pattern.csv") == slurp(fs::path(again.out_dir) / "pattern.csv"));
  }

  TEST_CASE("sha256 of a known string") {
    const auto p = scratch("sha") / "abc.txt";
    fs::create_directories(p.parent_path());
    std::ofstream(p) << "abc";
    CHECK(sha256_file(p) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  }

  TEST_CASE("csv quoting") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  }

  TEST_CASE("command line: failures leave an error record and no manifest") {
    const auto dir = scratch("bad");
    CHECK(call({"simulate", "--kappa", "-1", "--out-dir", dir.string()}) != 0);
    CHECK(fs::exists(dir / "error.json"));
    CHECK_FALSE(fs::exists(dir / "manifest.json"));
    const auto err = nlohmann::json::parse(slurp(dir / "error.json"));
    CHECK(err["key"] == "kappa");

    const auto ok = scratch("ok");
    CHECK(call({"check-blockade", "--out-dir", ok.string()}) == 0);
    CHECK(fs::exists(ok / "manifest.json"));
    CHECK(call({"check-blockade", "--c6", "0", "--out-dir", ok.string()}) == 3);
    CHECK_FALSE(fs::exists(ok / "manifest.json"));
  }

  TEST_CASE("config file on the command line") {
    const auto dir = scratch("cfg");
    fs::create_directories(dir);
    std::ofstream(dir / "run.cfg") << "command = eliminate\nomega_c = 12\nsamples = 101\n";
    CHECK(call({"eliminate", "--config", (dir / "run.cfg").string(), "--out-dir", (dir / "out").string()}) == 0);
    const auto cfg = build_config("", parse_config_text(slurp(dir / "out" / "config.cfg")), {});
    CHECK(cfg.text("omega_c") == "12");
    CHECK(cfg.integer("samples") == 101);
  }
}
