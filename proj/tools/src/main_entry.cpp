#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "superatom_cli/commands.hpp"

namespace superatom::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_error(const std::string& out_dir, const ErrorRecord& record) {
  try {
    std::filesystem::create_directories(out_dir);
    std::filesystem::remove(std::filesystem::path(out_dir) / "manifest.json");
    std::ofstream out(std::filesystem::path(out_dir) / "error.json");
    out << record.body.dump(2) << '\n';
  } catch (const std::exception&) {
    // The record still goes to stderr.
  }
  std::cerr << "error: " << record.body.value("message", std::string("unknown")) << '\n';
}

}  // namespace

int main_entry(int argc, char** argv) {
  CLI::App app{"Quantum optics of Rydberg superatoms: simulations and figure data"};
  app.require_subcommand(1);
  app.fallthrough();

  std::map<std::string, std::string> globals;
  std::string config_path;
  app.add_option("--config", config_path, "flat key = value config file");
  app.add_option("--seed", globals["seed"], "RNG seed")->default_str("1");
  app.add_option("--out-dir", globals["out_dir"], "output directory")->default_str("out");
  app.add_option("--units", globals["units"], "unit system: natural or um-us")->default_str("natural");
  app.add_option("--threads", globals["threads"], "worker threads, 0 = hardware")->default_str("0");
  app.add_option("--preset", globals["preset"], "figure preset: fig2, fig3, fig4, fig6");

  std::map<std::string, std::map<std::string, std::string>> flags;
  std::map<std::string, std::vector<std::pair<std::string, CLI::Option*>>> options;
  for (const auto& spec : command_specs()) {
    auto* sub = app.add_subcommand(spec.name, spec.help);
    auto& store = flags[spec.name];
    for (const auto& p : spec.params) {
      auto* opt = sub->add_option("--" + p.name, store[p.name], p.help)->default_str(p.default_value);
      options[spec.name].emplace_back(p.name, opt);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  std::string out_dir = "out";
  try {
    std::map<std::string, std::string> given;
    for (const auto& name : {"seed", "out_dir", "units", "threads", "preset"}) {
      const std::string flag = name == std::string("out_dir") ? "--out-dir" : std::string("--") + name;
      if (app.get_option(flag)->count() > 0) given[name] = globals[name];
    }
    if (given.contains("out_dir")) out_dir = given["out_dir"];

    std::map<std::string, std::string> file_values;
    if (!config_path.empty()) file_values = parse_config_text(read_file(config_path));
    if (!given.contains("out_dir") && file_values.contains("out_dir")) out_dir = file_values["out_dir"];

    const std::string command = app.get_subcommands().front()->get_name();
    for (const auto& [name, opt] : options[command]) {
      if (opt->count() > 0) given[name] = flags[command][name];
    }
    const RunConfig config = build_config(command, file_values, given);
    out_dir = config.out_dir;
    const auto manifest = run(config);
    std::cout << manifest["result"].dump(2) << '\n';
    return 0;
  } catch (const std::exception& e) {
    const auto record = describe_error(e);
    write_error(out_dir, record);
    return record.exit_code;
  }
}

}  // namespace superatom::cli
