#pragma once

#include <json.hpp>

#include "superatom_cli/config.hpp"

namespace superatom::cli {

/// Runs one validated config, writes its artifacts and finally the manifest into
/// config.out_dir. Returns the manifest.
nlohmann::json run(const RunConfig& config);

/// Machine-readable record of an exception and the exit code it maps to.
struct ErrorRecord {
  nlohmann::json body;
  int exit_code;
};
ErrorRecord describe_error(const std::exception& e);

/// Full command-line entry point, shared by the executable and the tests.
int main_entry(int argc, char** argv);

}  // namespace superatom::cli
