#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace superatom::cli {

/// A configuration problem tied to one key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

enum class ParamKind { number, integer, boolean, text, number_list };

/// How a parameter converts between unit systems. Presets are written in um-us and moved to
/// natural units (kappa = 1) by dividing rates by kappa and multiplying times by it.
enum class Dimension { none, rate, time };

struct ParamSpec {
  std::string name;
  std::string default_value;
  ParamKind kind;
  Dimension dimension;
  std::string help;
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<ParamSpec> params;
};

/// Every subcommand with its parameters and defaults, in help order.
const std::vector<CommandSpec>& command_specs();
const CommandSpec& command_spec(std::string_view name);

/// Global keys accepted in config files and as flags on every subcommand.
inline constexpr std::string_view kGlobalKeys[] = {"command", "units", "seed", "out_dir", "threads", "preset"};

struct RunConfig {
  std::string command;
  std::string units = "natural";
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  std::size_t threads = 0;
  std::string preset;
  /// Every parameter of the command, defaulted where not set.
  std::map<std::string, std::string> values;

  double number(const std::string& key) const;
  long long integer(const std::string& key) const;
  bool boolean(const std::string& key) const;
  const std::string& text(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;

  bool operator==(const RunConfig&) const = default;
};

/// Names of the figure presets and the command each one belongs to.
const std::map<std::string, std::string>& preset_commands();

/// Preset values in the requested unit system.
std::map<std::string, std::string> preset_values(const std::string& preset, const std::string& units);

/// Flat "key = value" text with '#' comments, read with CLI11's INI reader. Sections are
/// rejected; a repeated key collects its values into one list. Unknown keys are caught by
/// build_config, which knows the command.
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Layers defaults < preset < file < flags and validates every value's type.
/// `command` may be empty when the file names it.
RunConfig build_config(std::string command, const std::map<std::string, std::string>& file_values,
                       const std::map<std::string, std::string>& flag_values);

/// Inverse of parse_config_text for a complete config; parse + build round-trips exactly.
std::string serialize_config(const RunConfig& config);

/// Type check for a single value.
void check_value(const ParamSpec& spec, const std::string& value);

}  // namespace superatom::cli
