#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cradle/chains.hpp"
#include "cradle/tuner.hpp"

namespace cradle::cli {

/// Rejected configuration. `key` is "section.key" (or just the section);
/// line 0 means the value came from an --override.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string key, int line, const std::string& what);
  const std::string& key() const noexcept { return key_; }
  int line() const noexcept { return line_; }

private:
  std::string key_;
  int line_;
};

struct IniEntry {
  std::string value;
  int line = 0;
};

using IniSection = std::map<std::string, IniEntry>;

/// Flat sectioned key=value text. '#' and ';' start comment lines.
struct Ini {
  std::map<std::string, IniSection> sections;
  std::map<std::string, int> section_lines;
};

Ini parse_ini(std::string_view text);

/// "section.key=value"; creates the section if needed.
void apply_override(Ini& ini, std::string_view assignment);

/// Sorted "section.key=value" lines; the basis of the config hash.
std::string canonical_text(const Ini& ini);

/// FNV-1a 64 of the canonical text, as 16 hex digits.
std::string config_hash(const Ini& ini);

struct ChainConfig {
  std::string kind;
  ChainSpec spec;
  int trap_sign = kConfiningTrapSign;
};

struct StateConfig {
  std::string kind;
  WaveState state;
};

struct EvolveConfig {
  double t_max = 0.0;
  std::size_t steps = 0;
};

struct TuneConfig {
  std::string mode;  // single | double
  std::size_t sites = 0;
  double tau = 1.0;
  GridResolution grid;
};

struct HubbardConfig {
  std::size_t sites = 0;
  double hopping = 0.0;
  double U = 0.0;
  double U0 = 0.0;
  double U1 = 0.0;
  std::size_t nmax = 2;
  std::size_t samples = 41;
  std::optional<double> t_max;
};

struct OutputConfig {
  int precision = 17;
  std::string dir;
};

struct RunConfig {
  std::optional<ChainConfig> chain;
  std::optional<StateConfig> state;
  std::optional<EvolveConfig> evolve;
  std::optional<TuneConfig> tune;
  std::optional<HubbardConfig> hubbard;
  OutputConfig output;
  std::string hash;
};

/// Validates every present section; unknown sections or keys are errors.
RunConfig build_config(const Ini& ini);

/// Reads the file (IoError when unreadable), applies overrides, builds.
RunConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides);

}  // namespace cradle::cli
