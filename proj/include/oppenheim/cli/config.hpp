#ifndef OPPENHEIM_CLI_CONFIG_HPP
#define OPPENHEIM_CLI_CONFIG_HPP

// Run configuration shared by every subcommand. Values come from the
// command's defaults, then an optional JSON file, then command-line flags.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "oppenheim/forms.hpp"
#include "oppenheim/random.hpp"

namespace oppenheim::cli {

/// Exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exit code 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitSelftestFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;

struct RunConfig {
  std::uint64_t seed = kDefaultSeed;
  NormChoice norm = NormChoice::euclidean;
  double t_start = 100.0;
  double t_ratio = 1.7782794100389228;  // 10^(1/4)
  std::size_t t_count = 9;
  std::size_t budget = 10000;
  /// Number of x points, forms or Monte Carlo samples, depending on the command.
  std::size_t samples = 20;
  unsigned workers = 1;
  std::filesystem::path out = "out";
  double tau = 0.5;
  double eta = 0.8;

  // Command-specific settings, set through the JSON file.
  std::string engine = "direct";         // direct | orbit
  std::string family = "cusp";           // cusp | point | frozen
  double delta = 0.05;                   // point-family thickening
  double frozen_t = 2.0;                 // frozen-family level
  std::string observable = "alpha1-below";
  double observable_param = 1.2;
  std::size_t ball_samples = 1000;
  std::size_t mean_samples = 100000;
  std::string space = "x3";              // sample: x3 | h-ball
  std::optional<std::vector<double>> g;  // oppenheim-one: 9 entries, row-major
  bool corrupt_spin = false;             // selftest negative control

  std::vector<double> ladder() const;
  nlohmann::json to_json() const;
  /// Throws ConfigError on any invalid field.
  void validate() const;
};

/// Defaults for a subcommand name; throws ConfigError for unknown names.
RunConfig defaults_for(const std::string& command);

/// Overlays the keys present in `j`; unknown keys and bad types are ConfigErrors.
void apply_json(RunConfig& cfg, const nlohmann::json& j);
void apply_json_file(RunConfig& cfg, const std::filesystem::path& file);

/// Creates the output directory and checks it is writable; throws IoError.
void ensure_output_dir(const std::filesystem::path& dir);

}  // namespace oppenheim::cli

#endif  // OPPENHEIM_CLI_CONFIG_HPP
