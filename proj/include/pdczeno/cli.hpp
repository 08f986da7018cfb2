#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace pdczeno::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kInvalidInput = 2,
  kEngineMismatch = 3,
  kSweepCellFailure = 4,
  kEquivalenceFailure = 5,
};

/// Every setting a subcommand can read. Fields stay empty until a config
/// document or a flag sets them; flags win.
struct RunConfig {
  std::optional<double> gamma;
  std::optional<double> kappa;
  std::optional<double> delta;
  std::optional<double> length;
  std::optional<std::string> engine;
  std::optional<std::string> format;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> seed;

  std::optional<std::string> axis1;
  std::optional<double> axis1_min;
  std::optional<double> axis1_max;
  std::optional<std::size_t> axis1_count;
  std::optional<std::string> axis2;
  std::optional<double> axis2_min;
  std::optional<double> axis2_max;
  std::optional<std::size_t> axis2_count;

  std::optional<double> delta_min;
  std::optional<double> delta_max;
  std::optional<std::size_t> delta_count;

  /// Copies every field set in `flags` over this config.
  void overlay(const RunConfig& flags);
};

/// Keys written by `sweep --format json` next to the echoed config; accepted
/// and ignored on input so result files can be fed back as configs.
inline const std::vector<std::string> kResultKeys = {"values", "provenance", "failed_cells"};

/// Parses a flat JSON object. Throws InvalidParameter on unknown keys or
/// wrongly typed values.
[[nodiscard]] RunConfig config_from_json(const nlohmann::ordered_json& doc);

/// Reads and parses a config file.
[[nodiscard]] RunConfig load_config_file(const std::string& path);

/// Shortest round-trip decimal form; "nan"/"inf" for non-finite values.
[[nodiscard]] std::string format_number(double value);

/// Environment variable that relocates relative --out paths.
inline constexpr const char* kOutDirEnv = "PDCZENO_OUT_DIR";

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pdczeno::cli
