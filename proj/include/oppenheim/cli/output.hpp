#ifndef OPPENHEIM_CLI_OUTPUT_HPP
#define OPPENHEIM_CLI_OUTPUT_HPP

// CSV and JSON emission. Reals are written in shortest round-trip form, so
// every emitted value parses back to the identical double.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace oppenheim::cli {

using Cell = std::variant<double, std::int64_t, std::uint64_t, std::string, bool>;

std::string format_double(double x);
std::string format_cell(const Cell& c);

class CsvWriter {
 public:
  /// Opens the file and writes the header; throws IoError.
  CsvWriter(const std::filesystem::path& path, std::vector<std::string> header);
  /// Writes one row and flushes it; throws IoError.
  void row(const std::vector<Cell>& cells);
  const std::vector<std::string>& header() const { return header_; }

 private:
  std::filesystem::path path_;
  std::vector<std::string> header_;
  std::ofstream os_;
};

/// Non-finite reals become null (JSON has no infinities).
nlohmann::json json_number(double x);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// Splits a CSV line without quoting (no emitted field contains a comma).
std::vector<std::string> split_csv_line(const std::string& line);

/// Rows of a CSV file, header included; throws IoError.
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path);

/// Columns and keys that legitimately differ between identical runs.
bool is_timing_field(const std::string& name);

/// Every CSV and summary.json in `dir` with timing fields removed and the
/// run-location keys (config.out, config.workers) dropped; equal digests
/// mean numerically identical output.
std::string reproducible_digest(const std::filesystem::path& dir);

}  // namespace oppenheim::cli

#endif  // OPPENHEIM_CLI_OUTPUT_HPP
