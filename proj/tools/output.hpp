#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace hcurve::app {

std::string sha256_hex(const std::string& bytes);

/// Shortest round-trip text for a double; "inf", "-inf", "nan" for the rest.
std::string format_real(double x);

using CsvRow = std::vector<std::string>;

/// Writes the report files of one run and the manifest that lists them.
class ReportWriter {
 public:
  ReportWriter(std::filesystem::path dir, std::string command, nlohmann::json config_echo, std::uint64_t seed);

  /// body gains "schema", "command", "seed" and "config" members.
  void write_json(const std::string& name, const std::string& schema, nlohmann::json body);
  /// Row 1 carries the schema string and the config digest, row 2 the header.
  void write_csv(const std::string& name, const std::string& schema, const CsvRow& header,
                 const std::vector<CsvRow>& rows);
  void write_manifest(double wall_seconds);

  const std::filesystem::path& dir() const { return dir_; }
  const std::string& config_digest() const { return config_digest_; }

 private:
  void emit(const std::string& name, const std::string& bytes);

  std::filesystem::path dir_;
  std::string command_;
  nlohmann::json config_;
  std::uint64_t seed_;
  std::string config_digest_;
  nlohmann::json files_ = nlohmann::json::array();
};

}  // namespace hcurve::app
