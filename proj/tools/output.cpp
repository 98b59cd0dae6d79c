#include "output.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "hcurve/common.hpp"
#include "version.hpp"

namespace hcurve::app {

using nlohmann::json;

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out += hex[digest[k] >> 4];
    out += hex[digest[k] & 15];
  }
  return out;
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

ReportWriter::ReportWriter(std::filesystem::path dir, std::string command, json config_echo, std::uint64_t seed)
    : dir_(std::move(dir)), command_(std::move(command)), config_(std::move(config_echo)), seed_(seed) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw ValidationError("cannot create output directory " + dir_.string() + ": " + ec.message());
  config_digest_ = sha256_hex(config_.dump());
}

void ReportWriter::emit(const std::string& name, const std::string& bytes) {
  std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write " + (dir_ / name).string());
  out << bytes;
  out.close();
  files_.push_back({{"name", name}, {"bytes", bytes.size()}, {"sha256", sha256_hex(bytes)}});
}

void ReportWriter::write_json(const std::string& name, const std::string& schema, json body) {
  json doc = {{"schema", schema}, {"command", command_}, {"seed", seed_}, {"config", config_}};
  for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = it.value();
  emit(name, doc.dump(2) + "\n");
}

void ReportWriter::write_csv(const std::string& name, const std::string& schema, const CsvRow& header,
                             const std::vector<CsvRow>& rows) {
  std::string text = "# schema=" + schema + " config_sha256=" + config_digest_ + "\n";
  auto line = [&](const CsvRow& row) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) text += ',';
      text += row[k];
    }
    text += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  emit(name, text);
}

void ReportWriter::write_manifest(double wall_seconds) {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  json manifest = {{"schema", "hcurve.manifest/1"},
                   {"artifact_version", kVersion},
                   {"command", command_},
                   {"seed", seed_},
                   {"config", config_},
                   {"config_sha256", config_digest_},
                   {"finished_utc", stamp},
                   {"wall_clock_seconds", wall_seconds},
                   {"files", files_}};
  std::ofstream out(dir_ / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write manifest.json");
  out << manifest.dump(2) << "\n";
}

}  // namespace hcurve::app
