#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "hcurve/config.hpp"

namespace hcurve::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumeric = 3;

struct Invocation {
  std::optional<Analysis> analysis;  // empty: take it from the config ("run")
  std::string config_path;
  std::optional<std::string> output_dir;
  std::optional<std::size_t> jobs;
  std::optional<std::uint64_t> seed;
};

/// Loads the config, runs the analysis and writes the reports. Returns the
/// process exit code; diagnostics go to `log`.
int execute(const Invocation& inv, std::ostream& log);

/// Full command line front end (argument parsing included).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hcurve::app
