#pragma once

namespace hcurve::app {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hcurve::app
