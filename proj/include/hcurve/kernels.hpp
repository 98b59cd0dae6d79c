#pragma once

// Data-parallel inner loops shared by the contour, Poisson and covering code.
// Every kernel has a scalar reference implementation; vector variants are
// selected once at startup from the CPU feature set and must agree with the
// scalar path to rounding (see tests/unit/test_kernels.cpp).

#include <cstddef>
#include <span>
#include <string_view>

namespace hcurve::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;

  /// sum_k (outer[k] - inner[k])
  double (*difference_sum)(const double* outer, const double* inner, std::size_t n);

  /// sum_k values[k]
  double (*sum)(const double* values, std::size_t n);

  /// (1/n) sum_k values[k] (R^2 - |z|^2) / |R e^{i t_k} - z|^2 with
  /// cos_t[k] = cos t_k, sin_t[k] = sin t_k.  Poisson integral on a trapezoid grid.
  double (*poisson_mean)(const double* values, const double* cos_t, const double* sin_t,
                         std::size_t n, double radius, double zx, double zy);

  /// sum of weights[k] over points strictly inside the disc (cx, cy, r).
  double (*weight_in_disc)(const double* xs, const double* ys, const double* weights,
                           std::size_t n, double cx, double cy, double r);

  /// min_k ((px - cx[k])^2 + (py - cy[k])^2 - r[k]^2); negative means covered.
  double (*cover_slack)(const double* cx, const double* cy, const double* r, std::size_t n,
                        double px, double py);
};

const KernelTable& scalar_table();
/// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable* avx2_table();

/// Table in use; chosen on first call. HCURVE_SIMD=scalar forces the reference path.
const KernelTable& active();
void force_isa(Isa isa);
std::string_view isa_name(Isa isa);

// Span conveniences over the active table.
inline double difference_sum(std::span<const double> outer, std::span<const double> inner) {
  return active().difference_sum(outer.data(), inner.data(), outer.size());
}
inline double sum(std::span<const double> values) {
  return active().sum(values.data(), values.size());
}

}  // namespace hcurve::kernels
