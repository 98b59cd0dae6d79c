#include <algorithm>
#include <limits>

#include "hcurve/kernels.hpp"

namespace hcurve::kernels {

namespace {

double difference_sum_scalar(const double* outer, const double* inner, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) acc += outer[k] - inner[k];
  return acc;
}

double sum_scalar(const double* values, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) acc += values[k];
  return acc;
}

double poisson_mean_scalar(const double* values, const double* cos_t, const double* sin_t,
                           std::size_t n, double radius, double zx, double zy) {
  const double num = radius * radius - (zx * zx + zy * zy);
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double dx = radius * cos_t[k] - zx;
    double dy = radius * sin_t[k] - zy;
    acc += values[k] * num / (dx * dx + dy * dy);
  }
  return acc / static_cast<double>(n);
}

double weight_in_disc_scalar(const double* xs, const double* ys, const double* weights,
                             std::size_t n, double cx, double cy, double r) {
  const double r2 = r * r;
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double dx = xs[k] - cx;
    double dy = ys[k] - cy;
    if (dx * dx + dy * dy < r2) acc += weights[k];
  }
  return acc;
}

double cover_slack_scalar(const double* cx, const double* cy, const double* r, std::size_t n,
                          double px, double py) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    double dx = px - cx[k];
    double dy = py - cy[k];
    best = std::min(best, dx * dx + dy * dy - r[k] * r[k]);
  }
  return best;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::scalar,        difference_sum_scalar, sum_scalar,
                                 poisson_mean_scalar, weight_in_disc_scalar, cover_slack_scalar};
  return table;
}

}  // namespace hcurve::kernels
