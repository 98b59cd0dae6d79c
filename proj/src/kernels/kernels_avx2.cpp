// Compiled with -mavx2 -mfma; only reachable through avx2_table() after the
// runtime CPU check in kernels_dispatch.cpp.

#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "hcurve/kernels.hpp"

namespace hcurve::kernels {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

inline double hmin(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_min_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_min_sd(lo, sh));
}

double difference_sum_avx2(const double* outer, const double* inner, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_sub_pd(_mm256_loadu_pd(outer + k), _mm256_loadu_pd(inner + k)));
    acc1 = _mm256_add_pd(acc1, _mm256_sub_pd(_mm256_loadu_pd(outer + k + 4),
                                             _mm256_loadu_pd(inner + k + 4)));
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) acc += outer[k] - inner[k];
  return acc;
}

double sum_avx2(const double* values, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(values + k));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(values + k + 4));
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) acc += values[k];
  return acc;
}

double poisson_mean_avx2(const double* values, const double* cos_t, const double* sin_t,
                         std::size_t n, double radius, double zx, double zy) {
  const double num = radius * radius - (zx * zx + zy * zy);
  const __m256d vr = _mm256_set1_pd(radius);
  const __m256d vzx = _mm256_set1_pd(zx);
  const __m256d vzy = _mm256_set1_pd(zy);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d dx = _mm256_fmsub_pd(vr, _mm256_loadu_pd(cos_t + k), vzx);
    __m256d dy = _mm256_fmsub_pd(vr, _mm256_loadu_pd(sin_t + k), vzy);
    __m256d d2 = _mm256_fmadd_pd(dx, dx, _mm256_mul_pd(dy, dy));
    acc = _mm256_add_pd(acc, _mm256_div_pd(_mm256_loadu_pd(values + k), d2));
  }
  double tail = 0.0;
  for (; k < n; ++k) {
    double dx = radius * cos_t[k] - zx;
    double dy = radius * sin_t[k] - zy;
    tail += values[k] / (dx * dx + dy * dy);
  }
  return (hsum(acc) + tail) * num / static_cast<double>(n);
}

double weight_in_disc_avx2(const double* xs, const double* ys, const double* weights,
                           std::size_t n, double cx, double cy, double r) {
  const __m256d vcx = _mm256_set1_pd(cx);
  const __m256d vcy = _mm256_set1_pd(cy);
  const __m256d vr2 = _mm256_set1_pd(r * r);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + k), vcx);
    __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + k), vcy);
    __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    __m256d inside = _mm256_cmp_pd(d2, vr2, _CMP_LT_OQ);
    acc = _mm256_add_pd(acc, _mm256_and_pd(inside, _mm256_loadu_pd(weights + k)));
  }
  double total = hsum(acc);
  const double r2 = r * r;
  for (; k < n; ++k) {
    double dx = xs[k] - cx;
    double dy = ys[k] - cy;
    if (dx * dx + dy * dy < r2) total += weights[k];
  }
  return total;
}

double cover_slack_avx2(const double* cx, const double* cy, const double* r, std::size_t n,
                        double px, double py) {
  const __m256d vpx = _mm256_set1_pd(px);
  const __m256d vpy = _mm256_set1_pd(py);
  __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d dx = _mm256_sub_pd(vpx, _mm256_loadu_pd(cx + k));
    __m256d dy = _mm256_sub_pd(vpy, _mm256_loadu_pd(cy + k));
    __m256d rr = _mm256_loadu_pd(r + k);
    __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    best = _mm256_min_pd(best, _mm256_sub_pd(d2, _mm256_mul_pd(rr, rr)));
  }
  double out = hmin(best);
  for (; k < n; ++k) {
    double dx = px - cx[k];
    double dy = py - cy[k];
    out = std::min(out, dx * dx + dy * dy - r[k] * r[k]);
  }
  return out;
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{Isa::avx2,        difference_sum_avx2, sum_avx2,
                                 poisson_mean_avx2, weight_in_disc_avx2, cover_slack_avx2};
  return table;
}

}  // namespace hcurve::kernels
