#include <atomic>
#include <cstdlib>
#include <string>

#include "hcurve/common.hpp"
#include "hcurve/kernels.hpp"

namespace hcurve::kernels {

#if defined(HCURVE_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

const KernelTable* avx2_table() {
#if defined(HCURVE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_kernels() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable* detect() {
  if (const char* env = std::getenv("HCURVE_SIMD"); env && std::string(env) == "scalar") {
    return &scalar_table();
  }
  if (const KernelTable* t = avx2_table()) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*> g_active{nullptr};

}  // namespace

const KernelTable& active() {
  const KernelTable* t = g_active.load(std::memory_order_acquire);
  if (!t) {
    t = detect();
    g_active.store(t, std::memory_order_release);
  }
  return *t;
}

void force_isa(Isa isa) {
  if (isa == Isa::scalar) {
    g_active.store(&scalar_table());
    return;
  }
  const KernelTable* t = avx2_table();
  if (!t) throw ValidationError("AVX2 kernels are not available on this machine");
  g_active.store(t);
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace hcurve::kernels
