#include "spartan/simd/dispatch.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "spartan/error.hpp"
#include "spartan/simd/row_kernels.hpp"

namespace spartan::simd {

namespace {

constexpr int kUndetected = -1;
std::atomic<int> g_backend{kUndetected};

Backend detect() {
  if (const char* env = std::getenv("SPARTANBO_SIMD"); env != nullptr && std::string(env) == "scalar")
    return Backend::Scalar;
  return backend_supported(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

}  // namespace

std::string_view to_string(Backend backend) {
  switch (backend) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
  }
  return "unknown";
}

bool backend_supported(Backend backend) {
  switch (backend) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(SPARTAN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() {
  int b = g_backend.load(std::memory_order_relaxed);
  if (b == kUndetected) {
    b = static_cast<int>(detect());
    g_backend.store(b, std::memory_order_relaxed);
  }
  return static_cast<Backend>(b);
}

void force_backend(Backend backend) {
  if (!backend_supported(backend))
    throw InvalidArgument("SIMD backend not supported here: " + std::string(to_string(backend)));
  g_backend.store(static_cast<int>(backend), std::memory_order_relaxed);
}

void ard_row(BaseKernel base, const ArdRowArgs& args) {
#if defined(SPARTAN_HAVE_AVX2)
  if (active_backend() == Backend::Avx2) {
    if (base == BaseKernel::Matern52)
      avx2::matern52_row(args);
    else
      avx2::se_row(args);
    return;
  }
#endif
  if (base == BaseKernel::Matern52)
    scalar::matern52_row(args);
  else
    scalar::se_row(args);
}

void weighted_sum(const WeightedSumArgs& args) {
#if defined(SPARTAN_HAVE_AVX2)
  if (active_backend() == Backend::Avx2) {
    avx2::weighted_sum(args);
    return;
  }
#endif
  scalar::weighted_sum(args);
}

}  // namespace spartan::simd
