#pragma once

#include <string_view>

namespace spartan::simd {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend backend);

// True when the backend was compiled in and the running CPU supports it.
bool backend_supported(Backend backend);

// The backend used by the dispatched row kernels. Detected on first use: the
// widest supported backend, unless SPARTANBO_SIMD=scalar is set in the
// environment.
Backend active_backend();

// Overrides detection for the rest of the process. Throws InvalidArgument for
// an unsupported backend.
void force_backend(Backend backend);

}  // namespace spartan::simd
