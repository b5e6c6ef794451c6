#pragma once

// Data-parallel inner loops with a portable scalar reference and AVX2
// variants chosen at runtime. Every variant must agree bit for bit with the
// scalar reference; tests/unit/kernels_test.cpp enforces this.

#include <cstdint>
#include <span>
#include <string_view>

#include "detmatroid/bits.hpp"

namespace detmatroid::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

// True when the running CPU (and this build) can execute the variant.
bool isa_available(Isa isa);

// The variant used by the dispatching entry points below. Defaults to the
// best available one; DETMATROID_FORCE_SCALAR=1 in the environment pins the
// scalar path.
Isa active_isa();

// Overrides the dispatch choice (tests, benchmarking). Throws
// std::invalid_argument if the variant is unavailable.
void force_isa(Isa isa);

// Precomputed constants for arithmetic modulo an odd prime p < 2^31.
struct ModContext {
  std::uint32_t p = 0;
  std::uint32_t neg_p_inv = 0;  // -p^{-1} mod 2^32 (Montgomery)
  std::uint32_t r_mod_p = 0;    // 2^32 mod p

  explicit ModContext(std::uint32_t prime);
  ModContext() = default;

  // c * 2^32 mod p.
  std::uint32_t to_montgomery(std::uint32_t c) const;
};

// dst[i] = (dst[i] + c * src[i]) mod p, all inputs already reduced.
void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t c,
              const ModContext& ctx);

// sum_j max(popcount(columns[j] & subset) - r, 0).
std::int64_t excess_sum(std::span<const RowMask> columns, RowMask subset, int r);

namespace scalar {
void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t c,
              const ModContext& ctx);
std::int64_t excess_sum(std::span<const RowMask> columns, RowMask subset, int r);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define DETMATROID_HAVE_AVX2_KERNELS 1
namespace avx2 {
void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t c,
              const ModContext& ctx);
std::int64_t excess_sum(std::span<const RowMask> columns, RowMask subset, int r);
}  // namespace avx2
#endif

}  // namespace detmatroid::kernels
