#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "detmatroid/kernels.hpp"

namespace detmatroid::kernels {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(DETMATROID_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

namespace {

Isa detect() {
  if (const char* env = std::getenv("DETMATROID_FORCE_SCALAR"); env && std::string(env) == "1") {
    return Isa::scalar;
  }
  return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument(std::string("kernel variant unavailable: ") +
                                std::string(isa_name(isa)));
  }
  current().store(isa, std::memory_order_relaxed);
}

ModContext::ModContext(std::uint32_t prime) : p(prime) {
  if (prime < 3 || (prime & 1U) == 0 || prime >= (1U << 31)) {
    throw std::invalid_argument("modulus must be an odd number in [3, 2^31)");
  }
  // Newton iteration for p^{-1} mod 2^32.
  std::uint32_t inv = prime;
  for (int k = 0; k < 5; ++k) inv *= 2U - prime * inv;
  neg_p_inv = 0U - inv;
  r_mod_p = static_cast<std::uint32_t>((std::uint64_t{1} << 32) % prime);
}

std::uint32_t ModContext::to_montgomery(std::uint32_t c) const {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(c) << 32) % p);
}

void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t c,
              const ModContext& ctx) {
#if defined(DETMATROID_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::avx2) return avx2::axpy_mod(dst, src, c, ctx);
#endif
  scalar::axpy_mod(dst, src, c, ctx);
}

std::int64_t excess_sum(std::span<const RowMask> columns, RowMask subset, int r) {
#if defined(DETMATROID_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::avx2) return avx2::excess_sum(columns, subset, r);
#endif
  return scalar::excess_sum(columns, subset, r);
}

}  // namespace detmatroid::kernels
