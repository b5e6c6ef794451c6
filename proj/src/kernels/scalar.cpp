#include <bit>

#include "detmatroid/kernels.hpp"

namespace detmatroid::kernels::scalar {

void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t c,
              const ModContext& ctx) {
  const std::uint64_t p = ctx.p;
  const std::size_t n = dst.size() < src.size() ? dst.size() : src.size();
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = static_cast<std::uint32_t>((dst[i] + static_cast<std::uint64_t>(c) * src[i]) % p);
  }
}

std::int64_t excess_sum(std::span<const RowMask> columns, RowMask subset, int r) {
  std::int64_t total = 0;
  for (RowMask c : columns) {
    const int over = std::popcount(c & subset) - r;
    if (over > 0) total += over;
  }
  return total;
}

}  // namespace detmatroid::kernels::scalar
