#include "detmatroid/linalg.hpp"

#include "detmatroid/kernels.hpp"

namespace detmatroid {

std::size_t gfp_rank_in_place(Matrix<std::uint32_t>& a, std::uint32_t p) {
  const kernels::ModContext ctx(p);
  const PrimeField F(p);
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && a(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    a.swap_rows(row, piv);
    const std::uint32_t inv = F.inv(a(row, col));
    const auto pivot_tail = a.row(row).subspan(col);
    for (std::size_t i = row + 1; i < a.rows(); ++i) {
      const std::uint32_t lead = a(i, col);
      if (lead == 0) continue;
      // row_i -= (lead / pivot) * row_pivot
      const std::uint32_t factor = F.neg(F.mul(lead, inv));
      kernels::axpy_mod(a.row(i).subspan(col), pivot_tail, factor, ctx);
    }
    ++row;
  }
  return row;
}

}  // namespace detmatroid
