#include "detmatroid/slmf.hpp"

#include <algorithm>
#include <functional>

#include "detmatroid/errors.hpp"
#include "detmatroid/kernels.hpp"

namespace detmatroid {

Slmf::Slmf(int r, SupportPattern base) : r_(r), base_(std::move(base)) {
  if (r_ < 1) throw ContractError("SLMF rank must be >= 1");
  if (base_.cols() != base_.rows() - r_) {
    throw ContractError("SLMF must have m - r = " + std::to_string(base_.rows() - r_) +
                        " columns, got " + std::to_string(base_.cols()));
  }
  for (int j = 1; j <= base_.cols(); ++j) {
    if (base_.column_size(j) != r_ + 1) {
      throw ContractError("SLMF column " + std::to_string(j) + " has size " +
                          std::to_string(base_.column_size(j)) + ", expected " +
                          std::to_string(r_ + 1));
    }
  }
}

std::string to_string(ViolationWitness::Kind kind) {
  return kind == ViolationWitness::Kind::inequality_violated ? "inequality_violated"
                                                              : "equality_failed_at_full_set";
}

namespace {

// Scans subsets of a `width`-bit universe level by level (ascending
// cardinality from `min_size`) and returns the lex-least element of the first
// level containing a subset accepted by `violates`.
std::optional<RowMask> first_violation(int width, int min_size, int max_size,
                                       const std::function<bool(RowMask)>& violates) {
  for (int k = std::max(min_size, 0); k <= max_size; ++k) {
    std::optional<RowMask> best;
    for_each_k_subset(width, k, [&](RowMask s) {
      if (!violates(s)) return;
      if (!best || lex_less_same_size(s, *best)) best = s;
    });
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace

RelaxedResult is_relaxed_slmf(const SupportPattern& p, const RelaxedParams& params) {
  const int m = p.rows();
  const int r = params.r;
  if (r < 1) throw ContractError("relaxed SLMF requires r >= 1");
  if (r >= m) {
    throw ContractError("relaxed SLMF requires r < m (r = " + std::to_string(r) +
                        ", m = " + std::to_string(m) + ")");
  }
  if (params.nu < 1 || params.nu > r) throw ContractError("nu must lie in [1, r]");
  if (m > params.max_rows || m >= 64) {
    throw CapacityError("relaxed SLMF scan limited to m <= " + std::to_string(params.max_rows));
  }

  std::vector<RowMask> cols;
  if (params.restricted_to) {
    std::vector<bool> seen(static_cast<std::size_t>(p.cols()) + 1, false);
    for (int j : *params.restricted_to) {
      if (j < 1 || j > p.cols()) {
        throw ContractError("restricted column " + std::to_string(j) + " out of range");
      }
      if (seen[static_cast<std::size_t>(j)]) {
        throw ContractError("restricted column " + std::to_string(j) + " repeated");
      }
      seen[static_cast<std::size_t>(j)] = true;
      cols.push_back(p.column(j));
    }
  } else {
    cols = p.columns();
  }

  const long long nu = params.nu;
  auto lhs_of = [&](RowMask s) { return kernels::excess_sum(cols, s, r); };
  auto rhs_of = [&](RowMask s) { return nu * (popcount(s) - r); };

  RelaxedResult out;
  if (auto bad = first_violation(m, r + 1, m - 1, [&](RowMask s) { return lhs_of(s) > rhs_of(s); })) {
    out.witness = ViolationWitness{*bad, lhs_of(*bad), rhs_of(*bad),
                                   ViolationWitness::Kind::inequality_violated};
    return out;
  }
  const RowMask all = full_mask(m);
  const long long lhs = lhs_of(all);
  const long long rhs = rhs_of(all);
  if (lhs != rhs) {
    out.witness = ViolationWitness{all, lhs, rhs, ViolationWitness::Kind::equality_failed_at_full_set};
    return out;
  }
  out.holds = true;
  return out;
}

SlmfResult is_slmf(const Slmf& phi) {
  const int n = phi.cols();
  if (n > kDefaultMaxRows) {
    throw CapacityError("SLMF check limited to m - r <= " + std::to_string(kDefaultMaxRows));
  }
  const int r = phi.r();
  auto union_of = [&](RowMask js) {
    RowMask u = 0;
    for (int j : to_indices(js)) u |= phi.column(j);
    return u;
  };
  SlmfResult out;
  out.violating_columns = first_violation(n, 1, n, [&](RowMask js) {
    return popcount(union_of(js)) < popcount(js) + r;
  });
  out.holds = !out.violating_columns.has_value();
  return out;
}

int max_matching(const std::vector<RowMask>& sets, RowMask allowed) {
  std::vector<int> owner(64, -1);  // row bit -> set index
  std::function<bool(int, RowMask&)> augment = [&](int s, RowMask& visited) -> bool {
    RowMask candidates = sets[static_cast<std::size_t>(s)] & allowed & ~visited;
    while (candidates) {
      const int bit = std::countr_zero(candidates);
      candidates &= candidates - 1;
      visited |= RowMask{1} << bit;
      if (owner[static_cast<std::size_t>(bit)] < 0 ||
          augment(owner[static_cast<std::size_t>(bit)], visited)) {
        owner[static_cast<std::size_t>(bit)] = s;
        return true;
      }
    }
    return false;
  };
  int matched = 0;
  for (int s = 0; s < static_cast<int>(sets.size()); ++s) {
    RowMask visited = 0;
    if (augment(s, visited)) ++matched;
  }
  return matched;
}

bool is_slmf_via_matching(const Slmf& phi) {
  const int m = phi.rows();
  if (m > kDefaultMaxRows) {
    throw CapacityError("matching check limited to m <= " + std::to_string(kDefaultMaxRows));
  }
  const int need = m - phi.r();
  const auto& sets = phi.pattern().columns();
  bool ok = true;
  for_each_k_subset(m, need, [&](RowMask rows) {
    if (ok && max_matching(sets, rows) != need) ok = false;
  });
  return ok;
}

InducedSlmf induce_slmf(const SupportPattern& p, const std::vector<int>& group, int r) {
  RelaxedParams params;
  params.nu = 1;
  params.r = r;
  params.restricted_to = group;
  const RelaxedResult check = is_relaxed_slmf(p, params);
  if (!check.holds) {
    const auto& w = *check.witness;
    std::string rows;
    for (int i : to_indices(w.subset)) rows += (rows.empty() ? "" : ",") + std::to_string(i);
    throw ContractError("group is not a relaxed (1," + std::to_string(r) + "," +
                        std::to_string(p.rows()) + ")-SLMF: " + to_string(w.kind) + " at I={" +
                        rows + "}, lhs=" + std::to_string(w.lhs) + ", rhs=" + std::to_string(w.rhs));
  }
  std::vector<int> sorted = group;
  std::sort(sorted.begin(), sorted.end());
  std::vector<RowMask> cols;
  std::vector<int> source;
  for (int j : sorted) {
    const RowMask omega = p.column(j);
    if (popcount(omega) <= r) continue;
    RowMask psi = 0;
    RowMask rest = omega;
    for (int k = 0; k < r; ++k) {
      psi |= rest & (~rest + 1);
      rest &= rest - 1;
    }
    for (int t : to_indices(rest)) {
      cols.push_back(psi | bit_of(t));
      source.push_back(j);
    }
  }
  const int count = static_cast<int>(cols.size());
  Slmf phi(r, SupportPattern(p.rows(), count, std::move(cols)));
  if (!is_slmf(phi).holds) {
    throw std::logic_error("induced SLMF failed the union condition");
  }
  return InducedSlmf{std::move(phi), std::move(source)};
}

}  // namespace detmatroid
