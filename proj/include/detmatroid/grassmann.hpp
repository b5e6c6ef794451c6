#pragma once

// Plucker coordinates of r-dimensional subspaces S of k^m, the linear forms
// cutting out projections of S, the sparse basis of S-perp attached to an
// SLMF, the polynomial p_Phi, and unique completion from a partition
// certificate. Everything is templated over a field policy.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "detmatroid/bits.hpp"
#include "detmatroid/errors.hpp"
#include "detmatroid/linalg.hpp"
#include "detmatroid/partition.hpp"
#include "detmatroid/pattern.hpp"
#include "detmatroid/slmf.hpp"

namespace detmatroid {

struct LexLess {
  bool operator()(RowMask a, RowMask b) const { return size_lex_less(a, b); }
};

// All k-subsets of [m] in lexicographic order.
inline std::vector<RowMask> lex_subsets(int m, int k) {
  std::vector<RowMask> out;
  for_each_k_subset(m, k, [&](RowMask s) { out.push_back(s); });
  std::sort(out.begin(), out.end(), lex_less_same_size);
  return out;
}

template <typename Field>
struct PluckerVector {
  int r = 0;
  int m = 0;
  std::map<RowMask, typename Field::value_type, LexLess> coords;

  // [psi]; subsets of the wrong size read as zero.
  typename Field::value_type at(const Field& F, RowMask psi) const {
    auto it = coords.find(psi);
    return it == coords.end() ? F.zero() : it->second;
  }
};

// The r x r minor of B on rows psi.
template <typename Field>
typename Field::value_type minor_on_rows(const Field& F, const FieldMatrix<Field>& B, RowMask psi) {
  const auto rows = to_indices(psi);
  FieldMatrix<Field> sub(rows.size(), B.cols(), F.zero());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t c = 0; c < B.cols(); ++c) sub(a, c) = B(static_cast<std::size_t>(rows[a] - 1), c);
  }
  return determinant(F, std::move(sub));
}

template <typename Field>
PluckerVector<Field> plucker_from_basis(const Field& F, const FieldMatrix<Field>& B) {
  const int m = static_cast<int>(B.rows());
  const int r = static_cast<int>(B.cols());
  if (m >= 64) throw CapacityError("Plucker coordinates limited to m < 64");
  if (rank(F, B) != B.cols()) throw ContractError("basis matrix is rank deficient");
  PluckerVector<Field> pl;
  pl.r = r;
  pl.m = m;
  for (RowMask psi : lex_subsets(m, r)) pl.coords.emplace(psi, minor_on_rows(F, B, psi));
  return pl;
}

// (-1)^{#{(a,b) in psi x ([m] \ psi) : a > b}}.
inline int dual_sign(RowMask psi, int m) {
  const RowMask rest = full_mask(m) & ~psi;
  int inversions = 0;
  for (int a : to_indices(psi)) inversions += popcount(rest & (bit_of(a) - 1));
  return inversions % 2 == 0 ? 1 : -1;
}

template <typename Field>
typename Field::value_type signed_value(const Field& F, int sign, const typename Field::value_type& v) {
  return sign > 0 ? v : F.neg(v);
}

// sum over alpha of (-1)^(alpha-1) x_{i_alpha} [phi \ i_alpha]; x is 0-based.
template <typename Field>
typename Field::value_type section_form(const Field& F, const std::vector<typename Field::value_type>& x,
                                        RowMask phi, const PluckerVector<Field>& pl) {
  if (popcount(phi) != pl.r + 1) throw ContractError("section form needs #phi = r + 1");
  auto total = F.zero();
  int alpha = 0;
  for (int i : to_indices(phi)) {
    const auto term = F.mul(x.at(static_cast<std::size_t>(i - 1)), pl.at(F, phi & ~bit_of(i)));
    total = F.add(total, signed_value(F, alpha % 2 == 0 ? 1 : -1, term));
    ++alpha;
  }
  return total;
}

// det of [phi_alpha \ beta] over alpha = 2..m-r and beta in [m] \ phi_1,
// zero where beta is not in phi_alpha.
template <typename Field>
typename Field::value_type p_phi(const Field& F, const Slmf& phi, const PluckerVector<Field>& pl) {
  const std::size_t k = static_cast<std::size_t>(phi.cols()) - 1;
  const auto betas = to_indices(full_mask(phi.rows()) & ~phi.column(1));
  if (betas.size() != k) throw ContractError("p_Phi: shape mismatch");
  FieldMatrix<Field> M(k, k, F.zero());
  for (std::size_t a = 0; a < k; ++a) {
    const RowMask col = phi.column(static_cast<int>(a) + 2);
    for (std::size_t b = 0; b < k; ++b) {
      if (contains(col, betas[b])) M(a, b) = pl.at(F, col & ~bit_of(betas[b]));
    }
  }
  return determinant(F, std::move(M));
}

template <typename Field>
struct SparsePerp {
  Slmf phi;
  FieldMatrix<Field> matrix;  // m x (m - r), column j supported on phi_j
};

// Column j: entry (-1)^(i-1) [phi_j \ phi_ij] at row phi_ij, unnormalized.
template <typename Field>
SparsePerp<Field> sparse_perp(const Field& F, const Slmf& phi, const PluckerVector<Field>& pl) {
  if (F.is_zero(p_phi(F, phi, pl))) throw NotGenericError("S is not in V_Phi (p_Phi vanishes)");
  FieldMatrix<Field> N(static_cast<std::size_t>(phi.rows()), static_cast<std::size_t>(phi.cols()), F.zero());
  for (int j = 1; j <= phi.cols(); ++j) {
    const RowMask col = phi.column(j);
    int i = 0;
    for (int row : to_indices(col)) {
      N(static_cast<std::size_t>(row - 1), static_cast<std::size_t>(j - 1)) =
          signed_value(F, i % 2 == 0 ? 1 : -1, pl.at(F, col & ~bit_of(row)));
      ++i;
    }
  }
  return SparsePerp<Field>{phi, std::move(N)};
}

// Every phi_alpha lies in at least r columns of Omega.
inline bool covers_slmf_columns(const SupportPattern& p, const Slmf& phi) {
  for (int a = 1; a <= phi.cols(); ++a) {
    int hits = 0;
    for (RowMask c : p.columns()) hits += (c & phi.column(a)) == phi.column(a) ? 1 : 0;
    if (hits < phi.r()) return false;
  }
  return true;
}

// [m] x [r] plus [r] x {j} for j > r: size r(m+n-r), every column of size
// >= r, and every (r+1)-subset of [m] inside r columns.
inline SupportPattern completable_pattern(int m, int n, int r) {
  if (r < 1 || r > std::min(m, n)) throw ContractError("completable pattern needs 1 <= r <= min(m, n)");
  std::vector<RowMask> cols;
  for (int j = 1; j <= n; ++j) cols.push_back(j <= r ? full_mask(m) : full_mask(r));
  return SupportPattern(m, n, std::move(cols));
}

template <typename Field>
using Observations = std::map<std::pair<int, int>, typename Field::value_type>;  // 1-based (i, j)

struct CompletionOptions {
  int retry_budget = 20;  // column combinations tried per phi
};

namespace detail {

// Normal to the span of the columns of Y ((r+1) x r): entry alpha is
// (-1)^alpha times the minor with row alpha deleted (0-based alpha).
template <typename Field>
std::vector<typename Field::value_type> signed_minors(const Field& F, const FieldMatrix<Field>& Y) {
  const std::size_t k = Y.rows();
  std::vector<typename Field::value_type> normal(k, F.zero());
  for (std::size_t del = 0; del < k; ++del) {
    FieldMatrix<Field> sub(k - 1, Y.cols(), F.zero());
    for (std::size_t a = 0, row = 0; a < k; ++a) {
      if (a == del) continue;
      for (std::size_t c = 0; c < Y.cols(); ++c) sub(row, c) = Y(a, c);
      ++row;
    }
    normal[del] = signed_value(F, del % 2 == 0 ? 1 : -1, determinant(F, std::move(sub)));
  }
  return normal;
}

template <typename F>
void for_each_combination(int n, int k, F&& f) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  if (k > n) return;
  while (true) {
    if (!f(idx)) return;
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int t = i + 1; t < k; ++t) idx[static_cast<std::size_t>(t)] = idx[static_cast<std::size_t>(t - 1)] + 1;
  }
}

inline std::string rows_string(RowMask s) {
  std::string out = "{";
  for (int i : to_indices(s)) out += (out.size() > 1 ? "," : "") + std::to_string(i);
  return out + "}";
}

}  // namespace detail

// Recovers the unique rank-r matrix agreeing with the observations on Omega.
// Normals come first from the certificate's SLMF columns, then from other
// (r+1)-subsets in lexicographic order, until they span m - r dimensions.
template <typename Field>
FieldMatrix<Field> complete_matrix(const Field& F, const SupportPattern& p, int r,
                                   const PartitionCertificate& cert, const Observations<Field>& observed,
                                   const CompletionOptions& options = {}) {
  if (cert.r != r) throw ContractError("certificate rank does not match r");
  validate_certificate(p, cert);
  const int m = p.rows();
  const int n = p.cols();
  for (const auto& [ij, value] : observed) {
    if (ij.first < 1 || ij.first > m || ij.second < 1 || ij.second > n || !p.contains(ij.first, ij.second)) {
      throw ContractError("observation (" + std::to_string(ij.first) + "," + std::to_string(ij.second) +
                          ") is outside Omega");
    }
  }
  if (static_cast<long long>(observed.size()) != p.size()) {
    for (int j = 1; j <= n; ++j) {
      for (int i : to_indices(p.column(j))) {
        if (!observed.count({i, j})) {
          throw ContractError("missing observation (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
      }
    }
  }

  const std::size_t target = static_cast<std::size_t>(m - r);
  std::vector<std::vector<typename Field::value_type>> normals;
  std::size_t span = 0;
  std::optional<RowMask> first_failure;

  // Returns true once the normals span m - r dimensions.
  auto try_phi = [&](RowMask phi) {
    std::vector<int> eligible;
    for (int j = 1; j <= n; ++j) {
      if ((p.column(j) & phi) == phi) eligible.push_back(j);
    }
    const auto rows = to_indices(phi);
    bool got = false;
    int tries = 0;
    detail::for_each_combination(static_cast<int>(eligible.size()), r, [&](const std::vector<int>& pick) {
      if (tries++ >= options.retry_budget) return false;
      FieldMatrix<Field> Y(rows.size(), static_cast<std::size_t>(r), F.zero());
      for (std::size_t a = 0; a < rows.size(); ++a) {
        for (std::size_t c = 0; c < pick.size(); ++c) {
          Y(a, c) = observed.at({rows[a], eligible[static_cast<std::size_t>(pick[c])]});
        }
      }
      if (rank(F, Y) != static_cast<std::size_t>(r)) return true;
      const auto local = detail::signed_minors(F, Y);
      std::vector<typename Field::value_type> normal(static_cast<std::size_t>(m), F.zero());
      for (std::size_t a = 0; a < rows.size(); ++a) normal[static_cast<std::size_t>(rows[a] - 1)] = local[a];
      normals.push_back(std::move(normal));
      got = true;
      return false;
    });
    if (!got && !first_failure) first_failure = phi;
    if (got) {
      FieldMatrix<Field> NT(normals.size(), static_cast<std::size_t>(m), F.zero());
      for (std::size_t a = 0; a < normals.size(); ++a) {
        for (std::size_t b = 0; b < static_cast<std::size_t>(m); ++b) NT(a, b) = normals[a][b];
      }
      span = rank(F, NT);
    }
    return span >= target;
  };

  std::vector<RowMask> tried;
  bool done = target == 0;
  for (const auto& induced : cert.induced) {
    for (int a = 1; a <= induced.phi.cols() && !done; ++a) {
      const RowMask phi = induced.phi.column(a);
      if (std::find(tried.begin(), tried.end(), phi) != tried.end()) continue;
      tried.push_back(phi);
      done = try_phi(phi);
    }
  }
  if (!done) {
    if (m > 24) throw CapacityError("supplementary normals limited to m <= 24");
    for (RowMask phi : lex_subsets(m, r + 1)) {
      if (done) break;
      if (std::find(tried.begin(), tried.end(), phi) != tried.end()) continue;
      done = try_phi(phi);
    }
  }
  if (!done) {
    const RowMask bad = first_failure.value_or(0);
    throw NotGenericError("normals span only " + std::to_string(span) + " of " + std::to_string(target) +
                              " dimensions; first failing phi " + detail::rows_string(bad),
                          bad);
  }

  FieldMatrix<Field> NT(normals.size(), static_cast<std::size_t>(m), F.zero());
  for (std::size_t a = 0; a < normals.size(); ++a) {
    for (std::size_t b = 0; b < static_cast<std::size_t>(m); ++b) NT(a, b) = normals[a][b];
  }
  const FieldMatrix<Field> B = kernel(F, std::move(NT));
  if (B.cols() != static_cast<std::size_t>(r)) {
    throw NotGenericError("recovered column space has dimension " + std::to_string(B.cols()) +
                          ", expected " + std::to_string(r));
  }

  FieldMatrix<Field> X(static_cast<std::size_t>(m), static_cast<std::size_t>(n), F.zero());
  for (int j = 1; j <= n; ++j) {
    const auto rows = to_indices(p.column(j));
    FieldMatrix<Field> A(rows.size(), B.cols(), F.zero());
    std::vector<typename Field::value_type> b(rows.size(), F.zero());
    for (std::size_t a = 0; a < rows.size(); ++a) {
      for (std::size_t c = 0; c < B.cols(); ++c) A(a, c) = B(static_cast<std::size_t>(rows[a] - 1), c);
      b[a] = observed.at({rows[a], j});
    }
    const auto sol = solve_unique(F, A, b);
    if (!sol.full_column_rank) {
      throw NotGenericError("column " + std::to_string(j) + ": projection of S to its support has rank < r",
                            p.column(j));
    }
    if (!sol.consistent) {
      throw NotGenericError("column " + std::to_string(j) + ": observations are not in the projection of S",
                            p.column(j));
    }
    for (std::size_t i = 0; i < static_cast<std::size_t>(m); ++i) {
      auto v = F.zero();
      for (std::size_t c = 0; c < B.cols(); ++c) v = F.add(v, F.mul(B(i, c), (*sol.x)[c]));
      X(i, static_cast<std::size_t>(j - 1)) = v;
    }
  }
  return X;
}

}  // namespace detmatroid
