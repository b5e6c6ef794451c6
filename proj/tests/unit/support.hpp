#pragma once

// Fixtures and brute-force reference implementations. The references share
// no code with the library beyond SupportPattern accessors and field types.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "detmatroid/field.hpp"
#include "detmatroid/linalg.hpp"
#include "detmatroid/pattern.hpp"

namespace testing_support {

using detmatroid::SupportPattern;

inline SupportPattern slmf_6x4() {
  return SupportPattern::from_columns(6, {{2, 4, 6}, {1, 2, 4}, {1, 2, 5}, {1, 3, 5}});
}

inline SupportPattern omega_6x5() {
  return SupportPattern::from_columns(6, {{1, 2, 3, 4, 5}, {4, 5, 6}, {2, 4}, {1, 2, 4, 5, 6}, {1, 3, 5}});
}

// First SLMF of the published partition of omega_6x5; the second is slmf_6x4.
inline SupportPattern omega_6x5_phi1() {
  return SupportPattern::from_columns(6, {{1, 2, 3}, {1, 2, 4}, {1, 2, 5}, {4, 5, 6}});
}

inline SupportPattern omega_6x8() {
  const int rows[6][8] = {{1, 0, 0, 1, 0, 1, 1, 1}, {1, 0, 1, 0, 1, 1, 0, 0}, {1, 0, 1, 0, 1, 0, 1, 0},
                          {0, 1, 1, 0, 0, 0, 0, 1}, {0, 1, 0, 1, 1, 0, 0, 0}, {0, 1, 0, 1, 0, 1, 1, 1}};
  std::vector<std::vector<int>> cols(8);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 8; ++j) {
      if (rows[i][j]) cols[static_cast<std::size_t>(j)].push_back(i + 1);
    }
  }
  return SupportPattern::from_columns(6, cols);
}

inline SupportPattern omega_6x5_unpartitioned() {
  return SupportPattern::from_columns(6, {{1, 2, 3, 4}, {1, 3, 5, 6}, {1, 2, 3, 5}, {4, 5, 6}, {4, 5, 6}});
}

inline SupportPattern omega_5x5_reduced() {
  return SupportPattern::from_columns(5, {{1, 2, 3}, {1, 2, 4, 5}, {1, 2, 4}, {3, 4, 5}, {3, 4, 5}});
}

// Rows as sets of 1-based indices; columns as sets too.
using Sets = std::vector<std::set<int>>;

inline Sets as_sets(const SupportPattern& p) {
  Sets out;
  for (int j = 1; j <= p.cols(); ++j) {
    std::set<int> s;
    for (int i = 1; i <= p.rows(); ++i) {
      if (p.contains(i, j)) s.insert(i);
    }
    out.push_back(s);
  }
  return out;
}

// Relaxed (nu, r, m) by walking masks from the top down.
inline bool brute_relaxed(const Sets& cols, int m, int r, int nu) {
  for (long long mask = (1LL << m) - 1; mask >= 0; --mask) {
    std::set<int> I;
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1) I.insert(i + 1);
    }
    if (static_cast<int>(I.size()) < r + 1) continue;
    long long lhs = 0;
    for (const auto& c : cols) {
      int meet = 0;
      for (int x : c) meet += I.count(x) ? 1 : 0;
      lhs += std::max(meet - r, 0);
    }
    const long long rhs = static_cast<long long>(nu) * (static_cast<long long>(I.size()) - r);
    if (lhs > rhs) return false;
    if (static_cast<int>(I.size()) == m && lhs != rhs) return false;
  }
  return true;
}

// #union over J >= #J + r for every nonempty J.
inline bool brute_slmf(const Sets& cols, int r) {
  const int n = static_cast<int>(cols.size());
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::set<int> u;
    int count = 0;
    for (int j = 0; j < n; ++j) {
      if (mask >> j & 1) {
        u.insert(cols[static_cast<std::size_t>(j)].begin(), cols[static_cast<std::size_t>(j)].end());
        ++count;
      }
    }
    if (static_cast<int>(u.size()) < count + r) return false;
  }
  return true;
}

// Some assignment of columns to r groups makes every group relaxed (1,r,m).
inline bool brute_has_partition(const Sets& cols, int m, int r) {
  const int n = static_cast<int>(cols.size());
  std::vector<int> assign(static_cast<std::size_t>(n), 0);
  while (true) {
    bool ok = true;
    for (int g = 0; g < r && ok; ++g) {
      Sets group;
      for (int j = 0; j < n; ++j) {
        if (assign[static_cast<std::size_t>(j)] == g) group.push_back(cols[static_cast<std::size_t>(j)]);
      }
      ok = brute_relaxed(group, m, r, 1);
    }
    if (ok) return true;
    int k = 0;
    while (k < n && ++assign[static_cast<std::size_t>(k)] == r) assign[static_cast<std::size_t>(k++)] = 0;
    if (k == n) return false;
  }
}

// Jacobian rank of Omega at a random integer point, exactly over Q.
inline int rational_jacobian_rank(const SupportPattern& p, int r, std::uint64_t seed) {
  const detmatroid::RationalField Q;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-1000, 1000);
  const int m = p.rows();
  const int n = p.cols();
  std::vector<std::vector<int>> L(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(r)));
  std::vector<std::vector<int>> R(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(n)));
  for (auto& row : L) {
    for (auto& v : row) v = dist(rng);
  }
  for (auto& row : R) {
    for (auto& v : row) v = dist(rng);
  }
  detmatroid::Matrix<mpq_class> J(static_cast<std::size_t>(p.size()), static_cast<std::size_t>(r * (m + n)), 0);
  std::size_t row = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      if (!p.contains(i + 1, j + 1)) continue;
      for (int k = 0; k < r; ++k) {
        J(row, static_cast<std::size_t>(i * r + k)) = R[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        J(row, static_cast<std::size_t>(m * r + k * n + j)) = L[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      }
      ++row;
    }
  }
  return static_cast<int>(detmatroid::rank(Q, J));
}

inline SupportPattern random_pattern(std::mt19937_64& rng, int m, int n, double density) {
  std::bernoulli_distribution coin(density);
  std::vector<detmatroid::RowMask> cols(static_cast<std::size_t>(n), 0);
  for (auto& c : cols) {
    for (int i = 0; i < m; ++i) {
      if (coin(rng)) c |= detmatroid::RowMask{1} << i;
    }
  }
  return SupportPattern(m, n, cols);
}

// n columns, each a uniformly random k-subset of [m].
inline SupportPattern random_uniform_columns(std::mt19937_64& rng, int m, int n, int k) {
  std::vector<detmatroid::RowMask> cols;
  std::vector<int> idx(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (int j = 0; j < n; ++j) {
    std::shuffle(idx.begin(), idx.end(), rng);
    detmatroid::RowMask c = 0;
    for (int t = 0; t < k; ++t) c |= detmatroid::RowMask{1} << idx[static_cast<std::size_t>(t)];
    cols.push_back(c);
  }
  return SupportPattern(m, n, cols);
}

// Every labeled m x n pattern with exactly k entries.
template <typename F>
void for_each_labeled_pattern(int m, int n, int k, F&& f) {
  const int cells = m * n;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cells); ++bits) {
    if (std::popcount(bits) != k) continue;
    std::vector<detmatroid::RowMask> cols(static_cast<std::size_t>(n), 0);
    for (int c = 0; c < cells; ++c) {
      if (bits >> c & 1) cols[static_cast<std::size_t>(c / m)] |= detmatroid::RowMask{1} << (c % m);
    }
    f(SupportPattern(m, n, cols));
  }
}

// The bipartite graph on rows and columns is connected and acyclic.
inline bool brute_is_spanning_tree(const SupportPattern& p) {
  const int m = p.rows();
  const int n = p.cols();
  std::vector<int> parent(static_cast<std::size_t>(m + n));
  for (int v = 0; v < m + n; ++v) parent[static_cast<std::size_t>(v)] = v;
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
    return v;
  };
  int edges = 0;
  for (int j = 1; j <= n; ++j) {
    for (int i = 1; i <= m; ++i) {
      if (!p.contains(i, j)) continue;
      const int a = find(i - 1);
      const int b = find(m + j - 1);
      if (a == b) return false;
      parent[static_cast<std::size_t>(a)] = b;
      ++edges;
    }
  }
  return edges == m + n - 1;
}

// With m <= n: some m columns are entirely filled.
inline bool brute_has_complete_square(const SupportPattern& p) {
  int full = 0;
  for (int j = 1; j <= p.cols(); ++j) full += p.column_size(j) == p.rows() ? 1 : 0;
  return full >= p.rows();
}

}  // namespace testing_support
