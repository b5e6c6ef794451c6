#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "detmatroid/pattern.hpp"
#include "detmatroid/slmf.hpp"

namespace detmatroid {

// A partition of the columns into r groups, each a relaxed (1,r,m)-SLMF,
// together with the SLMF each group induces.
struct PartitionCertificate {
  int r = 0;
  std::vector<std::vector<int>> groups;  // 1-based column indices, ascending
  std::vector<InducedSlmf> induced;
  bool same_phi = false;
};

// Rebuilds the induced SLMFs for the given groups and checks every
// certificate invariant. Throws ContractError naming the first failure.
PartitionCertificate make_certificate(const SupportPattern& p, int r,
                                      std::vector<std::vector<int>> groups);

// Re-validates an existing certificate against a pattern.
void validate_certificate(const SupportPattern& p, const PartitionCertificate& cert);

// True when the induced SLMFs coincide as sets of columns.
bool induced_coincide(const std::vector<InducedSlmf>& induced);

inline constexpr int kDefaultMaxTruncationColumns = 12;

// The matroid on [n] whose rank function is the Dilworth truncation of
// f(J) = #union_{j in J} omega_j - r. Ranks are memoized per instance, so a
// single instance must not be shared between threads.
class TruncationMatroid {
 public:
  TruncationMatroid(SupportPattern pattern, int r, int max_columns = kDefaultMaxTruncationColumns);

  int ground_size() const { return pattern_.cols(); }
  int r() const { return r_; }
  const SupportPattern& pattern() const { return pattern_; }

  // f(J); f(empty) = 0. J is a column mask (bit j-1 <=> column j).
  int f(RowMask columns) const;

  // min over partitions of J of the sum of f over the parts.
  int dilworth_rank(RowMask columns) const;

  // #J' <= f(J') for every nonempty J' contained in J.
  bool truncation_independent(RowMask columns) const;

  // Whether every column has exactly r + 1 rows (the matroid regime).
  bool column_sizes_uniform() const;

 private:
  void check_capacity(RowMask columns) const;

  SupportPattern pattern_;
  int r_;
  int max_columns_;
  mutable std::unordered_map<RowMask, int> rank_cache_;
};

struct PackingResult {
  std::optional<std::vector<RowMask>> bases;  // r disjoint bases on success
  std::optional<RowMask> witness;             // J with #J < r(m-r) - r*rank([n] \ J)
};

// Packs r disjoint bases of size m - r by matroid partitioning with shortest
// augmenting paths; on failure scans all J for the packing inequality.
// Requires #omega_j = r + 1 for all j and n = r(m - r).
PackingResult pack_bases(const TruncationMatroid& mat);

struct SearchOptions {
  bool prefer_same_phi = false;
  int max_rows = kDefaultMaxRows;
  std::uint64_t node_limit = 0;  // 0: unlimited
};

struct SearchResult {
  std::optional<PartitionCertificate> certificate;
  bool exhaustive = false;  // true when failure is proven (whole tree searched)
  std::uint64_t nodes = 0;
  std::string reason;
};

// Backtracking search for a column partition into r relaxed (1,r,m)-SLMFs.
SearchResult partition_search(const SupportPattern& p, int r, const SearchOptions& options = {});

// Constructive partitions for r = m - 2 (cyclic assignment) and r = m - 1
// (singletons). Throw ContractError when the regime's preconditions fail.
PartitionCertificate partition_r_eq_m_minus_2(const SupportPattern& p);
PartitionCertificate partition_r_eq_m_minus_1(const SupportPattern& p);

// Builds a certificate from pack_bases output (the #omega_j = r + 1 regime).
std::optional<PartitionCertificate> partition_by_packing(const SupportPattern& p, int r);

}  // namespace detmatroid
