#pragma once

#include <optional>
#include <string>
#include <vector>

#include "detmatroid/pattern.hpp"

namespace detmatroid {

inline constexpr int kDefaultMaxRows = 24;

// An (r,m)-SLMF candidate: m - r columns, each of size r + 1. The
// constructor checks the shape only; is_slmf decides the union condition.
class Slmf {
 public:
  Slmf(int r, SupportPattern base);

  int r() const { return r_; }
  int rows() const { return base_.rows(); }
  int cols() const { return base_.cols(); }
  const SupportPattern& pattern() const { return base_; }
  RowMask column(int j) const { return base_.column(j); }

  friend bool operator==(const Slmf&, const Slmf&) = default;

 private:
  int r_;
  SupportPattern base_;
};

struct RelaxedParams {
  int nu = 1;
  int r = 1;
  std::optional<std::vector<int>> restricted_to;  // 1-based column indices
  int max_rows = kDefaultMaxRows;
};

struct ViolationWitness {
  enum class Kind { inequality_violated, equality_failed_at_full_set };
  RowMask subset = 0;  // the row set I
  long long lhs = 0;   // sum_j max(#(omega_j & I) - r, 0)
  long long rhs = 0;   // nu * (#I - r)
  Kind kind = Kind::inequality_violated;

  friend bool operator==(const ViolationWitness&, const ViolationWitness&) = default;
};

std::string to_string(ViolationWitness::Kind kind);

struct RelaxedResult {
  bool holds = false;
  std::optional<ViolationWitness> witness;
};

// Decides the relaxed (nu, r, m)-SLMF condition by scanning all row subsets.
// On failure the witness is the minimum-cardinality violating I (ties broken
// lexicographically); the equality at I = [m] is reported only when no
// smaller subset violates the inequality.
RelaxedResult is_relaxed_slmf(const SupportPattern& p, const RelaxedParams& params);

struct SlmfResult {
  bool holds = false;
  std::optional<RowMask> violating_columns;  // J with #union < #J + r
};

// #union_{j in J} phi_j >= #J + r for every nonempty J.
SlmfResult is_slmf(const Slmf& phi);

// Hall form: for every I of size m - r the columns have a system of distinct
// representatives inside I (bipartite matching).
bool is_slmf_via_matching(const Slmf& phi);

struct InducedSlmf {
  Slmf phi;
  std::vector<int> source;  // for each SLMF column, the originating column j
};

// Builds an (r,m)-SLMF from a relaxed (1,r,m)-SLMF group: psi_j = the r
// smallest rows of omega_j, one column psi_j + {t} per remaining t, ordered
// by (j, t). Throws ContractError if the group is not relaxed (1,r,m).
InducedSlmf induce_slmf(const SupportPattern& p, const std::vector<int>& group, int r);

// Maximum bipartite matching size between the given column sets and rows in
// `allowed`. Exposed for tests and the census.
int max_matching(const std::vector<RowMask>& sets, RowMask allowed);

}  // namespace detmatroid
