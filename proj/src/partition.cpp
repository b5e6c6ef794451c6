#include "detmatroid/partition.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

#include "detmatroid/errors.hpp"
#include "detmatroid/kernels.hpp"

namespace detmatroid {

namespace {

std::vector<RowMask> sorted_columns(const Slmf& phi) {
  std::vector<RowMask> cols = phi.pattern().columns();
  std::sort(cols.begin(), cols.end());
  return cols;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

}  // namespace

bool induced_coincide(const std::vector<InducedSlmf>& induced) {
  if (induced.empty()) return false;
  const auto first = sorted_columns(induced.front().phi);
  return std::all_of(induced.begin(), induced.end(),
                     [&](const InducedSlmf& s) { return sorted_columns(s.phi) == first; });
}

PartitionCertificate make_certificate(const SupportPattern& p, int r,
                                      std::vector<std::vector<int>> groups) {
  if (static_cast<int>(groups.size()) != r) {
    throw ContractError("certificate needs exactly r = " + std::to_string(r) + " groups, got " +
                        std::to_string(groups.size()));
  }
  std::vector<int> owner(static_cast<std::size_t>(p.cols()) + 1, -1);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    std::sort(groups[g].begin(), groups[g].end());
    for (int j : groups[g]) {
      if (j < 1 || j > p.cols()) {
        throw ContractError("group " + std::to_string(g + 1) + " names column " +
                            std::to_string(j) + " outside [1, " + std::to_string(p.cols()) + "]");
      }
      if (owner[static_cast<std::size_t>(j)] >= 0) {
        throw ContractError("column " + std::to_string(j) + " appears in two groups");
      }
      owner[static_cast<std::size_t>(j)] = static_cast<int>(g);
    }
  }
  for (int j = 1; j <= p.cols(); ++j) {
    if (owner[static_cast<std::size_t>(j)] < 0) {
      throw ContractError("column " + std::to_string(j) + " is not covered by any group");
    }
  }
  PartitionCertificate cert;
  cert.r = r;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    try {
      cert.induced.push_back(induce_slmf(p, groups[g], r));
    } catch (const ContractError& e) {
      throw ContractError("group " + std::to_string(g + 1) + " {" + join(groups[g]) +
                          "}: " + e.what());
    }
  }
  cert.groups = std::move(groups);
  cert.same_phi = induced_coincide(cert.induced);
  return cert;
}

void validate_certificate(const SupportPattern& p, const PartitionCertificate& cert) {
  const PartitionCertificate rebuilt = make_certificate(p, cert.r, cert.groups);
  for (std::size_t g = 0; g < rebuilt.induced.size(); ++g) {
    if (g >= cert.induced.size() || !(rebuilt.induced[g].phi == cert.induced[g].phi)) {
      throw ContractError("induced SLMF of group " + std::to_string(g + 1) +
                          " does not match the certificate");
    }
  }
  if (cert.induced.size() != rebuilt.induced.size()) {
    throw ContractError("certificate lists a wrong number of induced SLMFs");
  }
}

// ---------------------------------------------------------------------------
// Dilworth truncation matroid

TruncationMatroid::TruncationMatroid(SupportPattern pattern, int r, int max_columns)
    : pattern_(std::move(pattern)), r_(r), max_columns_(max_columns) {
  if (r_ < 1) throw ContractError("truncation matroid requires r >= 1");
}

bool TruncationMatroid::column_sizes_uniform() const {
  for (int j = 1; j <= pattern_.cols(); ++j) {
    if (pattern_.column_size(j) != r_ + 1) return false;
  }
  return true;
}

void TruncationMatroid::check_capacity(RowMask columns) const {
  if (popcount(columns) > max_columns_) {
    throw CapacityError("Dilworth truncation limited to " + std::to_string(max_columns_) +
                        " columns per query");
  }
  if (pattern_.cols() < 64 && (columns >> pattern_.cols()) != 0) {
    throw ContractError("column set outside the ground set");
  }
}

int TruncationMatroid::f(RowMask columns) const {
  if (columns == 0) return 0;
  RowMask u = 0;
  for (RowMask rest = columns; rest; rest &= rest - 1) {
    u |= pattern_.columns()[static_cast<std::size_t>(std::countr_zero(rest))];
  }
  return popcount(u) - r_;
}

int TruncationMatroid::dilworth_rank(RowMask columns) const {
  check_capacity(columns);
  if (columns == 0) return 0;
  if (auto it = rank_cache_.find(columns); it != rank_cache_.end()) return it->second;
  // The part containing the lowest column ranges over all subsets of the rest.
  const RowMask lowest = columns & (~columns + 1);
  const RowMask rest = columns ^ lowest;
  int best = std::numeric_limits<int>::max();
  for_each_submask(rest, [&](RowMask sub) {
    const RowMask part = sub | lowest;
    best = std::min(best, f(part) + dilworth_rank(columns ^ part));
  });
  rank_cache_.emplace(columns, best);
  return best;
}

bool TruncationMatroid::truncation_independent(RowMask columns) const {
  check_capacity(columns);
  bool ok = true;
  for_each_submask(columns, [&](RowMask sub) {
    if (ok && sub != 0 && popcount(sub) > f(sub)) ok = false;
  });
  return ok;
}

PackingResult pack_bases(const TruncationMatroid& mat) {
  const SupportPattern& p = mat.pattern();
  const int r = mat.r();
  const int m = p.rows();
  const int n = p.cols();
  if (!mat.column_sizes_uniform()) {
    throw ContractError("base packing requires #omega_j = r + 1 for every column");
  }
  if (m <= r || n != r * (m - r)) {
    throw ContractError("base packing requires n = r(m - r) = " + std::to_string(r * (m - r)) +
                        ", got n = " + std::to_string(n));
  }
  const int target = m - r;

  std::vector<int> assign(static_cast<std::size_t>(n), -1);
  std::vector<RowMask> sets(static_cast<std::size_t>(r), 0);
  auto indep = [&](RowMask s) { return mat.truncation_independent(s); };

  bool stuck = false;
  for (int e = 0; e < n && !stuck; ++e) {
    const RowMask ebit = RowMask{1} << e;
    std::vector<std::pair<int, int>> parent(static_cast<std::size_t>(n), {-1, -1});
    RowMask visited = ebit;
    std::deque<int> queue{e};
    std::optional<std::pair<int, int>> sink;
    while (!queue.empty() && !sink) {
      const int x = queue.front();
      queue.pop_front();
      const RowMask xbit = RowMask{1} << x;
      for (int k = 0; k < r && !sink; ++k) {
        if (assign[static_cast<std::size_t>(x)] == k) continue;
        const RowMask s = sets[static_cast<std::size_t>(k)];
        if (indep(s | xbit)) {
          sink = std::make_pair(x, k);
          break;
        }
        for (RowMask rest = s; rest; rest &= rest - 1) {
          const int y = std::countr_zero(rest);
          const RowMask ybit = RowMask{1} << y;
          if (visited & ybit) continue;
          if (indep((s ^ ybit) | xbit)) {
            visited |= ybit;
            parent[static_cast<std::size_t>(y)] = {x, k};
            queue.push_back(y);
          }
        }
      }
    }
    if (!sink) {
      stuck = true;
      break;
    }
    int cur = sink->first;
    int into = sink->second;
    while (true) {
      const int old = assign[static_cast<std::size_t>(cur)];
      const RowMask cbit = RowMask{1} << cur;
      if (old >= 0) sets[static_cast<std::size_t>(old)] &= ~cbit;
      sets[static_cast<std::size_t>(into)] |= cbit;
      assign[static_cast<std::size_t>(cur)] = into;
      if (cur == e) break;
      const auto [px, pk] = parent[static_cast<std::size_t>(cur)];
      cur = px;
      into = pk;
    }
  }

  PackingResult out;
  if (!stuck) {
    for (RowMask s : sets) {
      if (popcount(s) != target || !indep(s)) {
        throw std::logic_error("matroid partition produced a non-base");
      }
    }
    out.bases = sets;
    return out;
  }
  // No augmenting path: some J violates #J >= r(m-r) - r * rank([n] \ J).
  const RowMask all = full_mask(n);
  for (int k = 0; k <= n && !out.witness; ++k) {
    std::optional<RowMask> best;
    for_each_k_subset(n, k, [&](RowMask J) {
      if (popcount(J) < r * target - r * mat.dilworth_rank(all ^ J)) {
        if (!best || lex_less_same_size(J, *best)) best = J;
      }
    });
    out.witness = best;
  }
  if (!out.witness) throw std::logic_error("packing failed but no violating set exists");
  return out;
}

std::optional<PartitionCertificate> partition_by_packing(const SupportPattern& p, int r) {
  TruncationMatroid mat(p, r);
  const PackingResult packed = pack_bases(mat);
  if (!packed.bases) return std::nullopt;
  std::vector<std::vector<int>> groups;
  for (RowMask b : *packed.bases) groups.push_back(to_indices(b));
  return make_certificate(p, r, std::move(groups));
}

// ---------------------------------------------------------------------------
// Backtracking search

namespace {

class PartitionSearcher {
 public:
  PartitionSearcher(const SupportPattern& p, int r, const SearchOptions& options)
      : p_(p), r_(r), m_(p.rows()), options_(options), groups_(static_cast<std::size_t>(r)),
        group_masks_(static_cast<std::size_t>(r)), load_(static_cast<std::size_t>(r), 0) {}

  SearchResult run() {
    SearchResult result;
    std::vector<int> order;
    long long total = 0;
    for (int j = 1; j <= p_.cols(); ++j) {
      const int excess = p_.column_size(j) - r_;
      if (excess > 0) {
        order.push_back(j);
        total += excess;
      } else {
        passive_.push_back(j);
      }
    }
    const long long need = static_cast<long long>(r_) * (m_ - r_);
    if (total != need) {
      result.exhaustive = true;
      result.reason = "total column excess " + std::to_string(total) + " != r(m-r) = " +
                      std::to_string(need);
      return result;
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return p_.column_size(a) > p_.column_size(b);
    });
    order_ = std::move(order);
    const bool finished = dfs(0);
    result.nodes = nodes_;
    if (found_) {
      result.certificate = std::move(found_);
      result.exhaustive = finished;
      return result;
    }
    result.exhaustive = finished;
    result.reason = finished ? "no partition into r relaxed (1,r,m)-SLMFs exists"
                             : "node limit reached";
    return result;
  }

 private:
  // Returns false when the node limit aborted the search.
  bool dfs(std::size_t idx) {
    ++nodes_;
    if (options_.node_limit && nodes_ > options_.node_limit) return false;
    if (idx == order_.size()) {
      record_leaf();
      return true;
    }
    const int j = order_[idx];
    const RowMask omega = p_.column(j);
    const int excess = popcount(omega) - r_;
    bool seen_empty = false;
    for (int g = 0; g < r_; ++g) {
      auto& members = groups_[static_cast<std::size_t>(g)];
      if (members.empty()) {
        if (seen_empty) break;
        seen_empty = true;
      }
      if (load_[static_cast<std::size_t>(g)] + excess > m_ - r_) continue;
      if (!fits(g, omega)) continue;
      members.push_back(j);
      group_masks_[static_cast<std::size_t>(g)].push_back(omega);
      load_[static_cast<std::size_t>(g)] += excess;
      const bool finished = dfs(idx + 1);
      load_[static_cast<std::size_t>(g)] -= excess;
      group_masks_[static_cast<std::size_t>(g)].pop_back();
      members.pop_back();
      if (!finished) return false;
      if (done()) return true;
    }
    return true;
  }

  // The relaxed (1,r,m) inequalities for group g plus omega, at every I that
  // meets omega in at least r + 1 rows (elsewhere the LHS is unchanged).
  bool fits(int g, RowMask omega) {
    std::vector<RowMask> cols = group_masks_[static_cast<std::size_t>(g)];
    cols.push_back(omega);
    const RowMask outside = full_mask(m_) & ~omega;
    bool ok = true;
    for_each_submask(omega, [&](RowMask inner) {
      if (!ok || popcount(inner) < r_ + 1) return;
      for_each_submask(outside, [&](RowMask outer) {
        if (!ok) return;
        const RowMask subset = inner | outer;
        if (kernels::excess_sum(cols, subset, r_) > popcount(subset) - r_) ok = false;
      });
    });
    return ok;
  }

  void record_leaf() {
    std::vector<std::vector<int>> groups = groups_;
    for (int j : passive_) groups[0].push_back(j);
    PartitionCertificate cert = make_certificate(p_, r_, std::move(groups));
    if (!options_.prefer_same_phi || cert.same_phi) {
      found_ = std::move(cert);
      stop_ = true;
    } else if (!fallback_) {
      fallback_ = std::move(cert);
    }
  }

  bool done() const { return stop_; }

 public:
  void finalize() {
    if (!found_ && fallback_) found_ = std::move(fallback_);
  }

 private:
  const SupportPattern& p_;
  int r_;
  int m_;
  SearchOptions options_;
  std::vector<int> order_;
  std::vector<int> passive_;
  std::vector<std::vector<int>> groups_;
  std::vector<std::vector<RowMask>> group_masks_;
  std::vector<int> load_;
  std::uint64_t nodes_ = 0;
  bool stop_ = false;
  std::optional<PartitionCertificate> found_;
  std::optional<PartitionCertificate> fallback_;

  friend SearchResult detmatroid::partition_search(const SupportPattern&, int, const SearchOptions&);
};

}  // namespace

SearchResult partition_search(const SupportPattern& p, int r, const SearchOptions& options) {
  if (r < 1) throw ContractError("partition search requires r >= 1");
  if (r >= p.rows()) throw ContractError("partition search requires r < m");
  if (p.rows() > options.max_rows) {
    throw CapacityError("partition search limited to m <= " + std::to_string(options.max_rows));
  }
  PartitionSearcher searcher(p, r, options);
  SearchResult result = searcher.run();
  if (!result.certificate) {
    searcher.finalize();
    if (searcher.found_) {
      result.certificate = std::move(searcher.found_);
      result.reason.clear();
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Constructive special cases

PartitionCertificate partition_r_eq_m_minus_2(const SupportPattern& p) {
  const int m = p.rows();
  const int n = p.cols();
  const int r = m - 2;
  if (r < 1) throw ContractError("r = m - 2 construction needs m >= 3");
  const RowMask all = full_mask(m);
  std::vector<int> full_cols;
  std::vector<int> partial_cols;
  for (int j = 1; j <= n; ++j) {
    const int size = p.column_size(j);
    if (p.column(j) == all) {
      full_cols.push_back(j);
    } else if (size == m - 1) {
      partial_cols.push_back(j);
    } else {
      throw ContractError("column " + std::to_string(j) + " has size " + std::to_string(size) +
                          "; r = m - 2 construction needs sizes m - 1 or m");
    }
  }
  const int alpha = static_cast<int>(full_cols.size());
  if (n != 2 * m - 4 - alpha) {
    throw ContractError("size identity n = 2m - 4 - alpha fails: n = " + std::to_string(n) +
                        ", 2m - 4 - alpha = " + std::to_string(2 * m - 4 - alpha));
  }
  RelaxedParams params;
  params.nu = r;
  params.r = r;
  if (const RelaxedResult rel = is_relaxed_slmf(p, params); !rel.holds) {
    throw ContractError("pattern is not a relaxed (r,r,m)-SLMF");
  }
  const int cells = m - 2 - alpha;
  std::vector<std::vector<int>> groups(static_cast<std::size_t>(r));
  for (int k = 0; k < alpha; ++k) {
    groups[static_cast<std::size_t>(cells + k)].push_back(full_cols[static_cast<std::size_t>(k)]);
  }
  // Equal supports consecutive, then cyclic: position q goes to cell q mod cells.
  std::stable_sort(partial_cols.begin(), partial_cols.end(),
                   [&](int a, int b) { return p.column(a) < p.column(b); });
  for (std::size_t q = 0; q < partial_cols.size(); ++q) {
    groups[q % static_cast<std::size_t>(cells)].push_back(partial_cols[q]);
  }
  return make_certificate(p, r, std::move(groups));
}

PartitionCertificate partition_r_eq_m_minus_1(const SupportPattern& p) {
  const int m = p.rows();
  const int r = m - 1;
  if (r < 1) throw ContractError("r = m - 1 construction needs m >= 2");
  for (int j = 1; j <= p.cols(); ++j) {
    if (p.column(j) != full_mask(m)) {
      throw ContractError("column " + std::to_string(j) + " is not full; r = m - 1 needs #omega_j = m");
    }
  }
  if (p.cols() != r) {
    throw ContractError("r = m - 1 with full columns forces n = r = " + std::to_string(r) +
                        ", got n = " + std::to_string(p.cols()));
  }
  std::vector<std::vector<int>> groups;
  for (int l = 1; l <= r; ++l) groups.push_back({l});
  return make_certificate(p, r, std::move(groups));
}

}  // namespace detmatroid
