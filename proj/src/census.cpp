#include "detmatroid/census.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <thread>

#include "detmatroid/errors.hpp"
#include "detmatroid/io.hpp"
#include "detmatroid/partition.hpp"
#include "detmatroid/rng.hpp"
#include "detmatroid/slmf.hpp"

namespace detmatroid {

using nlohmann::json;

namespace {

// Row signature invariant under row and column permutations: degree, then
// the sorted degrees of the columns it meets.
std::vector<int> row_signature(const SupportPattern& p, const Degrees& d, int i) {
  std::vector<int> sig{d.rows[static_cast<std::size_t>(i - 1)]};
  std::vector<int> nbr;
  for (int j = 1; j <= p.cols(); ++j) {
    if (p.contains(i, j)) nbr.push_back(d.cols[static_cast<std::size_t>(j - 1)]);
  }
  std::sort(nbr.rbegin(), nbr.rend());
  sig.insert(sig.end(), nbr.begin(), nbr.end());
  return sig;
}

std::uint64_t encoding_hash(const std::vector<RowMask>& enc) {
  std::uint64_t h = 0x243F6A8885A308D3ULL;
  for (RowMask c : enc) {
    std::uint64_t s = h ^ c;
    h = splitmix64(s);
  }
  return h;
}

}  // namespace

std::vector<RowMask> canonical_encoding(const SupportPattern& p) {
  const int m = p.rows();
  const Degrees d = degrees(p);
  std::vector<std::vector<int>> sigs(static_cast<std::size_t>(m) + 1);
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 1);
  for (int i = 1; i <= m; ++i) sigs[static_cast<std::size_t>(i)] = row_signature(p, d, i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return sigs[static_cast<std::size_t>(a)] > sigs[static_cast<std::size_t>(b)];
  });
  // Tie classes, each permuted exhaustively.
  std::vector<std::pair<std::size_t, std::size_t>> classes;
  for (std::size_t a = 0; a < order.size();) {
    std::size_t b = a;
    while (b < order.size() && sigs[static_cast<std::size_t>(order[b])] == sigs[static_cast<std::size_t>(order[a])]) ++b;
    classes.emplace_back(a, b);
    a = b;
  }
  std::optional<std::vector<RowMask>> best;
  std::vector<RowMask> cols(static_cast<std::size_t>(p.cols()));
  std::function<void(std::size_t)> visit = [&](std::size_t c) {
    if (c == classes.size()) {
      for (int j = 1; j <= p.cols(); ++j) {
        const RowMask old = p.column(j);
        RowMask mask = 0;
        for (std::size_t k = 0; k < order.size(); ++k) {
          if (contains(old, order[k])) mask |= RowMask{1} << k;
        }
        cols[static_cast<std::size_t>(j - 1)] = mask;
      }
      std::sort(cols.begin(), cols.end());
      if (!best || cols < *best) best = cols;
      return;
    }
    auto first = order.begin() + static_cast<std::ptrdiff_t>(classes[c].first);
    auto last = order.begin() + static_cast<std::ptrdiff_t>(classes[c].second);
    std::sort(first, last);
    do {
      visit(c + 1);
    } while (std::next_permutation(first, last));
  };
  visit(0);
  return *best;
}

SupportPattern canonicalize(const SupportPattern& p) {
  return SupportPattern(p.rows(), p.cols(), canonical_encoding(p));
}

std::vector<SupportPattern> enumerate_patterns(int m, int n, int r, const EnumerationOptions& options) {
  if (m < 1 || n < 1) throw ContractError("enumeration needs m, n >= 1");
  if (m * n > kMaxEnumerationCells) {
    throw CapacityError("exhaustive enumeration limited to m*n <= " + std::to_string(kMaxEnumerationCells));
  }
  const bool base = options.filter == EnumerationFilter::base_size_and_mindeg;
  if (base && r < 1) throw ContractError("base filter needs r >= 1");
  std::optional<int> target = options.size;
  if (base && !target) target = r * (m + n - r);
  if (!target && m * n > 20) throw CapacityError("enumeration over all sizes limited to m*n <= 20");
  int lo = base ? r + 1 : 0;
  int hi = m;
  if (options.col_size) lo = hi = *options.col_size;

  std::vector<RowMask> candidates;
  for (RowMask c = 0; c <= full_mask(m); ++c) {
    if (popcount(c) >= lo && popcount(c) <= hi) candidates.push_back(c);
  }
  std::set<std::vector<RowMask>> seen;
  std::vector<RowMask> cols;
  std::function<void(std::size_t, int)> dfs = [&](std::size_t start, int remaining) {
    const int left = n - static_cast<int>(cols.size());
    if (left == 0) {
      if (target && remaining != 0) return;
      const SupportPattern p(m, n, cols);
      if (base) {
        const Degrees d = degrees(p);
        if (*std::min_element(d.rows.begin(), d.rows.end()) < r + 1) return;
      }
      seen.insert(canonical_encoding(p));
      return;
    }
    if (target && (remaining < left * lo || remaining > left * hi)) return;
    for (std::size_t k = start; k < candidates.size(); ++k) {
      cols.push_back(candidates[k]);
      dfs(k, remaining - popcount(candidates[k]));
      cols.pop_back();
    }
  };
  dfs(0, target.value_or(0));
  std::vector<SupportPattern> out;
  for (const auto& enc : seen) out.emplace_back(m, n, enc);
  return out;
}

OracleVerdict reverify(const SupportPattern& p, int r, const OracleParams& params) {
  const auto primes = trial_primes(params.prime, 3);
  OracleVerdict v;
  v.size = p.size();
  v.primes = primes;
  v.p = primes.front();
  v.rank_required = variety_dimension(p.rows(), p.cols(), r);
  for (int t = 0; t < 10; ++t) {
    const std::uint64_t seed = derive_seed(params.seed, Stream::oracle, 1000 + static_cast<std::uint64_t>(t));
    v.rank_observed = std::max<long long>(
        v.rank_observed, jacobian_rank(p, r, primes[static_cast<std::size_t>(t % 3)], seed));
    v.trials = t + 1;
  }
  v.verdict = (v.size == v.rank_required && v.rank_observed == v.size) ? OracleVerdict::Kind::base
                                                                       : OracleVerdict::Kind::not_base;
  return v;
}

namespace {

struct Classified {
  CensusRow row;
  std::optional<json> counterexample;
  bool suppressed = false;
};

Classified classify(const SupportPattern& p, int r, const OracleParams& params) {
  Classified out;
  CensusRow& row = out.row;
  row.pattern = p;
  const Reduction red = reduce(p, r);
  const bool use_reduced = red.reduced.rows() > r && red.reduced.cols() > 0;
  row.classified = use_reduced ? red.reduced : p;
  row.removed = use_reduced ? static_cast<int>(red.log.size()) : 0;
  const SupportPattern& q = row.classified;

  if (q.rows() > r) {
    RelaxedParams rp;
    rp.nu = r;
    rp.r = r;
    const RelaxedResult rel = is_relaxed_slmf(q, rp);
    row.is_relaxed_rrm = rel.holds;
    const SearchResult search = partition_search(q, r);
    row.has_partition = search.certificate.has_value();
    if (search.certificate) {
      row.witness["certificate"] = to_json(*search.certificate);
    } else if (rel.witness) {
      row.witness["violation"] = to_json(*rel.witness);
    } else {
      row.witness["search"] = search.reason;
    }
  } else {
    row.witness["note"] = "r >= m: combinatorial conditions undefined";
  }

  OracleParams op = params;
  op.seed = derive_seed(params.seed, Stream::census, encoding_hash(p.columns()));
  OracleVerdict verdict = is_base(p, r, op);
  auto inconsistent = [&](bool base) {
    return (row.has_partition && !base) || (base && !row.is_relaxed_rrm);
  };
  if (inconsistent(verdict.verdict == OracleVerdict::Kind::base)) {
    const OracleVerdict again = reverify(p, r, op);
    if (!inconsistent(again.verdict == OracleVerdict::Kind::base)) out.suppressed = true;
    verdict = again;
  }
  row.oracle_base = verdict.verdict == OracleVerdict::Kind::base;
  row.rank_observed = verdict.rank_observed;

  json violations = json::array();
  if (row.is_relaxed_rrm != row.has_partition) violations.push_back("conjecture: relaxed != partition");
  if (row.has_partition && !row.oracle_base) violations.push_back("sufficiency: partition but not base");
  if (row.oracle_base && !row.is_relaxed_rrm) violations.push_back("necessity: base but not relaxed");
  if (!violations.empty()) {
    out.counterexample = json{{"pattern", pattern_json(p)},
                              {"classified", pattern_json(q)},
                              {"r", r},
                              {"is_relaxed_rrm", row.is_relaxed_rrm},
                              {"has_partition", row.has_partition},
                              {"oracle", to_json(verdict)},
                              {"violations", violations},
                              {"witness", row.witness}};
  }
  return out;
}

template <typename Work>
void run_sharded(std::size_t count, int jobs, const std::vector<std::uint64_t>& keys, Work&& work) {
  const int workers = std::max(1, jobs);
  if (workers == 1) {
    for (std::size_t k = 0; k < count; ++k) work(k);
    return;
  }
  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      for (std::size_t k = 0; k < count; ++k) {
        if (keys[k] % static_cast<std::uint64_t>(workers) == static_cast<std::uint64_t>(w)) work(k);
      }
    });
  }
  for (auto& t : threads) t.join();
}

}  // namespace

CensusReport verify_conjecture(int m, int n, int r, const CensusOptions& options) {
  const auto patterns = enumerate_patterns(m, n, r, options.enumeration);
  std::vector<std::uint64_t> keys;
  for (const auto& p : patterns) keys.push_back(encoding_hash(p.columns()));
  std::vector<Classified> results(patterns.size());
  std::vector<std::exception_ptr> errors(patterns.size());
  run_sharded(patterns.size(), options.jobs, keys, [&](std::size_t k) {
    try {
      results[k] = classify(patterns[k], r, options.oracle);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  });
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  CensusReport report;
  for (auto& c : results) {
    if (c.suppressed) ++report.suppressed;
    if (c.counterexample) {
      report.consistent = false;
      report.counterexamples.push_back(std::move(*c.counterexample));
    }
    report.rows.push_back(std::move(c.row));
  }
  return report;
}

std::string compact_pattern(const SupportPattern& p) {
  std::string out;
  for (int i = 1; i <= p.rows(); ++i) {
    if (i > 1) out += '/';
    for (int j = 1; j <= p.cols(); ++j) out += p.contains(i, j) ? '1' : '0';
  }
  return out;
}

std::string census_csv_header() {
  return "pattern,m,n,size,removed,is_relaxed_rrm,has_partition,oracle_base,rank_observed";
}

std::string census_csv_line(const CensusRow& row) {
  auto b = [](bool v) { return v ? "true" : "false"; };
  return compact_pattern(row.pattern) + "," + std::to_string(row.pattern.rows()) + "," +
         std::to_string(row.pattern.cols()) + "," + std::to_string(row.pattern.size()) + "," +
         std::to_string(row.removed) + "," + b(row.is_relaxed_rrm) + "," + b(row.has_partition) + "," +
         b(row.oracle_base) + "," + std::to_string(row.rank_observed);
}

bool is_spanning_tree(const SupportPattern& p) {
  const int m = p.rows();
  const int n = p.cols();
  if (p.size() != m + n - 1) return false;
  std::vector<int> parent(static_cast<std::size_t>(m + n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    }
    return x;
  };
  for (int j = 1; j <= n; ++j) {
    for (int i : to_indices(p.column(j))) {
      const int a = find(i - 1);
      const int b = find(m + j - 1);
      if (a == b) return false;
      parent[static_cast<std::size_t>(a)] = b;
    }
  }
  return true;
}

bool contains_complete_bipartite(const SupportPattern& p) {
  const RowMask all = full_mask(p.rows());
  int full = 0;
  for (RowMask c : p.columns()) full += c == all ? 1 : 0;
  return full >= p.rows();
}

CrosscheckReport known_facts_crosscheck(int m, int n, int r, const OracleParams& params, int jobs) {
  const int lo = std::min(m, n);
  const int hi = std::max(m, n);
  const bool tree_mode = r == 1;
  if (!tree_mode && r != lo - 1) throw ContractError("crosscheck supports r = 1 or r = min(m, n) - 1");
  CrosscheckReport report{m, n, r, 0, {}};
  EnumerationOptions eo;
  eo.filter = EnumerationFilter::all;
  eo.size = tree_mode ? lo + hi - 1 : (lo - 1) * (hi + 1);
  const auto patterns = enumerate_patterns(lo, hi, r, eo);
  std::vector<std::uint64_t> keys;
  for (const auto& p : patterns) keys.push_back(encoding_hash(p.columns()));
  std::vector<std::optional<json>> found(patterns.size());
  run_sharded(patterns.size(), jobs, keys, [&](std::size_t k) {
    const SupportPattern& p = patterns[k];
    const bool expected = tree_mode ? is_spanning_tree(p) : !contains_complete_bipartite(p);
    OracleParams op = params;
    op.seed = derive_seed(params.seed, Stream::census, keys[k]);
    OracleVerdict v = is_base(p, r, op);
    if ((v.verdict == OracleVerdict::Kind::base) != expected) v = reverify(p, r, op);
    if ((v.verdict == OracleVerdict::Kind::base) != expected) {
      found[k] = json{{"pattern", pattern_json(p)}, {"expected_base", expected}, {"oracle", to_json(v)}};
    }
  });
  report.checked = static_cast<long long>(patterns.size());
  for (auto& f : found) {
    if (f) report.disagreements.push_back(std::move(*f));
  }
  return report;
}

}  // namespace detmatroid
