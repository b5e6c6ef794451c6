#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "detmatroid/oracle.hpp"
#include "detmatroid/pattern.hpp"

namespace detmatroid {

// Least column-sorted encoding over all row orders that list row degrees in
// nonincreasing order. Equal for two patterns iff they differ by row and
// column permutations.
std::vector<RowMask> canonical_encoding(const SupportPattern& p);
SupportPattern canonicalize(const SupportPattern& p);

enum class EnumerationFilter { base_size_and_mindeg, all };

struct EnumerationOptions {
  EnumerationFilter filter = EnumerationFilter::base_size_and_mindeg;
  std::optional<int> size;      // overrides r(m+n-r) under base_size_and_mindeg
  std::optional<int> col_size;  // every column exactly this size
};

inline constexpr int kMaxEnumerationCells = 36;

// One canonical representative per orbit, in increasing encoding order.
std::vector<SupportPattern> enumerate_patterns(int m, int n, int r, const EnumerationOptions& options = {});

struct CensusRow {
  SupportPattern pattern;  // canonical
  SupportPattern classified;  // after reduce (or the pattern itself if reduction degenerates)
  int removed = 0;
  bool is_relaxed_rrm = false;
  bool has_partition = false;
  bool oracle_base = false;
  long long rank_observed = 0;
  nlohmann::json witness;  // violation witness or partition certificate
};

struct CensusOptions {
  EnumerationOptions enumeration;
  OracleParams oracle;
  int jobs = 1;
};

struct CensusReport {
  std::vector<CensusRow> rows;
  std::vector<nlohmann::json> counterexamples;
  long long suppressed = 0;  // candidates cleared by re-verification
  bool consistent = true;
};

CensusReport verify_conjecture(int m, int n, int r, const CensusOptions& options = {});

// Re-runs the oracle with 10 trials cycling over 3 primes.
OracleVerdict reverify(const SupportPattern& p, int r, const OracleParams& params);

std::string census_csv_header();
std::string census_csv_line(const CensusRow& row);
// Indicator rows joined by '/'.
std::string compact_pattern(const SupportPattern& p);

bool is_spanning_tree(const SupportPattern& p);
// Some m columns all equal to [m] (a K_{m,m} inside G_Omega).
bool contains_complete_bipartite(const SupportPattern& p);

struct CrosscheckReport {
  int m = 0;
  int n = 0;
  int r = 0;
  long long checked = 0;
  std::vector<nlohmann::json> disagreements;
};

// r = 1: base iff G_Omega is a tree. r = min(m,n) - 1: base iff size
// (m-1)(n+1) and no K_{m,m} (after transposing so that m <= n).
CrosscheckReport known_facts_crosscheck(int m, int n, int r, const OracleParams& params = {}, int jobs = 1);

}  // namespace detmatroid
