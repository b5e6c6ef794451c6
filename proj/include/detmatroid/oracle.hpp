#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "detmatroid/field.hpp"
#include "detmatroid/linalg.hpp"
#include "detmatroid/pattern.hpp"
#include "detmatroid/slmf.hpp"

namespace detmatroid {

inline constexpr int kDefaultTrials = 3;

struct OracleParams {
  std::uint32_t prime = kDefaultPrime;
  int trials = kDefaultTrials;
  std::uint64_t seed = 0;
};

// r(m+n-r) with r clipped to min(m, n).
long long variety_dimension(int m, int n, int r);

// Trial t runs over primes[t]: the given prime, then successive primes below it.
std::vector<std::uint32_t> trial_primes(std::uint32_t prime, int trials);

Matrix<std::uint32_t> random_matrix(const PrimeField& F, std::size_t rows, std::size_t cols,
                                    std::mt19937_64& rng);

// X = L R with L m x r, R r x n uniform over GF(p), resampled until rank r.
Matrix<std::uint32_t> random_rank_r(int m, int n, int r, std::uint32_t p, std::uint64_t seed);

// Rank of d(x_ij)/d(L, R) over (i,j) in Omega at a random point.
int jacobian_rank(const SupportPattern& p, int r, std::uint32_t prime, std::uint64_t seed);

struct OracleVerdict {
  enum class Kind { independent, dependent, base, not_base };
  Kind verdict = Kind::dependent;
  int trials = 0;            // trials actually run
  std::uint32_t p = 0;       // modulus of the first trial
  std::vector<std::uint32_t> primes;
  long long rank_observed = 0;  // max over trials
  long long rank_required = 0;
  long long size = 0;
};

std::string to_string(OracleVerdict::Kind kind);

// base iff #Omega = r(m+n-r) and some trial reaches full row rank.
OracleVerdict is_base(const SupportPattern& p, int r, const OracleParams& params = {});

// independent iff some trial reaches rank #Omega.
OracleVerdict test_independence(const SupportPattern& p, int r, const OracleParams& params = {});

struct NecessityReport {
  bool consistent = true;
  OracleVerdict verdict;
  std::optional<RelaxedResult> relaxed;  // evaluated only for base verdicts
  std::string message;
};

// Flags a base verdict on a pattern that is not a relaxed (r,r,m)-SLMF.
NecessityReport check_necessity(const SupportPattern& p, int r, const OracleParams& params = {});

nlohmann::json to_json(const OracleVerdict& v);

}  // namespace detmatroid
