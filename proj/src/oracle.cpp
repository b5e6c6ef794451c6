#include "detmatroid/oracle.hpp"

#include <algorithm>

#include "detmatroid/errors.hpp"
#include "detmatroid/rng.hpp"

namespace detmatroid {

long long variety_dimension(int m, int n, int r) {
  const long long re = std::clamp(r, 0, std::min(m, n));
  return re * (m + n - re);
}

std::vector<std::uint32_t> trial_primes(std::uint32_t prime, int trials) {
  std::vector<std::uint32_t> out;
  for (int t = 0; t < trials; ++t) out.push_back(t == 0 ? prime : previous_prime(out.back()));
  return out;
}

Matrix<std::uint32_t> random_matrix(const PrimeField& F, std::size_t rows, std::size_t cols,
                                    std::mt19937_64& rng) {
  Matrix<std::uint32_t> a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      a(i, j) = static_cast<std::uint32_t>(uniform_below(rng, F.modulus()));
    }
  }
  return a;
}

Matrix<std::uint32_t> random_rank_r(int m, int n, int r, std::uint32_t p, std::uint64_t seed) {
  if (r < 0 || r > std::min(m, n)) {
    throw ContractError("random_rank_r requires 0 <= r <= min(m, n)");
  }
  const PrimeField F(p);
  if (r == 0) return Matrix<std::uint32_t>(static_cast<std::size_t>(m), static_cast<std::size_t>(n), 0);
  if (p < 2U * static_cast<std::uint32_t>(r)) {
    throw ContractError("prime " + std::to_string(p) + " too small for rank " + std::to_string(r));
  }
  auto rng = make_rng(seed, Stream::sampling);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const auto L = random_matrix(F, static_cast<std::size_t>(m), static_cast<std::size_t>(r), rng);
    const auto R = random_matrix(F, static_cast<std::size_t>(r), static_cast<std::size_t>(n), rng);
    auto X = multiply(F, L, R);
    if (gfp_rank(X, p) == static_cast<std::size_t>(r)) return X;
  }
  throw std::runtime_error("random_rank_r: no rank-r sample in 1000 attempts");
}

int jacobian_rank(const SupportPattern& p, int r, std::uint32_t prime, std::uint64_t seed) {
  if (r < 0) throw ContractError("jacobian_rank requires r >= 0");
  const PrimeField F(prime);
  if (r == 0 || p.size() == 0) return 0;
  const std::size_t m = static_cast<std::size_t>(p.rows());
  const std::size_t n = static_cast<std::size_t>(p.cols());
  const std::size_t rr = static_cast<std::size_t>(r);
  auto rng = make_rng(seed, Stream::oracle);
  const auto L = random_matrix(F, m, rr, rng);
  const auto R = random_matrix(F, rr, n, rng);

  Matrix<std::uint32_t> J(static_cast<std::size_t>(p.size()), rr * (m + n), 0);
  std::size_t row = 0;
  for (std::size_t j = 0; j < n; ++j) {
    for (int i1 : to_indices(p.column(static_cast<int>(j) + 1))) {
      const std::size_t i = static_cast<std::size_t>(i1 - 1);
      for (std::size_t k = 0; k < rr; ++k) {
        J(row, i * rr + k) = R(k, j);
        J(row, m * rr + k * n + j) = L(i, k);
      }
      ++row;
    }
  }
  return static_cast<int>(gfp_rank_in_place(J, prime));
}

std::string to_string(OracleVerdict::Kind kind) {
  switch (kind) {
    case OracleVerdict::Kind::independent: return "independent";
    case OracleVerdict::Kind::dependent: return "dependent";
    case OracleVerdict::Kind::base: return "base";
    case OracleVerdict::Kind::not_base: return "not_base";
  }
  return "?";
}

namespace {

// Max Jacobian rank over the trials; stops once rank #Omega is reached.
OracleVerdict run_trials(const SupportPattern& p, int r, const OracleParams& params) {
  if (params.trials < 1) throw ContractError("at least one oracle trial is required");
  OracleVerdict v;
  v.size = p.size();
  v.primes = trial_primes(params.prime, params.trials);
  v.p = v.primes.front();
  for (int t = 0; t < params.trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(params.seed, Stream::oracle, static_cast<std::uint64_t>(t));
    v.rank_observed = std::max<long long>(v.rank_observed, jacobian_rank(p, r, v.primes[static_cast<std::size_t>(t)], trial_seed));
    v.trials = t + 1;
    if (v.rank_observed == v.size) break;
  }
  v.primes.resize(static_cast<std::size_t>(v.trials));
  return v;
}

}  // namespace

OracleVerdict is_base(const SupportPattern& p, int r, const OracleParams& params) {
  OracleVerdict v = run_trials(p, r, params);
  v.rank_required = variety_dimension(p.rows(), p.cols(), r);
  v.verdict = (v.size == v.rank_required && v.rank_observed == v.size) ? OracleVerdict::Kind::base
                                                                       : OracleVerdict::Kind::not_base;
  return v;
}

OracleVerdict test_independence(const SupportPattern& p, int r, const OracleParams& params) {
  OracleVerdict v = run_trials(p, r, params);
  v.rank_required = v.size;
  v.verdict = v.rank_observed == v.size ? OracleVerdict::Kind::independent
                                        : OracleVerdict::Kind::dependent;
  return v;
}

NecessityReport check_necessity(const SupportPattern& p, int r, const OracleParams& params) {
  NecessityReport report;
  report.verdict = is_base(p, r, params);
  if (report.verdict.verdict != OracleVerdict::Kind::base) {
    report.message = "not base; nothing to check";
    return report;
  }
  if (r < 1 || r >= p.rows()) {
    report.message = "base with r outside [1, m-1]; relaxed condition not defined";
    return report;
  }
  RelaxedParams rp;
  rp.nu = r;
  rp.r = r;
  report.relaxed = is_relaxed_slmf(p, rp);
  report.consistent = report.relaxed->holds;
  report.message = report.consistent
                       ? "base and relaxed (r,r,m)-SLMF: consistent"
                       : "RED FLAG: oracle reports base but the pattern is not a relaxed (r,r,m)-SLMF";
  return report;
}

nlohmann::json to_json(const OracleVerdict& v) {
  return nlohmann::json{{"verdict", to_string(v.verdict)},
                        {"randomized", v.verdict == OracleVerdict::Kind::base ||
                                           v.verdict == OracleVerdict::Kind::independent},
                        {"trials", v.trials},
                        {"p", v.p},
                        {"primes", v.primes},
                        {"rank_observed", v.rank_observed},
                        {"rank_required", v.rank_required},
                        {"size", v.size}};
}

}  // namespace detmatroid
