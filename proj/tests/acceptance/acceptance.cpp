// One PASS/FAIL line per acceptance criterion. Time limits are pinned below.
// Optional argv[1]: path to the detmatroid CLI, used for the certify exit code.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <sys/wait.h>

#include "detmatroid/census.hpp"
#include "detmatroid/errors.hpp"
#include "detmatroid/grassmann.hpp"
#include "detmatroid/oracle.hpp"
#include "detmatroid/partition.hpp"
#include "detmatroid/slmf.hpp"
#include "support.hpp"

using namespace detmatroid;
using namespace testing_support;

namespace {

constexpr double kLimit1 = 0.1;
constexpr double kLimit2 = 1.0;
constexpr double kLimit3 = 1.0;
constexpr double kLimit4 = 5.0;
constexpr double kLimit5 = 1.0;
constexpr double kLimit6 = 300.0;
constexpr double kLimit7 = 60.0;
constexpr double kLimit8 = 120.0;
constexpr double kLimit9 = 10.0;
constexpr double kLimit10 = 10.0;
constexpr double kLimit11 = 60.0;

std::string cli_path;
std::string data_dir;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double limit, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (out.ok && secs >= limit) {
    out.ok = false;
    out.detail = "took " + std::to_string(secs) + " s, limit " + std::to_string(limit) + " s";
  }
  failures += out.ok ? 0 : 1;
  std::printf("%s %2d %-58s %9.3f s (limit %.1f s)%s%s\n", out.ok ? "PASS" : "FAIL", id, name.c_str(), secs, limit,
              out.detail.empty() ? "" : "  ", out.detail.c_str());
  std::fflush(stdout);
}

RowMask mask(std::initializer_list<int> idx) { return to_mask(std::vector<int>(idx)); }

Observations<PrimeField> observe(const SupportPattern& p, const Matrix<std::uint32_t>& X) {
  Observations<PrimeField> obs;
  for (int j = 1; j <= p.cols(); ++j) {
    for (int i : p.column_indices(j)) {
      obs[{i, j}] = X(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
    }
  }
  return obs;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_path = argv[1];
  if (argc > 2) data_dir = argv[2];

  criterion(1, "6x4 SLMF accepted by union and matching checkers", kLimit1, [](Outcome& o) {
    const Slmf phi(2, slmf_6x4());
    o.require(is_slmf(phi).holds, "union checker rejected");
    o.require(is_slmf_via_matching(phi), "matching checker rejected");
  });

  criterion(2, "p_Phi = +-[12][24][15] on 100 random S, one sign", kLimit2, [](Outcome& o) {
    const PrimeField F(kDefaultPrime);
    const Slmf phi(2, slmf_6x4());
    std::mt19937_64 rng(2);
    std::optional<int> sign;
    for (int t = 0; t < 100; ++t) {
      const auto B = random_matrix(F, 6, 2, rng);
      if (rank(F, B) != 2) continue;
      const auto pl = plucker_from_basis(F, B);
      const auto prod = F.mul(F.mul(pl.at(F, mask({1, 2})), pl.at(F, mask({2, 4}))), pl.at(F, mask({1, 5})));
      const auto v = p_phi(F, phi, pl);
      const int s = v == prod ? 1 : (v == F.neg(prod) ? -1 : 0);
      o.require(s != 0, "p_Phi differs from +-product at trial " + std::to_string(t));
      if (!sign) sign = s;
      o.require(s == *sign, "sign changed at trial " + std::to_string(t));
    }
  });

  criterion(3, "6x5 certify: partition found, rank 18 within 3 trials", kLimit3, [](Outcome& o) {
    const auto p = omega_6x5();
    const auto search = partition_search(p, 2);
    o.require(search.certificate.has_value(), "no partition");
    const auto v = is_base(p, 2);
    o.require(v.rank_observed == 18 && v.verdict == OracleVerdict::Kind::base, "oracle rank " + std::to_string(v.rank_observed));
    o.require(v.trials <= 3, "trials " + std::to_string(v.trials));
    if (!cli_path.empty() && !data_dir.empty()) {
      const std::string cmd = "\"" + cli_path + "\" certify --pattern \"" + data_dir + "/omega_6x5.txt\" --r 2 > /dev/null";
      const int status = std::system(cmd.c_str());
      o.require(WIFEXITED(status) && WEXITSTATUS(status) == 0, "certify CLI exit status " + std::to_string(status));
    }
  });

  criterion(4, "6x5 relaxed, unpartitioned; reduced 5x5 partitions; both base", kLimit4, [](Outcome& o) {
    const auto omega = omega_6x5_unpartitioned();
    o.require(is_relaxed_slmf(omega, {.nu = 2, .r = 2}).holds, "Omega not relaxed (2,2,6)");
    const auto search = partition_search(omega, 2);
    o.require(!search.certificate && search.exhaustive, "Omega partition search did not fail exhaustively");
    const auto red = reduce(omega, 2);
    o.require(red.reduced == omega_5x5_reduced(), "reduction differs from the published 5x5 pattern");
    o.require(is_relaxed_slmf(red.reduced, {.nu = 2, .r = 2}).holds, "reduced pattern not relaxed (2,2,5)");
    validate_certificate(red.reduced, make_certificate(red.reduced, 2, {{1, 3, 4}, {2, 5}}));
    const auto found = partition_search(red.reduced, 2);
    o.require(found.certificate.has_value(), "reduced partition search failed");
    o.require(is_base(omega, 2).verdict == OracleVerdict::Kind::base, "Omega not base");
    o.require(is_base(red.reduced, 2).verdict == OracleVerdict::Kind::base, "reduced pattern not base");
  });

  criterion(5, "6x8 pattern is a base (rank 24)", kLimit5, [](Outcome& o) {
    const auto v = is_base(omega_6x8(), 2);
    o.require(v.verdict == OracleVerdict::Kind::base && v.rank_observed == 24, "rank " + std::to_string(v.rank_observed));
  });

  criterion(6, "census (4,4,2), column size 3: relaxed <=> partition", kLimit6, [](Outcome& o) {
    CensusOptions opts;
    opts.enumeration.col_size = 3;
    const auto rep = verify_conjecture(4, 4, 2, opts);
    o.require(!rep.rows.empty(), "no patterns enumerated");
    o.require(rep.consistent && rep.counterexamples.empty(), "census reported counterexamples");
    for (const auto& row : rep.rows) {
      o.require(row.is_relaxed_rrm == row.has_partition, "relaxed/partition mismatch " + compact_pattern(row.pattern));
      o.require(!row.has_partition || row.oracle_base, "partition without base " + compact_pattern(row.pattern));
      o.require(!row.oracle_base || row.is_relaxed_rrm, "base without relaxed " + compact_pattern(row.pattern));
    }
  });

  criterion(7, "r = 1 on 3x3 and 3x4: base <=> spanning tree", kLimit7, [](Outcome& o) {
    for (auto [m, n] : {std::pair{3, 3}, std::pair{3, 4}}) {
      const auto rep = known_facts_crosscheck(m, n, 1);
      o.require(rep.checked > 0, "nothing checked");
      o.require(rep.disagreements.empty(), std::to_string(rep.disagreements.size()) + " disagreements");
      for_each_labeled_pattern(m, n, m + n - 1, [&](const SupportPattern& p) {
        const bool base = is_base(p, 1).verdict == OracleVerdict::Kind::base;
        o.require(base == brute_is_spanning_tree(p), "labeled disagreement " + compact_pattern(p));
      });
    }
  });

  criterion(8, "(3,4,2): base <=> size 10 and no K_{3,3}", kLimit8, [](Outcome& o) {
    const auto rep = known_facts_crosscheck(3, 4, 2);
    o.require(rep.checked > 0, "nothing checked");
    o.require(rep.disagreements.empty(), std::to_string(rep.disagreements.size()) + " disagreements");
    for_each_labeled_pattern(3, 4, 10, [&](const SupportPattern& p) {
      const bool base = is_base(p, 2).verdict == OracleVerdict::Kind::base;
      o.require(base == !brute_has_complete_square(p), "labeled disagreement " + compact_pattern(p));
    });
  });

  criterion(9, "completion round trip, 100 seeds on the 6x5 pattern", kLimit9, [](Outcome& o) {
    const PrimeField F(kDefaultPrime);
    const auto p = omega_6x5();
    const auto cert = partition_search(p, 2).certificate.value();
    int done = 0;
    int resampled = 0;
    for (std::uint64_t seed = 0; done < 100; ++seed) {
      if (seed > 10000) {
        o.require(false, "too many non-generic samples");
        return;
      }
      const auto X = random_rank_r(6, 5, 2, kDefaultPrime, seed);
      try {
        const auto Y = complete_matrix(F, p, 2, cert, observe(p, X));
        o.require(Y == X, "mismatch at seed " + std::to_string(seed));
        ++done;
      } catch (const NotGenericError&) {
        ++resampled;
      }
    }
  });

  criterion(10, "is_slmf = relaxed (nu=1) on 500 patterns each at r=1,2,3", kLimit10, [](Outcome& o) {
    std::mt19937_64 rng(10);
    for (auto [r, m] : {std::pair{1, 5}, std::pair{2, 6}, std::pair{3, 7}}) {
      for (int t = 0; t < 500; ++t) {
        const auto p = random_uniform_columns(rng, m, m - r, r + 1);
        const bool a = is_slmf(Slmf(r, p)).holds;
        const bool b = is_relaxed_slmf(p, {.nu = 1, .r = r}).holds;
        o.require(a == b, "disagreement at r=" + std::to_string(r) + " trial " + std::to_string(t));
      }
    }
  });

  criterion(11, "Dilworth rank on 50 relaxed (2,2,5) and n <= 8", kLimit11, [](Outcome& o) {
    std::mt19937_64 rng(11);
    int found = 0;
    while (found < 50) {
      const auto p = random_uniform_columns(rng, 5, 6, 3);
      if (!is_relaxed_slmf(p, {.nu = 2, .r = 2}).holds) continue;
      ++found;
      const TruncationMatroid mat(p, 2);
      o.require(mat.dilworth_rank(0) == 0, "rank of empty set");
      for (int j = 0; j < 6; ++j) o.require(mat.dilworth_rank(RowMask{1} << j) == 1, "rank of a singleton");
      o.require(mat.dilworth_rank(full_mask(6)) == 3, "rank of the ground set");
      for (RowMask J = 0; J < (RowMask{1} << 6); ++J) {
        o.require(mat.truncation_independent(J) == (mat.dilworth_rank(J) == popcount(J)), "independence mismatch");
      }
    }
    for (int n = 1; n <= 8; ++n) {
      const auto p = random_uniform_columns(rng, 5, n, 3);
      const TruncationMatroid mat(p, 2);
      for (RowMask J = 0; J < (RowMask{1} << n); ++J) {
        o.require(mat.truncation_independent(J) == (mat.dilworth_rank(J) == popcount(J)), "independence mismatch, n=" + std::to_string(n));
      }
    }
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
