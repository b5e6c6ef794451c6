// detmatroid: command-line front end.
//
// Exit codes: 0 positive answer, 1 negative answer, 2 contract, capacity or
// parse error. Payloads go to stdout; diagnostics to stderr.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "detmatroid/census.hpp"
#include "detmatroid/errors.hpp"
#include "detmatroid/grassmann.hpp"
#include "detmatroid/io.hpp"
#include "detmatroid/kernels.hpp"
#include "detmatroid/oracle.hpp"
#include "detmatroid/partition.hpp"
#include "detmatroid/pattern.hpp"
#include "detmatroid/rng.hpp"
#include "detmatroid/slmf.hpp"

using namespace detmatroid;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

SupportPattern load_pattern(const std::string& path) { return parse_pattern(read_input(path)); }

void print(const json& payload) { std::cout << payload.dump(2) << "\n"; }

struct Common {
  std::string pattern = "-";
  int r = 1;
  std::uint64_t seed = 0;
  std::uint32_t prime = kDefaultPrime;
  int trials = kDefaultTrials;
  int jobs = 1;
  std::string format = "json";
};

OracleParams oracle_params(const Common& c) { return OracleParams{c.prime, c.trials, c.seed}; }

// ---------------------------------------------------------------------------

int cmd_check_slmf(const Common& c) {
  const Slmf phi(c.r, load_pattern(c.pattern));
  const SlmfResult unions = is_slmf(phi);
  const bool matching = is_slmf_via_matching(phi);
  json out{{"slmf", unions.holds}, {"union_check", unions.holds}, {"matching_check", matching},
           {"agree", unions.holds == matching}};
  if (unions.violating_columns) out["violating_columns"] = indices_json(*unions.violating_columns);
  if (unions.holds != matching) {
    out["bug"] = "union and matching checkers disagree";
    print(out);
    return kExitError;
  }
  print(out);
  return unions.holds ? kExitOk : kExitNegative;
}

int cmd_check_relaxed(const Common& c, int nu, const std::vector<int>& columns) {
  const SupportPattern p = load_pattern(c.pattern);
  RelaxedParams params;
  params.r = c.r;
  params.nu = nu > 0 ? nu : c.r;
  if (!columns.empty()) params.restricted_to = columns;
  const RelaxedResult res = is_relaxed_slmf(p, params);
  json out{{"relaxed", res.holds}, {"nu", params.nu}, {"r", params.r}, {"m", p.rows()}};
  if (res.witness) out["witness"] = to_json(*res.witness);
  print(out);
  return res.holds ? kExitOk : kExitNegative;
}

int cmd_partition(const Common& c, const std::string& method, bool prefer_same_phi, std::uint64_t node_limit) {
  const SupportPattern p = load_pattern(c.pattern);
  json out{{"method", method}};
  std::optional<PartitionCertificate> cert;
  if (method == "search") {
    SearchOptions so;
    so.prefer_same_phi = prefer_same_phi;
    so.node_limit = node_limit;
    const SearchResult res = partition_search(p, c.r, so);
    cert = res.certificate;
    out["exhaustive"] = res.exhaustive;
    out["nodes"] = res.nodes;
    if (!res.certificate) out["reason"] = res.reason;
  } else if (method == "packing") {
    TruncationMatroid mat(p, c.r);
    const PackingResult packed = pack_bases(mat);
    if (packed.bases) {
      std::vector<std::vector<int>> groups;
      for (RowMask b : *packed.bases) groups.push_back(to_indices(b));
      cert = make_certificate(p, c.r, std::move(groups));
    } else {
      out["witness"] = indices_json(*packed.witness);
      out["reason"] = "Edmonds-Fulkerson packing inequality fails at the witness";
    }
  } else if (method == "cyclic") {
    if (c.r != p.rows() - 2) throw ContractError("cyclic construction needs r = m - 2");
    cert = partition_r_eq_m_minus_2(p);
  } else if (method == "singletons") {
    if (c.r != p.rows() - 1) throw ContractError("singleton construction needs r = m - 1");
    cert = partition_r_eq_m_minus_1(p);
  } else {
    throw ContractError("unknown method " + method);
  }
  out["partition"] = cert.has_value();
  if (cert) out["certificate"] = to_json(*cert);
  print(out);
  return cert ? kExitOk : kExitNegative;
}

int cmd_reduce(const Common& c) {
  const SupportPattern p = load_pattern(c.pattern);
  const Reduction red = reduce(p, c.r);
  if (c.format == "indicator") {
    std::cout << emit_pattern(red.reduced, PatternFormat::indicator);
  } else {
    print(to_json(red));
  }
  return kExitOk;
}

int cmd_oracle(const Common& c, bool independence) {
  const SupportPattern p = load_pattern(c.pattern);
  const OracleVerdict v = independence ? test_independence(p, c.r, oracle_params(c))
                                       : is_base(p, c.r, oracle_params(c));
  print(to_json(v));
  const bool positive = v.verdict == OracleVerdict::Kind::base || v.verdict == OracleVerdict::Kind::independent;
  return positive ? kExitOk : kExitNegative;
}

int cmd_certify(const Common& c) {
  const SupportPattern p = load_pattern(c.pattern);
  const long long dim = variety_dimension(p.rows(), p.cols(), c.r);
  json out{{"pattern", pattern_json(p)}, {"r", c.r}, {"size", p.size()}, {"dimension", dim}};
  if (p.size() != dim) {
    out["certified"] = false;
    out["reason"] = "size";
    print(out);
    return kExitNegative;
  }
  const Reduction red = reduce(p, c.r);
  out["reduction"] = to_json(red);
  RelaxedParams rp;
  rp.nu = c.r;
  rp.r = c.r;
  // The partition is sought on Omega, then on the reduced pattern.
  std::vector<std::pair<std::string, const SupportPattern*>> candidates;
  if (p.rows() > c.r) candidates.emplace_back("original", &p);
  const SupportPattern& q = red.reduced;
  if (!red.log.empty() && q.rows() > c.r && q.cols() > 0) candidates.emplace_back("reduced", &q);
  const bool combinatorial = !candidates.empty();
  bool relaxed = true;
  bool partitioned = true;
  if (combinatorial) {
    const RelaxedResult rel = is_relaxed_slmf(*candidates.front().second, rp);
    relaxed = rel.holds;
    out["relaxed"] = to_json(rel);
    out["relaxed"]["pattern"] = candidates.front().first;
    json attempts = json::array();
    partitioned = false;
    for (const auto& [label, pat] : candidates) {
      const SearchResult search = partition_search(*pat, c.r);
      json part{{"pattern", label}, {"found", search.certificate.has_value()},
                {"exhaustive", search.exhaustive}, {"nodes", search.nodes}};
      if (search.certificate) part["certificate"] = to_json(*search.certificate);
      else part["reason"] = search.reason;
      attempts.push_back(part);
      if (search.certificate) {
        partitioned = true;
        break;
      }
    }
    out["partition"] = json{{"found", partitioned}, {"attempts", attempts}};
  } else {
    out["relaxed"] = json{{"skipped", "r >= m"}};
    out["partition"] = json{{"skipped", "r >= m"}};
  }
  const OracleVerdict v = is_base(p, c.r, oracle_params(c));
  out["oracle"] = to_json(v);
  const bool base = v.verdict == OracleVerdict::Kind::base;
  if ((base && !relaxed) || (partitioned && combinatorial && !base)) {
    out["certified"] = false;
    out["reason"] = base ? "contradiction: base but not a relaxed (r,r,m)-SLMF"
                         : "contradiction: partition found but oracle reports not base";
    print(out);
    return kExitError;
  }
  const bool ok = relaxed && partitioned && base;
  out["certified"] = ok;
  if (!ok) out["reason"] = !relaxed ? "relaxed" : (!partitioned ? "partition" : "oracle");
  print(out);
  return ok ? kExitOk : kExitNegative;
}

json load_json(const std::string& path) {
  try {
    return json::parse(read_input(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

template <typename Field>
int complete_with(const Field& F, const Common& c, const std::string& cert_path, const std::string& obs_path) {
  const SupportPattern p = load_pattern(c.pattern);
  json doc = load_json(cert_path);
  if (doc.contains("certificate")) doc = doc.at("certificate");
  const PartitionCertificate cert = certificate_from_json(p, doc);
  const auto observed = parse_observations(F, read_input(obs_path));
  try {
    const auto X = complete_matrix(F, p, c.r, cert, observed);
    std::cout << matrix_csv(F, X);
    return kExitOk;
  } catch (const NotGenericError& e) {
    json out{{"completed", false}, {"reason", "not_generic"}, {"message", e.what()}};
    if (e.rows()) out["rows"] = indices_json(e.rows());
    print(out);
    return kExitNegative;
  }
}

int cmd_sample(const Common& c, const std::string& full_out) {
  const SupportPattern p = load_pattern(c.pattern);
  const auto X = random_rank_r(p.rows(), p.cols(), c.r, c.prime, c.seed);
  if (!full_out.empty()) {
    std::ofstream f(full_out);
    if (!f) throw ParseError("cannot write " + full_out);
    f << matrix_csv(PrimeField(c.prime), X);
  }
  for (int j = 1; j <= p.cols(); ++j) {
    for (int i : to_indices(p.column(j))) {
      std::cout << i << "," << j << "," << X(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) << "\n";
    }
  }
  return kExitOk;
}

int cmd_verify(const Common& c, int m, int n, const std::string& filter, int col_size, int size,
               const std::string& dump) {
  CensusOptions opts;
  opts.enumeration.filter = filter == "all" ? EnumerationFilter::all : EnumerationFilter::base_size_and_mindeg;
  if (col_size > 0) opts.enumeration.col_size = col_size;
  if (size >= 0) opts.enumeration.size = size;
  opts.oracle = oracle_params(c);
  opts.jobs = c.jobs;
  const CensusReport report = verify_conjecture(m, n, c.r, opts);
  if (!dump.empty()) {
    std::ofstream f(dump);
    if (!f) throw ParseError("cannot write " + dump);
    f << json(report.counterexamples).dump(2) << "\n";
  }
  long long relaxed = 0;
  long long parts = 0;
  long long bases = 0;
  for (const auto& row : report.rows) {
    relaxed += row.is_relaxed_rrm;
    parts += row.has_partition;
    bases += row.oracle_base;
  }
  if (c.format == "csv") {
    std::cout << census_csv_header() << "\n";
    for (const auto& row : report.rows) std::cout << census_csv_line(row) << "\n";
  } else {
    print(json{{"m", m}, {"n", n}, {"r", c.r}, {"patterns", report.rows.size()},
               {"relaxed", relaxed}, {"partition", parts}, {"base", bases},
               {"suppressed", report.suppressed}, {"consistent", report.consistent},
               {"counterexamples", report.counterexamples}});
  }
  std::cerr << "census: " << report.rows.size() << " patterns, "
            << report.counterexamples.size() << " counterexample candidates, "
            << (report.consistent ? "consistent" : "INCONSISTENT") << "\n";
  return report.consistent ? kExitOk : kExitNegative;
}

int cmd_crosscheck(const Common& c, int m, int n) {
  const CrosscheckReport rep = known_facts_crosscheck(m, n, c.r, oracle_params(c), c.jobs);
  print(json{{"m", rep.m}, {"n", rep.n}, {"r", rep.r}, {"checked", rep.checked},
             {"disagreements", rep.disagreements}, {"agree", rep.disagreements.empty()}});
  return rep.disagreements.empty() ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Algebraic matroid of low-rank matrices: SLMF checks, partitions, oracle, completion, census"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "detmatroid 1.0");
  Common c;
  std::string isa = "auto";
  app.add_option("--isa", isa, "Kernel ISA: auto, scalar, avx2")->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  auto add_pattern = [&](CLI::App* sub) {
    sub->add_option("--pattern", c.pattern, "Pattern file (indicator or JSON); - for stdin");
    sub->add_option("--r", c.r, "Rank r")->required();
  };
  auto add_oracle = [&](CLI::App* sub) {
    sub->add_option("--prime", c.prime, "Modulus of the first trial");
    sub->add_option("--trials", c.trials, "Oracle trials");
  };
  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", c.seed, "64-bit seed"); };

  auto* check_slmf = app.add_subcommand("check-slmf", "Decide the SLMF union condition by two checkers");
  add_pattern(check_slmf);
  add_seed(check_slmf);

  int nu = 0;
  std::vector<int> columns;
  auto* check_relaxed = app.add_subcommand("check-relaxed", "Decide the relaxed (nu,r,m)-SLMF condition");
  add_pattern(check_relaxed);
  add_seed(check_relaxed);
  check_relaxed->add_option("--nu", nu, "nu in [1, r] (default r)");
  check_relaxed->add_option("--columns", columns, "Restrict to these 1-based columns")->delimiter(',');

  std::string method = "search";
  bool prefer_same_phi = false;
  std::uint64_t node_limit = 0;
  auto* partition = app.add_subcommand("partition", "Partition columns into r relaxed (1,r,m)-SLMFs");
  add_pattern(partition);
  add_seed(partition);
  partition->add_option("--method", method, "search, packing, cyclic or singletons")
      ->check(CLI::IsMember({"search", "packing", "cyclic", "singletons"}));
  partition->add_flag("--prefer-same-phi", prefer_same_phi, "Prefer certificates whose SLMFs coincide");
  partition->add_option("--node-limit", node_limit, "Abort the search after this many nodes (0: none)");

  auto* reduce_cmd = app.add_subcommand("reduce", "Strip columns of size r and rows of degree r");
  add_pattern(reduce_cmd);
  add_seed(reduce_cmd);
  reduce_cmd->add_option("--format", c.format, "json or indicator")->check(CLI::IsMember({"json", "indicator"}));

  bool independence = false;
  auto* oracle = app.add_subcommand("oracle", "Jacobian-rank oracle over GF(p)");
  add_pattern(oracle);
  add_oracle(oracle);
  add_seed(oracle);
  oracle->add_flag("--independence", independence, "Test independence instead of base");

  auto* certify = app.add_subcommand("certify", "reduce, relaxed check, partition, oracle");
  add_pattern(certify);
  add_oracle(certify);
  add_seed(certify);

  std::string cert_path;
  std::string obs_path;
  bool rational = false;
  auto* complete = app.add_subcommand("complete", "Unique rank-r completion from a partition certificate");
  add_pattern(complete);
  add_seed(complete);
  complete->add_option("--certificate", cert_path, "Certificate JSON")->required();
  complete->add_option("--observations", obs_path, "CSV rows i,j,value")->required();
  complete->add_option("--prime", c.prime, "Field modulus");
  complete->add_flag("--rational", rational, "Work over the rationals");

  std::string full_out;
  auto* sample = app.add_subcommand("sample", "Observations of a random rank-r matrix on a pattern");
  add_pattern(sample);
  add_seed(sample);
  sample->add_option("--prime", c.prime, "Field modulus");
  sample->add_option("--matrix-out", full_out, "Also write the full matrix as CSV");

  int m = 0;
  int n = 0;
  std::string filter = "base";
  int col_size = 0;
  int size = -1;
  std::string dump;
  auto* verify = app.add_subcommand("verify-conjecture", "Exhaustive census of canonical patterns");
  verify->add_option("--m", m, "Rows")->required();
  verify->add_option("--n", n, "Columns")->required();
  verify->add_option("--r", c.r, "Rank")->required();
  add_oracle(verify);
  add_seed(verify);
  verify->add_option("--jobs", c.jobs, "Worker threads");
  verify->add_option("--filter", filter, "base (size r(m+n-r), min degree r+1) or all")
      ->check(CLI::IsMember({"base", "all"}));
  verify->add_option("--col-size", col_size, "Require every column to have this size");
  verify->add_option("--size", size, "Override the pattern size");
  verify->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--counterexamples", dump, "Write counterexample bundles to this JSON file");

  auto* crosscheck = app.add_subcommand("crosscheck", "Tree (r=1) and K_{m,m} (r=min-1) criteria vs oracle");
  crosscheck->add_option("--m", m, "Rows")->required();
  crosscheck->add_option("--n", n, "Columns")->required();
  crosscheck->add_option("--r", c.r, "Rank")->required();
  add_oracle(crosscheck);
  add_seed(crosscheck);
  crosscheck->add_option("--jobs", c.jobs, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (isa != "auto") kernels::force_isa(isa == "avx2" ? kernels::Isa::avx2 : kernels::Isa::scalar);
    if (*check_slmf) return cmd_check_slmf(c);
    if (*check_relaxed) return cmd_check_relaxed(c, nu, columns);
    if (*partition) return cmd_partition(c, method, prefer_same_phi, node_limit);
    if (*reduce_cmd) return cmd_reduce(c);
    if (*oracle) return cmd_oracle(c, independence);
    if (*certify) return cmd_certify(c);
    if (*complete) {
      if (rational) return complete_with(RationalField(), c, cert_path, obs_path);
      return complete_with(PrimeField(c.prime), c, cert_path, obs_path);
    }
    if (*sample) return cmd_sample(c, full_out);
    if (*verify) return cmd_verify(c, m, n, filter, col_size, size, dump);
    if (*crosscheck) return cmd_crosscheck(c, m, n);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const ContractError& e) {
    std::cerr << "contract error: " << e.what() << "\n";
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
  } catch (const NotGenericError& e) {
    std::cerr << "not generic: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitError;
}
