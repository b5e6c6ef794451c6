#include "detmatroid/io.hpp"

namespace detmatroid {

using nlohmann::json;

json pattern_json(const SupportPattern& p) { return json::parse(emit_pattern(p, PatternFormat::json)); }

json indices_json(RowMask mask) { return to_indices(mask); }

json to_json(const ViolationWitness& w) {
  return json{{"I", indices_json(w.subset)}, {"lhs", w.lhs}, {"rhs", w.rhs}, {"kind", to_string(w.kind)}};
}

json to_json(const RelaxedResult& r) {
  json out{{"holds", r.holds}};
  if (r.witness) out["witness"] = to_json(*r.witness);
  return out;
}

namespace {

json indicator_rows(const SupportPattern& p) {
  json rows = json::array();
  for (int i = 1; i <= p.rows(); ++i) {
    json row = json::array();
    for (int j = 1; j <= p.cols(); ++j) row.push_back(p.contains(i, j) ? 1 : 0);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json to_json(const PartitionCertificate& cert) {
  json phis = json::array();
  json sources = json::array();
  for (const auto& s : cert.induced) {
    phis.push_back(indicator_rows(s.phi.pattern()));
    sources.push_back(s.source);
  }
  return json{{"r", cert.r}, {"groups", cert.groups}, {"phis", phis}, {"sources", sources},
              {"same_phi", cert.same_phi}};
}

json to_json(const Reduction& red) {
  json log = json::array();
  for (const auto& step : red.log) {
    log.push_back({{"kind", step.kind == RemovalStep::Kind::column ? "column" : "row"},
                   {"index", step.index},
                   {"original", step.original}});
  }
  return json{{"log", log},
              {"kept_rows", red.kept_rows},
              {"kept_cols", red.kept_cols},
              {"reduced", pattern_json(red.reduced)}};
}

PartitionCertificate certificate_from_json(const SupportPattern& p, const json& doc) {
  int r = 0;
  std::vector<std::vector<int>> groups;
  try {
    r = doc.at("r").get<int>();
    groups = doc.at("groups").get<std::vector<std::vector<int>>>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
  PartitionCertificate cert = make_certificate(p, r, groups);
  if (doc.contains("phis")) {
    const json expected = to_json(cert).at("phis");
    if (doc.at("phis") != expected) {
      throw ContractError("certificate phis do not match the SLMFs induced by its groups");
    }
  }
  return cert;
}

}  // namespace detmatroid
