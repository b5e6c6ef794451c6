#pragma once

#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"

#include "detmatroid/errors.hpp"
#include "detmatroid/grassmann.hpp"
#include "detmatroid/partition.hpp"
#include "detmatroid/pattern.hpp"
#include "detmatroid/slmf.hpp"

namespace detmatroid {

nlohmann::json pattern_json(const SupportPattern& p);
nlohmann::json indices_json(RowMask mask);
nlohmann::json to_json(const ViolationWitness& w);
nlohmann::json to_json(const RelaxedResult& r);
nlohmann::json to_json(const PartitionCertificate& cert);
nlohmann::json to_json(const Reduction& red);

// Rebuilds a certificate from {"r", "groups", ...}; when "phis" is present it
// must match the induced SLMFs. Throws ParseError or ContractError.
PartitionCertificate certificate_from_json(const SupportPattern& p, const nlohmann::json& doc);

// Lines "i,j,value" (1-based); blank lines and lines starting with '#' skipped.
template <typename Field>
Observations<Field> parse_observations(const Field& F, std::string_view text) {
  Observations<Field> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) {
      const auto a = field.find_first_not_of(" \t");
      const auto b = field.find_last_not_of(" \t");
      fields.push_back(a == std::string::npos ? "" : field.substr(a, b - a + 1));
    }
    if (fields.size() != 3) {
      throw ParseError("observations line " + std::to_string(lineno) + ": expected i,j,value");
    }
    int i = 0;
    int j = 0;
    try {
      std::size_t used_i = 0;
      std::size_t used_j = 0;
      i = std::stoi(fields[0], &used_i);
      j = std::stoi(fields[1], &used_j);
      if (used_i != fields[0].size() || used_j != fields[1].size()) throw std::invalid_argument("index");
    } catch (const std::exception&) {
      throw ParseError("observations line " + std::to_string(lineno) + ": bad index");
    }
    typename Field::value_type v;
    try {
      v = F.parse(fields[2]);
    } catch (const std::exception& e) {
      throw ParseError("observations line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!out.emplace(std::make_pair(i, j), v).second) {
      throw ParseError("observations line " + std::to_string(lineno) + ": duplicate entry (" +
                       std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  return out;
}

template <typename Field>
std::string matrix_csv(const Field& F, const FieldMatrix<Field>& X) {
  std::string out;
  for (std::size_t i = 0; i < X.rows(); ++i) {
    for (std::size_t j = 0; j < X.cols(); ++j) {
      if (j) out += ',';
      out += F.format(X(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace detmatroid
