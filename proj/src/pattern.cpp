#include "detmatroid/pattern.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

#include "detmatroid/errors.hpp"

namespace detmatroid {

using nlohmann::json;

SupportPattern::SupportPattern(int m, int n, std::vector<RowMask> columns)
    : m_(m), columns_(std::move(columns)) {
  if (m < 0 || m > kMaxDimension) {
    throw ContractError("row count " + std::to_string(m) + " outside [0, 64]");
  }
  if (n < 0 || n > kMaxDimension) {
    throw ContractError("column count " + std::to_string(n) + " outside [0, 64]");
  }
  if (static_cast<int>(columns_.size()) != n) {
    throw ContractError("expected " + std::to_string(n) + " columns, got " +
                        std::to_string(columns_.size()));
  }
  const RowMask allowed = full_mask(m);
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    if ((columns_[j] & ~allowed) != 0) {
      throw ContractError("column " + std::to_string(j + 1) + " has rows outside [1, " +
                          std::to_string(m) + "]");
    }
  }
}

SupportPattern SupportPattern::from_columns(int m,
                                            const std::vector<std::vector<int>>& columns) {
  std::vector<RowMask> masks;
  masks.reserve(columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    RowMask mask = 0;
    for (int i : columns[j]) {
      if (i < 1 || i > m) {
        throw ContractError("column " + std::to_string(j + 1) + ": row " + std::to_string(i) +
                            " outside [1, " + std::to_string(m) + "]");
      }
      if (detmatroid::contains(mask, i)) {
        throw ContractError("column " + std::to_string(j + 1) + ": duplicate row " +
                            std::to_string(i));
      }
      mask |= bit_of(i);
    }
    masks.push_back(mask);
  }
  return SupportPattern(m, static_cast<int>(columns.size()), std::move(masks));
}

SupportPattern SupportPattern::full(int m, int n) {
  return SupportPattern(m, n, std::vector<RowMask>(static_cast<std::size_t>(n), full_mask(m)));
}

int SupportPattern::size() const {
  int total = 0;
  for (RowMask c : columns_) total += popcount(c);
  return total;
}

SupportPattern SupportPattern::restrict_columns(const std::vector<int>& cols) const {
  std::vector<RowMask> masks;
  masks.reserve(cols.size());
  for (int j : cols) {
    if (j < 1 || j > this->cols()) {
      throw ContractError("column index " + std::to_string(j) + " out of range");
    }
    masks.push_back(column(j));
  }
  const int n = static_cast<int>(masks.size());
  return SupportPattern(m_, n, std::move(masks));
}

RowMask SupportPattern::row(int i) const {
  RowMask out = 0;
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    if (detmatroid::contains(columns_[j], i)) out |= RowMask{1} << j;
  }
  return out;
}

namespace {

SupportPattern parse_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("JSON pattern must be an object");
  for (const char* key : {"m", "n", "columns"}) {
    if (!doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  }
  if (!doc["m"].is_number_integer()) throw ParseError("field 'm' must be an integer");
  if (!doc["n"].is_number_integer()) throw ParseError("field 'n' must be an integer");
  const auto m = doc["m"].get<long long>();
  const auto n = doc["n"].get<long long>();
  if (m < 1 || m > kMaxDimension) throw ParseError("field 'm' must lie in [1, 64]");
  if (n < 1 || n > kMaxDimension) throw ParseError("field 'n' must lie in [1, 64]");
  const json& cols = doc["columns"];
  if (!cols.is_array() || static_cast<long long>(cols.size()) != n) {
    throw ParseError("field 'columns' must be an array of n entries");
  }
  std::vector<RowMask> masks;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const std::string where = "columns[" + std::to_string(j) + "]";
    if (!cols[j].is_array()) throw ParseError(where + " must be an array");
    RowMask mask = 0;
    for (std::size_t k = 0; k < cols[j].size(); ++k) {
      const json& v = cols[j][k];
      const std::string at = where + "[" + std::to_string(k) + "]";
      if (!v.is_number_integer()) throw ParseError(at + " must be an integer");
      const auto i = v.get<long long>();
      if (i < 1 || i > m) {
        throw ParseError(at + " = " + std::to_string(i) + " outside [1, " + std::to_string(m) +
                         "]");
      }
      if (detmatroid::contains(mask, static_cast<int>(i))) {
        throw ParseError(at + " duplicates row " + std::to_string(i));
      }
      mask |= bit_of(static_cast<int>(i));
    }
    masks.push_back(mask);
  }
  return SupportPattern(static_cast<int>(m), static_cast<int>(n), std::move(masks));
}

SupportPattern parse_indicator(std::string_view text) {
  std::vector<std::vector<bool>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream tokens(line);
    std::string tok;
    std::vector<bool> row;
    while (tokens >> tok) {
      if (tok == "0") {
        row.push_back(false);
      } else if (tok == "1") {
        row.push_back(true);
      } else {
        throw ParseError("line " + std::to_string(line_no) + ": token '" + tok + "' is not 0 or 1");
      }
    }
    if (row.empty()) {
      // Blank lines are only allowed at the end of the document.
      std::string rest;
      while (std::getline(in, rest)) {
        ++line_no;
        if (rest.find_first_not_of(" \t\r") != std::string::npos) {
          throw ParseError("line " + std::to_string(line_no) + ": content after blank line");
        }
      }
      break;
    }
    if (rows.empty()) {
      width = row.size();
    } else if (row.size() != width) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                       " tokens, got " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty pattern");
  if (rows.size() > static_cast<std::size_t>(kMaxDimension)) {
    throw ParseError("more than 64 rows");
  }
  if (width > static_cast<std::size_t>(kMaxDimension)) throw ParseError("more than 64 columns");
  std::vector<RowMask> masks(width, 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      if (rows[i][j]) masks[j] |= RowMask{1} << i;
    }
  }
  return SupportPattern(static_cast<int>(rows.size()), static_cast<int>(width), std::move(masks));
}

}  // namespace

SupportPattern parse_pattern(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw ParseError("empty pattern");
  if (text[first] == '{') return parse_json(text);
  return parse_indicator(text.substr(first));
}

std::string emit_pattern(const SupportPattern& p, PatternFormat format) {
  if (format == PatternFormat::json) {
    json cols = json::array();
    for (int j = 1; j <= p.cols(); ++j) cols.push_back(p.column_indices(j));
    json doc = {{"m", p.rows()}, {"n", p.cols()}, {"columns", cols}};
    return doc.dump() + "\n";
  }
  std::string out;
  out.reserve(static_cast<std::size_t>(p.rows() * (2 * p.cols() + 1)));
  for (int i = 1; i <= p.rows(); ++i) {
    for (int j = 1; j <= p.cols(); ++j) {
      if (j > 1) out += ' ';
      out += p.contains(i, j) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

Degrees degrees(const SupportPattern& p) {
  Degrees d;
  d.rows.assign(static_cast<std::size_t>(p.rows()), 0);
  d.cols.reserve(static_cast<std::size_t>(p.cols()));
  for (int j = 1; j <= p.cols(); ++j) {
    d.cols.push_back(p.column_size(j));
    for (int i : p.column_indices(j)) ++d.rows[static_cast<std::size_t>(i - 1)];
  }
  return d;
}

SupportPattern transpose(const SupportPattern& p) {
  std::vector<RowMask> masks;
  masks.reserve(static_cast<std::size_t>(p.rows()));
  for (int i = 1; i <= p.rows(); ++i) masks.push_back(p.row(i));
  return SupportPattern(p.cols(), p.rows(), std::move(masks));
}

SupportPattern remove_column(const SupportPattern& p, int j) {
  if (j < 1 || j > p.cols()) throw ContractError("column index out of range");
  std::vector<RowMask> masks = p.columns();
  masks.erase(masks.begin() + (j - 1));
  return SupportPattern(p.rows(), p.cols() - 1, std::move(masks));
}

SupportPattern remove_row(const SupportPattern& p, int i) {
  if (i < 1 || i > p.rows()) throw ContractError("row index out of range");
  const RowMask low = (RowMask{1} << (i - 1)) - 1;
  std::vector<RowMask> masks;
  masks.reserve(p.columns().size());
  for (RowMask c : p.columns()) masks.push_back((c & low) | ((c >> 1) & ~low));
  return SupportPattern(p.rows() - 1, p.cols(), std::move(masks));
}

Reduction reduce(const SupportPattern& p, int r) {
  if (r < 1) throw ContractError("reduce requires r >= 1");
  Reduction out{p, {}, {}, {}};
  for (int i = 1; i <= p.rows(); ++i) out.kept_rows.push_back(i);
  for (int j = 1; j <= p.cols(); ++j) out.kept_cols.push_back(j);

  bool changed = true;
  while (changed && out.reduced.rows() > 0 && out.reduced.cols() > 0) {
    changed = false;
    // Column pass, ascending original index.
    for (int j = 1; j <= out.reduced.cols();) {
      if (out.reduced.column_size(j) == r) {
        out.log.push_back({RemovalStep::Kind::column, j, out.kept_cols[static_cast<std::size_t>(j - 1)]});
        out.kept_cols.erase(out.kept_cols.begin() + (j - 1));
        out.reduced = remove_column(out.reduced, j);
        changed = true;
      } else {
        ++j;
      }
    }
    if (out.reduced.cols() == 0) break;
    // Row pass. Degrees are taken before any row of this pass is deleted;
    // deleting a row never changes another row's degree.
    const Degrees d = degrees(out.reduced);
    std::vector<int> doomed;
    for (int i = 1; i <= out.reduced.rows(); ++i) {
      if (d.rows[static_cast<std::size_t>(i - 1)] == r) doomed.push_back(i);
    }
    int shift = 0;
    for (int i : doomed) {
      const int current = i - shift;
      out.log.push_back({RemovalStep::Kind::row, current, out.kept_rows[static_cast<std::size_t>(current - 1)]});
      out.kept_rows.erase(out.kept_rows.begin() + (current - 1));
      out.reduced = remove_row(out.reduced, current);
      ++shift;
      changed = true;
    }
  }
  return out;
}

SupportPattern replay(const SupportPattern& p, const std::vector<RemovalStep>& log) {
  SupportPattern cur = p;
  for (const RemovalStep& step : log) {
    cur = step.kind == RemovalStep::Kind::column ? remove_column(cur, step.index)
                                                 : remove_row(cur, step.index);
  }
  return cur;
}

}  // namespace detmatroid
