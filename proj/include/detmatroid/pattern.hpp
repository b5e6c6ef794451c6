#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "detmatroid/bits.hpp"

namespace detmatroid {

inline constexpr int kMaxDimension = 64;

// A support pattern Omega in [m] x [n], stored column by column: column j
// (1-based) holds the row set omega_j as a bitmask. Value type, immutable in
// practice; all operations return new patterns.
class SupportPattern {
 public:
  SupportPattern() = default;

  // Throws ContractError on m, n outside [0, 64] or on bits outside [m].
  SupportPattern(int m, int n, std::vector<RowMask> columns);

  // Builds from 1-based row lists; lists need not be sorted but must be
  // duplicate free.
  static SupportPattern from_columns(int m, const std::vector<std::vector<int>>& columns);

  // The full pattern [m] x [n].
  static SupportPattern full(int m, int n);

  int rows() const { return m_; }
  int cols() const { return static_cast<int>(columns_.size()); }

  RowMask column(int j) const { return columns_.at(static_cast<std::size_t>(j - 1)); }
  const std::vector<RowMask>& columns() const { return columns_; }
  std::vector<int> column_indices(int j) const { return to_indices(column(j)); }

  bool contains(int i, int j) const { return detmatroid::contains(column(j), i); }
  int column_size(int j) const { return popcount(column(j)); }

  // size(Omega) = sum_j #omega_j.
  int size() const;

  // Restriction to the given columns (1-based, kept in the given order).
  SupportPattern restrict_columns(const std::vector<int>& cols) const;

  // Row support of row i as a column mask.
  RowMask row(int i) const;

  friend bool operator==(const SupportPattern&, const SupportPattern&) = default;

 private:
  int m_ = 0;
  std::vector<RowMask> columns_;
};

struct Degrees {
  std::vector<int> rows;
  std::vector<int> cols;
};

enum class PatternFormat { indicator, json };

// Accepts either an indicator matrix (m lines of n 0/1 tokens) or a JSON
// document {"m":..,"n":..,"columns":[[..],..]}. Throws ParseError.
SupportPattern parse_pattern(std::string_view text);

std::string emit_pattern(const SupportPattern& p, PatternFormat format);

Degrees degrees(const SupportPattern& p);

SupportPattern transpose(const SupportPattern& p);

struct RemovalStep {
  enum class Kind { column, row };
  Kind kind;
  int index;     // 1-based index in the pattern at the time of removal
  int original;  // 1-based index in the input pattern
};

struct Reduction {
  SupportPattern reduced;
  std::vector<RemovalStep> log;
  std::vector<int> kept_rows;  // original indices of surviving rows
  std::vector<int> kept_cols;  // original indices of surviving columns
};

// Deletes columns of size exactly r and rows of degree exactly r, column
// pass then row pass, ascending index, until a fixed point.
Reduction reduce(const SupportPattern& p, int r);

// Applies a removal log to a pattern; replaying reduce(p).log on p gives
// reduce(p).reduced.
SupportPattern replay(const SupportPattern& p, const std::vector<RemovalStep>& log);

SupportPattern remove_column(const SupportPattern& p, int j);
SupportPattern remove_row(const SupportPattern& p, int i);

}  // namespace detmatroid
