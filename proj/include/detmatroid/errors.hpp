#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace detmatroid {

// Malformed input text (pattern files, certificates, observation CSV).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation does not hold.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input exceeds one of the desk-scale ceilings (rows, subsets, partitions).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A genericity assumption failed at the sampled point (dimension drop,
// vanishing p_Phi, singular local system).
class NotGenericError : public std::runtime_error {
 public:
  explicit NotGenericError(const std::string& what, std::uint64_t rows = 0)
      : std::runtime_error(what), rows_(rows) {}

  // The failing row set (a phi_alpha or a column support), 0 if none.
  std::uint64_t rows() const { return rows_; }

 private:
  std::uint64_t rows_;
};

}  // namespace detmatroid
