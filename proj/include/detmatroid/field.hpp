#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "detmatroid/errors.hpp"

namespace detmatroid {

inline constexpr std::uint32_t kDefaultPrime = 2147483647U;  // 2^31 - 1

bool is_prime(std::uint64_t n);

// Largest prime strictly below n (n > 3).
std::uint32_t previous_prime(std::uint32_t n);

// GF(p) for an odd prime p < 2^31. Elements are residues in [0, p).
class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint32_t p = kDefaultPrime);

  std::uint32_t modulus() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(value_type a) const { return a == 0; }

  value_type from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<value_type>(r);
  }
  value_type add(value_type a, value_type b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (p_ - b); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p_);
  }
  value_type pow(value_type a, std::uint64_t e) const;
  value_type inv(value_type a) const;
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }

  // Parses a decimal integer (possibly negative) and reduces it.
  value_type parse(const std::string& text) const;
  std::string format(value_type a) const { return std::to_string(a); }

 private:
  std::uint32_t p_;
};

// The rationals, exact, via GMP.
class RationalField {
 public:
  using value_type = mpq_class;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  value_type from_int(long long v) const { return mpq_class(static_cast<long>(v)); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    if (sgn(a) == 0) throw std::domain_error("division by zero");
    return 1 / a;
  }
  value_type div(const value_type& a, const value_type& b) const { return mul(a, inv(b)); }

  // Accepts "a" or "a/b".
  value_type parse(const std::string& text) const;
  std::string format(const value_type& a) const { return a.get_str(); }
};

}  // namespace detmatroid
