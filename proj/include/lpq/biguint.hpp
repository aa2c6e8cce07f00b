#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lpq {

// Unsigned arbitrary-precision integer, just large enough for exact
// enumerative coding: binomial coefficients such as C(2048, 1024) overflow
// every machine word, and type ranks must be bit-exact.
class BigUint {
 public:
  BigUint() = default;
  BigUint(std::uint64_t v);  // NOLINT(google-explicit-constructor)

  // Exact binomial coefficient via the multiplicative recurrence
  // C(n, i) = C(n, i-1) * (n - i + 1) / i; returns 0 when r > n.
  static BigUint binomial(std::uint64_t n, std::uint64_t r);

  bool is_zero() const { return limbs_.empty(); }
  std::size_t bit_length() const;  // 0 for value 0
  bool bit(std::size_t i) const;
  void set_bit(std::size_t i);

  BigUint& operator+=(const BigUint& rhs);
  BigUint& operator-=(const BigUint& rhs);  // requires *this >= rhs
  BigUint& mul_u32(std::uint32_t m);
  BigUint& div_u32(std::uint32_t divisor);  // floor division, divisor != 0

  int compare(const BigUint& rhs) const;  // -1, 0, +1

  std::uint64_t to_u64() const;  // requires bit_length() <= 64
  std::string to_string() const;

 private:
  void trim();

  std::vector<std::uint32_t> limbs_;  // little-endian base 2^32, no leading zeros
};

inline bool operator==(const BigUint& a, const BigUint& b) { return a.compare(b) == 0; }
inline bool operator!=(const BigUint& a, const BigUint& b) { return a.compare(b) != 0; }
inline bool operator<(const BigUint& a, const BigUint& b) { return a.compare(b) < 0; }
inline bool operator<=(const BigUint& a, const BigUint& b) { return a.compare(b) <= 0; }
inline bool operator>(const BigUint& a, const BigUint& b) { return a.compare(b) > 0; }
inline bool operator>=(const BigUint& a, const BigUint& b) { return a.compare(b) >= 0; }

inline BigUint operator+(BigUint a, const BigUint& b) { return a += b; }
inline BigUint operator-(BigUint a, const BigUint& b) { return a -= b; }

}  // namespace lpq
