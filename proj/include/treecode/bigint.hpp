#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace treecode {

// Arbitrary-precision unsigned integer, base 2^32 limbs, little-endian.
// Covers what the exact counting formulas and rational pmfs need:
// n^(n-1) style powers, factorials, gcd, decimal printing.
class BigUint {
 public:
  BigUint() = default;
  BigUint(std::uint64_t v);  // NOLINT: implicit by design

  bool is_zero() const { return limbs_.empty(); }
  bool fits_u64() const { return limbs_.size() <= 2; }
  std::uint64_t to_u64() const;  // caller checks fits_u64()
  double to_double() const;
  std::string to_string() const;

  static int compare(const BigUint& a, const BigUint& b);
  bool operator==(const BigUint& o) const { return compare(*this, o) == 0; }
  bool operator!=(const BigUint& o) const { return compare(*this, o) != 0; }
  bool operator<(const BigUint& o) const { return compare(*this, o) < 0; }
  bool operator<=(const BigUint& o) const { return compare(*this, o) <= 0; }
  bool operator>(const BigUint& o) const { return compare(*this, o) > 0; }
  bool operator>=(const BigUint& o) const { return compare(*this, o) >= 0; }

  BigUint operator+(const BigUint& o) const;
  BigUint operator-(const BigUint& o) const;  // requires *this >= o
  BigUint operator*(const BigUint& o) const;
  BigUint operator/(const BigUint& o) const;
  BigUint operator%(const BigUint& o) const;

  // quotient and remainder in one pass
  static void divmod(const BigUint& num, const BigUint& den, BigUint& q, BigUint& r);
  static BigUint gcd(BigUint a, BigUint b);
  static BigUint pow(const BigUint& base, unsigned exp);
  static BigUint factorial(unsigned k);
  static BigUint binomial(unsigned n, unsigned k);

 private:
  void trim();
  void shift_left_bits(unsigned k);
  unsigned bit_length() const;
  bool bit(unsigned i) const;

  std::vector<std::uint32_t> limbs_;  // empty means zero
};

}  // namespace treecode
