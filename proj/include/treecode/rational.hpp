#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "treecode/bigint.hpp"

namespace treecode {

// Exact nonnegative rational over BigUint, always kept normalized.
// Probability arithmetic here never needs negatives; subtraction requires
// *this >= o and throws otherwise.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::uint64_t n) : num_(n), den_(1) {}  // NOLINT
  Rational(BigUint num, BigUint den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("Rational with zero denominator");
    normalize();
  }

  const BigUint& num() const { return num_; }
  const BigUint& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  Rational operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  Rational operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  Rational operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
  }
  Rational operator/(const Rational& o) const {
    if (o.is_zero()) throw std::domain_error("Rational division by zero");
    return Rational(num_ * o.den_, den_ * o.num_);
  }

  bool operator==(const Rational& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const { return num_ * o.den_ < o.num_ * den_; }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return !(*this < o); }

  double to_double() const { return num_.to_double() / den_.to_double(); }

  std::string to_string() const {
    if (den_ == BigUint(1)) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = BigUint(1);
      return;
    }
    BigUint g = BigUint::gcd(num_, den_);
    if (g != BigUint(1)) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
  }

  BigUint num_, den_;
};

}  // namespace treecode
