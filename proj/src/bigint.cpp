#include "treecode/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace treecode {

BigUint::BigUint(std::uint64_t v) {
  if (v) limbs_.push_back(static_cast<std::uint32_t>(v & 0xFFFFFFFFu));
  if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
}

void BigUint::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

std::uint64_t BigUint::to_u64() const {
  std::uint64_t v = 0;
  if (limbs_.size() > 0) v = limbs_[0];
  if (limbs_.size() > 1) v |= static_cast<std::uint64_t>(limbs_[1]) << 32;
  return v;
}

double BigUint::to_double() const {
  double v = 0.0;
  for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it)
    v = v * 4294967296.0 + static_cast<double>(*it);
  return v;
}

int BigUint::compare(const BigUint& a, const BigUint& b) {
  if (a.limbs_.size() != b.limbs_.size())
    return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
  for (std::size_t i = a.limbs_.size(); i-- > 0;) {
    if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
  }
  return 0;
}

BigUint BigUint::operator+(const BigUint& o) const {
  BigUint r;
  const std::size_t n = std::max(limbs_.size(), o.limbs_.size());
  r.limbs_.resize(n, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t s = carry;
    if (i < limbs_.size()) s += limbs_[i];
    if (i < o.limbs_.size()) s += o.limbs_[i];
    r.limbs_[i] = static_cast<std::uint32_t>(s & 0xFFFFFFFFu);
    carry = s >> 32;
  }
  if (carry) r.limbs_.push_back(static_cast<std::uint32_t>(carry));
  return r;
}

BigUint BigUint::operator-(const BigUint& o) const {
  if (*this < o) throw std::underflow_error("BigUint subtraction underflow");
  BigUint r;
  r.limbs_.resize(limbs_.size(), 0);
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::int64_t d = static_cast<std::int64_t>(limbs_[i]) - borrow -
                     (i < o.limbs_.size() ? static_cast<std::int64_t>(o.limbs_[i]) : 0);
    borrow = 0;
    if (d < 0) {
      d += (std::int64_t{1} << 32);
      borrow = 1;
    }
    r.limbs_[i] = static_cast<std::uint32_t>(d);
  }
  r.trim();
  return r;
}

BigUint BigUint::operator*(const BigUint& o) const {
  if (is_zero() || o.is_zero()) return BigUint();
  BigUint r;
  r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
      std::uint64_t cur = static_cast<std::uint64_t>(limbs_[i]) * o.limbs_[j] +
                          r.limbs_[i + j] + carry;
      r.limbs_[i + j] = static_cast<std::uint32_t>(cur & 0xFFFFFFFFu);
      carry = cur >> 32;
    }
    std::size_t k = i + o.limbs_.size();
    while (carry) {
      std::uint64_t cur = r.limbs_[k] + carry;
      r.limbs_[k] = static_cast<std::uint32_t>(cur & 0xFFFFFFFFu);
      carry = cur >> 32;
      ++k;
    }
  }
  r.trim();
  return r;
}

unsigned BigUint::bit_length() const {
  if (limbs_.empty()) return 0;
  std::uint32_t top = limbs_.back();
  unsigned bits = static_cast<unsigned>(limbs_.size() - 1) * 32;
  while (top) {
    ++bits;
    top >>= 1;
  }
  return bits;
}

bool BigUint::bit(unsigned i) const {
  const std::size_t limb = i / 32;
  if (limb >= limbs_.size()) return false;
  return (limbs_[limb] >> (i % 32)) & 1u;
}

void BigUint::shift_left_bits(unsigned k) {
  if (is_zero() || k == 0) return;
  const unsigned limb_shift = k / 32, bit_shift = k % 32;
  limbs_.insert(limbs_.begin(), limb_shift, 0);
  if (bit_shift) {
    std::uint32_t carry = 0;
    for (std::size_t i = limb_shift; i < limbs_.size(); ++i) {
      std::uint32_t cur = limbs_[i];
      limbs_[i] = (cur << bit_shift) | carry;
      carry = cur >> (32 - bit_shift);
    }
    if (carry) limbs_.push_back(carry);
  }
}

void BigUint::divmod(const BigUint& num, const BigUint& den, BigUint& q, BigUint& r) {
  if (den.is_zero()) throw std::domain_error("BigUint division by zero");
  q = BigUint();
  r = BigUint();
  if (num < den) {
    r = num;
    return;
  }
  // binary long division, msb first
  const unsigned nbits = num.bit_length();
  q.limbs_.assign((nbits + 31) / 32, 0);
  for (unsigned i = nbits; i-- > 0;) {
    r.shift_left_bits(1);
    if (num.bit(i)) {
      if (r.limbs_.empty())
        r.limbs_.push_back(1);
      else
        r.limbs_[0] |= 1u;
    }
    if (r >= den) {
      r = r - den;
      q.limbs_[i / 32] |= (1u << (i % 32));
    }
  }
  q.trim();
  r.trim();
}

BigUint BigUint::operator/(const BigUint& o) const {
  BigUint q, r;
  divmod(*this, o, q, r);
  return q;
}

BigUint BigUint::operator%(const BigUint& o) const {
  BigUint q, r;
  divmod(*this, o, q, r);
  return r;
}

BigUint BigUint::gcd(BigUint a, BigUint b) {
  while (!b.is_zero()) {
    BigUint r = a % b;
    a = b;
    b = r;
  }
  return a;
}

BigUint BigUint::pow(const BigUint& base, unsigned exp) {
  BigUint r(1), b = base;
  while (exp) {
    if (exp & 1u) r = r * b;
    exp >>= 1;
    if (exp) b = b * b;
  }
  return r;
}

BigUint BigUint::factorial(unsigned k) {
  BigUint r(1);
  for (unsigned i = 2; i <= k; ++i) r = r * BigUint(i);
  return r;
}

BigUint BigUint::binomial(unsigned n, unsigned k) {
  if (k > n) return BigUint();
  if (k > n - k) k = n - k;
  BigUint r(1);
  for (unsigned i = 1; i <= k; ++i) r = (r * BigUint(n - k + i)) / BigUint(i);
  return r;
}

std::string BigUint::to_string() const {
  if (is_zero()) return "0";
  std::vector<std::uint32_t> chunks;  // base 10^9, little-endian
  BigUint cur = *this;
  const BigUint base(1000000000u);
  while (!cur.is_zero()) {
    BigUint q, r;
    divmod(cur, base, q, r);
    chunks.push_back(static_cast<std::uint32_t>(r.to_u64()));
    cur = q;
  }
  std::string s = std::to_string(chunks.back());
  for (std::size_t i = chunks.size() - 1; i-- > 0;) {
    std::string part = std::to_string(chunks[i]);
    s += std::string(9 - part.size(), '0') + part;
  }
  return s;
}

}  // namespace treecode
