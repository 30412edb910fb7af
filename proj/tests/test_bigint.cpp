#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "treecode/bigint.hpp"
#include "treecode/rational.hpp"

using treecode::BigUint;
using treecode::Rational;

TEST_CASE("arithmetic round trips against 64-bit values") {
  const std::uint64_t a = 0xFFFFFFFFFFFFull, b = 0x123456789ull;
  CHECK((BigUint(a) + BigUint(b)).to_u64() == a + b);
  CHECK((BigUint(a) - BigUint(b)).to_u64() == a - b);
  CHECK(BigUint(0).is_zero());
  CHECK((BigUint(a) * BigUint(3u)).to_u64() == a * 3);
  CHECK((BigUint(a) / BigUint(b)).to_u64() == a / b);
  CHECK((BigUint(a) % BigUint(b)).to_u64() == a % b);
}

TEST_CASE("large powers print correctly") {
  // 6^5 and 7^6 are the enumeration sizes used elsewhere
  CHECK(BigUint::pow(BigUint(6), 5).to_string() == "7776");
  CHECK(BigUint::pow(BigUint(7), 6).to_string() == "117649");
  // 2^128
  CHECK(BigUint::pow(BigUint(2), 128).to_string() ==
        "340282366920938463463374607431768211456");
}

TEST_CASE("factorial and binomial") {
  CHECK(BigUint::factorial(10).to_u64() == 3628800);
  CHECK(BigUint::binomial(52, 5).to_u64() == 2598960);
  CHECK(BigUint::binomial(5, 9).is_zero());
}

TEST_CASE("gcd and division") {
  const BigUint g = BigUint::gcd(BigUint::factorial(20), BigUint::pow(BigUint(2), 64));
  CHECK(g.to_string() == "262144");  // 2^18 divides 20!
  BigUint q, r;
  BigUint::divmod(BigUint::pow(BigUint(10), 20), BigUint(7), q, r);
  CHECK(r < BigUint(7));
  CHECK((q * BigUint(7) + r) == BigUint::pow(BigUint(10), 20));
}

TEST_CASE("rationals normalize and compare") {
  const Rational half(BigUint(2), BigUint(4));
  CHECK(half == Rational(BigUint(1), BigUint(2)));
  CHECK(half.to_string() == "1/2");
  CHECK((half + half) == Rational(1));
  CHECK((Rational(1) - half) == half);
  CHECK((half * half) == Rational(BigUint(1), BigUint(4)));
  CHECK((half / Rational(2)) == Rational(BigUint(1), BigUint(4)));
  CHECK(Rational(BigUint(1), BigUint(3)) < half);
  CHECK(half.to_double() == doctest::Approx(0.5));
}

TEST_CASE("rational sums telescoping to one") {
  // sum over j of the birthday masses must hit exactly 1 for a mid-size n
  const int n = 20;
  Rational survival(1), total(0);
  const Rational rn(static_cast<std::uint64_t>(n));
  for (int j = 2; j <= n; ++j) {
    if (j < n) {
      const Rational next = survival * Rational(n - j + 1) / rn;
      total = total + (survival - next);
      survival = next;
    } else {
      total = total + survival;
    }
  }
  CHECK(total == Rational(1));
}
