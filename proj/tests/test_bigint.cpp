#include <doctest.h>

#include "gramcode/bigint.hpp"
#include "gramcode/rational.hpp"
#include "oracles.hpp"

using gramcode::BigInt;
using gramcode::Rational;

TEST_CASE("bigint arithmetic matches int64 on random operands") {
  gramcode::oracle::Lcg rng(42);
  for (int i = 0; i < 2000; ++i) {
    std::int64_t a = rng.below(2000001) - 1000000;
    std::int64_t b = rng.below(2000001) - 1000000;
    CHECK((BigInt(a) + BigInt(b)).to_int64() == a + b);
    CHECK((BigInt(a) - BigInt(b)).to_int64() == a - b);
    CHECK((BigInt(a) * BigInt(b)).to_int64() == a * b);
    if (b != 0) {
      CHECK((BigInt(a) / BigInt(b)).to_int64() == a / b);
      CHECK((BigInt(a) % BigInt(b)).to_int64() == a % b);
    }
    CHECK((BigInt(a) < BigInt(b)) == (a < b));
  }
}

TEST_CASE("bigint divmod identity on large operands") {
  BigInt a = BigInt::from_string("123456789012345678901234567890123");
  BigInt b = BigInt::from_string("98765432109876543");
  BigInt q, r;
  BigInt::divmod(a, b, q, r);
  CHECK(q * b + r == a);
  CHECK(r >= BigInt(0));
  CHECK(r < b);
}

TEST_CASE("bigint string round trips") {
  for (const char* s :
       {"0", "-1", "34566497280000000", "94556837526637331349504000000000",
        "-739506679855711968646397952000000000"}) {
    CHECK(BigInt::from_string(s).to_string() == s);
  }
}

TEST_CASE("bigint pow and gcd") {
  CHECK(BigInt::pow(BigInt(60), 3).to_int64() == 216000);
  CHECK(BigInt::pow(BigInt(2), 70).to_string() == "1180591620717411303424");
  CHECK(BigInt::gcd(BigInt(216000), BigInt(360)).to_int64() == 360);
  CHECK(BigInt::gcd(BigInt(-12), BigInt(18)).to_int64() == 6);
}

TEST_CASE("rational normalization and arithmetic") {
  Rational a(BigInt(2), BigInt(-8));
  CHECK(a.to_string() == "-1/4");
  Rational b = Rational::from_string("3/6");
  CHECK(b.to_string() == "1/2");
  CHECK((a + b).to_string() == "1/4");
  CHECK((a * b).to_string() == "-1/8");
  CHECK((b / b).to_string() == "1/1");
  CHECK(Rational::from_string("12168").to_string() == "12168/1");
  CHECK(Rational(BigInt(1), BigInt(288)) ==
        Rational(BigInt(60), BigInt(17280)));
  CHECK(Rational(BigInt(-1), BigInt(3)) < Rational(BigInt(1), BigInt(7)));
}
