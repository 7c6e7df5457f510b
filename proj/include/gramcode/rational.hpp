#ifndef GRAMCODE_RATIONAL_HPP
#define GRAMCODE_RATIONAL_HPP

#include <string>

#include "gramcode/bigint.hpp"

namespace gramcode {

// Exact rational; always stored normalized (gcd 1, positive denominator).
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(BigInt n) : num_(std::move(n)), den_(1) {}  // NOLINT
  Rational(std::int64_t n) : num_(n), den_(1) {}       // NOLINT
  Rational(BigInt n, BigInt d);

  // Parses "num/den" or a plain integer.
  static Rational from_string(const std::string& s);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return den_ == BigInt(1); }

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  bool operator==(const Rational& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;

  // Machine-readable form is always "num/den", e.g. "1/4", "12168/1".
  std::string to_string() const;

 private:
  BigInt num_;
  BigInt den_;
  void normalize();
};

}  // namespace gramcode

#endif
