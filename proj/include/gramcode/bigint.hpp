#ifndef GRAMCODE_BIGINT_HPP
#define GRAMCODE_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace gramcode {

// Arbitrary-precision signed integer, sign-magnitude with base-1e9 limbs.
// Magnitude limbs are little-endian and never have trailing zeros; zero is
// an empty limb vector with sign +1.
class BigInt {
 public:
  BigInt() = default;
  BigInt(std::int64_t v);  // NOLINT: implicit by design
  static BigInt from_string(const std::string& s);

  bool is_zero() const { return limbs_.empty(); }
  bool is_negative() const { return sign_ < 0; }

  BigInt operator-() const;
  BigInt operator+(const BigInt& o) const;
  BigInt operator-(const BigInt& o) const;
  BigInt operator*(const BigInt& o) const;
  BigInt operator/(const BigInt& o) const;  // truncates toward zero
  BigInt operator%(const BigInt& o) const;  // sign follows dividend

  BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
  BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
  BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

  bool operator==(const BigInt& o) const;
  bool operator!=(const BigInt& o) const { return !(*this == o); }
  bool operator<(const BigInt& o) const;
  bool operator>(const BigInt& o) const { return o < *this; }
  bool operator<=(const BigInt& o) const { return !(o < *this); }
  bool operator>=(const BigInt& o) const { return !(*this < o); }

  BigInt abs() const;
  std::string to_string() const;

  // Throws std::overflow_error if the value does not fit.
  std::int64_t to_int64() const;
  bool fits_int64() const;

  static BigInt pow(const BigInt& base, std::uint64_t exp);
  static BigInt gcd(BigInt a, BigInt b);
  static void divmod(const BigInt& num, const BigInt& den, BigInt& quot,
                     BigInt& rem);

 private:
  static constexpr std::uint32_t kBase = 1000000000u;
  int sign_ = 1;
  std::vector<std::uint32_t> limbs_;

  void trim();
  static int cmp_mag(const BigInt& a, const BigInt& b);
  static BigInt add_mag(const BigInt& a, const BigInt& b);
  static BigInt sub_mag(const BigInt& a, const BigInt& b);  // |a| >= |b|
};

}  // namespace gramcode

#endif
