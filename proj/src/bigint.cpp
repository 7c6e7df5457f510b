#include "gramcode/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace gramcode {

BigInt::BigInt(std::int64_t v) {
  if (v < 0) sign_ = -1;
  std::uint64_t mag = v < 0 ? -static_cast<std::uint64_t>(v) : v;
  while (mag > 0) {
    limbs_.push_back(static_cast<std::uint32_t>(mag % kBase));
    mag /= kBase;
  }
}

void BigInt::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  if (limbs_.empty()) sign_ = 1;
}

int BigInt::cmp_mag(const BigInt& a, const BigInt& b) {
  if (a.limbs_.size() != b.limbs_.size())
    return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
  for (std::size_t i = a.limbs_.size(); i-- > 0;) {
    if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
  }
  return 0;
}

BigInt BigInt::add_mag(const BigInt& a, const BigInt& b) {
  BigInt r;
  r.limbs_.resize(std::max(a.limbs_.size(), b.limbs_.size()) + 1, 0);
  std::uint32_t carry = 0;
  for (std::size_t i = 0; i < r.limbs_.size(); ++i) {
    std::uint64_t s = carry;
    if (i < a.limbs_.size()) s += a.limbs_[i];
    if (i < b.limbs_.size()) s += b.limbs_[i];
    r.limbs_[i] = static_cast<std::uint32_t>(s % kBase);
    carry = static_cast<std::uint32_t>(s / kBase);
  }
  r.trim();
  return r;
}

BigInt BigInt::sub_mag(const BigInt& a, const BigInt& b) {
  BigInt r;
  r.limbs_.resize(a.limbs_.size(), 0);
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
    std::int64_t s = static_cast<std::int64_t>(a.limbs_[i]) - borrow -
                     (i < b.limbs_.size() ? b.limbs_[i] : 0);
    if (s < 0) {
      s += kBase;
      borrow = 1;
    } else {
      borrow = 0;
    }
    r.limbs_[i] = static_cast<std::uint32_t>(s);
  }
  r.trim();
  return r;
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  if (!r.is_zero()) r.sign_ = -r.sign_;
  return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
  if (sign_ == o.sign_) {
    BigInt r = add_mag(*this, o);
    r.sign_ = is_zero() && o.is_zero() ? 1 : sign_;
    r.trim();
    return r;
  }
  int c = cmp_mag(*this, o);
  if (c == 0) return BigInt();
  BigInt r = c > 0 ? sub_mag(*this, o) : sub_mag(o, *this);
  r.sign_ = c > 0 ? sign_ : o.sign_;
  r.trim();
  return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
  if (is_zero() || o.is_zero()) return BigInt();
  BigInt r;
  r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
      std::uint64_t cur = r.limbs_[i + j] +
                          static_cast<std::uint64_t>(limbs_[i]) * o.limbs_[j] +
                          carry;
      r.limbs_[i + j] = static_cast<std::uint32_t>(cur % kBase);
      carry = cur / kBase;
    }
    std::size_t k = i + o.limbs_.size();
    while (carry > 0) {
      std::uint64_t cur = r.limbs_[k] + carry;
      r.limbs_[k] = static_cast<std::uint32_t>(cur % kBase);
      carry = cur / kBase;
      ++k;
    }
  }
  r.sign_ = sign_ * o.sign_;
  r.trim();
  return r;
}

// Schoolbook long division on limbs; the inner quotient digit is found by
// binary search, which is plenty for the matrix/interpolation sizes here.
void BigInt::divmod(const BigInt& num, const BigInt& den, BigInt& quot,
                    BigInt& rem) {
  if (den.is_zero()) throw std::domain_error("BigInt: division by zero");
  BigInt a = num.abs(), b = den.abs();
  if (cmp_mag(a, b) < 0) {
    quot = BigInt();
    rem = num;
    return;
  }
  BigInt q;
  q.limbs_.assign(a.limbs_.size(), 0);
  BigInt r;
  for (std::size_t i = a.limbs_.size(); i-- > 0;) {
    // r = r * base + limb i
    r.limbs_.insert(r.limbs_.begin(), a.limbs_[i]);
    r.trim();
    std::uint32_t lo = 0, hi = kBase - 1, digit = 0;
    while (lo <= hi) {
      std::uint32_t mid = lo + (hi - lo) / 2;
      if (cmp_mag(b * BigInt(static_cast<std::int64_t>(mid)), r) <= 0) {
        digit = mid;
        lo = mid + 1;
      } else {
        if (mid == 0) break;
        hi = mid - 1;
      }
    }
    q.limbs_[i] = digit;
    r = sub_mag(r, b * BigInt(static_cast<std::int64_t>(digit)));
  }
  q.trim();
  r.trim();
  q.sign_ = q.is_zero() ? 1 : num.sign_ * den.sign_;
  r.sign_ = r.is_zero() ? 1 : num.sign_;
  quot = q;
  rem = r;
}

BigInt BigInt::operator/(const BigInt& o) const {
  BigInt q, r;
  divmod(*this, o, q, r);
  return q;
}

BigInt BigInt::operator%(const BigInt& o) const {
  BigInt q, r;
  divmod(*this, o, q, r);
  return r;
}

bool BigInt::operator==(const BigInt& o) const {
  return sign_ == o.sign_ && limbs_ == o.limbs_;
}

bool BigInt::operator<(const BigInt& o) const {
  if (sign_ != o.sign_) return sign_ < o.sign_;
  int c = cmp_mag(*this, o);
  return sign_ > 0 ? c < 0 : c > 0;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  r.sign_ = 1;
  return r;
}

std::string BigInt::to_string() const {
  if (is_zero()) return "0";
  std::string s = sign_ < 0 ? "-" : "";
  s += std::to_string(limbs_.back());
  for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
    std::string part = std::to_string(limbs_[i]);
    s += std::string(9 - part.size(), '0') + part;
  }
  return s;
}

BigInt BigInt::from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("BigInt: empty string");
  std::size_t pos = 0;
  int sign = 1;
  if (s[0] == '-') {
    sign = -1;
    pos = 1;
  } else if (s[0] == '+') {
    pos = 1;
  }
  if (pos == s.size()) throw std::invalid_argument("BigInt: no digits");
  BigInt r;
  for (; pos < s.size(); ++pos) {
    if (s[pos] < '0' || s[pos] > '9')
      throw std::invalid_argument("BigInt: bad digit in \"" + s + "\"");
    r = r * BigInt(10) + BigInt(s[pos] - '0');
  }
  if (sign < 0 && !r.is_zero()) r.sign_ = -1;
  return r;
}

bool BigInt::fits_int64() const {
  if (limbs_.size() > 3) return false;
  __int128 v = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) v = v * kBase + limbs_[i];
  v *= sign_;
  return v >= INT64_MIN && v <= INT64_MAX;
}

std::int64_t BigInt::to_int64() const {
  if (!fits_int64()) throw std::overflow_error("BigInt: does not fit int64");
  std::int64_t v = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;)
    v = v * static_cast<std::int64_t>(kBase) + limbs_[i];
  return sign_ < 0 ? -v : v;
}

BigInt BigInt::pow(const BigInt& base, std::uint64_t exp) {
  BigInt r(1), b = base;
  while (exp > 0) {
    if (exp & 1) r = r * b;
    b = b * b;
    exp >>= 1;
  }
  return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
  a = a.abs();
  b = b.abs();
  while (!b.is_zero()) {
    BigInt r = a % b;
    a = b;
    b = r;
  }
  return a;
}

}  // namespace gramcode
