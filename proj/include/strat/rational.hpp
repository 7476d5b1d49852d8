#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace strat {

/**
 * Exact rational number on 64-bit words.
 *
 * Every value produced by this library is a small fraction (Newton slopes,
 * orbit averages, coefficients of coroots), so 64-bit components are ample.
 * All products nevertheless run through 128-bit intermediates and throw
 * std::overflow_error if a result would not fit, so a silent wraparound is
 * impossible.  There is deliberately no conversion to floating point.
 */
class Rat {
public:
  Rat() : num_(0), den_(1) {}
  Rat(long long n) : num_(n), den_(1) {}
  Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }

  Rat operator-() const { return Rat(-num_, den_); }

  Rat operator+(const Rat &o) const {
    return Rat::from128((__int128)num_ * o.den_ + (__int128)o.num_ * den_,
                        (__int128)den_ * o.den_);
  }
  Rat operator-(const Rat &o) const { return *this + (-o); }
  Rat operator*(const Rat &o) const {
    return Rat::from128((__int128)num_ * o.num_, (__int128)den_ * o.den_);
  }
  Rat operator/(const Rat &o) const {
    if (o.num_ == 0) throw std::domain_error("Rat: division by zero");
    return Rat::from128((__int128)num_ * o.den_, (__int128)den_ * o.num_);
  }

  Rat &operator+=(const Rat &o) { return *this = *this + o; }
  Rat &operator-=(const Rat &o) { return *this = *this - o; }
  Rat &operator*=(const Rat &o) { return *this = *this * o; }
  Rat &operator/=(const Rat &o) { return *this = *this / o; }

  bool operator==(const Rat &o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rat &o) const { return !(*this == o); }
  bool operator<(const Rat &o) const {
    return (__int128)num_ * o.den_ < (__int128)o.num_ * den_;
  }
  bool operator>(const Rat &o) const { return o < *this; }
  bool operator<=(const Rat &o) const { return !(o < *this); }
  bool operator>=(const Rat &o) const { return !(*this < o); }

  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  /// Rendered as "a/b", or "a" when the denominator is 1.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Floor of the rational as an integer.
  long long floor() const {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

private:
  long long num_;
  long long den_; // always > 0, gcd(|num|, den) == 1

  static long long narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
      throw std::overflow_error("Rat: 64-bit overflow");
    return (long long)v;
  }

  static Rat from128(__int128 n, __int128 d) {
    Rat r;
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    r.num_ = narrow(n);
    r.den_ = narrow(d);
    return r;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a == 0 ? 1 : a;
  }

  void normalize() {
    if (den_ == 0) throw std::domain_error("Rat: zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
    if (num_ == 0) den_ = 1;
  }
};

using RatVec = std::vector<Rat>;

inline bool ratvec_eq(const RatVec &a, const RatVec &b) { return a == b; }

/// Lexicographic comparison, used wherever a canonical ordering of rational
/// vectors is required (poset element order, dedup keys).
inline bool ratvec_lex_less(const RatVec &a, const RatVec &b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

inline std::string ratvec_str(const RatVec &v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

} // namespace strat
