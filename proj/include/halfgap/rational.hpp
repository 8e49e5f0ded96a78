#pragma once

#include <string>

#include "halfgap/checked_int.hpp"

namespace halfgap {

/// Exact rational in canonical form: den > 0 and gcd(num, den) = 1 after
/// every operation. Backed by checked 126-bit integers; there is no silent
/// precision loss anywhere, only loud overflow.
class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(Int num, Int den) : num_(num), den_(den) { normalize(); }
  Rat(long long num) : num_(num), den_(1) {}  // NOLINT: implicit by design
  Rat(int num) : num_(num), den_(1) {}        // NOLINT

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }

  friend Rat operator+(const Rat& a, const Rat& b) {
    Int g = gcd(a.den_, b.den_);
    Int bd = div_exact(b.den_, g);
    Int ad = div_exact(a.den_, g);
    return Rat(a.num_ * bd + b.num_ * ad, a.den_ * bd);
  }
  friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
  friend Rat operator*(const Rat& a, const Rat& b) {
    Int g1 = gcd(a.num_.abs(), b.den_);
    Int g2 = gcd(b.num_.abs(), a.den_);
    return Rat(div_exact(a.num_, g1) * div_exact(b.num_, g2),
               div_exact(a.den_, g2) * div_exact(b.den_, g1));
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_.is_zero()) throw arithmetic_error("Rat division by zero");
    return a * Rat(b.den_, b.num_);
  }
  Rat operator-() const {
    Rat r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) { return a.num_ * b.den_ < b.num_ * a.den_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.num_ * b.den_ <= b.num_ * a.den_; }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }

  bool is_zero() const { return num_.is_zero(); }
  int sign() const { return num_.sign(); }
  Rat abs() const { return sign() < 0 ? -*this : *this; }

  double to_double() const {
    return static_cast<double>(static_cast<long double>(num_.raw()) /
                               static_cast<long double>(den_.raw()));
  }

  std::string to_string() const { return num_.to_string() + "/" + den_.to_string(); }

  static Rat parse(std::string_view num, std::string_view den) {
    return Rat(Int::parse(num), Int::parse(den));
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw arithmetic_error("Rat with zero denominator");
    if (den_.sign() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_.is_zero()) {
      den_ = Int(1);
      return;
    }
    Int g = gcd(num_.abs(), den_);
    num_ = div_exact(num_, g);
    den_ = div_exact(den_, g);
  }

  Int num_;
  Int den_;
};

}  // namespace halfgap
