#pragma once

#include <cstdint>
#include <type_traits>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace halfgap {

/// Thrown when an arithmetic result would leave the supported magnitude
/// range, or when an input value cannot be represented.
class arithmetic_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input/usage errors (bad files, bad parameters, conflicting labels).
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A postcondition that is a theorem failed; indicates a bug, not bad input.
class invariant_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Signed integer with magnitude capped at 2^126. Every operation is
/// overflow-checked and fails loudly instead of wrapping. The cap leaves
/// one bit of headroom below __int128 so that |a|+|b| of two in-range
/// values cannot wrap before the check runs.
class Int {
 public:
  constexpr Int() = default;
  template <typename T>
    requires std::is_integral_v<T>
  constexpr Int(T v) : v_(v) {}  // NOLINT: implicit by design

  static Int from_i128(__int128 v) {
    Int r;
    r.v_ = v;
    r.check();
    return r;
  }

  __int128 raw() const { return v_; }

  friend Int operator+(const Int& a, const Int& b) {
    __int128 r;
    if (__builtin_add_overflow(a.v_, b.v_, &r)) throw arithmetic_error("Int add overflow");
    return from_i128(r);
  }
  friend Int operator-(const Int& a, const Int& b) {
    __int128 r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw arithmetic_error("Int sub overflow");
    return from_i128(r);
  }
  friend Int operator*(const Int& a, const Int& b) {
    __int128 r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw arithmetic_error("Int mul overflow");
    return from_i128(r);
  }
  Int operator-() const { return from_i128(-v_); }

  Int& operator+=(const Int& o) { return *this = *this + o; }
  Int& operator-=(const Int& o) { return *this = *this - o; }
  Int& operator*=(const Int& o) { return *this = *this * o; }

  /// Exact division: throws if b is zero or does not divide a.
  friend Int div_exact(const Int& a, const Int& b) {
    if (b.v_ == 0) throw arithmetic_error("Int division by zero");
    if (a.v_ % b.v_ != 0) throw arithmetic_error("Int division not exact");
    return from_i128(a.v_ / b.v_);
  }

  /// Truncated quotient and remainder (used by gcd and serialization).
  friend Int operator/(const Int& a, const Int& b) {
    if (b.v_ == 0) throw arithmetic_error("Int division by zero");
    return from_i128(a.v_ / b.v_);
  }
  friend Int operator%(const Int& a, const Int& b) {
    if (b.v_ == 0) throw arithmetic_error("Int division by zero");
    return from_i128(a.v_ % b.v_);
  }

  friend bool operator==(const Int& a, const Int& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Int& a, const Int& b) { return a.v_ != b.v_; }
  friend bool operator<(const Int& a, const Int& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Int& a, const Int& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Int& a, const Int& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Int& a, const Int& b) { return a.v_ >= b.v_; }

  bool is_zero() const { return v_ == 0; }
  int sign() const { return v_ > 0 ? 1 : (v_ < 0 ? -1 : 0); }
  Int abs() const { return from_i128(v_ < 0 ? -v_ : v_); }

  /// Checked power; the k-SUM range n^{2k} goes through here.
  static Int pow(const Int& base, unsigned exp) {
    Int r(1);
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
  }

  double to_double() const { return static_cast<double>(v_); }

  std::string to_string() const {
    if (v_ == 0) return "0";
    unsigned __int128 u = v_ < 0 ? -static_cast<unsigned __int128>(v_) : v_;
    char buf[48];
    int pos = 48;
    while (u > 0) {
      buf[--pos] = static_cast<char>('0' + static_cast<int>(u % 10));
      u /= 10;
    }
    std::string s;
    if (v_ < 0) s.push_back('-');
    s.append(buf + pos, 48 - pos);
    return s;
  }

  static Int parse(std::string_view s) {
    if (s.empty()) throw input_error("empty integer literal");
    bool neg = false;
    size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
      neg = s[0] == '-';
      i = 1;
    }
    if (i == s.size()) throw input_error("bare sign is not an integer");
    Int r(0);
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw input_error("bad digit in integer literal");
      r = r * Int(10) + Int(s[i] - '0');
    }
    return neg ? -r : r;
  }

  size_t hash() const {
    auto lo = static_cast<uint64_t>(static_cast<unsigned __int128>(v_));
    auto hi = static_cast<uint64_t>(static_cast<unsigned __int128>(v_) >> 64);
    uint64_t h = lo * 0x9e3779b97f4a7c15ULL;
    h ^= hi + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return static_cast<size_t>(h);
  }

 private:
  static constexpr __int128 bound() { return static_cast<__int128>(1) << 126; }
  void check() const {
    if (v_ > bound() || v_ < -bound()) throw arithmetic_error("Int magnitude exceeds 2^126");
  }

  __int128 v_ = 0;
};

inline Int gcd(Int a, Int b) {
  unsigned __int128 x = static_cast<unsigned __int128>(a.abs().raw());
  unsigned __int128 y = static_cast<unsigned __int128>(b.abs().raw());
  if (x == 0) return Int::from_i128(static_cast<__int128>(y));
  if (y == 0) return Int::from_i128(static_cast<__int128>(x));
  auto ctz = [](unsigned __int128 v) {
    auto lo = static_cast<uint64_t>(v);
    return lo ? __builtin_ctzll(lo) : 64 + __builtin_ctzll(static_cast<uint64_t>(v >> 64));
  };
  int shift = ctz(x | y);
  x >>= ctz(x);
  while (true) {
    y >>= ctz(y);
    if (x > y) std::swap(x, y);
    y -= x;
    if (y == 0) break;
  }
  return Int::from_i128(static_cast<__int128>(x << shift));
}

inline Int lcm(const Int& a, const Int& b) {
  if (a.is_zero() || b.is_zero()) return Int(0);
  return div_exact(a, gcd(a, b)) * b;
}

}  // namespace halfgap

template <>
struct std::hash<halfgap::Int> {
  size_t operator()(const halfgap::Int& v) const noexcept { return v.hash(); }
};
