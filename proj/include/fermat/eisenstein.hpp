#pragma once

#include <fermat/arith.hpp>

namespace fermat {

/// p + q*zeta in Z[zeta], zeta a primitive cube root of unity (zeta^2 = -zeta - 1).
struct EisensteinInt {
  BigInt p = 0;
  BigInt q = 0;

  EisensteinInt() = default;
  EisensteinInt(BigInt p_, BigInt q_) : p(std::move(p_)), q(std::move(q_)) {}
  EisensteinInt(const BigInt& v) : p(v), q(0) {}  // NOLINT(implicit)
  EisensteinInt(long v) : p(v), q(0) {}           // NOLINT(implicit)

  static EisensteinInt zeta() { return {0, 1}; }
  static EisensteinInt zeta_bar() { return {-1, -1}; }

  EisensteinInt conj() const { return {p - q, -q}; }
  /// p^2 - pq + q^2.
  BigInt norm() const { return p * p - p * q + q * q; }
  bool is_zero() const { return p == 0 && q == 0; }

  friend EisensteinInt operator+(const EisensteinInt& a, const EisensteinInt& b) {
    return {a.p + b.p, a.q + b.q};
  }
  friend EisensteinInt operator-(const EisensteinInt& a, const EisensteinInt& b) {
    return {a.p - b.p, a.q - b.q};
  }
  friend EisensteinInt operator-(const EisensteinInt& a) { return {-a.p, -a.q}; }
  friend EisensteinInt operator*(const EisensteinInt& a, const EisensteinInt& b) {
    BigInt qq = a.q * b.q;
    return {a.p * b.p - qq, a.p * b.q + a.q * b.p - qq};
  }
  EisensteinInt& operator+=(const EisensteinInt& o) { return *this = *this + o; }
  EisensteinInt& operator-=(const EisensteinInt& o) { return *this = *this - o; }
  EisensteinInt& operator*=(const EisensteinInt& o) { return *this = *this * o; }
  bool operator==(const EisensteinInt& o) const { return p == o.p && q == o.q; }

  std::string str() const { return "(" + p.get_str() + (q < 0 ? "" : "+") + q.get_str() + "z)"; }
};

}  // namespace fermat
