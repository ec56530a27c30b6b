#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fermat {

using BigInt = mpz_class;
using Rat = mpq_class;

enum class ErrorCode {
  InvalidProjectivePoint,
  NotDivisible,
  InvalidSquareClass,
  IndeterminatePoint,
  BasePoint,
  InfiniteU,
  DiscriminantPole,
  DegenerateMember,
  TangentAtInfinity,
  InvalidPellModulus,
  PellBudgetExceeded,
  AutomorphismNotIntegral,
  CongruenceCapExceeded,
  DegenerateConic,
  PreconditionFailed,
  InvalidArgument,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidProjectivePoint: return "InvalidProjectivePoint";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::InvalidSquareClass: return "InvalidSquareClass";
    case ErrorCode::IndeterminatePoint: return "IndeterminatePoint";
    case ErrorCode::BasePoint: return "BasePoint";
    case ErrorCode::InfiniteU: return "InfiniteU";
    case ErrorCode::DiscriminantPole: return "DiscriminantPole";
    case ErrorCode::DegenerateMember: return "DegenerateMember";
    case ErrorCode::TangentAtInfinity: return "TangentAtInfinity";
    case ErrorCode::InvalidPellModulus: return "InvalidPellModulus";
    case ErrorCode::PellBudgetExceeded: return "PellBudgetExceeded";
    case ErrorCode::AutomorphismNotIntegral: return "AutomorphismNotIntegral";
    case ErrorCode::CongruenceCapExceeded: return "CongruenceCapExceeded";
    case ErrorCode::DegenerateConic: return "DegenerateConic";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// All library failures carry a machine-readable code next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline BigInt big(long v) { return BigInt(v); }

inline BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  BigInt out;
  if (s.empty() || out.set_str(s, 10) != 0)
    throw Error(ErrorCode::InvalidArgument, "not an integer: '" + std::string(text) + "'");
  return out;
}

inline Rat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const BigInt& v) { return v.get_str(); }

inline std::string to_string(const Rat& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

inline int sign(const BigInt& v) { return sgn(v); }
inline int sign(const Rat& v) { return sgn(v); }

inline BigInt gcd_of(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline bool is_square(const BigInt& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline BigInt isqrt(const BigInt& n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "isqrt of negative");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline BigInt pow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

/// Exact cube root: c with c^3 == n, or nothing.
inline std::optional<BigInt> int_cuberoot(const BigInt& n) {
  BigInt c;
  if (mpz_root(c.get_mpz_t(), n.get_mpz_t(), 3) != 0) return c;
  return std::nullopt;
}

/// Machine-word cube root for the search kernel; floating guess, exact correction.
inline std::optional<std::int64_t> int_cuberoot(__int128 n) {
  constexpr __int128 kLimit = (__int128)2097151 * 2097151 * 2097151;  // 2^21-1 cubed
  if (n > kLimit || n < -kLimit) return std::nullopt;
  const bool neg = n < 0;
  const __int128 m = neg ? -n : n;
  auto c = static_cast<std::int64_t>(std::cbrt(static_cast<long double>(m)));
  auto cube = [](std::int64_t v) { return (__int128)v * v * v; };
  while (c > 0 && cube(c) > m) --c;
  while (cube(c + 1) <= m) ++c;
  if (cube(c) != m) return std::nullopt;
  return neg ? -c : c;
}

/// d1 and d2 (nonzero rationals) differ by a nonzero rational square.
inline bool square_class_equal(const Rat& d1, const Rat& d2) {
  if (d1 == 0 || d2 == 0) throw Error(ErrorCode::InvalidSquareClass, "zero has no square class");
  Rat prod = d1 * d2;
  if (prod < 0) return false;
  BigInt nd = prod.get_num() * prod.get_den();
  return is_square(nd);
}

/// Square-free representative of the class of d: trial division up to `bound`,
/// then a perfect-square test on the leftover cofactor.
inline BigInt square_class_rep(const Rat& d, unsigned long bound = 100000) {
  if (d == 0) throw Error(ErrorCode::InvalidSquareClass, "zero has no square class");
  BigInt n = abs(d.get_num() * d.get_den());
  BigInt rep = 1;
  for (unsigned long p = 2; p <= bound && BigInt(p) * p <= n; ++p) {
    unsigned exps = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++exps;
    }
    if (exps % 2 == 1) rep *= p;
  }
  if (!is_square(n)) rep *= n;
  return sgn(d) < 0 ? BigInt(-rep) : rep;
}

}  // namespace fermat
