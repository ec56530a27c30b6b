#pragma once

// Reference computations that share no code with the library paths they check.

#include <fermat/arith.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>

namespace oracle {

using fermat::BigInt;

/// Smallest u > 0 with D u^2 + 4 a square, searching u <= limit.
inline std::optional<std::pair<BigInt, BigInt>> pell4_brute(long D, long limit) {
  for (long u = 1; u <= limit; ++u) {
    __int128 v = static_cast<__int128>(D) * u * u + 4;
    auto t = static_cast<__int128>(std::sqrt(static_cast<long double>(v)));
    while (t * t > v) --t;
    while ((t + 1) * (t + 1) <= v) ++t;
    if (t * t == v) return std::pair{BigInt(static_cast<long>(t)), BigInt(u)};
  }
  return std::nullopt;
}

/// Fundamental solution of x^2 - D y^2 = 1 by the chakravala method.
inline std::pair<BigInt, BigInt> pell1_chakravala(long D) {
  const BigInt d(D);
  const BigInt root = fermat::isqrt(d);
  BigInt a = root;
  if ((a + 1) * (a + 1) - d < d - a * a) a += 1;
  BigInt b = 1, k = a * a - d;
  while (k != 1) {
    const BigInt ak = abs(k);
    // k | a + b*m  <=>  m = -a * b^-1 (mod |k|)
    BigInt m0 = 0;
    if (ak != 1) {
      BigInt binv;
      mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), ak.get_mpz_t());
      m0 = (-a * binv) % ak;
      if (m0 < 0) m0 += ak;
    }
    // the positive representative minimizing |m^2 - D|
    BigInt m = m0 + ((root - m0) / ak) * ak;
    if (m <= 0) m += ak;
    BigInt up = m + ak;
    BigInt em = m * m - d, eu = up * up - d;
    if (abs(eu) < abs(em)) m = up;
    if (m - ak > 0) {
      BigInt dn = m - ak;
      BigInt ed = dn * dn - d, e2 = m * m - d;
      if (abs(ed) < abs(e2)) m = dn;
    }
    BigInt na = (a * m + d * b) / ak;
    BigInt nb = (a + b * m) / ak;
    BigInt nk = (m * m - d) / k;
    a = abs(na);
    b = abs(nb);
    k = nk;
  }
  return {a, b};
}

/// Minimal t^2 - D u^2 = 4. With eta = (t + u sqrt D)/2 and x + y sqrt D the
/// fundamental unit of Z[sqrt D], eta^j = x + y sqrt D for some j in {1, 2, 3}:
/// j = 3 gives t^3 - 3t = 2x, j = 2 gives t^2 = 2x + 2.
inline std::pair<BigInt, BigInt> pell4_from_pell1(long D) {
  auto [x, y] = pell1_chakravala(D);
  std::pair<BigInt, BigInt> best{2 * x, 2 * y};
  auto consider = [&](const BigInt& t) {
    if (t <= 2) return;
    BigInt rest = t * t - 4;
    if (rest % D != 0) return;
    BigInt u2 = rest / D;
    if (fermat::is_square(u2) && t < best.first) best = {t, fermat::isqrt(u2)};
  };
  BigInt two_x = 2 * x, c;
  mpz_root(c.get_mpz_t(), two_x.get_mpz_t(), 3);
  for (BigInt t = c - 2; t <= c + 2; ++t)
    if (t * t * t - 3 * t == two_x) consider(t);
  BigInt sq = 2 * x + 2;
  if (fermat::is_square(sq)) consider(fermat::isqrt(sq));
  return best;
}

inline std::pair<BigInt, BigInt> pell4_minimal(long D) {
  if (auto s = pell4_brute(D, 1000000)) return *s;
  return pell4_from_pell1(D);
}

}  // namespace oracle
