#pragma once

#include <fermat/arith.hpp>

#include <algorithm>
#include <string>
#include <vector>

namespace fermat {

/// Dense univariate polynomial over Q, coefficients in ascending degree.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rat& lead() const { return c_.back(); }
  const std::vector<Rat>& coeffs() const { return c_; }

  Rat operator()(const Rat& x) const {
    Rat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  UniPoly derivative() const {
    std::vector<Rat> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
    return UniPoly(d);
  }

  /// Remainder of polynomial division by g.
  UniPoly rem(const UniPoly& g) const {
    std::vector<Rat> r = c_;
    while (static_cast<int>(r.size()) - 1 >= g.degree() && !r.empty()) {
      Rat f = r.back() / g.lead();
      std::size_t shift = r.size() - g.c_.size();
      for (std::size_t i = 0; i < g.c_.size(); ++i) r[shift + i] -= f * g.c_[i];
      r.pop_back();
      while (!r.empty() && r.back() == 0) r.pop_back();
    }
    return UniPoly(r);
  }

  UniPoly operator-() const {
    std::vector<Rat> n = c_;
    for (auto& v : n) v = -v;
    return UniPoly(n);
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

/// A real root pinned to [lo, hi]; exact when lo == hi.
struct RootEnclosure {
  Rat lo, hi;
  bool exact() const { return lo == hi; }
  Rat mid() const { return (lo + hi) / 2; }
};

namespace detail {

inline std::vector<UniPoly> sturm_chain(const UniPoly& p) {
  std::vector<UniPoly> chain{p, p.derivative()};
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    UniPoly r = -chain[chain.size() - 2].rem(chain.back());
    if (r.is_zero()) break;
    chain.push_back(r);
  }
  return chain;
}

inline int sign_changes(const std::vector<UniPoly>& chain, const Rat& x) {
  int changes = 0, prev = 0;
  for (const auto& q : chain) {
    int s = sgn(q(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

}  // namespace detail

/// Isolates the distinct real roots of a squarefree p and shrinks each
/// enclosure by bisection until hi - lo <= tol.
inline std::vector<RootEnclosure> real_roots(const UniPoly& p, const Rat& tol) {
  std::vector<RootEnclosure> out;
  if (p.degree() < 1) return out;
  Rat bound = 1;
  for (const auto& c : p.coeffs()) bound += abs(c / p.lead());
  auto chain = detail::sturm_chain(p);
  auto count = [&](const Rat& a, const Rat& b) {
    return detail::sign_changes(chain, a) - detail::sign_changes(chain, b);
  };
  std::vector<std::pair<Rat, Rat>> work{{-bound, bound}};
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    int n = count(a, b);
    if (n == 0) continue;
    if (n == 1) {
      Rat lo = a, hi = b;
      while (hi - lo > tol) {
        Rat m = (lo + hi) / 2;
        if (p(m) == 0) {
          lo = hi = m;
          break;
        }
        if (count(lo, m) >= 1) hi = m;
        else lo = m;
      }
      if (p(hi) == 0) lo = hi;
      out.push_back({lo, hi});
      continue;
    }
    Rat m = (a + b) / 2;
    if (p(m) == 0) {
      out.push_back({m, m});
      Rat eps = (b - a) / 1024;
      while (count(m - eps, m + eps) != 1) eps /= 2;
      work.push_back({a, m - eps});
      work.push_back({m + eps, b});
    } else {
      work.push_back({a, m});
      work.push_back({m, b});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
  return out;
}

/// Truncated decimal expansion of q with the given number of fractional digits.
inline std::string to_decimal(const Rat& q, unsigned digits) {
  BigInt scale = pow(BigInt(10), digits);
  BigInt num = q.get_num() * scale;
  BigInt den = q.get_den();
  bool neg = num < 0;
  if (neg) num = -num;
  BigInt whole = (num + den / 2) / den;  // round half up
  std::string s = whole.get_str();
  if (s.size() <= digits) s = std::string(digits + 1 - s.size(), '0') + s;
  std::string out = s.substr(0, s.size() - digits);
  if (digits) out += "." + s.substr(s.size() - digits);
  return (neg && whole != 0 ? "-" : "") + out;
}

}  // namespace fermat
