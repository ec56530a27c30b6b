#pragma once

#include <fermat/arith.hpp>

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace fermat {

using Exponents = std::vector<unsigned>;

/// Graded reverse order on exponent vectors: higher total degree first, then
/// lexicographically larger first. Used for display and as the division order.
struct MonomialOrder {
  bool operator()(const Exponents& a, const Exponents& b) const {
    unsigned da = 0, db = 0;
    for (unsigned e : a) da += e;
    for (unsigned e : b) db += e;
    if (da != db) return da > db;
    return a > b;
  }
};

/// Sparse polynomial with integer coefficients over a fixed list of named
/// variables. No zero coefficients are stored.
class MultiPoly {
 public:
  using Terms = std::map<Exponents, BigInt, MonomialOrder>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static MultiPoly constant(std::vector<std::string> vars, const BigInt& c) {
    MultiPoly p(std::move(vars));
    p.add_term(Exponents(p.nvars(), 0), c);
    return p;
  }
  static MultiPoly variable(std::vector<std::string> vars, std::size_t index) {
    MultiPoly p(std::move(vars));
    Exponents e(p.nvars(), 0);
    e.at(index) = 1;
    p.add_term(e, 1);
    return p;
  }
  /// Linear form sum coeffs[i]*var_i (+ coeffs[nvars] if present).
  static MultiPoly linear(std::vector<std::string> vars, std::span<const BigInt> coeffs) {
    MultiPoly p(std::move(vars));
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      Exponents e(p.nvars(), 0);
      e[i] = 1;
      p.add_term(e, coeffs[i]);
    }
    if (coeffs.size() > p.nvars()) p.add_term(Exponents(p.nvars(), 0), coeffs[p.nvars()]);
    return p;
  }

  std::size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponents& e, const BigInt& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  BigInt coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
      unsigned s = 0;
      for (unsigned x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  BigInt content() const {
    BigInt g = 0;
    for (const auto& [e, c] : terms_) g = gcd_of(g, c);
    return g;
  }

  /// Divides out the content; the leading coefficient keeps its sign.
  MultiPoly primitive() const {
    BigInt g = content();
    if (g == 0) return *this;
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, c / g);
    return out;
  }

  const BigInt& leading_coeff() const { return terms_.begin()->second; }

  MultiPoly operator-() const {
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) {
    a.check_compatible(b);
    for (const auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) {
    a.check_compatible(b);
    for (const auto& [e, c] : b.terms_) a.add_term(e, -c);
    return a;
  }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly out(a.vars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  friend MultiPoly operator*(const BigInt& k, const MultiPoly& a) {
    MultiPoly out(a.vars_);
    for (const auto& [e, c] : a.terms_) out.add_term(e, k * c);
    return out;
  }
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  bool operator==(const MultiPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }

  MultiPoly pow(unsigned n) const {
    MultiPoly out = constant(vars_, 1);
    for (unsigned i = 0; i < n; ++i) out *= *this;
    return out;
  }

  /// Replaces every variable i by images[i]; the result lives in the images' ring.
  MultiPoly compose(std::span<const MultiPoly> images) const {
    if (images.size() != nvars()) throw Error(ErrorCode::InvalidArgument, "compose: arity mismatch");
    const auto& target = images.empty() ? vars_ : images.front().vars();
    MultiPoly out(target);
    for (const auto& [e, c] : terms_) {
      MultiPoly term = constant(target, c);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) term *= images[i].pow(e[i]);
      out += term;
    }
    return out;
  }

  /// Evaluates in any commutative ring constructible from BigInt.
  template <typename T>
  T eval(std::span<const T> point) const {
    if (point.size() != nvars()) throw Error(ErrorCode::InvalidArgument, "eval: arity mismatch");
    T acc = T(BigInt(0));
    for (const auto& [e, c] : terms_) {
      T term = T(c);
      for (std::size_t i = 0; i < e.size(); ++i)
        for (unsigned k = 0; k < e[i]; ++k) term = term * point[i];
      acc = acc + term;
    }
    return acc;
  }
  template <typename T>
  T eval(std::initializer_list<T> point) const {
    std::vector<T> v(point);
    return eval<T>(std::span<const T>(v));
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      BigInt mag = abs(c);
      bool is_const = std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
      out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
      first = false;
      if (mag != 1 || is_const) out += mag.get_str();
      bool need_star = mag != 1 || is_const;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        if (need_star) out += "*";
        out += vars_[i];
        if (e[i] > 1) out += "^" + std::to_string(e[i]);
        need_star = true;
      }
    }
    return out;
  }

 private:
  void check_compatible(const MultiPoly& o) const {
    if (vars_ != o.vars_) throw Error(ErrorCode::InvalidArgument, "polynomials over different variables");
  }

  std::vector<std::string> vars_;
  Terms terms_;
};

/// q with f == g*q, or NotDivisible.
inline MultiPoly poly_exact_div(const MultiPoly& f, const MultiPoly& g) {
  if (g.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by the zero polynomial");
  if (f.vars() != g.vars()) throw Error(ErrorCode::InvalidArgument, "polynomials over different variables");
  MultiPoly rem = f;
  MultiPoly quot(f.vars());
  const auto& [glead_e, glead_c] = *g.terms().begin();
  while (!rem.is_zero()) {
    const auto& [re, rc] = *rem.terms().begin();
    Exponents qe(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
      if (re[i] < glead_e[i]) throw Error(ErrorCode::NotDivisible, "leading monomial not divisible");
      qe[i] = re[i] - glead_e[i];
    }
    if (!mpz_divisible_p(rc.get_mpz_t(), glead_c.get_mpz_t()))
      throw Error(ErrorCode::NotDivisible, "leading coefficient not divisible");
    MultiPoly step(f.vars());
    step.add_term(qe, rc / glead_c);
    quot += step;
    rem -= step * g;
  }
  return quot;
}

}  // namespace fermat
