#pragma once

#include <fermat/arith.hpp>
#include <fermat/pencils.hpp>
#include <fermat/surface.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fermat {

/// t^2 - D*u^2 = 4 with t, u > 0.
struct PellSolution {
  BigInt D, t, u;
  bool fundamental = false;
  bool holds() const { return t * t - D * u * u == 4; }
};

/// Step budget for the continued fraction of sqrt(D). Fibers met by the
/// cascade can have discriminants whose period runs into the millions.
inline constexpr std::uint64_t default_pell_budget = 200000;

namespace detail {

using Mat2 = std::array<std::array<BigInt, 2>, 2>;

inline Mat2 mat_mul(const Mat2& x, const Mat2& y) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
  return r;
}

// Product of [[a_i, 1], [1, 0]] over [lo, hi), by binary splitting.
inline Mat2 cf_product(const std::vector<BigInt>& a, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return Mat2{{{a[lo], BigInt(1)}, {BigInt(1), BigInt(0)}}};
  std::size_t mid = lo + (hi - lo) / 2;
  return mat_mul(cf_product(a, lo, mid), cf_product(a, mid, hi));
}

}  // namespace detail

/// Minimal positive solution of t^2 - D u^2 = 4.
///
/// Small u are tried directly (the continued fraction argument needs D > 16).
/// Beyond that every solution is a convergent p/q of sqrt(D), and
/// p_n^2 - D q_n^2 = (-1)^(n+1) d_(n+1) lets the walk find the first index of
/// norm 4 (or norm 1, doubled) before any convergent is built.
inline PellSolution pell_fundamental(const BigInt& D, std::uint64_t budget = default_pell_budget) {
  if (D <= 0 || is_square(D)) throw Error(ErrorCode::InvalidPellModulus, "D = " + D.get_str());
  for (long u = 1; u <= 64; ++u) {
    BigInt t2 = D * u * u + 4;
    if (is_square(t2)) return {D, isqrt(t2), BigInt(u), true};
  }
  const BigInt a0 = isqrt(D);
  BigInt m = 0, d = 1, a = a0;
  std::vector<BigInt> partials{a0};
  for (std::uint64_t n = 0; n < budget; ++n) {
    m = d * a - m;
    d = (D - m * m) / d;
    a = (a0 + m) / d;
    // sign of p_n^2 - D q_n^2 is (-1)^(n+1)
    bool positive = (n % 2 == 1);
    if (positive && (d == 4 || d == 1)) {
      auto P = detail::cf_product(partials, 0, partials.size());
      BigInt p = P[0][0], q = P[1][0];
      if (d == 1) {
        p *= 2;
        q *= 2;
      }
      PellSolution s{D, p, q, true};
      if (!s.holds()) throw Error(ErrorCode::PreconditionFailed, "continued fraction walk lost track of the norm");
      return s;
    }
    partials.push_back(a);
  }
  throw Error(ErrorCode::PellBudgetExceeded,
              "no unit within " + std::to_string(budget) + " partial quotients for D with " +
                  std::to_string(D.get_str().size()) + " digits");
}

/// (t_k, u_k) from ((t + u sqrt D)/2)^k.
inline PellSolution pell_power(const PellSolution& s, unsigned k) {
  BigInt t = 2, u = 0;  // represents (t + u sqrt D)/2
  for (unsigned i = 0; i < k; ++i) {
    BigInt nt = (t * s.t + s.D * u * s.u) / 2;
    BigInt nu = (t * s.u + u * s.t) / 2;
    t = nt;
    u = nu;
  }
  return {s.D, t, u, k == 1 && s.fundamental};
}

/// v -> L v + tau, preserving a binary conic.
struct ConicAutomorphism {
  detail::Mat2 L;
  std::array<BigInt, 2> tau;
  BinaryConic conic;
  PellSolution pell;  // the solution whose automorph is L (after powering)
  unsigned power = 1;  // pell = fundamental^power

  std::array<BigInt, 2> apply(const std::array<BigInt, 2>& v) const {
    return {L[0][0] * v[0] + L[0][1] * v[1] + tau[0], L[1][0] * v[0] + L[1][1] * v[1] + tau[1]};
  }
  ConicAutomorphism inverse() const {
    ConicAutomorphism r = *this;
    r.L = {{{L[1][1], -L[0][1]}, {-L[1][0], L[0][0]}}};
    r.tau = {-(r.L[0][0] * tau[0] + r.L[0][1] * tau[1]), -(r.L[1][0] * tau[0] + r.L[1][1] * tau[1])};
    return r;
  }
  ConicAutomorphism compose(const ConicAutomorphism& o) const {  // this after o
    ConicAutomorphism r = *this;
    r.L = detail::mat_mul(L, o.L);
    auto t = apply(o.tau);
    r.tau = t;
    return r;
  }
  BigInt det() const { return L[0][0] * L[1][1] - L[0][1] * L[1][0]; }
  BigInt trace() const { return L[0][0] + L[1][1]; }
  /// Q(T(X, Y)) as a polynomial in X, Y.
  MultiPoly pullback() const {
    const std::vector<std::string> xy{"X", "Y"};
    std::array<BigInt, 3> r0{L[0][0], L[0][1], tau[0]}, r1{L[1][0], L[1][1], tau[1]};
    std::array<MultiPoly, 2> images{MultiPoly::linear(xy, r0), MultiPoly::linear(xy, r1)};
    return conic.poly().compose(images);
  }
};

/// Critical point of Q, the common center of every automorph.
inline std::array<Rat, 2> conic_center(const BinaryConic& q) {
  BigInt det = 4 * q.a * q.c - q.b * q.b;
  if (det == 0) throw Error(ErrorCode::DegenerateConic, "parabolic conic has no center");
  return {make_rat(q.b * q.e - 2 * q.c * q.d, det), make_rat(q.b * q.d - 2 * q.a * q.e, det)};
}

inline constexpr unsigned automorphism_power_cap = 24;

inline ConicAutomorphism conic_automorphism(const BinaryConic& q, const PellSolution& pell) {
  if (q.det() == 0) throw Error(ErrorCode::DegenerateConic, "conic splits into lines");
  if (pell.D != q.disc()) throw Error(ErrorCode::PreconditionFailed, "Pell modulus differs from the conic discriminant");
  const auto c0 = conic_center(q);
  for (unsigned k = 1; k <= automorphism_power_cap; ++k) {
    PellSolution pk = pell_power(pell, k);
    ConicAutomorphism T;
    T.L = {{{(pk.t - q.b * pk.u) / 2, -q.c * pk.u}, {q.a * pk.u, (pk.t + q.b * pk.u) / 2}}};
    Rat t0 = c0[0] - (Rat(T.L[0][0]) * c0[0] + Rat(T.L[0][1]) * c0[1]);
    Rat t1 = c0[1] - (Rat(T.L[1][0]) * c0[0] + Rat(T.L[1][1]) * c0[1]);
    if (t0.get_den() != 1 || t1.get_den() != 1) continue;
    T.tau = {t0.get_num(), t1.get_num()};
    T.conic = q;
    T.pell = pk;
    T.power = k;
    return T;
  }
  throw Error(ErrorCode::AutomorphismNotIntegral, "translation stays fractional up to power 24");
}

/// Smallest h with T^h acting as the identity on (Z/M)^2.
inline std::uint64_t congruence_power(const ConicAutomorphism& T, const BigInt& M,
                                      std::uint64_t practical_cap = 1000000) {
  if (M <= 1) return 1;
  auto reduce = [&](BigInt v) {
    v %= M;
    if (v < 0) v += M;
    return v;
  };
  detail::Mat2 L0, L;
  std::array<BigInt, 2> t0, t;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) L0[i][j] = reduce(T.L[i][j]);
    t0[i] = reduce(T.tau[i]);
  }
  L = L0;
  t = t0;
  BigInt cap = M * M * M * M;
  if (cap > practical_cap) cap = practical_cap;
  for (std::uint64_t h = 1; h <= cap; ++h) {
    if (L[0][0] == 1 && L[1][1] == 1 && L[0][1] == 0 && L[1][0] == 0 && t[0] == 0 && t[1] == 0) return h;
    // (L0, t0) after (L, t)
    std::array<BigInt, 2> nt{reduce(L0[0][0] * t[0] + L0[0][1] * t[1] + t0[0]),
                             reduce(L0[1][0] * t[0] + L0[1][1] * t[1] + t0[1])};
    auto nL = detail::mat_mul(L0, L);
    for (auto& row : nL)
      for (auto& e : row) e = reduce(e);
    L = nL;
    t = nt;
  }
  throw Error(ErrorCode::CongruenceCapExceeded, "modulus " + M.get_str());
}

enum class InteriVerdict { InfiniteGuaranteed, SquareDiscriminant, NonRealInfinity, DegenerateFiber, NoSeedKnown };

inline std::string_view to_string(InteriVerdict v) {
  switch (v) {
    case InteriVerdict::InfiniteGuaranteed: return "InfiniteGuaranteed";
    case InteriVerdict::SquareDiscriminant: return "SquareDiscriminant";
    case InteriVerdict::NonRealInfinity: return "NonRealInfinity";
    case InteriVerdict::DegenerateFiber: return "DegenerateFiber";
    case InteriVerdict::NoSeedKnown: return "NoSeedKnown";
  }
  return "?";
}

/// Seeds may come from either model; fibers live in x^3+y^3+z^3 = -1.
inline AffineSolution to_minus_model(const AffineSolution& s) {
  if (s.k == 1) return {-s.X, -s.Y, -s.Z, -1};
  return s;
}

inline InteriVerdict interi_check(const PlaneConicModel& model, const std::optional<AffineSolution>& seed) {
  const BigInt delta = model.disc();
  if (delta < 0) return InteriVerdict::NonRealInfinity;
  if (delta == 0) return InteriVerdict::DegenerateFiber;
  if (is_square(delta)) return InteriVerdict::SquareDiscriminant;
  if (model.member_degenerate || model.conic.det() == 0) return InteriVerdict::DegenerateFiber;
  if (!seed) return InteriVerdict::NoSeedKnown;
  AffineSolution s = to_minus_model(*seed);
  if (s.k != -1 || !s.holds() || !model.contains(s)) return InteriVerdict::NoSeedKnown;
  return InteriVerdict::InfiniteGuaranteed;
}

struct OrbitPlan {
  ConicAutomorphism step;     // already raised to the congruence power
  ConicAutomorphism inverse;
  std::uint64_t congruence_power = 1;
};

inline OrbitPlan orbit_plan(const PlaneConicModel& model, std::uint64_t pell_budget = default_pell_budget) {
  auto pell = pell_fundamental(model.disc(), pell_budget);
  auto T = conic_automorphism(model.conic, pell);
  std::uint64_t h = congruence_power(T, model.modulus);
  ConicAutomorphism Th = T;
  for (std::uint64_t i = 1; i < h; ++i) Th = T.compose(Th);
  Th.power = T.power * static_cast<unsigned>(h);
  Th.pell = pell_power(pell, Th.power);
  return {Th, Th.inverse(), h};
}

/// count new solutions from the two-sided orbit of seed, alternating T and T^-1.
inline std::vector<AffineSolution> orbit(const PlaneConicModel& model, const AffineSolution& seed, std::size_t count,
                                         std::uint64_t pell_budget = default_pell_budget) {
  auto verdict = interi_check(model, seed);
  if (verdict != InteriVerdict::InfiniteGuaranteed)
    throw Error(ErrorCode::PreconditionFailed, std::string(to_string(verdict)));
  std::vector<AffineSolution> out;
  if (count == 0) return out;
  const auto plan = orbit_plan(model, pell_budget);
  const auto s0 = model.project(to_minus_model(seed));
  std::array<BigInt, 2> fwd = s0, bwd = s0;
  for (std::size_t i = 0; out.size() < count; ++i) {
    auto& cur = (i % 2 == 0) ? fwd : bwd;
    cur = (i % 2 == 0) ? plan.step.apply(cur) : plan.inverse.apply(cur);
    auto p = model.embed(cur[0], cur[1]);
    if (!p || !p->holds() || model.conic(cur[0], cur[1]) != 0)
      throw Error(ErrorCode::PreconditionFailed, "orbit left the fiber at step " + std::to_string(i));
    out.push_back(*p);
  }
  return out;
}

}  // namespace fermat
