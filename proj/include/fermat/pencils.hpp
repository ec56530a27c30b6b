#pragma once

#include <fermat/arith.hpp>
#include <fermat/poly.hpp>
#include <fermat/projective.hpp>
#include <fermat/surface.hpp>
#include <fermat/univariate.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace fermat {

// ---------------------------------------------------------------------------
// The three pencils of conics defined over Q, each through two conjugate
// pairs of the blown-up points. A member is a*Q1 + b*Q2 for [a:b] in P^1.
// ---------------------------------------------------------------------------

enum class PencilId { C, D, E };

inline std::string_view to_string(PencilId id) {
  switch (id) {
    case PencilId::C: return "C";
    case PencilId::D: return "D";
    case PencilId::E: return "E";
  }
  return "?";
}

inline PencilId parse_pencil(std::string_view s) {
  if (s == "C" || s == "c") return PencilId::C;
  if (s == "D" || s == "d") return PencilId::D;
  if (s == "E" || s == "e") return PencilId::E;
  throw Error(ErrorCode::InvalidArgument, "unknown pencil '" + std::string(s) + "'");
}

enum class UConvention { BOverA, AOverB };

struct Pencil {
  PencilId id;
  MultiPoly q1, q2;
  std::array<int, 4> base_points;
  RationalLineId residual;
  // The plane pencil alpha*l1 + beta*l2 = 0 through the residual line.
  std::array<std::array<long, 4>, 2> plane_forms;
  UConvention u_convention;
};

using PencilParam = ProjectivePoint;  // [a:b] in P^1

inline PencilParam make_param(const BigInt& a, const BigInt& b) { return ProjectivePoint::normalize({a, b}); }

inline const Pencil& pencil(PencilId id) {
  using detail::plane_poly;
  // clang-format off
  static const std::array<Pencil, 3> table{{
      {PencilId::C,
       plane_poly({{{1,1,0},-1},{{1,0,1},1}}),                                   // -rs + rt
       plane_poly({{{2,0,0},1},{{1,1,0},-1},{{0,2,0},1},{{0,1,1},-1},{{0,0,2},1}}), // r^2-rs+s^2-st+t^2
       {1, 2, 3, 4}, RationalLineId::L56,
       {{{1, 0, 1, 0}, {0, 1, 0, 1}}}, UConvention::BOverA},
      {PencilId::D,
       plane_poly({{{1,1,0},1},{{0,2,0},-1},{{1,0,1},-1},{{0,0,2},1}}),           // (s-t)(r-s-t)
       plane_poly({{{0,0,2},1},{{1,0,1},-1},{{2,0,0},1}}),                        // t^2-tr+r^2
       {1, 2, 5, 6}, RationalLineId::L34,
       {{{1, 0, 0, 1}, {0, 1, 1, 0}}}, UConvention::BOverA},
      {PencilId::E,
       plane_poly({{{1,0,1},1},{{1,1,0},1},{{2,0,0},-1}}),                        // r(t+s-r)
       plane_poly({{{2,0,0},4},{{1,0,1},-2},{{1,1,0},-2},{{0,0,2},1},{{0,1,1},-1},{{0,2,0},1}}),
       {3, 4, 5, 6}, RationalLineId::L12,
       {{{1, 1, 0, 0}, {0, 0, 1, 1}}}, UConvention::AOverB},
  }};
  // clang-format on
  return table[static_cast<std::size_t>(id)];
}

/// Unnormalized a*Q1 + b*Q2.
inline MultiPoly member_raw(PencilId id, const BigInt& a, const BigInt& b) {
  const auto& p = pencil(id);
  return a * p.q1 + b * p.q2;
}

/// a*Q1 + b*Q2 divided by its content.
inline MultiPoly member(PencilId id, const PencilParam& param) {
  return member_raw(id, param[0], param[1]).primitive();
}

/// Determinant of the doubled symmetric matrix of a ternary quadratic form.
inline BigInt ternary_det(const MultiPoly& q) {
  auto c = [&](unsigned i, unsigned j, unsigned k) { return q.coeff({i, j, k}); };
  BigInt A = 2 * c(2, 0, 0), B = 2 * c(0, 2, 0), Cc = 2 * c(0, 0, 2);
  BigInt rs = c(1, 1, 0), rt = c(1, 0, 1), st = c(0, 1, 1);
  return A * (B * Cc - st * st) - rs * (rs * Cc - st * rt) + rt * (rs * st - B * rt);
}

inline bool member_degenerate(PencilId id, const PencilParam& param) {
  return ternary_det(member(id, param)) == 0;
}

/// The member through p: [a:b] = [Q2(p) : -Q1(p)].
inline PencilParam param_through(PencilId id, const ProjectivePoint& p) {
  const auto& pen = pencil(id);
  std::array<BigInt, 3> pt{p[0], p[1], p[2]};
  BigInt v1 = pen.q1.eval<BigInt>(std::span<const BigInt>(pt));
  BigInt v2 = pen.q2.eval<BigInt>(std::span<const BigInt>(pt));
  if (v1 == 0 && v2 == 0) throw Error(ErrorCode::BasePoint, p.str() + " is a base point of pencil " + std::string(to_string(id)));
  return make_param(v2, -v1);
}

/// b/a for C and D, a/b for E.
inline Rat u_value(PencilId id, const PencilParam& param) {
  const BigInt& a = param[0];
  const BigInt& b = param[1];
  if (pencil(id).u_convention == UConvention::BOverA) {
    if (a == 0) throw Error(ErrorCode::InfiniteU, "a = 0");
    return make_rat(b, a);
  }
  if (b == 0) throw Error(ErrorCode::InfiniteU, "b = 0");
  return make_rat(a, b);
}

/// Numerator polynomial of the closed-form discriminant at infinity in u.
inline UniPoly discriminant_numerator(PencilId id) {
  switch (id) {
    case PencilId::C: return UniPoly({9, -54, 0, -36});
    case PencilId::D: return UniPoly({9, 0, -18, -12, -3});
    case PencilId::E: return UniPoly({-27, 36, -18, 0, 1});
  }
  return {};
}

inline Rat discriminant_closed(PencilId id, const Rat& u) {
  Rat num = discriminant_numerator(id)(u);
  if (id != PencilId::C) return num;
  Rat den = 2 * u + 1;
  if (den == 0) throw Error(ErrorCode::DiscriminantPole, "u = -1/2");
  return num / (den * den * den);
}

struct WindowCheck {
  bool positive = false;                    // Delta(u) > 0, decided exactly
  std::optional<bool> in_sufficient_window;  // D: -1 < u < 1/2; E: u < -6 or u > 3
  bool pole = false;
};

inline WindowCheck window_check(PencilId id, const Rat& u) {
  WindowCheck out;
  if (id == PencilId::C && 2 * u + 1 == 0) {
    out.pole = true;
    return out;
  }
  out.positive = discriminant_closed(id, u) > 0;
  if (id == PencilId::D) out.in_sufficient_window = (u > -1 && u < Rat(1, 2));
  if (id == PencilId::E) out.in_sufficient_window = (u < -6 || u > 3);
  return out;
}

/// Real roots of the discriminant numerator (the boundaries of Delta > 0).
inline std::vector<RootEnclosure> window_roots(PencilId id, const Rat& tol = Rat(1, BigInt("10000000000000"))) {
  return real_roots(discriminant_numerator(id), tol);
}

/// The member of C through [n+1:1:n] restricted to the affine chart s = 1, in (r, t).
inline MultiPoly restrict_affine(const BigInt& n) {
  const std::vector<std::string> rt{"r", "t"};
  MultiPoly m = member_raw(PencilId::C, 2 * n * n + 1, 1 - n * n);
  std::array<MultiPoly, 3> images{MultiPoly::variable(rt, 0), MultiPoly::constant(rt, 1), MultiPoly::variable(rt, 1)};
  return m.compose(images);
}

// ---------------------------------------------------------------------------
// Plane sections. Each member's strict transform is the residual conic of the
// plane alpha*l1 + beta*l2 = 0 through the pencil's rational line. The map
// [a:b] <-> [alpha:beta] is fractional linear and fixed per pencil.
// ---------------------------------------------------------------------------

inline ProjectivePoint plane_of(PencilId id, const PencilParam& param) {
  const BigInt& a = param[0];
  const BigInt& b = param[1];
  switch (id) {
    case PencilId::C: return ProjectivePoint::normalize({a + 2 * b, a - b});
    case PencilId::D: return ProjectivePoint::normalize({a + b, a});
    case PencilId::E: return ProjectivePoint::normalize({a - 3 * b, a});
  }
  return {};
}

inline PencilParam param_of_plane(PencilId id, const ProjectivePoint& plane) {
  const BigInt& al = plane[0];
  const BigInt& be = plane[1];
  switch (id) {
    case PencilId::C: return make_param(al + 2 * be, al - be);
    case PencilId::D: return make_param(be, al - be);
    case PencilId::E: return make_param(3 * be, be - al);
  }
  return {};
}

/// aX^2 + bXY + cY^2 + dX + eY + f.
struct BinaryConic {
  BigInt a, b, c, d, e, f;

  template <typename T>
  T operator()(const T& X, const T& Y) const {
    return T(a) * X * X + T(b) * X * Y + T(c) * Y * Y + T(d) * X + T(e) * Y + T(f);
  }
  BigInt disc() const { return b * b - 4 * a * c; }
  /// Determinant of the doubled symmetric 3x3 matrix; zero iff the conic is a line pair.
  BigInt det() const {
    return 2 * a * (2 * c * 2 * f - e * e) - b * (b * 2 * f - e * d) + d * (b * e - 2 * c * d);
  }
  MultiPoly poly() const {
    MultiPoly p(std::vector<std::string>{"X", "Y"});
    p.add_term({2, 0}, a);
    p.add_term({1, 1}, b);
    p.add_term({0, 2}, c);
    p.add_term({1, 0}, d);
    p.add_term({0, 1}, e);
    p.add_term({0, 0}, f);
    return p;
  }
  static BinaryConic from_poly(const MultiPoly& p) {
    return {p.coeff({2, 0}), p.coeff({1, 1}), p.coeff({0, 2}), p.coeff({1, 0}), p.coeff({0, 1}), p.coeff({0, 0})};
  }
  bool operator==(const BinaryConic&) const = default;
  std::string str() const { return poly().str(); }
};

/// A fiber as an affine conic in two of the coordinates (x, y, z) of the
/// chart w = 1 of x^3+y^3+z^3+1 = 0; the third coordinate is solved from the
/// plane equation and is integral iff a congruence modulo `modulus` holds.
struct PlaneConicModel {
  PencilId pencil_id;
  PencilParam param;
  ProjectivePoint plane;              // [alpha:beta]
  std::array<BigInt, 4> plane_coeffs;  // on (w, x, y, z), primitive
  int eliminated = 3;                 // 1 = x, 2 = y, 3 = z
  std::array<int, 2> chart{1, 2};      // coordinates playing X and Y
  BinaryConic conic;
  MultiPoly line_factor;              // the residual line inside the plane, in (X, Y)
  BigInt modulus = 1;
  bool member_degenerate = false;

  BigInt disc() const { return conic.disc(); }

  /// (X, Y) -> integral solution of x^3+y^3+z^3 = -1, if the eliminated coordinate is integral.
  std::optional<AffineSolution> embed(const BigInt& X, const BigInt& Y) const {
    const BigInt& cv = plane_coeffs[eliminated];
    BigInt num = -(plane_coeffs[0] + plane_coeffs[chart[0]] * X + plane_coeffs[chart[1]] * Y);
    if (!mpz_divisible_p(num.get_mpz_t(), cv.get_mpz_t())) return std::nullopt;
    std::array<BigInt, 4> v;
    v[chart[0]] = X;
    v[chart[1]] = Y;
    v[eliminated] = num / cv;
    return AffineSolution{v[1], v[2], v[3], -1};
  }
  bool congruence_holds(const BigInt& X, const BigInt& Y) const {
    BigInt num = plane_coeffs[0] + plane_coeffs[chart[0]] * X + plane_coeffs[chart[1]] * Y;
    return mpz_divisible_p(num.get_mpz_t(), plane_coeffs[eliminated].get_mpz_t()) != 0;
  }
  /// Chart coordinates of a k = -1 solution.
  std::array<BigInt, 2> project(const AffineSolution& s) const {
    std::array<BigInt, 4> v{1, s.X, s.Y, s.Z};
    return {v[chart[0]], v[chart[1]]};
  }
  bool on_plane(const AffineSolution& s) const {
    return plane_coeffs[0] + plane_coeffs[1] * s.X + plane_coeffs[2] * s.Y + plane_coeffs[3] * s.Z == 0;
  }
  bool contains(const AffineSolution& s) const {
    if (s.k != -1 || !on_plane(s)) return false;
    auto [X, Y] = project(s);
    return conic(X, Y) == 0;
  }
  std::string chart_name() const {
    static const char* names[] = {"w", "x", "y", "z"};
    return std::string("(X,Y)=(") + names[chart[0]] + "," + names[chart[1]] + "), eliminated " + names[eliminated];
  }
};

inline PlaneConicModel plane_model(PencilId id, const PencilParam& param) {
  const auto& pen = pencil(id);
  PlaneConicModel m{id, param, plane_of(id, param), {}, 3, {1, 2}, {}, MultiPoly(), 1, member_degenerate(id, param)};
  const BigInt& al = m.plane[0];
  const BigInt& be = m.plane[1];
  std::array<BigInt, 4> raw;
  for (int i = 0; i < 4; ++i) raw[i] = al * pen.plane_forms[0][i] + be * pen.plane_forms[1][i];
  auto normalized = ProjectivePoint::normalize(raw);
  for (int i = 0; i < 4; ++i) m.plane_coeffs[i] = normalized[i];

  // Smallest nonzero |coefficient| among x, y, z; ties prefer z, then y, then x.
  int best = -1;
  for (int i : {3, 2, 1}) {
    if (m.plane_coeffs[i] == 0) continue;
    if (best < 0 || abs(m.plane_coeffs[i]) < abs(m.plane_coeffs[best])) best = i;
  }
  if (best < 0) throw Error(ErrorCode::DegenerateMember, "plane is w = 0");
  m.eliminated = best;
  int k = 0;
  for (int i = 1; i <= 3; ++i)
    if (i != best) m.chart[k++] = i;
  m.modulus = abs(m.plane_coeffs[best]);

  // Every coordinate scaled by the eliminated coefficient keeps things integral.
  const std::vector<std::string> xy{"X", "Y"};
  const BigInt& cv = m.plane_coeffs[best];
  std::array<MultiPoly, 4> coords;
  coords[0] = MultiPoly::constant(xy, cv);
  coords[m.chart[0]] = cv * MultiPoly::variable(xy, 0);
  coords[m.chart[1]] = cv * MultiPoly::variable(xy, 1);
  std::array<BigInt, 3> lin{-m.plane_coeffs[m.chart[0]], -m.plane_coeffs[m.chart[1]], -m.plane_coeffs[0]};
  coords[best] = MultiPoly::linear(xy, lin);

  MultiPoly cubic = coords[0].pow(3) + coords[1].pow(3) + coords[2].pow(3) + coords[3].pow(3);
  MultiPoly line(xy);
  for (const auto& form : pen.plane_forms) {
    line = MultiPoly(xy);
    for (int i = 0; i < 4; ++i) line += BigInt(form[i]) * coords[i];
    if (!line.is_zero()) break;
  }
  line = line.primitive();
  if (line.leading_coeff() < 0) line = -line;
  m.line_factor = line;
  MultiPoly q = poly_exact_div(cubic, line);
  if (q.total_degree() != 2) throw Error(ErrorCode::DegenerateMember, "plane section has no residual conic");
  m.conic = BinaryConic::from_poly(q.primitive());
  return m;
}

// ---------------------------------------------------------------------------
// Points at infinity of a fiber.
// ---------------------------------------------------------------------------

enum class InfinityVerdict { RealNonSquare, RealSquare, Imaginary, Degenerate };

inline std::string_view to_string(InfinityVerdict v) {
  switch (v) {
    case InfinityVerdict::RealNonSquare: return "RealNonSquare";
    case InfinityVerdict::RealSquare: return "RealSquare";
    case InfinityVerdict::Imaginary: return "Imaginary";
    case InfinityVerdict::Degenerate: return "Degenerate";
  }
  return "?";
}

struct InfinityData {
  BigInt qa, qb, qc;  // the form qa*X^2 + qb*XY + qc*Y^2 whose roots are the points at infinity
  Rat delta;
  BigInt square_class_rep;  // 0 when delta == 0
  InfinityVerdict verdict;
  bool member_degenerate = false;
};

inline InfinityVerdict classify_discriminant(const Rat& delta) {
  if (delta == 0) return InfinityVerdict::Degenerate;
  if (delta < 0) return InfinityVerdict::Imaginary;
  return is_square(delta.get_num() * delta.get_den()) ? InfinityVerdict::RealSquare : InfinityVerdict::RealNonSquare;
}

inline InfinityData infinity_data(const PlaneConicModel& m) {
  InfinityData d{m.conic.a, m.conic.b, m.conic.c, Rat(m.disc()), 0, InfinityVerdict::Degenerate, m.member_degenerate};
  d.verdict = classify_discriminant(d.delta);
  if (d.delta != 0) d.square_class_rep = square_class_rep(d.delta);
  return d;
}

inline InfinityData infinity_data_geometric(PencilId id, const PencilParam& param) {
  return infinity_data(plane_model(id, param));
}

/// a + b*sqrt(D) with a, b rational; only ring operations, so D need not be a non-square.
struct QuadraticElement {
  Rat a, b;
  BigInt D;
  friend QuadraticElement operator+(const QuadraticElement& x, const QuadraticElement& y) {
    return {x.a + y.a, x.b + y.b, x.D};
  }
  friend QuadraticElement operator-(const QuadraticElement& x, const QuadraticElement& y) {
    return {x.a - y.a, x.b - y.b, x.D};
  }
  friend QuadraticElement operator*(const QuadraticElement& x, const QuadraticElement& y) {
    return {x.a * y.a + x.b * y.b * Rat(x.D), x.a * y.b + x.b * y.a, x.D};
  }
};

/// Linear form (r, s, t coefficients) of the line joining the two residual
/// intersections of the member with the plane cubic at infinity, computed by
/// blowing down the fiber's points at infinity.
inline ProjectivePoint infinity_line_geometric(PencilId id, const PencilParam& param) {
  auto m = plane_model(id, param);
  if (m.member_degenerate) throw Error(ErrorCode::DegenerateMember, "member " + param.str() + " is a line pair");
  const BinaryConic& q = m.conic;
  BigInt delta = q.disc();
  if (delta == 0) throw Error(ErrorCode::TangentAtInfinity, "double point at infinity");

  auto assemble = [&](auto X, auto Y, auto zero) {
    using T = decltype(X);
    std::array<T, 4> v{zero, zero, zero, zero};
    const BigInt& cv = m.plane_coeffs[m.eliminated];
    auto scale = [](const BigInt& k, const T& val) { return T{val.a * Rat(k), val.b * Rat(k), val.D}; };
    v[m.chart[0]] = scale(cv, X);
    v[m.chart[1]] = scale(cv, Y);
    v[m.eliminated] = scale(-m.plane_coeffs[m.chart[0]], X) + scale(-m.plane_coeffs[m.chart[1]], Y);
    return v;
  };
  auto down = [](const std::array<QuadraticElement, 4>& v) {
    auto g = blowdown_generic<QuadraticElement>(v[0], v[1], v[2], v[3]);
    bool zero = true;
    for (const auto& e : g) zero = zero && e.a == 0 && e.b == 0;
    return zero ? blowdown_special<QuadraticElement>(v[0], v[1], v[2], v[3]) : g;
  };

  std::array<Rat, 3> A, B;
  const QuadraticElement zero{0, 0, delta};
  if (q.a != 0 || q.c != 0) {
    // root direction (-b + sqrt(D), 2a) or (2c, -b + sqrt(D))
    QuadraticElement root{Rat(-q.b), 1, delta};
    QuadraticElement X = q.a != 0 ? root : QuadraticElement{Rat(2 * q.c), 0, delta};
    QuadraticElement Y = q.a != 0 ? QuadraticElement{Rat(2 * q.a), 0, delta} : root;
    auto g = down(assemble(X, Y, zero));
    for (int i = 0; i < 3; ++i) {
      A[i] = g[i].a;
      B[i] = g[i].b;
    }
  } else {
    // qb*X*Y: the directions (1, 0) and (0, 1)
    auto g1 = down(assemble(QuadraticElement{1, 0, delta}, zero, zero));
    auto g2 = down(assemble(zero, QuadraticElement{1, 0, delta}, zero));
    for (int i = 0; i < 3; ++i) {
      A[i] = g1[i].a;
      B[i] = g2[i].a;
    }
  }
  std::array<Rat, 3> cross{A[1] * B[2] - A[2] * B[1], A[2] * B[0] - A[0] * B[2], A[0] * B[1] - A[1] * B[0]};
  if (cross[0] == 0 && cross[1] == 0 && cross[2] == 0)
    throw Error(ErrorCode::TangentAtInfinity, "points at infinity coincide in the plane");
  return ProjectivePoint::from_rationals(cross);
}

/// Closed forms for D and E; C always goes through the geometric route.
inline ProjectivePoint infinity_line(PencilId id, const PencilParam& param) {
  if (member_degenerate(id, param)) throw Error(ErrorCode::DegenerateMember, "member " + param.str() + " is a line pair");
  const BigInt& a = param[0];
  const BigInt& b = param[1];
  switch (id) {
    case PencilId::D: return ProjectivePoint::normalize({a, b + 2 * a, -(b + a)});  // ar + (b+2a)s - (b+a)t
    case PencilId::E: return ProjectivePoint::normalize({b, a - b, -b});           // as + b(r - s - t)
    case PencilId::C: return infinity_line_geometric(id, param);
  }
  return {};
}

}  // namespace fermat
