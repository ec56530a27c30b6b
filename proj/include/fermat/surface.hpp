#pragma once

#include <fermat/arith.hpp>
#include <fermat/eisenstein.hpp>
#include <fermat/poly.hpp>
#include <fermat/projective.hpp>

#include <array>
#include <string>
#include <vector>

namespace fermat {

// Coordinates on P^3 are ordered (w, x, y, z); on P^2 they are (r, s, t).
inline const std::vector<std::string>& plane_vars() {
  static const std::vector<std::string> v{"r", "s", "t"};
  return v;
}
inline const std::vector<std::string>& space_vars() {
  static const std::vector<std::string> v{"w", "x", "y", "z"};
  return v;
}

/// w^3 + x^3 + y^3 + z^3 evaluated exactly.
template <typename T>
T fermat_form(const T& w, const T& x, const T& y, const T& z) {
  return w * w * w + x * x * x + y * y * y + z * z * z;
}

inline bool surface_contains(const ProjectivePoint& p) {
  if (p.size() != 4) return false;
  return fermat_form<BigInt>(p[0], p[1], p[2], p[3]) == 0;
}

/// A rational point of w^3+x^3+y^3+z^3 = 0.
class SurfacePoint {
 public:
  explicit SurfacePoint(ProjectivePoint p) : p_(std::move(p)) {
    if (!surface_contains(p_)) throw Error(ErrorCode::PreconditionFailed, p_.str() + " is not on the surface");
  }
  static SurfacePoint from_coords(const BigInt& w, const BigInt& x, const BigInt& y, const BigInt& z) {
    return SurfacePoint(ProjectivePoint::normalize({w, x, y, z}));
  }

  const ProjectivePoint& point() const { return p_; }
  const BigInt& w() const { return p_[0]; }
  const BigInt& x() const { return p_[1]; }
  const BigInt& y() const { return p_[2]; }
  const BigInt& z() const { return p_[3]; }
  bool operator==(const SurfacePoint&) const = default;
  std::string str() const { return p_.str(); }

 private:
  ProjectivePoint p_;
};

/// An integer solution of X^3 + Y^3 + Z^3 = k.
struct AffineSolution {
  BigInt X, Y, Z, k;

  static AffineSolution make(const BigInt& X, const BigInt& Y, const BigInt& Z) {
    return {X, Y, Z, X * X * X + Y * Y * Y + Z * Z * Z};
  }
  bool holds() const { return X * X * X + Y * Y * Y + Z * Z * Z == k; }
  BigInt height() const {
    BigInt h = abs(X);
    if (abs(Y) > h) h = abs(Y);
    if (abs(Z) > h) h = abs(Z);
    return h;
  }
  bool operator==(const AffineSolution&) const = default;
  std::string str() const {
    return "(" + X.get_str() + "," + Y.get_str() + "," + Z.get_str() + ")";
  }
};

/// k = 1 maps to [1:-X:-Y:-Z], k = -1 to [1:X:Y:Z].
inline SurfacePoint to_surface(const AffineSolution& s) {
  if (!s.holds()) throw Error(ErrorCode::PreconditionFailed, "not a solution: " + s.str());
  if (s.k == 1) return SurfacePoint::from_coords(1, -s.X, -s.Y, -s.Z);
  if (s.k == -1) return SurfacePoint::from_coords(1, s.X, s.Y, s.Z);
  throw Error(ErrorCode::InvalidArgument, "only k = 1 and k = -1 lie on the Fermat surface");
}

/// Integral point of the chart w = 1 in the model x^3+y^3+z^3 = k, k = +-1.
inline std::optional<AffineSolution> to_affine(const SurfacePoint& q, int k = -1) {
  if (q.w() == 0) return std::nullopt;
  if (!mpz_divisible_p(q.x().get_mpz_t(), q.w().get_mpz_t()) ||
      !mpz_divisible_p(q.y().get_mpz_t(), q.w().get_mpz_t()) ||
      !mpz_divisible_p(q.z().get_mpz_t(), q.w().get_mpz_t()))
    return std::nullopt;
  BigInt X = q.x() / q.w(), Y = q.y() / q.w(), Z = q.z() / q.w();
  if (k == 1) return AffineSolution{-X, -Y, -Z, 1};
  return AffineSolution{X, Y, Z, -1};
}

namespace detail {

inline MultiPoly plane_poly(std::initializer_list<std::pair<std::array<unsigned, 3>, long>> terms) {
  MultiPoly p(plane_vars());
  for (const auto& [e, c] : terms) p.add_term({e[0], e[1], e[2]}, c);
  return p;
}

}  // namespace detail

/// The four cubics in (r, s, t) giving the map P^2 --> surface.
inline const std::array<MultiPoly, 4>& blowup_cubics() {
  using detail::plane_poly;
  // clang-format off
  static const std::array<MultiPoly, 4> cubics{
      // w = -(s+r)t^2 + (s^2+2r^2)t - s^3 + rs^2 - 2r^2s - r^3
      plane_poly({{{0,1,2},-1},{{1,0,2},-1},{{0,2,1},1},{{2,0,1},2},{{0,3,0},-1},{{1,2,0},1},{{2,1,0},-2},{{3,0,0},-1}}),
      // x = t^3 - (s+r)t^2 + (s^2+2r^2)t + rs^2 - 2r^2s + r^3
      plane_poly({{{0,0,3},1},{{0,1,2},-1},{{1,0,2},-1},{{0,2,1},1},{{2,0,1},2},{{1,2,0},1},{{2,1,0},-2},{{3,0,0},1}}),
      // y = -t^3 + (s+r)t^2 - (s^2+2r^2)t + 2rs^2 - r^2s + 2r^3
      plane_poly({{{0,0,3},-1},{{0,1,2},1},{{1,0,2},1},{{0,2,1},-1},{{2,0,1},-2},{{1,2,0},2},{{2,1,0},-1},{{3,0,0},2}}),
      // z = (s-2r)t^2 + (r^2-s^2)t + s^3 - rs^2 + 2r^2s - 2r^3
      plane_poly({{{0,1,2},1},{{1,0,2},-2},{{2,0,1},1},{{0,2,1},-1},{{0,3,0},1},{{1,2,0},-1},{{2,1,0},2},{{3,0,0},-2}}),
  };
  // clang-format on
  return cubics;
}

/// The plane cubic cut out by the pullback of the hyperplane w = 0.
inline const MultiPoly& infinity_cubic() { return blowup_cubics()[0]; }

template <typename T>
std::array<T, 4> blowup_values(const T& r, const T& s, const T& t) {
  std::array<T, 4> out;
  std::array<T, 3> pt{r, s, t};
  for (std::size_t i = 0; i < 4; ++i) out[i] = blowup_cubics()[i].eval<T>(std::span<const T>(pt));
  return out;
}

inline SurfacePoint blowup(const ProjectivePoint& p) {
  if (p.size() != 3) throw Error(ErrorCode::InvalidArgument, "blowup expects a point of P^2");
  auto v = blowup_values<BigInt>(p[0], p[1], p[2]);
  if (v[0] == 0 && v[1] == 0 && v[2] == 0 && v[3] == 0)
    throw Error(ErrorCode::IndeterminatePoint, "blowup undefined at " + p.str());
  return SurfacePoint(ProjectivePoint::normalize(v));
}

/// Quadratic inverse map; vanishes identically on the line w+y = x+z = 0.
template <typename T>
std::array<T, 3> blowdown_generic(const T& w, const T& x, const T& y, const T& z) {
  return {y * z - w * x,
          w * y - w * x + x * z + w * w - w * z + z * z,
          y * y - x * y + w * y + x * x - w * x + x * z};
}

/// Linear inverse on the line w+y = x+z = 0.
template <typename T>
std::array<T, 3> blowdown_special(const T& /*w*/, const T& x, const T& y, const T& /*z*/) {
  return {x + y, y, x};
}

inline ProjectivePoint blowdown(const SurfacePoint& q) {
  auto g = blowdown_generic<BigInt>(q.w(), q.x(), q.y(), q.z());
  if (g[0] != 0 || g[1] != 0 || g[2] != 0) return ProjectivePoint::normalize(g);
  auto sp = blowdown_special<BigInt>(q.w(), q.x(), q.y(), q.z());
  if (sp[0] == 0 && sp[1] == 0 && sp[2] == 0)
    throw Error(ErrorCode::IndeterminatePoint, "blowdown undefined at " + q.str());
  return ProjectivePoint::normalize(sp);
}

/// [1:-n:-1:n], the integral point [s:t] = [1:n] of the line w+y = x+z = 0.
inline SurfacePoint line_seed(const BigInt& n) { return SurfacePoint::from_coords(1, -n, -1, n); }

/// Drops w: the projection used for the triple cover w^3 = G(x, y, z).
inline ProjectivePoint cover_project(const SurfacePoint& q) {
  if (q.x() == 0 && q.y() == 0 && q.z() == 0)
    throw Error(ErrorCode::IndeterminatePoint, "cover projection undefined at " + q.str());
  return ProjectivePoint::normalize({q.x(), q.y(), q.z()});
}

enum class RationalLineId { L12, L34, L56 };

inline std::string_view to_string(RationalLineId id) {
  switch (id) {
    case RationalLineId::L12: return "L12";
    case RationalLineId::L34: return "L34";
    case RationalLineId::L56: return "L56";
  }
  return "?";
}

/// One of the three lines of the surface defined over Q.
struct RationalLine {
  RationalLineId id;
  std::array<std::array<long, 4>, 2> forms;  // coefficients on (w, x, y, z)
  std::array<long, 3> plane_line;            // its image in P^2 (coefficients on r, s, t)

  /// The point with line parameter [s:t], exactly as the surface point it names.
  std::array<BigInt, 4> at(const BigInt& s, const BigInt& t) const {
    switch (id) {
      // the image of [s:t:t], of the form [-x:x:y:-y]
      case RationalLineId::L12: return {s + t, -(s + t), t - 2 * s, 2 * s - t};
      case RationalLineId::L34: return {s, -t, t, -s};
      case RationalLineId::L56: return {s, -t, -s, t};
    }
    return {};
  }
  /// The plane point of P^2 lying under at(s, t).
  std::array<BigInt, 3> plane_at(const BigInt& s, const BigInt& t) const {
    switch (id) {
      case RationalLineId::L12: return {s, t, t};
      case RationalLineId::L34: return {0, s, t};
      case RationalLineId::L56: return {s + t, s, t};
    }
    return {};
  }
};

inline const std::array<RationalLine, 3>& rational_lines() {
  static const std::array<RationalLine, 3> lines{{
      {RationalLineId::L12, {{{1, 1, 0, 0}, {0, 0, 1, 1}}}, {0, 1, -1}},
      {RationalLineId::L34, {{{1, 0, 0, 1}, {0, 1, 1, 0}}}, {1, 0, 0}},
      {RationalLineId::L56, {{{1, 0, 1, 0}, {0, 1, 0, 1}}}, {1, -1, -1}},
  }};
  return lines;
}

inline const RationalLine& rational_line(RationalLineId id) {
  return rational_lines()[static_cast<std::size_t>(id)];
}

/// E1..E6: the lines contracted by the blowdown, defined over Q(zeta).
struct ExceptionalLine {
  int index;                                           // 1..6
  std::array<std::array<EisensteinInt, 4>, 2> forms;   // on (w, x, y, z)
  std::array<EisensteinInt, 3> base_point;             // P_i in P^2
};

inline const std::array<ExceptionalLine, 6>& exceptional_lines() {
  using E = EisensteinInt;
  static const E z = E::zeta(), zb = E::zeta_bar(), one{1}, zero{0};
  static const std::array<ExceptionalLine, 6> lines{{
      {1, {{{one, zero, zero, zb}, {zero, one, zb, zero}}}, {-z, one, one}},
      {2, {{{one, zero, zero, z}, {zero, one, z, zero}}}, {-zb, one, one}},
      {3, {{{zero, one, zero, z}, {z, zero, one, zero}}}, {zero, one, -z}},
      {4, {{{zero, one, zero, zb}, {zb, zero, one, zero}}}, {zero, one, -zb}},
      {5, {{{zero, zero, one, z}, {one, z, zero, zero}}}, {one, -zb, -z}},
      {6, {{{zero, zero, one, zb}, {one, zb, zero, zero}}}, {one, -z, -zb}},
  }};
  return lines;
}

inline const std::array<EisensteinInt, 3>& base_point(int index) {
  return exceptional_lines().at(static_cast<std::size_t>(index - 1)).base_point;
}

}  // namespace fermat
