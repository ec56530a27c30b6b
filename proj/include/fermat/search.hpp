#pragma once

#include <fermat/arith.hpp>
#include <fermat/pell.hpp>
#include <fermat/pencils.hpp>
#include <fermat/poly.hpp>
#include <fermat/surface.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace fermat {

/// X^3 + Y^3 + Z^3 = k with |X| >= |Y| >= |Z|, equal magnitudes ordered by value.
struct CanonicalSolution {
  BigInt X, Y, Z, k;

  static CanonicalSolution make(BigInt a, BigInt b, BigInt c) {
    std::array<BigInt, 3> v{std::move(a), std::move(b), std::move(c)};
    std::sort(v.begin(), v.end(), [](const BigInt& p, const BigInt& q) {
      int cmp = mpz_cmpabs(p.get_mpz_t(), q.get_mpz_t());
      return cmp != 0 ? cmp > 0 : p > q;
    });
    BigInt k = v[0] * v[0] * v[0] + v[1] * v[1] * v[1] + v[2] * v[2] * v[2];
    return {v[0], v[1], v[2], k};
  }
  static CanonicalSolution from(const AffineSolution& s) { return make(s.X, s.Y, s.Z); }

  BigInt height() const { return abs(X); }
  bool holds() const { return X * X * X + Y * Y * Y + Z * Z * Z == k; }
  bool trivial() const { return (X + Y) * (Y + Z) * (Z + X) == 0; }
  AffineSolution affine() const { return {X, Y, Z, k}; }
  std::string str() const { return "(" + X.get_str() + "," + Y.get_str() + "," + Z.get_str() + ")"; }

  bool operator==(const CanonicalSolution& o) const { return X == o.X && Y == o.Y && Z == o.Z && k == o.k; }
  /// Height first, then lexicographic.
  bool operator<(const CanonicalSolution& o) const {
    int h = mpz_cmpabs(X.get_mpz_t(), o.X.get_mpz_t());
    if (h != 0) return h < 0;
    if (X != o.X) return X < o.X;
    if (Y != o.Y) return Y < o.Y;
    if (Z != o.Z) return Z < o.Z;
    return k < o.k;
  }
};

namespace detail {

using i128 = __int128;

inline std::optional<std::int64_t> exact_cuberoot(i128 n) {
  bool neg = n < 0;
  i128 m = neg ? -n : n;
  auto c = static_cast<i128>(std::llround(std::cbrt(static_cast<long double>(m))));
  while (c > 0 && c * c * c > m) --c;
  while ((c + 1) * (c + 1) * (c + 1) <= m) ++c;
  if (c * c * c != m) return std::nullopt;
  return static_cast<std::int64_t>(neg ? -c : c);
}

// Outer variable a over [lo, hi), inner b with |b| <= |a|, third coordinate
// solved with |c| <= |b|. With swap_roles the inner loop runs over the larger
// coordinate instead; the canonical set is the same.
inline void enumerate_chunk(std::int64_t k, std::int64_t B, std::int64_t lo, std::int64_t hi, bool swap_roles,
                            std::vector<std::array<std::int64_t, 3>>& out) {
  for (std::int64_t a = lo; a < hi; ++a) {
    const i128 a3 = static_cast<i128>(a) * a * a;
    const std::int64_t aa = a < 0 ? -a : a;
    std::int64_t blo = swap_roles ? -B : -aa;
    std::int64_t bhi = swap_roles ? B : aa;
    for (std::int64_t b = blo; b <= bhi; ++b) {
      const std::int64_t ab = b < 0 ? -b : b;
      if (swap_roles && ab < aa) continue;
      const i128 rest = static_cast<i128>(k) - a3 - static_cast<i128>(b) * b * b;
      auto c = exact_cuberoot(rest);
      if (!c) continue;
      const std::int64_t ac = *c < 0 ? -*c : *c;
      if (ac > (swap_roles ? aa : ab)) continue;
      out.push_back({a, b, *c});
    }
  }
}

inline std::vector<CanonicalSolution> finish(std::vector<std::array<std::int64_t, 3>>& raw, const BigInt& k) {
  std::vector<CanonicalSolution> sols;
  sols.reserve(raw.size());
  for (const auto& r : raw) {
    auto s = CanonicalSolution::make(BigInt(static_cast<long>(r[0])), BigInt(static_cast<long>(r[1])),
                                     BigInt(static_cast<long>(r[2])));
    if (s.k == k) sols.push_back(std::move(s));
  }
  std::sort(sols.begin(), sols.end());
  sols.erase(std::unique(sols.begin(), sols.end()), sols.end());
  return sols;
}

}  // namespace detail

inline std::vector<CanonicalSolution> enumerate(const BigInt& k, std::int64_t B, unsigned jobs = 1,
                                                bool swap_roles = false) {
  if (B < 1) throw Error(ErrorCode::InvalidArgument, "bound must be positive");
  if (B > 2000000) throw Error(ErrorCode::InvalidArgument, "bound above 2e6 is not supported");
  if (!k.fits_slong_p() || abs(k) > BigInt("1000000000000000000"))
    throw Error(ErrorCode::InvalidArgument, "|k| must be below 1e18");
  const std::int64_t kk = k.get_si();
  if (jobs == 0) jobs = 1;
  const std::int64_t span = 2 * B + 1;
  if (jobs > span) jobs = static_cast<unsigned>(span);

  // Interleaved stripes balance the work, since rows near |a| = B are the longest.
  std::vector<std::vector<std::array<std::int64_t, 3>>> parts(jobs);
  auto stripe = [&](unsigned j) {
    for (std::int64_t a = -B + j; a <= B; a += jobs) detail::enumerate_chunk(kk, B, a, a + 1, swap_roles, parts[j]);
  };
  if (jobs == 1) {
    detail::enumerate_chunk(kk, B, -B, B + 1, swap_roles, parts[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(stripe, j);
    for (auto& t : pool) t.join();
  }
  std::vector<std::array<std::int64_t, 3>> raw;
  for (auto& p : parts) raw.insert(raw.end(), p.begin(), p.end());
  return detail::finish(raw, k);
}

struct Classification {
  bool trivial = false;
  std::optional<BigInt> lehmer_t;
  std::optional<BigInt> linear_alpha;
  std::array<int, 3> linear_perm{0, 1, 2};  // (x, y, z) = (v[p0], v[p1], v[p2])
  bool linear_strict = false;               // witnessed with z the smallest coordinate

  std::string tag() const {
    if (trivial) return "trivial";
    if (lehmer_t) return "lehmer";
    if (linear_alpha) return "linear";
    return "other";
  }
};

inline const std::array<std::array<int, 3>, 6>& permutations3() {
  static const std::array<std::array<int, 3>, 6> p{{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 0, 1}, {1, 2, 0}, {2, 1, 0}}};
  return p;
}

inline Classification classify(const CanonicalSolution& s) {
  Classification c;
  c.trivial = s.trivial();
  const std::array<BigInt, 3> v{s.X, s.Y, s.Z};
  for (const auto& p : permutations3()) {
    const BigInt &x = v[p[0]], &y = v[p[1]], &z = v[p[2]];
    if (!c.lehmer_t) {
      BigInt num = 1 - z;  // 9 t^3
      if (mpz_divisible_ui_p(num.get_mpz_t(), 9)) {
        if (auto t = int_cuberoot(BigInt(num / 9))) {
          BigInt t4 = *t * *t * *t * *t;
          if (x == 9 * t4 && y == -9 * t4 + 3 * *t) c.lehmer_t = *t;
        }
      }
    }
    BigInt sxy = x + y;
    if (!c.linear_alpha && sxy != 0) {
      BigInt num = 1 - z;
      if (mpz_divisible_p(num.get_mpz_t(), sxy.get_mpz_t())) {
        c.linear_alpha = BigInt(num / sxy);
        c.linear_perm = p;
      }
    }
  }
  // Strict reading: z is the coordinate of smallest magnitude.
  BigInt sxy = s.X + s.Y;
  c.linear_strict = sxy != 0 && mpz_divisible_p(BigInt(1 - s.Z).get_mpz_t(), sxy.get_mpz_t());
  return c;
}

/// x = 9t^4, y = -9t^4 + 3t, z = -9t^3 + 1.
inline CanonicalSolution lehmer_point(const BigInt& t) {
  BigInt t3 = t * t * t, t4 = t3 * t;
  return CanonicalSolution::make(9 * t4, -9 * t4 + 3 * t, -9 * t3 + 1);
}

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

namespace detail {

inline MultiPoly tpoly(std::initializer_list<std::pair<unsigned, long>> terms) {
  MultiPoly p(std::vector<std::string>{"t"});
  for (const auto& [e, c] : terms) p.add_term({e}, BigInt(c));
  return p;
}

inline bool proportional(const std::array<EisensteinInt, 3>& a, const std::array<EisensteinInt, 3>& b) {
  return (a[0] * b[1] - a[1] * b[0]).is_zero() && (a[0] * b[2] - a[2] * b[0]).is_zero() &&
         (a[1] * b[2] - a[2] * b[1]).is_zero();
}

}  // namespace detail

/// Region checks on points of C_n, reported but not asserted.
struct RegionTally {
  std::size_t points = 0;
  std::size_t d_violations = 0;
  std::size_t e_violations = 0;
};

/// The D window holds at [r:s:t] iff 3t^2-3tr+r^2+2rs-2s^2 > 0; the E window
/// holds iff r(r-s-t) > 0, or r(r-s-t) < 0 and 10r^2-8rt-8rs+t^2-ts+s^2 > 0.
inline void tally_regions(const ProjectivePoint& p, RegionTally& tally) {
  const BigInt &r = p[0], &s = p[1], &t = p[2];
  ++tally.points;
  if (!(3 * t * t - 3 * t * r + r * r + 2 * r * s - 2 * s * s > 0)) ++tally.d_violations;
  BigInt side = r * (r - s - t);
  bool e_ok = side > 0 || (side < 0 && 10 * r * r - 8 * r * t - 8 * r * s + t * t - t * s + s * s > 0);
  if (!e_ok) ++tally.e_violations;
}

inline std::vector<CheckResult> verify_identities() {
  std::vector<CheckResult> out;
  const std::vector<std::string> tv{"t"};
  const MultiPoly T = MultiPoly::variable(tv, 0);
  const MultiPoly one = MultiPoly::constant(tv, 1);

  {  // (i)
    MultiPoly x = 9 * T.pow(4), y = -9 * T.pow(4) + 3 * T, z = -9 * T.pow(3) + one;
    MultiPoly sum = x.pow(3) + y.pow(3) + z.pow(3);
    out.push_back({"lehmer-polynomial-identity", sum == one, "sum of cubes = " + sum.str()});
  }
  {  // (ii), minus model x = -9t^4, y = 9t^4 - 3t
    MultiPoly x = -9 * T.pow(4), y = 9 * T.pow(4) - 3 * T;
    MultiPoly rel = (x + y).pow(4) + 9 * x;
    out.push_back({"lehmer-quartic-relation", rel.is_zero(), "(x+y)^4+9x = " + rel.str()});
  }
  {  // (iii)
    CheckResult r{"lehmer-blowdown-conic", true, ""};
    for (long m = -10; m <= 10; ++m) {
      BigInt t(m), t3 = t * t * t, t4 = t3 * t;
      auto q = SurfacePoint::from_coords(1, -9 * t4, 9 * t4 - 3 * t, 9 * t3 - 1);
      auto p = blowdown(q);
      BigInt v = -2 * p[0] * p[0] + p[0] * (p[1] + p[2]) + p[1] * p[2];
      if (v != 0) {
        r.passed = false;
        r.detail += "t=" + std::to_string(m) + " -> " + p.str() + "; ";
      }
    }
    if (r.passed) r.detail = "21 points on -2r^2+r(s+t)+st=0";
    out.push_back(r);
  }
  {  // (iv), plus model
    MultiPoly x = 9 * T.pow(4), y = -9 * T.pow(4) + 3 * T, z = -9 * T.pow(3) + one;
    MultiPoly rel = (one - z) - 3 * T.pow(2) * (x + y);
    out.push_back({"lehmer-plane-relation", rel.is_zero(), "1-z-3t^2(x+y) = " + rel.str()});
  }
  {  // (v)
    const std::vector<std::string> rt{"r", "t"};
    MultiPoly r = MultiPoly::variable(rt, 0), t = MultiPoly::variable(rt, 1), c1 = MultiPoly::constant(rt, 1);
    MultiPoly lhs = 2 * (r * r + r * t + t * t + r - t + c1);
    MultiPoly rhs = (r + t).pow(2) + (r + c1).pow(2) + (t - c1).pow(2);
    CheckResult res{"sum-of-squares-certificate", lhs == rhs, ""};
    RegionTally tally;
    for (long n = 2; n <= 12; ++n) {
      auto model = plane_model(PencilId::C, make_param(2 * n * n + 1, 1 - n * n));
      auto seed = *to_affine(line_seed(n), -1);
      if (interi_check(model, seed) != InteriVerdict::InfiniteGuaranteed) continue;
      for (const auto& p : orbit(model, seed, 4)) tally_regions(blowdown(to_surface(p)), tally);
    }
    res.detail = "2(r^2+rt+t^2+r-t+1) certificate " + std::string(res.passed ? "holds" : "fails") + "; region checks on " +
                 std::to_string(tally.points) + " points of C_n (2<=n<=12): D window misses " +
                 std::to_string(tally.d_violations) + ", E window misses " + std::to_string(tally.e_violations);
    out.push_back(res);
  }
  {  // D-pencil parameter of the Lehmer points
    CheckResult r{"lehmer-pencil-correspondence", true, ""};
    for (long m = 1; m <= 10; ++m) {
      BigInt t(m), t3 = t * t * t, t4 = t3 * t;
      auto q = SurfacePoint::from_coords(1, -9 * t4, 9 * t4 - 3 * t, 9 * t3 - 1);
      auto got = param_through(PencilId::D, blowdown(q));
      auto want = make_param(-3 * t * t, 3 * t * t - 1);
      auto plane = plane_of(PencilId::D, want);
      bool ok = got == want && plane == ProjectivePoint::normalize({BigInt(1), 3 * t * t});
      if (!ok) {
        r.passed = false;
        r.detail += "m=" + std::to_string(m) + " got " + got.str() + "; ";
      }
    }
    if (r.passed) r.detail = "[a:b] = [-3m^2:3m^2-1] and plane 1+z=-3m^2(x+y) for m=1..10";
    out.push_back(r);
  }
  {  // base points and exceptional lines
    CheckResult r{"eisenstein-incidence", true, ""};
    using E = EisensteinInt;
    const E zeta = E::zeta();
    E cyc = E{1} + zeta + zeta * zeta;
    if (!cyc.is_zero()) {
      r.passed = false;
      r.detail += "1+zeta+zeta^2 != 0; ";
    }
    for (auto id : {PencilId::C, PencilId::D, PencilId::E}) {
      const auto& pen = pencil(id);
      for (int i : pen.base_points) {
        const auto& P = base_point(i);
        std::span<const E> pt(P);
        if (!pen.q1.eval<E>(pt).is_zero() || !pen.q2.eval<E>(pt).is_zero()) {
          r.passed = false;
          r.detail += std::string(to_string(id)) + " misses P" + std::to_string(i) + "; ";
        }
      }
    }
    for (const auto& line : exceptional_lines()) {
      // Two points of the line: kernel vectors of its two forms.
      for (int j = 0; j < 2; ++j) {
        std::array<E, 4> q{E{0}, E{0}, E{0}, E{0}};
        // forms are e_a + c*e_b and e_d + c'*e_e on disjoint coordinate pairs
        int free_idx = 0;
        for (const auto& f : line.forms) {
          int a = -1, b = -1;
          for (int k = 0; k < 4; ++k) {
            if (f[k].is_zero()) continue;
            (a < 0 ? a : b) = k;
          }
          // f[a]*q[a] + f[b]*q[b] = 0 with f[a] = 1 or f[b] = 1
          E val = (free_idx++ == j) ? E{1} : E{2};
          if (f[a] == E{1}) {
            q[b] = val;
            q[a] = E{0} - f[b] * val;
          } else {
            q[a] = val;
            q[b] = E{0} - f[a] * val;
          }
        }
        E cube = q[0] * q[0] * q[0] + q[1] * q[1] * q[1] + q[2] * q[2] * q[2] + q[3] * q[3] * q[3];
        auto img = blowdown_generic<E>(q[0], q[1], q[2], q[3]);
        if (!cube.is_zero() || !detail::proportional(img, line.base_point)) {
          r.passed = false;
          r.detail += "E" + std::to_string(line.index) + " does not contract to P" + std::to_string(line.index) + "; ";
        }
      }
    }
    if (r.passed) r.detail = "12 base-point incidences; E1..E6 lie on the surface and blow down to P1..P6";
    out.push_back(r);
  }
  return out;
}

}  // namespace fermat
