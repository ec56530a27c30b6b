#pragma once

// Sampled consistency suites shared by the `verify` command and the tests.

#include <fermat/pencils.hpp>
#include <fermat/search.hpp>
#include <fermat/surface.hpp>

#include <random>
#include <string>
#include <vector>

namespace fermat {

/// Delta(u(n)) = 12n^6 - 3 for n in [lo, hi].
inline CheckResult check_discriminant_identity(long lo = -50, long hi = 50) {
  CheckResult r{"discriminant-identity", true, ""};
  std::size_t tried = 0;
  for (long n = lo; n <= hi; ++n) {
    BigInt N(n);
    Rat u = make_rat(1 - N * N, 2 * N * N + 1);
    if (2 * u + 1 == 0) continue;
    ++tried;
    if (discriminant_closed(PencilId::C, u) != Rat(12 * N * N * N * N * N * N - 3)) {
      r.passed = false;
      r.detail += "n=" + std::to_string(n) + "; ";
    }
  }
  if (r.passed) r.detail = std::to_string(tried) + " values of n";
  return r;
}

/// 12n^6 - 3 is a square only for n = +-1 in 1 <= |n| <= bound.
inline CheckResult check_square_scan(long bound = 1000) {
  CheckResult r{"square-scan", true, ""};
  std::vector<long> hits;
  for (long n = -bound; n <= bound; ++n) {
    if (n == 0) continue;
    BigInt N(n);
    if (is_square(BigInt(12 * N * N * N * N * N * N - 3))) hits.push_back(n);
  }
  r.passed = hits == std::vector<long>{-1, 1};
  r.detail = "squares at n =";
  for (long h : hits) r.detail += " " + std::to_string(h);
  return r;
}

inline bool on_base_pair_line(const ProjectivePoint& p) {
  return p[0] == 0 || p[1] == p[2] || p[0] == p[1] + p[2];
}

/// blowdown(blowup(p)) = p on random plane points.
inline CheckResult check_plane_roundtrip(std::size_t samples = 1000, std::uint64_t seed = 1) {
  CheckResult r{"plane-roundtrip", true, ""};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-1000, 1000);
  std::size_t done = 0, failures = 0;
  while (done < samples) {
    BigInt a(dist(rng)), b(dist(rng)), c(dist(rng));
    if (a == 0 && b == 0 && c == 0) continue;
    auto p = ProjectivePoint::normalize({a, b, c});
    if (on_base_pair_line(p)) continue;
    ++done;
    if (!(blowdown(blowup(p)) == p)) {
      ++failures;
      if (failures <= 5) r.detail += " " + p.str();
    }
  }
  r.passed = failures == 0;
  r.detail = std::to_string(done) + " points, " + std::to_string(failures) + " failures" + r.detail;
  return r;
}

/// blowup(blowdown(q)) = q for the surface points of the given solutions of x^3+y^3+z^3 = 1.
inline CheckResult check_surface_roundtrip(const std::vector<CanonicalSolution>& sols) {
  CheckResult r{"surface-roundtrip", true, ""};
  std::size_t failures = 0;
  for (const auto& s : sols) {
    auto q = to_surface(s.affine());
    if (!(blowup(blowdown(q)).point() == q.point())) {
      ++failures;
      if (failures <= 5) r.detail += " " + s.str();
    }
  }
  r.passed = failures == 0;
  r.detail = std::to_string(sols.size()) + " points, " + std::to_string(failures) + " failures" + r.detail;
  return r;
}

/// Geometric and closed-form discriminants agree in sign and square class.
inline CheckResult check_discriminant_oracle(PencilId id, std::size_t samples = 200, std::uint64_t seed = 7) {
  CheckResult r{std::string("discriminant-oracle-") + std::string(to_string(id)), true, ""};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-60, 60);
  std::size_t done = 0, failures = 0;
  while (done < samples) {
    BigInt a(dist(rng)), b(dist(rng));
    if (a == 0 && b == 0) continue;
    auto param = make_param(a, b);
    if (member_degenerate(id, param)) continue;
    Rat closed;
    try {
      closed = discriminant_closed(id, u_value(id, param));
    } catch (const Error&) {
      continue;  // infinite u or the C pole
    }
    auto geo = infinity_data_geometric(id, param);
    if (closed == 0 || geo.delta == 0) {
      if (closed != geo.delta) ++failures;
      ++done;
      continue;
    }
    ++done;
    if (sgn(closed) != sgn(geo.delta) || !square_class_equal(closed, geo.delta)) {
      ++failures;
      if (failures <= 5) r.detail += " " + param.str();
    }
  }
  r.passed = failures == 0;
  r.detail = std::to_string(done) + " params, " + std::to_string(failures) + " failures" + r.detail;
  return r;
}

inline std::vector<CheckResult> run_all_checks() {
  auto out = verify_identities();
  out.push_back(check_discriminant_identity());
  out.push_back(check_square_scan());
  out.push_back(check_plane_roundtrip());
  out.push_back(check_surface_roundtrip(enumerate(1, 200)));
  for (auto id : {PencilId::C, PencilId::D, PencilId::E}) out.push_back(check_discriminant_oracle(id));
  return out;
}

}  // namespace fermat
