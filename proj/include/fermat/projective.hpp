#pragma once

#include <fermat/arith.hpp>

#include <compare>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

namespace fermat {

/// A point of P^1, P^2 or P^3 with primitive integer coordinates whose first
/// nonzero entry is positive. Two normalized points are equal iff they are
/// the same projective point.
class ProjectivePoint {
 public:
  ProjectivePoint() = default;

  static ProjectivePoint normalize(std::span<const BigInt> coords);
  static ProjectivePoint normalize(std::initializer_list<BigInt> coords) {
    std::vector<BigInt> v(coords);
    return normalize(v);
  }
  /// Clears denominators first.
  static ProjectivePoint from_rationals(std::span<const Rat> coords);

  std::size_t dim() const { return coords_.size() - 1; }
  std::size_t size() const { return coords_.size(); }
  const BigInt& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<BigInt>& coords() const { return coords_; }

  bool operator==(const ProjectivePoint&) const = default;
  std::strong_ordering operator<=>(const ProjectivePoint& other) const {
    if (auto c = coords_.size() <=> other.coords_.size(); c != 0) return c;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      int c = cmp(coords_[i], other.coords_[i]);
      if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  std::string str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) out += ":";
      out += coords_[i].get_str();
    }
    return out + "]";
  }

 private:
  std::vector<BigInt> coords_;
};

inline ProjectivePoint proj_normalize(std::span<const BigInt> coords) {
  return ProjectivePoint::normalize(coords);
}

inline ProjectivePoint ProjectivePoint::normalize(std::span<const BigInt> coords) {
  BigInt g = 0;
  for (const auto& c : coords) g = gcd_of(g, c);
  if (g == 0) throw Error(ErrorCode::InvalidProjectivePoint, "all coordinates are zero");
  ProjectivePoint p;
  p.coords_.reserve(coords.size());
  for (const auto& c : coords) p.coords_.push_back(c / g);
  for (const auto& c : p.coords_) {
    if (c == 0) continue;
    if (c < 0)
      for (auto& v : p.coords_) v = -v;
    break;
  }
  return p;
}

inline ProjectivePoint ProjectivePoint::from_rationals(std::span<const Rat> coords) {
  BigInt l = 1;
  for (const auto& c : coords) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<BigInt> ints;
  ints.reserve(coords.size());
  for (const auto& c : coords) ints.push_back(c.get_num() * (l / c.get_den()));
  return normalize(ints);
}

inline std::ostream& operator<<(std::ostream& os, const ProjectivePoint& p) { return os << p.str(); }

}  // namespace fermat
