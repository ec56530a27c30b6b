#include <fermat/search.hpp>

#include <gtest/gtest.h>

#include <algorithm>

using namespace fermat;

namespace {

CanonicalSolution C(long x, long y, long z) { return CanonicalSolution::make(x, y, z); }

std::vector<CanonicalSolution> nontrivial(const std::vector<CanonicalSolution>& v) {
  std::vector<CanonicalSolution> out;
  for (const auto& s : v)
    if (!s.trivial()) out.push_back(s);
  return out;
}

}  // namespace

TEST(Canonical, Ordering) {
  auto s = C(-6, 9, -8);
  EXPECT_EQ(s.X, 9);
  EXPECT_EQ(s.Y, -8);
  EXPECT_EQ(s.Z, -6);
  EXPECT_EQ(s.k, 1);
  auto t = C(-1, 1, 1);
  EXPECT_EQ(t.X, 1);
  EXPECT_EQ(t.Y, 1);
  EXPECT_EQ(t.Z, -1);
}

TEST(Enumerate, SmallBoundK1) {
  auto all = enumerate(1, 12);
  auto nt = nontrivial(all);
  ASSERT_EQ(nt.size(), 2u);
  EXPECT_EQ(nt[0], C(9, -8, -6));
  EXPECT_EQ(nt[1], C(-12, 10, 9));
  for (const auto& s : all) EXPECT_TRUE(s.holds());
}

TEST(Enumerate, TinyBounds) {
  auto k1 = enumerate(1, 2);
  EXPECT_TRUE(nontrivial(k1).empty());
  EXPECT_NE(std::find(k1.begin(), k1.end(), C(1, 1, -1)), k1.end());
  auto k2 = enumerate(2, 2);
  EXPECT_NE(std::find(k2.begin(), k2.end(), C(1, 1, 0)), k2.end());
}

TEST(Enumerate, MatchesBruteForce) {
  for (long k : {0L, 1L, 2L, 3L, 9L, 29L, 100L}) {
    const long B = 25;
    std::vector<CanonicalSolution> brute;
    for (long x = -B; x <= B; ++x)
      for (long y = -B; y <= B; ++y)
        for (long z = -B; z <= B; ++z)
          if (x * x * x + y * y * y + z * z * z == k) brute.push_back(C(x, y, z));
    std::sort(brute.begin(), brute.end());
    brute.erase(std::unique(brute.begin(), brute.end()), brute.end());
    EXPECT_EQ(enumerate(k, B), brute) << k;
  }
}

TEST(Enumerate, SortedByHeight) {
  auto all = enumerate(1, 300);
  for (std::size_t i = 1; i < all.size(); ++i) EXPECT_TRUE(all[i - 1] < all[i]);
}

TEST(Enumerate, LoopRolesSymmetric) {
  for (long k : {1L, 2L, 7L}) EXPECT_EQ(enumerate(k, 150, 1, false), enumerate(k, 150, 1, true)) << k;
}

TEST(Enumerate, ParallelEqualsSequential) {
  auto seq = enumerate(1, 600, 1);
  for (unsigned jobs : {2u, 3u, 4u, 7u}) EXPECT_EQ(enumerate(1, 600, jobs), seq) << jobs;
}

TEST(Enumerate, ContainsLehmerPoints) {
  const long B = 2500;
  auto all = enumerate(1, B);
  for (long t = -5; t <= 5; ++t) {
    if (9 * t * t * t * t > B) continue;
    EXPECT_NE(std::find(all.begin(), all.end(), lehmer_point(t)), all.end()) << t;
  }
}

TEST(Classify, Examples) {
  auto a = classify(C(9, -8, -6));
  EXPECT_FALSE(a.trivial);
  ASSERT_TRUE(a.lehmer_t);
  EXPECT_EQ(*a.lehmer_t, 1);
  EXPECT_TRUE(a.linear_alpha);
  EXPECT_TRUE(classify(C(1, 1, -1)).trivial);
  auto b = classify(C(-12, 10, 9));
  ASSERT_TRUE(b.lehmer_t);
  EXPECT_EQ(*b.lehmer_t, -1);
}

TEST(Classify, LinearWitnessIsGenuine) {
  for (const auto& s : enumerate(1, 1000)) {
    auto c = classify(s);
    if (!c.linear_alpha) continue;
    std::array<BigInt, 3> v{s.X, s.Y, s.Z};
    const auto& p = c.linear_perm;
    EXPECT_EQ(*c.linear_alpha * (v[p[0]] + v[p[1]]), 1 - v[p[2]]) << s.str();
  }
}

TEST(Classify, TagsAreConsistent) {
  int other = 0;
  for (const auto& s : enumerate(1, 1500)) {
    auto c = classify(s);
    if (c.tag() == "other") {
      ++other;
      EXPECT_FALSE(c.trivial || c.lehmer_t || c.linear_alpha);
    }
    if (c.trivial) { EXPECT_EQ(c.tag(), "trivial"); }
  }
  EXPECT_GT(other, 0);
}

TEST(LehmerPoint, Examples) {
  EXPECT_EQ(lehmer_point(1), C(9, -8, -6));
  auto z = lehmer_point(0);
  EXPECT_EQ(z, C(1, 0, 0));
  EXPECT_TRUE(z.trivial());
  EXPECT_EQ(lehmer_point(2), C(144, -138, -71));
  EXPECT_EQ(lehmer_point(2).k, 1);
}

TEST(LehmerPoint, ClassifiesBack) {
  for (long t = -20; t <= 20; ++t) {
    if (t == 0) continue;
    auto s = lehmer_point(t);
    EXPECT_EQ(s.k, 1);
    auto c = classify(s);
    ASSERT_TRUE(c.lehmer_t) << t;
    EXPECT_EQ(*c.lehmer_t, t);
  }
}

TEST(Verify, AllIdentitiesPass) {
  auto res = verify_identities();
  EXPECT_EQ(res.size(), 7u);
  for (const auto& r : res) EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
}

TEST(Verify, QuarticRelationAtOne) {
  long x = -9, y = 6;
  EXPECT_EQ((x + y) * (x + y) * (x + y) * (x + y) + 9 * x, 0);
}

TEST(Verify, BlowdownConicAtOne) {
  auto p = blowdown(SurfacePoint::from_coords(1, -9, 6, 8));
  EXPECT_EQ(p, ProjectivePoint::normalize({BigInt(1), BigInt(0), BigInt(2)}));
  EXPECT_EQ(-2 * p[0] * p[0] + p[0] * (p[1] + p[2]) + p[1] * p[2], 0);
}
