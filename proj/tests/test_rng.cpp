#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "shutterforge/parallel.hpp"
#include "shutterforge/rng.hpp"

using namespace shutterforge;

TEST(Rng, StreamsAreReproducibleAndDistinct)
{
  rng::Stream a(42, 0);
  rng::Stream b(42, 0);
  rng::Stream c(42, 1);
  rng::Stream d(43, 0);
  int same_c = 0;
  int same_d = 0;
  for (int i = 0; i < 100; ++i) {
    const auto va = a.next();
    EXPECT_EQ(va, b.next());
    same_c += va == c.next();
    same_d += va == d.next();
  }
  EXPECT_EQ(same_c, 0);
  EXPECT_EQ(same_d, 0);
}

TEST(Rng, UniformIntCoversInclusiveRange)
{
  rng::Stream s(1, 2);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto v = s.uniform_int(-3, 3);
    ASSERT_GE(v, -3);
    ASSERT_LE(v, 3);
    ++hist[static_cast<std::size_t>(v + 3)];
  }
  for (int h : hist)
    EXPECT_NEAR(h, 10000, 500);
  EXPECT_THROW(s.uniform_int(2, 1), ArgumentError);
}

TEST(Rng, PoissonMomentsSmallAndLargeMeans)
{
  for (double mean : {0.3, 4.0, 120.0, 700.0, 2500.0}) {
    const int n = 40000;
    double sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
      rng::Stream s(99, static_cast<std::uint64_t>(i));
      const double v = static_cast<double>(rng::poisson(s, mean));
      sum += v;
      sq += v * v;
    }
    const double m = sum / n;
    const double var = sq / n - m * m;
    EXPECT_NEAR(m, mean, 4.0 * std::sqrt(mean / n)) << mean;
    EXPECT_NEAR(var / mean, 1.0, 0.05) << mean;
  }
  rng::Stream s(0, 0);
  EXPECT_EQ(rng::poisson(s, 0.0), 0u);
  EXPECT_THROW(rng::poisson(s, -1.0), ArgumentError);
}

TEST(Parallel, CoversEveryIndexOnceAndPropagatesErrors)
{
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; });
  for (int h : hits)
    EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(100,
                            [](std::size_t i) {
                              if (i == 57)
                                throw ArgumentError("boom");
                            }),
               ArgumentError);
}
