#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "mrl/parallel.hpp"
#include "mrl/rng.hpp"

namespace {

using mrl::CounterRng;
using mrl::Philox4x32;

// Known-answer vectors from the Random123 distribution (philox4x32_10).
TEST(Philox, KnownAnswerZero) {
  const auto out = Philox4x32::encrypt({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (Philox4x32::Block{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
}

TEST(Philox, KnownAnswerOnes) {
  const auto out = Philox4x32::encrypt({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                       {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out, (Philox4x32::Block{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
}

TEST(Philox, KnownAnswerPi) {
  const auto out = Philox4x32::encrypt({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                       {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out, (Philox4x32::Block{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(CounterRng, FirstBlockIsEncryptedCounter) {
  CounterRng rng(0x0000000500000007ull, 3, 9);
  const auto block = Philox4x32::encrypt({0, 0, 9, 3}, {7, 5});
  for (int i = 0; i < 4; ++i) EXPECT_EQ(rng(), block[i]);
  const auto next = Philox4x32::encrypt({1, 0, 9, 3}, {7, 5});
  EXPECT_EQ(rng(), next[0]);
}

TEST(CounterRng, StreamsAreReproducibleAndDistinct) {
  auto first = [](std::uint64_t seed, std::uint32_t cell, std::uint32_t rep) {
    CounterRng r(seed, cell, rep);
    std::vector<std::uint32_t> v(8);
    for (auto& x : v) x = r();
    return v;
  };
  EXPECT_EQ(first(1, 2, 3), first(1, 2, 3));
  EXPECT_NE(first(1, 2, 3), first(2, 2, 3));
  EXPECT_NE(first(1, 2, 3), first(1, 3, 3));
  EXPECT_NE(first(1, 2, 3), first(1, 2, 4));
}

TEST(CounterRng, UniformIsInOpenUnitIntervalWithRightMoments) {
  CounterRng rng(42, 0, 0);
  const int n = 200000;
  double sum = 0.0;
  double sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sum2 += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 5 * std::sqrt(1.0 / 12.0 / n));
  EXPECT_NEAR(sum2 / n - 0.25, 1.0 / 12.0, 2e-3);
}

TEST(CounterRng, UniformBinsPassChiSquare) {
  CounterRng rng(7, 1, 1);
  std::vector<int> bins(64, 0);
  const int n = 640000;
  for (int i = 0; i < n; ++i) ++bins[static_cast<int>(rng.uniform() * 64)];
  double chi2 = 0.0;
  for (int b : bins) chi2 += (b - 10000.0) * (b - 10000.0) / 10000.0;
  // 63 degrees of freedom; the 0.9999 quantile is about 116.
  EXPECT_LT(chi2, 116.0);
}

TEST(ParallelFor, VisitsEveryIndexOnceForAnyWorkerCount) {
  for (unsigned workers : {1u, 2u, 3u, 8u}) {
    std::vector<int> hits(1001, 0);
    mrl::parallel_for(hits.size(), workers, [&](std::size_t i) { ++hits[i]; });
    EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
}

TEST(ParallelFor, RethrowsWorkerException) {
  EXPECT_THROW(mrl::parallel_for(100, 4,
                                 [](std::size_t i) {
                                   if (i == 57) throw std::runtime_error("boom");
                                 }),
               std::runtime_error);
}

}  // namespace
