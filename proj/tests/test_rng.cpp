#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "specnet/rng.hpp"

using specnet::Philox4x64;
using specnet::RngStream;

// Known-answer vectors from the Random123 distribution (kat_vectors,
// philox4x64_10).
TEST(PhiloxKat, Zeros) {
  const auto out = Philox4x64::block({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out[0], 0x16554d9eca36314cULL);
  EXPECT_EQ(out[1], 0xdb20fe9d672d0fdcULL);
  EXPECT_EQ(out[2], 0xd7e772cee186176bULL);
  EXPECT_EQ(out[3], 0x7e68b68aec7ba23bULL);
}

TEST(PhiloxKat, AllOnes) {
  constexpr std::uint64_t f = ~0ULL;
  const auto out = Philox4x64::block({f, f, f, f}, {f, f});
  EXPECT_EQ(out[0], 0x87b092c3013fe90bULL);
  EXPECT_EQ(out[1], 0x438c3c67be8d0224ULL);
  EXPECT_EQ(out[2], 0x9cc7d7c69cd777b6ULL);
  EXPECT_EQ(out[3], 0xa09caebf594f0ba0ULL);
}

TEST(PhiloxKat, PiDigits) {
  const auto out = Philox4x64::block({0x243f6a8885a308d3ULL, 0x13198a2e03707344ULL, 0xa4093822299f31d0ULL,
                                      0x082efa98ec4e6c89ULL},
                                     {0x452821e638d01377ULL, 0xbe5466cf34e90c6cULL});
  EXPECT_EQ(out[0], 0xa528f45403e61d95ULL);
  EXPECT_EQ(out[1], 0x38c72dbd566e9788ULL);
  EXPECT_EQ(out[2], 0xa5a1610e72fd18b5ULL);
  EXPECT_EQ(out[3], 0x57bd43b5e52b7fe6ULL);
}

TEST(PhiloxKat, CounterOne) {
  const auto out = Philox4x64::block({1, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out[0], 0x02f4ba6408e4d89bULL);
  EXPECT_EQ(out[3], 0x907d7a052fd5b4dcULL);
}

TEST(PhiloxKat, CompileTime) {
  static_assert(Philox4x64::block({0, 0, 0, 0}, {0, 0})[0] == 0x16554d9eca36314cULL);
  SUCCEED();
}

TEST(RngStream, Reproducible) {
  RngStream a(42, 7);
  RngStream b(42, 7);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a.next_u64(), b.next_u64());
  }
  RngStream c(42, 7);
  RngStream d(42, 7);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(c.normal(), d.normal());
    ASSERT_EQ(c.gamma(0.7, 2.0), d.gamma(0.7, 2.0));
  }
}

TEST(RngStream, DistinctStreamsAndSeedsDiffer) {
  RngStream a(1, 0);
  RngStream b(1, 1);
  RngStream c(2, 0);
  int same_ab = 0;
  int same_ac = 0;
  for (int i = 0; i < 256; ++i) {
    const auto x = a.next_u64();
    same_ab += x == b.next_u64();
    same_ac += x == c.next_u64();
  }
  EXPECT_EQ(same_ab, 0);
  EXPECT_EQ(same_ac, 0);
}

TEST(RngStream, DeriveIgnoresConsumption) {
  RngStream a(5, 3);
  const RngStream fresh = a.derive(9);
  for (int i = 0; i < 17; ++i) a.next_u64();
  RngStream x = fresh;
  RngStream y = a.derive(9);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(x.next_u64(), y.next_u64());
  RngStream z = a.derive(10);
  RngStream w = a.derive(9);
  EXPECT_NE(z.next_u64(), w.next_u64());
}

TEST(RngStream, UniformOpenInterval) {
  RngStream r(3, 0);
  double sum = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
}

TEST(RngStream, BelowIsUnbiased) {
  RngStream r(4, 0);
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) ++counts[r.below(7)];
  double chi2 = 0;
  for (int c : counts) chi2 += (c - n / 7.0) * (c - n / 7.0) / (n / 7.0);
  EXPECT_LT(chi2, 22.46);  // chi-square(6) 0.999 quantile
  EXPECT_THROW(r.below(0), specnet::InvalidArgument);
}

namespace {

struct Moments {
  double mean;
  double var;
};

template <typename Draw>
Moments moments(Draw draw, int n) {
  double s = 0;
  double s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = draw();
    s += x;
    s2 += x * x;
  }
  const double m = s / n;
  return {m, s2 / n - m * m};
}

}  // namespace

TEST(RngStream, SamplerMoments) {
  RngStream r(6, 0);
  const int n = 400000;
  auto nm = moments([&] { return r.normal(); }, n);
  EXPECT_NEAR(nm.mean, 0, 0.01);
  EXPECT_NEAR(nm.var, 1, 0.01);
  auto em = moments([&] { return r.exponential(2.0); }, n);
  EXPECT_NEAR(em.mean, 0.5, 0.005);
  EXPECT_NEAR(em.var, 0.25, 0.005);
  auto lm = moments([&] { return r.laplace(1.5); }, n);  // var 2 b^2
  EXPECT_NEAR(lm.mean, 0, 0.01);
  EXPECT_NEAR(lm.var, 4.5, 0.07);
  for (double shape : {0.3, 1.0, 4.5}) {
    auto gm = moments([&] { return r.gamma(shape, 2.0); }, n);
    EXPECT_NEAR(gm.mean, 2.0 * shape, 0.02 * (1 + shape));
    EXPECT_NEAR(gm.var, 4.0 * shape, 0.05 * (1 + 4 * shape));
  }
}
