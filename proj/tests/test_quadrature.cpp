#include <gtest/gtest.h>

#include <cmath>

#include "fracsym/quadrature.hpp"

using namespace fracsym;

TEST(Quadrature, KronrodExactForDegree22) {
  auto f = [](double x) { return std::pow(x, 22) - 3.0 * std::pow(x, 7) + 1.0; };
  const auto r = quad::gauss_kronrod15(f, -1.0, 2.0);
  const double exact = (std::pow(2.0, 23) + 1.0) / 23.0 - 3.0 * (256.0 - 1.0) / 8.0 + 3.0;
  EXPECT_NEAR(r.value, exact, 1e-12 * std::abs(exact));
}

TEST(Quadrature, AdaptiveSmooth) {
  auto f = [](double x) { return std::exp(-x * x); };
  const auto r = quad::adaptive_gk(f, -3.0, 3.0);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, std::sqrt(M_PI) * std::erf(3.0), 1e-13);
}

TEST(Quadrature, AdaptiveReportsFailure) {
  auto f = [](double x) { return 1.0 / x; };
  quad::Options opt;
  opt.max_intervals = 20;
  const auto r = quad::adaptive_gk(f, 0.0, 1.0, opt);
  EXPECT_FALSE(r.converged);
  EXPECT_THROW(quad::require(r, "test"), NumericError);
}

TEST(Quadrature, TanhSinhEndpointSingularity) {
  auto f = [](double, double dl, double) { return std::pow(dl, -0.9); };
  const auto r = quad::tanh_sinh(f, 2.0, 3.0);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 10.0, 1e-9);
  auto g = [](double x) { return std::log(x); };
  EXPECT_NEAR(quad::tanh_sinh(g, 0.0, 1.0).value, -1.0, 1e-12);
}

TEST(Quadrature, TanhSinhRightDistanceIsPrecise) {
  // 1/sqrt(1-x) needs the complement 1-x near x = 1.
  auto f = [](double, double, double dr) { return 1.0 / std::sqrt(dr); };
  EXPECT_NEAR(quad::tanh_sinh(f, 0.0, 1.0).value, 2.0, 1e-12);
}

TEST(Quadrature, SemiInfinite) {
  auto f = [](double x) { return std::exp(-x); };
  EXPECT_NEAR(quad::tanh_sinh_inf(f, 1.0).value, std::exp(-1.0), 1e-12);
  auto g = [](double x) { return 1.0 / (1.0 + x * x); };
  EXPECT_NEAR(quad::tanh_sinh_inf(g, 0.0).value, M_PI / 2, 1e-10);
}

TEST(Quadrature, GaussLegendre) {
  std::vector<double> x, w;
  quad::gauss_legendre(8, x, w);
  double s0 = 0, s14 = 0;
  for (int i = 0; i < 8; ++i) {
    s0 += w[i];
    s14 += w[i] * std::pow(x[i], 14);
  }
  EXPECT_NEAR(s0, 2.0, 1e-14);
  EXPECT_NEAR(s14, 2.0 / 15.0, 1e-14);
}
