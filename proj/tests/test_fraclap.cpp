#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fracsym/fraclap.hpp"

using namespace fracsym;

namespace {

double power_s(double s, double x) { return std::abs(x) < 1.0 ? std::pow((1.0 - x) * (1.0 + x), s) : 0.0; }

// Kummer M(a;b;z) by its series in long double.
double kummer(double a, double b, double z) {
  long double term = 1.0L, sum = 1.0L;
  for (int k = 0; k < 400; ++k) {
    term *= (a + k) / ((b + k) * (k + 1.0L)) * z;
    sum += term;
    if (std::fabs(term) < 1e-20L * std::fabs(sum)) break;
  }
  return static_cast<double>(sum);
}

// (-Delta)^s e^{-pi r^2} in R^2 from the multiplier (2 pi |xi|)^{2s}.
double gaussian_fraclap_2d(double s, double r) {
  return 2.0 * kPi * std::pow(2.0 * kPi, 2.0 * s) * std::tgamma(1.0 + s) / (2.0 * std::pow(kPi, 1.0 + s)) *
         kummer(1.0 + s, 1.0, -kPi * r * r);
}

RadialFunction gaussian(int M) {
  return {[](double r) { return std::exp(-kPi * r * r); }, M, 6.0, 0.0, 0.0, {}};
}

SampledFunction sampled(const std::function<double(double)>& f, int n, double a, double b) {
  return sample(f, uniform_grid(n, a, b));
}

}  // namespace

TEST(Fraclap1d, HalfLaplacianOfSemicircleIsOne) {
  auto u = [](double x) { return power_s(0.5, x); };
  for (double x : {0.0, 0.5, -0.5}) EXPECT_NEAR(fraclap_1d(u, -1.0, 1.0, 0.5, x), 1.0, 1e-6) << x;
}

TEST(Fraclap1d, PowerProfileGivesGammaConstant) {
  auto u = [](double x) { return power_s(0.75, x); };
  EXPECT_NEAR(fraclap_1d(u, -1.0, 1.0, 0.75, 0.25), std::tgamma(2.5), 1e-6);
}

TEST(Fraclap1d, UniformOverInteriorAndOrders) {
  for (double s : {0.25, 0.5, 0.75}) {
    auto u = [s](double x) { return power_s(s, x); };
    double worst = 0.0;
    for (int k = 0; k <= 32; ++k) {
      const double x = -0.8 + 1.6 * k / 32;
      worst = std::max(worst, std::abs(fraclap_1d(u, -1.0, 1.0, s, x) - std::tgamma(2.0 * s + 1.0)));
    }
    EXPECT_LE(worst, 5e-3) << s;
    EXPECT_LE(worst, 1e-6) << s;
  }
}

TEST(Fraclap1d, ZeroFunction) {
  EXPECT_EQ(fraclap_1d([](double) { return 0.0; }, -1.0, 1.0, 0.4, 0.1), 0.0);
  SampledFunction z{uniform_grid(11, -1.0, 1.0), std::vector<double>(11, 0.0), 1};
  EXPECT_EQ(fraclap_1d(z, 0.4, 0.1), 0.0);
}

TEST(Fraclap1d, OutsideSupportIsNegativeForNonnegativeU) {
  auto u = [](double x) { return power_s(0.5, x); };
  const double v = fraclap_1d(u, -1.0, 1.0, 0.5, 2.0);
  EXPECT_LT(v, 0.0);
  // Direct: -gamma int u(y) |2-y|^{-2} dy
  quad::Options o;
  o.rel_tol = 1e-12;
  const double ref = -gamma_constant({0.5, 1}) *
                     quad::tanh_sinh([&](double y) { return u(y) / ((2.0 - y) * (2.0 - y)); }, -1.0, 1.0, o).value;
  EXPECT_NEAR(v, ref, 1e-10);
}

TEST(Fraclap1d, SampledSplineMatchesCallable) {
  auto bump = [](double x) { return std::abs(x) < 1.0 ? std::pow(1.0 - x * x, 3) : 0.0; };
  const auto u = sampled(bump, 801, -1.0, 1.0);
  for (double s : {0.3, 0.7}) {
    for (double x : {-0.4, 0.0, 0.35}) {
      const auto r = fraclap_1d_report(u, s, x);
      EXPECT_FALSE(r.kink);
      EXPECT_NEAR(r.value, fraclap_1d(bump, -1.0, 1.0, s, x), 1e-4) << s << " " << x;
    }
  }
}

TEST(Fraclap1d, KinkIsFlagged) {
  const auto tent = sampled([](double x) { return 1.0 - std::abs(x); }, 201, -1.0, 1.0);
  EXPECT_TRUE(fraclap_1d_report(tent, 0.5, 0.0).kink);
  EXPECT_FALSE(fraclap_1d_report(tent, 0.5, 0.5).kink);
  auto f = [](double x) { return 1.0 - std::abs(x); };
  EXPECT_TRUE(fraclap_1d_report(f, -1.0, 1.0, 0.5, 0.0, {0.0}).kink);
}

TEST(Fraclap1d, RejectsBadOrder) {
  auto u = [](double x) { return power_s(0.5, x); };
  EXPECT_THROW(fraclap_1d(u, -1.0, 1.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(fraclap_1d(u, -1.0, 1.0, 0.5, 1.0), DomainError);
}

TEST(FourierBessel, GaussianIsSelfDual) {
  for (int M : {1, 2, 3}) {
    const auto g = gaussian(M);
    for (double xi : {0.0, 0.3, 0.8, 1.5}) {
      EXPECT_NEAR(fourier_bessel_at(g, xi), std::exp(-kPi * xi * xi), 1e-6) << M << " " << xi;
    }
  }
}

TEST(FourierBessel, DiskIndicator) {
  const RadialFunction disk{[](double) { return 1.0; }, 2, 1.0, 0.0, 0.0, {}};
  for (double xi : {0.2, 0.7, 1.3, 4.1}) {
    EXPECT_NEAR(fourier_bessel_at(disk, xi), std::cyl_bessel_j(1.0, 2.0 * kPi * xi) / xi, 1e-6) << xi;
  }
  EXPECT_NEAR(fourier_bessel_at(disk, 0.0), kPi, 1e-10);
}

TEST(FourierBessel, Linearity) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int t = 0; t < 5; ++t) {
    const double a = U(rng), b = U(rng), xi = std::abs(U(rng)) + 0.1;
    const RadialFunction f{[](double r) { return 1.0 - r * r; }, 3, 1.0, 0.0, 0.0, {}};
    const RadialFunction g{[](double r) { return std::cos(r); }, 3, 1.0, 0.0, 0.0, {}};
    const RadialFunction h{[&](double r) { return a * f.profile(r) + b * g.profile(r); }, 3, 1.0, 0.0, 0.0, {}};
    EXPECT_NEAR(fourier_bessel_at(h, xi), a * fourier_bessel_at(f, xi) + b * fourier_bessel_at(g, xi), 1e-10);
  }
}

TEST(FourierBessel, InversionOnGaussian) {
  for (int M : {2, 3}) {
    const RadialFunction g{[](double r) { return 2.0 * std::exp(-kPi * 1.7 * r * r); }, M, 5.0, 0.0, 0.0, {}};
    const auto back = fourier_bessel_transform(fourier_bessel_transform(g, 5.0), 5.0);
    for (double r : {0.0, 0.4, 1.0}) EXPECT_NEAR(back(r), g(r), 1e-4) << M << " " << r;
  }
}

TEST(FraclapRadial, GaussianAgainstKummerOracle) {
  const auto g = gaussian(2);
  for (double s : {0.25, 0.5, 0.75}) {
    for (double r : {0.2, 0.6, 1.1}) {
      const double ref = gaussian_fraclap_2d(s, r);
      EXPECT_NEAR(fraclap_radial(g, s, r), ref, 1e-6 * std::max(1.0, std::abs(ref))) << s << " " << r;
    }
  }
}

TEST(FraclapRadial, AgreesWithOneDimensionalOperator) {
  for (double s : {0.25, 0.5, 0.75}) {
    const RadialFunction u{[s](double r) { return power_s(s, r); }, 1, 1.0, 0.0, 0.0, {}};
    for (double r : {0.3, 0.6}) {
      const double radial = fraclap_radial(u, s, r);
      const double direct = fraclap_1d([s](double x) { return power_s(s, x); }, -1.0, 1.0, s, r);
      EXPECT_NEAR(radial, std::tgamma(2.0 * s + 1.0), 1e-2 * std::tgamma(2.0 * s + 1.0)) << s << " " << r;
      EXPECT_NEAR(radial, direct, 1e-2 * std::abs(direct)) << s << " " << r;
    }
  }
}

TEST(FraclapRadial, SmoothProfileMatchesOneDimensionalOperator) {
  auto bump = [](double x) { return std::abs(x) < 1.0 ? std::pow(1.0 - x * x, 2) : 0.0; };
  const RadialFunction u{bump, 1, 1.0, 0.0, 0.0, {}};
  for (double s : {0.3, 0.6}) {
    for (double r : {0.2, 0.5, 0.7}) {
      const double direct = fraclap_1d(bump, -1.0, 1.0, s, r);
      EXPECT_NEAR(fraclap_radial(u, s, r), direct, 1e-6 * std::abs(direct)) << s << " " << r;
    }
  }
}

TEST(FraclapRadial, Linearity) {
  const auto g = gaussian(3);
  RadialFunction h = g;
  h.profile = [](double r) { return -2.5 * std::exp(-kPi * r * r); };
  EXPECT_NEAR(fraclap_radial(h, 0.4, 0.5), -2.5 * fraclap_radial(g, 0.4, 0.5), 1e-10);
}

TEST(FraclapRadial, RejectsUnsupportedTail) {
  RadialFunction u{[](double) { return 1.0; }, 2, 1.0, 1.0, 0.3, {}};
  EXPECT_THROW(fraclap_radial(u, 0.5, 0.5), DomainError);
}

TEST(SphericalMean, ConstantProfile) {
  for (int N : {1, 2, 3}) {
    const auto U = spherical_mean(SampledFunction{{0.0, 0.5, 1.0}, {2.0, 2.0, 2.0}, N}, N);
    for (double r : {0.0, 0.3, 0.77, 1.0}) EXPECT_NEAR(U(r), 2.0 / N, 1e-12) << N << " " << r;
    EXPECT_NEAR(U(2.0), 2.0 / N * std::pow(0.5, N), 1e-12);
  }
}

TEST(SphericalMean, LinearProfileOneDimension) {
  const auto U = spherical_mean(SampledFunction{{0.0, 1.0}, {1.0, 0.0}, 1}, 1);
  for (double r : {0.1, 0.25, 0.5, 0.9}) EXPECT_NEAR(U(r), 1.0 - 0.5 * r, 1e-12);
}

TEST(SphericalMean, BoundsAndMonotonicity) {
  auto u = [](double r) { return r < 0.3 ? 1.0 : (r < 1.0 ? std::pow((1.0 - r) / 0.7, 2) : 0.0); };
  for (int N : {1, 3}) {
    const auto U = spherical_mean(u, 1.0, N);
    double prev = U(0.0);
    for (int k = 1; k <= 200; ++k) {
      const double r = 1.2 * k / 200;
      const double v = U(r);
      EXPECT_LE(v, prev + 1e-12);
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0 / N + 1e-12);
      // Cubic Hermite reading of U is accurate to ~1e-7 next to the kink of u.
      if (r < 1.0) EXPECT_LE(u(r), N * v + 1e-6) << N << " " << r;
      EXPECT_LE(U.derivative(r), 1e-6);
      prev = v;
    }
    EXPECT_NEAR(U(0.2), 1.0 / N, 1e-12);
  }
}

TEST(SphericalMean, RejectsIncreasingProfile) {
  EXPECT_THROW(spherical_mean(SampledFunction{{0.0, 1.0}, {0.0, 1.0}, 1}, 1), DomainError);
}

TEST(YIdentity, SmoothProfile) {
  auto u = [](double r) { return r < 1.0 ? std::pow(1.0 - r * r, 2) : 0.0; };
  const auto a = y_identity(u, 1.0, 0.5, 1, 0.5);
  EXPECT_LE(a.residual, 1e-2) << a.lhs << " " << a.rhs;
  const auto b = y_identity(u, 1.0, 0.25, 3, 0.8);
  EXPECT_LE(b.residual, 1e-2) << b.lhs << " " << b.rhs;
}

TEST(YIdentity, OneDimensionalLeftSideIsIntegralOfOperator) {
  // Y(r) = int_0^r (-Delta)^s u for N = 1.
  auto u = [](double r) { return std::abs(r) < 1.0 ? std::pow(1.0 - r * r, 2) : 0.0; };
  const double s = 0.5, r = 0.5;
  quad::Options o;
  o.rel_tol = 1e-9;
  const double ref = quad::adaptive_gk([&](double t) { return fraclap_1d(u, -1.0, 1.0, s, t); }, 0.0, r, o).value;
  EXPECT_NEAR(y_identity(u, 1.0, s, 1, r).lhs, ref, 1e-6 * std::abs(ref));
}

TEST(YIdentity, SampledInputAndSmallRadius) {
  const auto u = sample([](double r) { return r < 1.0 ? std::pow(1.0 - r * r, 2) : 0.0; }, uniform_grid(2001, 0.0, 1.0));
  EXPECT_LE(check_Y_identity(u, 0.5, 1, 0.5), 1e-2);
  auto f = [](double r) { return r < 1.0 ? std::pow(1.0 - r * r, 2) : 0.0; };
  const auto y1 = y_identity(f, 1.0, 0.25, 3, 0.1);
  const auto y2 = y_identity(f, 1.0, 0.25, 3, 0.05);
  EXPECT_LT(std::abs(y2.lhs), std::abs(y1.lhs));
  EXPECT_NEAR(y2.lhs / y1.lhs, 0.125, 0.02);
}

TEST(Gagliardo, ZeroAndScaling) {
  SampledFunction z{uniform_grid(11, -1.0, 1.0), std::vector<double>(11, 0.0), 1};
  EXPECT_EQ(gagliardo_seminorm_sq(z, 0.5), 0.0);
  auto u = sample([](double x) { return 1.0 - x * x; }, chebyshev_grid(101));
  auto v = u;
  for (double& t : v.v) t *= -3.0;
  const double a = gagliardo_seminorm_sq(u, 0.6), b = gagliardo_seminorm_sq(v, 0.6);
  EXPECT_NEAR(b, 9.0 * a, 1e-8 * b);
}

TEST(Gagliardo, IndicatorClosedForm) {
  for (double s : {0.1, 0.3}) {
    SampledFunction u{uniform_grid(21, -1.0, 1.0), std::vector<double>(21, 1.0), 1};
    const double ref = 4.0 * std::pow(2.0, 1.0 - 2.0 * s) / ((1.0 - 2.0 * s) * 2.0 * s);
    EXPECT_NEAR(gagliardo_seminorm_sq(u, s), ref, 1e-8 * ref) << s;
  }
  SampledFunction u{uniform_grid(21, -1.0, 1.0), std::vector<double>(21, 1.0), 1};
  EXPECT_THROW(gagliardo_seminorm_sq(u, 0.5), NumericError);
}

TEST(Gagliardo, TentAgainstBruteForce) {
  // Inside-inside double integral plus twice the inside-outside part.
  const double s = 0.4;
  auto t = [](double x) { return std::abs(x) < 1.0 ? 1.0 - std::abs(x) : 0.0; };
  quad::Options o;
  o.rel_tol = 1e-10;
  auto inner = [&](double x) {
    auto f = [&](double y) {
      return y == x ? 0.0 : std::pow(t(y) - t(x), 2) * std::pow(std::abs(x - y), -1.0 - 2.0 * s);
    };
    std::vector<double> cuts{-1.0, 0.0, x, 1.0};
    std::sort(cuts.begin(), cuts.end());
    double v = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (cuts[i + 1] > cuts[i]) v += quad::tanh_sinh(f, cuts[i], cuts[i + 1], o).value;
    }
    return v;
  };
  auto outside = [&](double y) {
    if (std::abs(y) >= 1.0) return 0.0;
    return t(y) * t(y) * (std::pow(1.0 + y, -2.0 * s) + std::pow(1.0 - y, -2.0 * s)) / (2.0 * s);
  };
  quad::Options oo;
  oo.rel_tol = 1e-9;
  const double ref = quad::tanh_sinh(inner, -1.0, 0.0, oo).value + quad::tanh_sinh(inner, 0.0, 1.0, oo).value +
                     2.0 * (quad::tanh_sinh(outside, -1.0, 0.0, o).value + quad::tanh_sinh(outside, 0.0, 1.0, o).value);
  const auto u = sample(t, uniform_grid(41, -1.0, 1.0));
  EXPECT_NEAR(gagliardo_seminorm_sq(u, s), ref, 1e-6 * ref);
}

TEST(Gagliardo, EnergyIdentityForSemicircle) {
  const auto u = sample([](double x) { return power_s(0.5, x); }, chebyshev_grid(801));
  const double e = 0.5 * gamma_constant({0.5, 1}) * gagliardo_seminorm_sq(u, 0.5);
  EXPECT_NEAR(e, kPi / 2.0, 1e-3);
}

TEST(PolyaSzego, RearrangedProfileIsFixedPoint) {
  const auto u = sample([](double x) { return std::pow(1.0 - x * x, 2); }, chebyshev_grid(121));
  const double full = gagliardo_seminorm_sq(u, 0.5);
  EXPECT_NEAR(polya_szego_check(u, 0.5), 0.0, 1e-7 * full);
}

TEST(PolyaSzego, AsymmetricTentHasPositiveGap) {
  auto f = [](double x) { return x < -0.5 ? 2.0 * (x + 1.0) : std::max(0.0, (1.0 - x) / 1.5); };
  const auto u = sample(f, merge_grids(uniform_grid(201, -1.0, 1.0), {-0.5}));
  EXPECT_GT(polya_szego_check(u, 0.5), 1e-3);
}

TEST(PolyaSzego, TranslationInvariance) {
  auto f = [](double x) { return x < -0.5 ? 2.0 * (x + 1.0) : std::max(0.0, (1.0 - x) / 1.5); };
  const auto u = sample(f, merge_grids(uniform_grid(201, -1.0, 1.0), {-0.5}));
  auto w = u;
  for (double& t : w.x) t += 0.37;
  EXPECT_NEAR(polya_szego_check(w, 0.3), polya_szego_check(u, 0.3), 1e-8);
}

TEST(PolyaSzego, RandomProfilesNeverGainEnergy) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const int n = 5 + t % 7;
    SampledFunction u{uniform_grid(n, -1.0, 1.0), std::vector<double>(n), 1};
    for (int i = 1; i + 1 < n; ++i) u.v[i] = U(rng);
    u.v.front() = u.v.back() = 0.0;
    for (double s : {0.25, 0.5, 0.75}) {
      const double full = gagliardo_seminorm_sq(u, s);
      EXPECT_GE(polya_szego_check(u, s), -1e-6 * full) << t << " " << s;
    }
  }
}
