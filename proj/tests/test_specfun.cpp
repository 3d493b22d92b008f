#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fracsym/specfun.hpp"

using namespace fracsym;

namespace {

// Poisson integral for J_nu, nu > -1/2.
double bessel_poisson(double nu, double x) {
  auto f = [&](double t, double dl, double dr) {
    const double w = std::pow(dl * dr, nu - 0.5);  // (1-t)(1+t)
    return w * std::cos(x * t);
  };
  quad::Options opt;
  opt.rel_tol = 1e-14;
  opt.abs_tol = 1e-16;
  opt.max_level = 12;
  double sum = 0.0;
  const int panels = 1 + static_cast<int>(x / 2.0);
  for (int i = 0; i < panels; ++i) {
    const double a = -1.0 + 2.0 * i / panels;
    const double b = -1.0 + 2.0 * (i + 1) / panels;
    auto g = [&](double t, double, double) {
      return f(t, t + 1.0, 1.0 - t);
    };
    sum += quad::tanh_sinh(g, a, b, opt).value;
  }
  return std::pow(0.5 * x, nu) / (std::sqrt(kPi) * std::tgamma(nu + 0.5)) * sum;
}

double bessel_series30(double nu, double x) {
  double term = std::pow(0.5 * x, nu) / std::tgamma(nu + 1.0);
  double sum = term;
  for (int k = 1; k < 30; ++k) {
    term *= -0.25 * x * x / (k * (nu + k));
    sum += term;
  }
  return sum;
}

double hyp_series_oracle(double a, double b, double c, double x) {
  long double term = 1, sum = 1;
  for (int k = 0; k < 20000; ++k) {
    term *= (long double)(a + k) * (b + k) / ((c + k) * (k + 1.0L)) * x;
    sum += term;
    if (std::fabs((double)term) < 1e-22) break;
  }
  return (double)sum;
}

}  // namespace

TEST(Gamma, KnownValues) {
  EXPECT_NEAR(fracsym::gamma(0.5), std::sqrt(kPi), 1e-15);
  EXPECT_DOUBLE_EQ(fracsym::gamma(1.0), 1.0);
  EXPECT_DOUBLE_EQ(fracsym::gamma(2.0), 1.0);
  EXPECT_NEAR(fracsym::gamma(5.0), 24.0, 1e-13);
}

TEST(Gamma, PolesThrow) {
  EXPECT_THROW(fracsym::gamma(0.0), DomainError);
  EXPECT_THROW(fracsym::gamma(-3.0), DomainError);
  EXPECT_NO_THROW(fracsym::gamma(-2.5));
}

TEST(Gamma, DuplicationAndReflection) {
  const double x = 0.75;
  const double lhs = std::sqrt(kPi) * std::pow(2.0, 1.0 - 2.0 * x) * fracsym::gamma(2.0 * x);
  EXPECT_NEAR(lhs, fracsym::gamma(x) * fracsym::gamma(x + 0.5), 1e-12 * lhs);
  for (int i = 0; i <= 40; ++i) {
    const double xi = 0.1 * std::pow(100.0, i / 40.0);
    EXPECT_LE(duplication_residual(xi), 1e-12) << xi;
  }
  for (double xi : {0.1, 0.3, 0.5, 0.77, -1.3, 2.6}) EXPECT_LE(reflection_residual(xi), 1e-12) << xi;
}

TEST(Beta, Values) {
  EXPECT_NEAR(beta(1.5, 0.5), kPi / 2, 1e-14);
  EXPECT_NEAR(beta(1.0, 0.5), 2.0, 1e-14);
  EXPECT_NEAR(beta(0.3, 1.7), beta(1.7, 0.3), 1e-14);
  EXPECT_NEAR(beta(200.0, 3.0), 2.0 / (200.0 * 201.0 * 202.0), 1e-12 * 2.0 / (200.0 * 201.0 * 202.0));
  EXPECT_THROW(beta(0.0, 1.0), DomainError);
  EXPECT_THROW(beta(1.0, -1.0), DomainError);
}

TEST(Geometry, BallAndSphere) {
  EXPECT_DOUBLE_EQ(omega(1), 2.0);
  EXPECT_NEAR(omega(2), kPi, 1e-15);
  EXPECT_NEAR(omega(3), 4.0 * kPi / 3.0, 1e-14);
  EXPECT_NEAR(sphere_area(1), 2.0, 1e-15);
  EXPECT_NEAR(sphere_area(3), 4.0 * kPi, 1e-14);
  for (int n = 1; n < 8; ++n) EXPECT_NEAR(sphere_area(n), n * omega(n), 1e-13);
}

TEST(Bessel, SpecialValues) {
  EXPECT_DOUBLE_EQ(bessel_j(0.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(bessel_j(1.0, 0.0), 0.0);
  EXPECT_NEAR(bessel_j(0.5, 1.0), std::sqrt(2.0 / kPi) * std::sin(1.0), 1e-15);
  EXPECT_NEAR(bessel_j(0.5, 1.0), bessel_series30(0.5, 1.0), 1e-15);
  EXPECT_NEAR(bessel_j(-0.5, 2.0), bessel_series30(-0.5, 2.0), 1e-14);
  EXPECT_THROW(bessel_j(-0.7, 1.0), DomainError);
  EXPECT_THROW(bessel_j(0.0, -1.0), DomainError);
}

TEST(Bessel, FirstZeroOfJ0) {
  const double j01 = 2.404825557695773;
  EXPECT_NEAR(bessel_j_zero(0.0, 1), j01, 1e-14);
  EXPECT_NEAR(bessel_j(0.0, j01), 0.0, 1e-15);
  // Zero of the 30-term series oracle by bisection.
  double lo = 2.0, hi = 3.0;
  for (int i = 0; i < 100; ++i) {
    const double m = 0.5 * (lo + hi);
    (bessel_series30(0.0, m) > 0 ? lo : hi) = m;
  }
  EXPECT_NEAR(bessel_j_zero(0.0, 1), lo, 1e-13);
}

TEST(Bessel, ZerosAcrossOrders) {
  for (double nu : {-0.5, 0.0, 0.5, 1.0, 1.5, 2.0}) {
    double prev = 0.0;
    for (int k = 1; k <= 30; ++k) {
      const double z = bessel_j_zero(nu, k);
      EXPECT_GT(z, prev);
      EXPECT_NEAR(bessel_j(nu, z), 0.0, 1e-13) << nu << " " << k;
      prev = z;
    }
  }
  EXPECT_NEAR(bessel_j_zero(0.5, 3), 3 * kPi, 1e-12);
  EXPECT_NEAR(bessel_j_zero(-0.5, 2), 1.5 * kPi, 1e-12);
}

TEST(Bessel, AgreesWithPoissonIntegral) {
  for (double nu : {-0.3, 0.0, 0.3, 0.5, 1.0, 1.5, 2.7}) {
    for (double x : {0.01, 0.5, 1.0, 3.7, 10.0, 27.3, 55.0, 100.0}) {
      const double ref = bessel_poisson(nu, x);
      const double scale = std::max(std::abs(ref), std::sqrt(2.0 / (kPi * x)));
      EXPECT_LE(std::abs(bessel_j(nu, x) - ref), 1e-10 * scale) << nu << " " << x;
    }
  }
}

TEST(Hyp2f1, ZeroAndClosedForms) {
  EXPECT_DOUBLE_EQ(hyp2f1(0.3, 0.4, 2.0, 0.0), 1.0);
  EXPECT_EQ(check_identity_zero({1.7, -0.2, 3.3}), 0.0);
  EXPECT_NEAR(hyp2f1(1.0, 1.0, 2.0, 0.5), -std::log(0.5) / 0.5, 1e-14);
  for (double x : {-0.9, -0.4, 0.3, 0.7, 0.95, 0.999}) {
    EXPECT_NEAR(hyp2f1(1.0, 1.0, 2.0, x), -std::log1p(-x) / x, 1e-12 * std::abs(std::log1p(-x) / x)) << x;
  }
  // (1-x)^{-a}
  EXPECT_NEAR(hyp2f1(0.7, 1.3, 1.3, 0.9), std::pow(0.1, -0.7), 1e-11 * std::pow(0.1, -0.7));
  // arcsin(sqrt x)/sqrt(x(1-x)) = 2F1(1,1;3/2;x)
  for (double x : {0.2, 0.6, 0.99, 1 - 1e-9}) {
    const double ref = std::asin(std::sqrt(x)) / std::sqrt(x * (1 - x));
    EXPECT_NEAR(hyp2f1(1.0, 1.0, 1.5, x), ref, 1e-10 * ref) << x;
  }
}

TEST(Hyp2f1, GaussSummation) {
  const HypergeometricParams p{0.3, 0.4, 2.0};
  const double g = fracsym::gamma(2.0) * fracsym::gamma(1.3) / (fracsym::gamma(1.7) * fracsym::gamma(1.6));
  EXPECT_NEAR(hyp2f1(p, 1.0), g, 1e-14);
  EXPECT_LE(check_identity_gauss(p), 1e-9);
  EXPECT_NEAR(hyp2f1(p, 1.0 - 1e-12), g, 1e-9);
  EXPECT_THROW(hyp2f1({1.0, 1.0, 2.0}, 1.0), DomainError);
  EXPECT_THROW(hyp2f1({1.0, 1.0, 2.0}, 1.2), DomainError);
  EXPECT_THROW(hyp2f1({1.0, 1.0, -2.0}, 0.2), DomainError);
}

TEST(Hyp2f1, EulerIntegralAtOneWithLargeA) {
  // (1-t)^{c-b-1} and (1-t)^{-a} overflow separately at the tanh-sinh end nodes.
  const HypergeometricParams p{1.44478, 0.625679, 2.29258};
  EXPECT_TRUE(std::isfinite(hyp2f1_euler(p, 1.0)));
  EXPECT_LE(check_identity_gauss(p), 1e-9);
}

TEST(Hyp2f1, TerminatingSeries) {
  // 2F1(-2, b; c; x) = 1 - 2bx/c + b(b+1)x^2/(c(c+1))
  const double b = 0.7, c = 1.9;
  for (double x : {-3.0, 0.4, 1.0}) {
    const double ref = 1 - 2 * b * x / c + b * (b + 1) * x * x / (c * (c + 1));
    EXPECT_NEAR(hyp2f1(-2.0, b, c, x), ref, 1e-14 * std::max(1.0, std::abs(ref)));
    EXPECT_NEAR(hyp2f1(b, -2.0, c, x), ref, 1e-14 * std::max(1.0, std::abs(ref)));
  }
}

TEST(Hyp2f1, SymmetryInAB) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ua(-2.0, 3.0), uc(0.1, 4.0), ux(-3.0, 0.999);
  for (int i = 0; i < 200; ++i) {
    const double a = ua(rng), b = ua(rng), c = uc(rng), x = ux(rng);
    const double f1 = hyp2f1(a, b, c, x), f2 = hyp2f1(b, a, c, x);
    EXPECT_NEAR(f1, f2, 1e-9 * std::max(1.0, std::abs(f1))) << a << " " << b << " " << c << " " << x;
  }
}

TEST(Hyp2f1, AgreesWithLongDoubleSeries) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ua(-1.5, 3.0), uc(0.2, 4.0), ux(-0.8, 0.85);
  for (int i = 0; i < 300; ++i) {
    const double a = ua(rng), b = ua(rng), c = uc(rng), x = ux(rng);
    const double ref = hyp_series_oracle(a, b, c, x);
    EXPECT_NEAR(hyp2f1(a, b, c, x), ref, 1e-9 * std::max(1.0, std::abs(ref)))
        << a << " " << b << " " << c << " " << x;
  }
}

TEST(Hyp2f1, EulerIntegralConsistency) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ua(-1.0, 3.0), ub(0.2, 2.0), ux(0.0, 0.9);
  for (int i = 0; i < 60; ++i) {
    const double a = ua(rng), b = ub(rng), c = b + ub(rng), x = ux(rng);
    const HypergeometricParams p{a, b, c};
    const double ref = hyp2f1_euler(p, x);
    EXPECT_NEAR(hyp2f1(p, x), ref, 1e-8 * std::abs(ref)) << a << " " << b << " " << c << " " << x;
  }
  EXPECT_THROW(hyp2f1_euler({1.0, 2.0, 1.5}, 0.3), DomainError);
}

TEST(Hyp2f1, KernelParametersNearOne) {
  // Parameters of the angular kernel; compare with the Euler integral after
  // the linear transformation, which has c > b > 0.
  for (int n : {2, 3, 5}) {
    for (double s : {0.25, 0.5, 0.75}) {
      const HypergeometricParams p{(n + 2 * s) / 2, s + 1, n / 2.0};
      const HypergeometricParams q{p.c - p.a, p.c - p.b, p.c};
      for (double x : {0.6, 0.9, 0.99, 0.9999}) {
        if (!(q.c > q.b && q.b > 0)) continue;
        const double ref = std::pow(1 - x, p.c - p.a - p.b) * hyp2f1_euler(q, x);
        EXPECT_NEAR(hyp2f1(p, x), ref, 1e-9 * ref) << n << " " << s << " " << x;
      }
    }
  }
}

TEST(Hyp2f1, FormulonaIdentity) {
  EXPECT_LE(check_identity_formulona({2.5, 2.0, 1.5}, 0.3), 1e-6);
  EXPECT_LE(check_identity_formulona({2.5, 2.0, 1.5}, 0.0), 1e-6);
  EXPECT_LE(check_identity_formulona({(3 + 1.0) / 2, 1.5, 1.5}, 0.25), 1e-6);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ua(-1.0, 3.0), uc(0.3, 3.0), ux(-0.9, 0.8);
  for (int i = 0; i < 50; ++i) {
    const HypergeometricParams p{ua(rng), ua(rng), uc(rng)};
    EXPECT_LE(check_identity_formulona(p, ux(rng)), 1e-6);
  }
}

TEST(Hyp2f1, LinearIdentity) {
  const HypergeometricParams p{0.7, 0.2, 1.4};
  EXPECT_LE(check_identity_linear(p, 0.6), 1e-8);
  EXPECT_NEAR(hyp2f1(p, 0.6), hyp_series_oracle(0.7, 0.2, 1.4, 0.6), 1e-12);
  EXPECT_NEAR(std::pow(0.4, 1.4 - 0.9) * hyp_series_oracle(0.7, 1.2, 1.4, 0.6),
              hyp_series_oracle(0.7, 0.2, 1.4, 0.6), 1e-12);
  EXPECT_EQ(check_identity_linear(p, 0.0), 0.0);
  const double n = 3, s = 0.25;
  EXPECT_LE(check_identity_linear({(n + 2 * s) / 2, s + 1, n / 2}, 0.5), 1e-8);
  EXPECT_THROW(check_identity_linear(p, 1.0), DomainError);
}

TEST(Hyp2f1, AngularIdentity) {
  EXPECT_LE(check_identity_hyper(2.0, 1.0, 0.5), 1e-7);
  EXPECT_LE(check_identity_hyper(1.5, 0.75, 0.3), 1e-7);
  EXPECT_LE(check_identity_hyper(2.25, 0.5, 0.8), 1e-7);
}

TEST(Bessel, FastPathsMatchLibrary) {
  for (double nu : {0.0, 1.0, 1.5, 2.5, 4.5}) {
    for (double x : {0.3, 2.0, 7.5, 31.0, 99.0}) {
      const double ref = std::cyl_bessel_j(nu, x);
      EXPECT_NEAR(bessel_j(nu, x), ref, 1e-13 * std::max(1.0, std::abs(ref))) << nu << " " << x;
    }
  }
}
