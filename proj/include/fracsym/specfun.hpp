#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include "error.hpp"
#include "quadrature.hpp"

namespace fracsym {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

struct HypergeometricParams {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
};

namespace detail {

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

inline double lgamma_pos(double x) {
  int sign = 1;
  return ::lgamma_r(x, &sign);
}

}  // namespace detail

inline double gamma(double x) {
  if (!std::isfinite(x)) throw DomainError("gamma: non-finite argument");
  if (detail::is_nonpositive_integer(x)) {
    std::ostringstream os;
    os << "gamma: pole at x = " << x;
    throw DomainError(os.str());
  }
  return std::tgamma(x);
}

// 1/Gamma(x), zero at the poles.
inline double rgamma(double x) {
  if (detail::is_nonpositive_integer(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}

inline double beta(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("beta: arguments must be positive");
  if (x + y < 170.0) return std::tgamma(x) * std::tgamma(y) / std::tgamma(x + y);
  return std::exp(detail::lgamma_pos(x) + detail::lgamma_pos(y) - detail::lgamma_pos(x + y));
}

// Relative residual of sqrt(pi) 2^{1-2x} Gamma(2x) = Gamma(x) Gamma(x+1/2).
inline double duplication_residual(double x) {
  const double lhs = std::sqrt(kPi) * std::pow(2.0, 1.0 - 2.0 * x) * gamma(2.0 * x);
  const double rhs = gamma(x) * gamma(x + 0.5);
  return std::abs(lhs - rhs) / std::abs(rhs);
}

// Relative residual of Gamma(x) Gamma(1-x) = pi / sin(pi x).
inline double reflection_residual(double x) {
  const double lhs = gamma(x) * gamma(1.0 - x);
  const double rhs = kPi / std::sin(kPi * x);
  return std::abs(lhs - rhs) / std::abs(rhs);
}

// Volume of the unit ball in R^N.
inline double omega(int n) {
  if (n < 1) throw DomainError("omega: dimension must be positive");
  return std::pow(kPi, 0.5 * n) / gamma(0.5 * n + 1.0);
}

// Surface area of the unit sphere S^{N-1}.
inline double sphere_area(int n) {
  if (n < 1) throw DomainError("sphere_area: dimension must be positive");
  return 2.0 * std::pow(kPi, 0.5 * n) / gamma(0.5 * n);
}

// ---------------------------------------------------------------- Bessel J

namespace detail {

inline double bessel_series(double nu, double x) {
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum * std::pow(0.5 * x, nu) * rgamma(nu + 1.0);
}

}  // namespace detail

inline double bessel_j(double nu, double x) {
  if (!(nu >= -0.5)) throw DomainError("bessel_j: order must be >= -1/2");
  if (!(x >= 0.0)) throw DomainError("bessel_j: argument must be >= 0");
  if (x == 0.0) {
    if (nu == 0.0) return 1.0;
    return nu > 0.0 ? 0.0 : HUGE_VAL;
  }
  if (nu == -0.5) return std::sqrt(2.0 / (kPi * x)) * std::cos(x);
  if (nu == 0.5) return std::sqrt(2.0 / (kPi * x)) * std::sin(x);
  if (nu == 0.0) return ::j0(x);
  if (nu == 1.0) return ::j1(x);
  const double n = nu - 0.5;
  if (n == std::floor(n) && n <= 16.0 && x > nu + 1.0) {
    // Half-integer order: upward recurrence from the closed forms, stable for x > nu.
    const double c = std::sqrt(2.0 / (kPi * x));
    double jm = c * std::cos(x), j = c * std::sin(x);
    for (double k = 0.5; k < nu; k += 1.0) {
      const double jn = 2.0 * k / x * j - jm;
      jm = j;
      j = jn;
    }
    return j;
  }
  if (nu >= 0.0) return std::cyl_bessel_j(nu, x);
  if (x < 1.0) return detail::bessel_series(nu, x);
  // Downward recurrence from orders nu+1, nu+2 (stable for J).
  return 2.0 * (nu + 1.0) / x * std::cyl_bessel_j(nu + 1.0, x) - std::cyl_bessel_j(nu + 2.0, x);
}

// dJ_nu/dx = (nu/x) J_nu - J_{nu+1}
inline double bessel_j_prime(double nu, double x) {
  return nu / x * bessel_j(nu, x) - bessel_j(nu + 1.0, x);
}

// k-th positive zero of J_nu, k >= 1 (McMahon start, Newton polish).
inline double bessel_j_zero(double nu, int k) {
  if (k < 1) throw DomainError("bessel_j_zero: index must be >= 1");
  const double mu = 4.0 * nu * nu;
  const double b = (k + 0.5 * nu - 0.25) * kPi;
  const double e = 8.0 * b;
  double x = b - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e);
  for (int it = 0; it < 60; ++it) {
    const double f = bessel_j(nu, x);
    const double d = bessel_j_prime(nu, x);
    const double step = f / d;
    x -= step;
    if (std::abs(step) <= 1e-15 * x) break;
  }
  return x;
}

// ------------------------------------------------------------ Gauss 2F1

namespace detail {

inline void check_params(const HypergeometricParams& p) {
  if (is_nonpositive_integer(p.c)) {
    std::ostringstream os;
    os << "hyp2f1: c = " << p.c << " is a nonpositive integer";
    throw DomainError(os.str());
  }
}

inline double hyp_series(double a, double b, double c, double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 5000; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
    sum += term;
    if (term == 0.0) break;
    if (k > 2 && std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Finite sum when a is a nonpositive integer.
inline double hyp_polynomial(double a, double b, double c, double x) {
  const int n = static_cast<int>(-a);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < n; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
    sum += term;
  }
  return sum;
}

// Continues the hypergeometric ODE by Taylor steps from x0 = 1/2 up to x
// (1/2 < x < 1, omx = 1 - x given separately).
inline double hyp_ode_continue(double a, double b, double c, double x, double omx) {
  double x0 = 0.5;
  double om0 = 0.5;
  double y = hyp_series(a, b, c, 0.5);
  double dy = a * b / c * hyp_series(a + 1.0, b + 1.0, c + 1.0, 0.5);
  const double q1 = -(a + b + 1.0);
  const double rr = -a * b;
  for (int step = 0; step < 4000 && om0 > omx; ++step) {
    double h = 0.5 * om0;
    bool last = false;
    if (om0 - omx <= h) {
      h = om0 - omx;
      last = true;
    }
    const double p0 = x0 * om0;
    const double p1 = om0 - x0;  // 1 - 2 x0
    const double q0 = c - (a + b + 1.0) * x0;
    double d0 = y;
    double d1 = dy * h;
    double sy = d0 + d1;
    double sdy = d1;
    for (int k = 0; k < 2000; ++k) {
      const double d2 = -((p1 * k * (k + 1.0) + q0 * (k + 1.0)) * d1 * h +
                          (-1.0 * k * (k - 1.0) + q1 * k + rr) * d0 * h * h) /
                        (p0 * (k + 2.0) * (k + 1.0));
      sy += d2;
      sdy += (k + 2.0) * d2;
      d0 = d1;
      d1 = d2;
      if (k > 4 && std::abs(d2) + std::abs(d0) <= 1e-18 * std::abs(sy)) break;
    }
    y = sy;
    dy = sdy / h;
    if (last) {
      om0 = omx;
      x0 = x;
      break;
    }
    om0 -= h;
    x0 += h;
  }
  return y;
}

// 0 <= x < 1 with omx = 1 - x.
inline double hyp_unit(double a, double b, double c, double x, double omx) {
  if (x <= 0.5) return hyp_series(a, b, c, x);
  const double g = c - a - b;
  if (g < 0.0) return std::pow(omx, g) * hyp_ode_continue(c - a, c - b, c, x, omx);
  return hyp_ode_continue(a, b, c, x, omx);
}

}  // namespace detail

// Gauss summation value at x = 1 (requires c > a + b).
inline double hyp2f1_at_one(const HypergeometricParams& p) {
  detail::check_params(p);
  if (!(p.c > p.a + p.b)) throw DomainError("hyp2f1: x = 1 requires c > a + b");
  return gamma(p.c) * gamma(p.c - p.a - p.b) * rgamma(p.c - p.a) * rgamma(p.c - p.b);
}

// 2F1(a,b;c;x) with 1 - x supplied separately for accuracy near x = 1.
inline double hyp2f1(const HypergeometricParams& p, double x, double omx) {
  detail::check_params(p);
  const double a = p.a, b = p.b, c = p.c;
  if (!std::isfinite(x)) throw DomainError("hyp2f1: non-finite argument");
  if (x > 1.0) throw DomainError("hyp2f1: argument x > 1 has no real value");
  if (detail::is_nonpositive_integer(a)) return detail::hyp_polynomial(a, b, c, x);
  if (detail::is_nonpositive_integer(b)) return detail::hyp_polynomial(b, a, c, x);
  if (omx == 0.0) return hyp2f1_at_one(p);
  if (x == 0.0) return 1.0;
  if (std::abs(x) <= 0.5) return detail::hyp_series(a, b, c, x);
  if (x < 0.0) {
    // Pfaff: (1-x)^{-a} 2F1(a, c-b; c; x/(x-1))
    const double z = x / (x - 1.0);
    const double omz = 1.0 / omx;
    return std::pow(omx, -a) * detail::hyp_unit(a, c - b, c, z, omz);
  }
  return detail::hyp_unit(a, b, c, x, omx);
}

inline double hyp2f1(const HypergeometricParams& p, double x) { return hyp2f1(p, x, 1.0 - x); }

inline double hyp2f1(double a, double b, double c, double x) { return hyp2f1({a, b, c}, x); }

// d/dx 2F1 = (ab/c) 2F1(a+1, b+1; c+1; x)
inline double hyp2f1_derivative(const HypergeometricParams& p, double x) {
  return p.a * p.b / p.c * hyp2f1({p.a + 1.0, p.b + 1.0, p.c + 1.0}, x);
}

// Euler integral representation, evaluated by quadrature (requires c > b > 0).
// Used as an independent oracle; accepts x = 1 when c > a + b.
inline double hyp2f1_euler(const HypergeometricParams& p, double x) {
  if (!(p.c > p.b && p.b > 0.0)) throw DomainError("hyp2f1_euler: requires c > b > 0");
  if (x > 1.0) throw DomainError("hyp2f1_euler: x > 1");
  const double omx = 1.0 - x;
  auto f = [&](double t, double omt) {
    const double base = omx + x * omt;  // 1 - x t
    // Logs: at x = 1 the last two factors overflow separately near t = 1.
    return std::pow(t, p.b - 1.0) * std::exp((p.c - p.b - 1.0) * std::log(omt) - p.a * std::log(base));
  };
  auto left = [&](double t, double dl, double) { return f(dl, 1.0 - t); };
  auto right = [&](double t, double, double dr) { return f(t, dr); };
  quad::Options opt;
  opt.rel_tol = 1e-12;
  opt.max_level = 11;
  const double i1 = quad::tanh_sinh(left, 0.0, 0.5, opt).value;
  const double i2 = quad::tanh_sinh(right, 0.5, 1.0, opt).value;
  return (i1 + i2) * gamma(p.c) * rgamma(p.b) * rgamma(p.c - p.b);
}

namespace detail {

inline double fd_step(double x) { return 1e-5 * std::max(1.0, std::abs(x)); }

template <class F>
double central_diff(const F& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace detail

// |F'(a,b;c;x) - (ab/c) F(a+1,b;c+1;x) - (ax/c) F'(a+1,b;c+1;x)|, derivatives by
// central differences.
inline double check_identity_formulona(const HypergeometricParams& p, double x) {
  const double h = detail::fd_step(x);
  const HypergeometricParams q{p.a + 1.0, p.b, p.c + 1.0};
  auto f = [&](double t) { return hyp2f1(p, t); };
  auto g = [&](double t) { return hyp2f1(q, t); };
  const double lhs = detail::central_diff(f, x, h);
  const double rhs =
      p.a * p.b / p.c * hyp2f1(q, x) + p.a * x / p.c * detail::central_diff(g, x, h);
  return std::abs(lhs - rhs);
}

// |F(a,b;c;x) - (1-x)^{c-a-b} F(c-a,c-b;c;x)|
inline double check_identity_linear(const HypergeometricParams& p, double x) {
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("check_identity_linear: requires 0 <= x < 1");
  const double lhs = hyp2f1(p, x);
  const double rhs = std::pow(1.0 - x, p.c - p.a - p.b) * hyp2f1({p.c - p.a, p.c - p.b, p.c}, x);
  return std::abs(lhs - rhs);
}

// |F(a,b;c;0) - 1|
inline double check_identity_zero(const HypergeometricParams& p) {
  return std::abs(hyp2f1(p, 0.0) - 1.0);
}

// Relative gap between the Gauss value at x = 1 and the Euler integral at
// x = 1 (requires c > a + b and c > b > 0).
inline double check_identity_gauss(const HypergeometricParams& p) {
  const double g = hyp2f1(p, 1.0);
  return std::abs(hyp2f1_euler(p, 1.0) - g) / std::abs(g);
}

// Relative gap in
//   int_0^pi sin^{2b-1}t / (1 - 2x cos t + x^2)^a dt
//     = sqrt(pi) Gamma(b)/Gamma(b+1/2) 2F1(a, a-b+1/2; b+1/2; x^2).
inline double check_identity_hyper(double a, double b, double x) {
  if (!(b > 0.0) || !(std::abs(x) < 1.0)) throw DomainError("check_identity_hyper: requires b > 0, |x| < 1");
  auto f = [&](double t, double dl, double dr) {
    const double sn = t < 0.5 * kPi ? std::sin(dl) : std::sin(dr);
    return std::pow(sn, 2.0 * b - 1.0) * std::pow(1.0 - 2.0 * x * std::cos(t) + x * x, -a);
  };
  quad::Options opt;
  opt.rel_tol = 1e-12;
  const double lhs = quad::require(quad::tanh_sinh(f, 0.0, kPi, opt), "check_identity_hyper");
  const double rhs =
      std::sqrt(kPi) * gamma(b) / gamma(b + 0.5) * hyp2f1({a, a - b + 0.5, b + 0.5}, x * x);
  return std::abs(lhs - rhs) / std::abs(rhs);
}

}  // namespace fracsym
