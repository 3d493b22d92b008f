#pragma once

#include <cmath>
#include <sstream>

#include "error.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace fracsym {

struct FractionalOrder {
  double s = 0.5;
  int N = 1;
};

inline void validate(const FractionalOrder& o) {
  if (!(o.s > 0.0 && o.s < 1.0)) {
    std::ostringstream os;
    os << "fractional order s = " << o.s << " outside (0,1)";
    throw DomainError(os.str());
  }
  if (o.N < 1) throw DomainError("dimension N must be >= 1");
}

// gamma(N,s) = s 2^{2s} Gamma((N+2s)/2) / (pi^{N/2} Gamma(1-s))
inline double gamma_constant(const FractionalOrder& o) {
  validate(o);
  return o.s * std::pow(2.0, 2.0 * o.s) * gamma(0.5 * (o.N + 2.0 * o.s)) /
         (std::pow(kPi, 0.5 * o.N) * gamma(1.0 - o.s));
}

struct KernelTheta {
  FractionalOrder order;
  double alpha_N = 0.0;  // 2 pi^{(N-1)/2} / Gamma((N-1)/2), zero for N = 1
};

inline KernelTheta make_kernel(const FractionalOrder& o) {
  validate(o);
  return {o, 2.0 * std::pow(kPi, 0.5 * (o.N - 1)) * rgamma(0.5 * (o.N - 1))};
}

namespace detail {

inline void check_radii(double r, double rho) {
  if (!(r > 0.0) || !(rho > 0.0)) throw DomainError("theta: radii must be positive");
  if (r == rho) throw SingularityError("theta: r == rho is the kernel singularity");
}

}  // namespace detail

// Closed form |S^{N-1}| M^{-N-2s} 2F1((N+2s)/2, s+1; N/2; (m/M)^2) with
// m = min(r,rho), M = max(r,rho). Accepts s in (-1,1) so that the order s-1
// needed by the dimension recurrence can be evaluated formally.
inline double theta_formal(int n, double s, double r, double rho) {
  detail::check_radii(r, rho);
  const double m = std::min(r, rho);
  const double big = std::max(r, rho);
  const double q = m / big;
  const double x = q * q;
  const double omx = (1.0 - q) * (1.0 + q);
  const double f = hyp2f1({0.5 * (n + 2.0 * s), s + 1.0, 0.5 * n}, x, omx);
  return sphere_area(n) * std::pow(big, -(n + 2.0 * s)) * f;
}

// Same, with gap = |r - rho| supplied exactly (keeps 1 - (m/M)^2 accurate near
// the diagonal).
inline double theta_formal(int n, double s, double r, double rho, double gap) {
  if (!(r > 0.0) || !(rho > 0.0)) throw DomainError("theta: radii must be positive");
  if (!(gap > 0.0)) throw SingularityError("theta: r == rho is the kernel singularity");
  const double big = std::max(r, rho);
  const double e = gap / big;
  const double omx = e * (2.0 - e);
  const double f = hyp2f1({0.5 * (n + 2.0 * s), s + 1.0, 0.5 * n}, 1.0 - omx, omx);
  return sphere_area(n) * std::pow(big, -(n + 2.0 * s)) * f;
}

inline double theta_closed_form(const KernelTheta& k, double r, double rho) {
  return theta_formal(k.order.N, k.order.s, r, rho);
}

// alpha_N int_0^pi sin^{N-2}t ((r-rho)^2 + 4 r rho sin^2(t/2))^{-(N+2s)/2} dt,
// or the two-point sum for N = 1.
inline double theta_quadrature(const KernelTheta& k, double r, double rho) {
  detail::check_radii(r, rho);
  const int n = k.order.N;
  const double s = k.order.s;
  if (n == 1) return std::pow(std::abs(r - rho), -1.0 - 2.0 * s) + std::pow(r + rho, -1.0 - 2.0 * s);
  const double d2 = (r - rho) * (r - rho);
  const double p = -0.5 * (n + 2.0 * s);
  auto integrand = [&](double t, double sin_t) {
    const double h = std::sin(0.5 * t);
    return std::pow(sin_t, n - 2.0) * std::pow(d2 + 4.0 * r * rho * h * h, p);
  };
  auto left = [&](double t) { return integrand(t, std::sin(t)); };
  auto right = [&](double t, double, double dr) { return integrand(t, std::sin(dr)); };
  quad::Options opt;
  opt.rel_tol = 1e-13;
  opt.abs_tol = 0.0;
  opt.max_level = 12;
  const double mid = 0.5 * kPi;
  // Near the diagonal the integrand peaks at t = 0 with width ~ |r-rho|.
  const double peak = 4.0 * std::abs(r - rho) / std::sqrt(r * rho);
  double sum = 0.0;
  if (peak < 0.25 * mid) {
    sum += quad::require(quad::tanh_sinh(left, 0.0, peak, opt), "theta_quadrature");
    sum += quad::require(quad::tanh_sinh(left, peak, mid, opt), "theta_quadrature");
  } else {
    sum += quad::require(quad::tanh_sinh(left, 0.0, mid, opt), "theta_quadrature");
  }
  sum += quad::require(quad::tanh_sinh(right, mid, kPi, opt), "theta_quadrature");
  return k.alpha_N * sum;
}

inline double theta(const KernelTheta& k, double r, double rho) { return theta_closed_form(k, r, rho); }

namespace detail {

inline double rel_gap(double lhs, double rhs) {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
}

}  // namespace detail

// Relative residual of
//   rho^{N-1} Theta_{N,s} = ((N+2s)/2pi) rho^{N+1} Theta_{N+2,s}
//                           + (1/2pi) d/drho [rho^N Theta_{N+2,s-1}]
inline double check_recurrence_a(const KernelTheta& k, double r, double rho) {
  const int n = k.order.N;
  const double s = k.order.s;
  const double h = 1e-4 * rho;
  auto g = [&](double p) { return std::pow(p, n) * theta_formal(n + 2, s - 1.0, r, p); };
  const double lhs = std::pow(rho, n - 1) * theta_formal(n, s, r, rho);
  const double rhs = (n + 2.0 * s) / (2.0 * kPi) * std::pow(rho, n + 1) * theta_formal(n + 2, s, r, rho) +
                     (g(rho + h) - g(rho - h)) / (2.0 * h) / (2.0 * kPi);
  return detail::rel_gap(lhs, rhs);
}

// Relative residual of
//   rho^{N-1} dTheta_{N,s}/dr = -((N+2s)/2pi) r d/drho [rho^N Theta_{N+2,s}]
inline double check_recurrence_b(const KernelTheta& k, double r, double rho) {
  const int n = k.order.N;
  const double s = k.order.s;
  const double h = 1e-4 * rho;
  auto g = [&](double p) { return std::pow(p, n) * theta_formal(n + 2, s, r, p); };
  const double dtheta_dr = (theta_formal(n, s, r + h, rho) - theta_formal(n, s, r - h, rho)) / (2.0 * h);
  const double lhs = std::pow(rho, n - 1) * dtheta_dr;
  const double rhs = -(n + 2.0 * s) / (2.0 * kPi) * r * (g(rho + h) - g(rho - h)) / (2.0 * h);
  return detail::rel_gap(lhs, rhs);
}

}  // namespace fracsym
