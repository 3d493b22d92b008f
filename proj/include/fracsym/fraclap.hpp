#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <vector>

#include "error.hpp"
#include "kernel.hpp"
#include "quadrature.hpp"
#include "rearrange.hpp"
#include "sampled.hpp"
#include "specfun.hpp"

namespace fracsym {

// ------------------------------------------------------------ 1D operator

struct FracLapValue {
  double value = 0.0;
  double error = 0.0;  // summed quadrature error estimates, before the gamma(1,s) factor
  bool kink = false;   // x sits on (or next to) a point where u is not C^2
};

namespace detail {

// Natural cubic spline through (x_i, v_i).
class CubicSpline {
 public:
  explicit CubicSpline(const SampledFunction& f) : x_(f.x), v_(f.v), m_(f.size(), 0.0) {
    const std::size_t n = x_.size();
    if (n < 3) return;
    std::vector<double> c(n, 0.0), d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
      const double diag = 2.0 * (h0 + h1);
      const double rhs = 6.0 * ((v_[i + 1] - v_[i]) / h1 - (v_[i] - v_[i - 1]) / h0);
      const double denom = diag - h0 * c[i - 1];
      c[i] = h1 / denom;
      d[i] = (rhs - h0 * d[i - 1]) / denom;
    }
    for (std::size_t i = n - 1; i-- > 1;) m_[i] = d[i] - c[i] * m_[i + 1];
  }

  double operator()(double t) const {
    if (x_.empty() || t < x_.front() || t > x_.back()) return 0.0;
    auto it = std::upper_bound(x_.begin(), x_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    i = std::clamp<std::size_t>(i, 1, x_.size() - 1);
    const double h = x_[i] - x_[i - 1];
    const double a = (x_[i] - t) / h, b = (t - x_[i - 1]) / h;
    return a * v_[i - 1] + b * v_[i] + ((a * a * a - a) * m_[i - 1] + (b * b * b - b) * m_[i]) * h * h / 6.0;
  }

 private:
  std::vector<double> x_, v_, m_;
};

// Slope jump at the sample nearest t, compared with the jumps two nodes away.
inline bool sampled_kink_near(const SampledFunction& f, double t) {
  const std::size_t n = f.size();
  if (n < 7) return false;
  auto it = std::lower_bound(f.x.begin(), f.x.end(), t);
  std::size_t i = static_cast<std::size_t>(it - f.x.begin());
  if (i > 0 && (i == n || t - f.x[i - 1] < f.x[i] - t)) --i;
  auto jump = [&](std::size_t k) {
    const double sl = (f.v[k] - f.v[k - 1]) / (f.x[k] - f.x[k - 1]);
    const double sr = (f.v[k + 1] - f.v[k]) / (f.x[k + 1] - f.x[k]);
    return std::abs(sr - sl);
  };
  if (i < 3 || i + 3 >= n) return false;
  double scale = 0.0;
  for (double v : f.v) scale = std::max(scale, std::abs(v));
  const double ref = std::max(jump(i - 2), jump(i + 2));
  return jump(i) > 20.0 * ref + 1e-12 * scale;
}

}  // namespace detail

// gamma(1,s) int_0^inf [2u(x) - u(x+y) - u(x-y)] y^{-1-2s} dy for u supported
// in [a,b], with the breakpoints of u listed in kinks.
inline FracLapValue fraclap_1d_report(const std::function<double(double)>& u, double a, double b, double s, double x,
                                      const std::vector<double>& kinks = {}) {
  validate(FractionalOrder{s, 1});
  if (!(b > a)) throw DomainError("fraclap_1d: empty support");
  FracLapValue out;
  const double g = gamma_constant({s, 1});
  if (!(x > a && x < b)) {
    // Outside the support only the far-field part survives.
    const double lo = a, hi = b;
    auto f = [&](double y) { return u(y) * std::pow(std::abs(x - y), -1.0 - 2.0 * s); };
    if (x == a || x == b) throw DomainError("fraclap_1d: x on the support boundary");
    quad::Options qo;
    qo.rel_tol = 1e-10;
    const auto r = quad::tanh_sinh(f, lo, hi, qo);
    out.value = -g * quad::require(r, "fraclap_1d");
    out.error = r.error;
    return out;
  }
  for (double k : kinks) out.kink |= std::abs(k - x) < 1e-9 * std::max(1.0, std::abs(x));
  const double d1 = std::min(x - a, b - x), d2 = std::max(x - a, b - x);
  const double ux = u(x);
  const double p = -1.0 - 2.0 * s;

  // Small-y patch from the second derivative.
  const double delta = std::min(1e-3, 0.25 * d1);
  const double h = 0.5 * delta;
  const double c2 = (u(x + h) - 2.0 * ux + u(x - h)) / (h * h);
  double total = -c2 * std::pow(delta, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);

  std::vector<double> cuts{delta};
  for (double k : kinks) {
    const double y = std::abs(k - x);
    if (y > delta && y < d2) cuts.push_back(y);
  }
  cuts.push_back(d1);
  cuts.push_back(d2);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  quad::Options qo;
  qo.rel_tol = 1e-10;
  qo.abs_tol = 1e-12 * std::max({std::abs(ux), std::abs(u(x + 0.5 * d1)), std::abs(u(x - 0.5 * d1)), 1e-300});
  qo.max_level = 10;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    if (!(hi > lo)) continue;
    auto f = [&](double y) {
      const double r = x + y <= b ? u(x + y) : 0.0;
      const double l = x - y >= a ? u(x - y) : 0.0;
      return (2.0 * ux - r - l) * std::pow(y, p);
    };
    const auto res = quad::tanh_sinh(f, lo, hi, qo);
    // Near a kink the value is reported with its warning even if unsettled.
    total += out.kink ? res.value : quad::require(res, "fraclap_1d");
    out.error += res.error;
  }
  total += ux * std::pow(d2, -2.0 * s) / s;
  out.value = g * total;
  return out;
}

inline double fraclap_1d(const std::function<double(double)>& u, double a, double b, double s, double x,
                         const std::vector<double>& kinks = {}) {
  return fraclap_1d_report(u, a, b, s, x, kinks).value;
}

// Sampled input is read through its natural cubic spline, zero outside the grid.
inline FracLapValue fraclap_1d_report(const SampledFunction& u, double s, double x) {
  validate(u);
  if (u.N != 1) throw DomainError("fraclap_1d: sampled function must be one-dimensional");
  const detail::CubicSpline sp(u);
  const bool kink = detail::sampled_kink_near(u, x);
  return fraclap_1d_report([&](double t) { return sp(t); }, u.a(), u.b(), s, x,
                           kink ? std::vector<double>{x} : std::vector<double>{});
}

inline double fraclap_1d(const SampledFunction& u, double s, double x) { return fraclap_1d_report(u, s, x).value; }

// ------------------------------------------------------------ radial functions

// Radial profile in R^M: numerical on [0,R], tail_coeff * r^{-tail_power}
// beyond R (zero tail by default).
struct RadialFunction {
  std::function<double(double)> profile;
  int M = 1;
  double R = 1.0;
  double tail_coeff = 0.0;
  double tail_power = 0.0;
  std::vector<double> breakpoints;  // interior points of (0,R) where the profile is not smooth

  double operator()(double r) const {
    if (r <= R) return profile(r);
    return tail_coeff == 0.0 ? 0.0 : tail_coeff * std::pow(r, -tail_power);
  }
};

inline void validate(const RadialFunction& u) {
  if (!u.profile) throw DomainError("radial function: missing profile");
  if (u.M < 1) throw DomainError("radial function: dimension must be >= 1");
  if (!(u.R > 0.0) || !std::isfinite(u.R)) throw DomainError("radial function: support radius must be finite and > 0");
  if (u.tail_coeff != 0.0) {
    const double mu = 0.5 * u.M - u.tail_power;
    if (!(mu <= 0.5) || !(u.tail_power < u.M)) {
      std::ostringstream os;
      os << "radial function: tail r^-" << u.tail_power << " has no Hankel transform in dimension " << u.M;
      throw DomainError(os.str());
    }
  }
}

inline RadialFunction radial_from_samples(const SampledFunction& f, int M) {
  validate(f);
  if (f.a() < 0.0) throw DomainError("radial_from_samples: grid must start at r >= 0");
  return {[f](double r) { return f(r); }, M, f.b(), 0.0, 0.0, {}};
}

namespace detail {

// int_0^inf sigma^mu J_nu(k sigma) d sigma (Abel sense at mu = 1/2).
inline double mellin_bessel(double mu, double nu, double k) {
  return std::pow(2.0, mu) * std::pow(k, -mu - 1.0) * gamma(0.5 * (nu + mu + 1.0)) * rgamma(0.5 * (nu - mu + 1.0));
}

struct Panels {
  std::vector<double> x, w;
};

inline const std::vector<double>& gl_nodes(bool weights) {
  static const auto table = [] {
    std::vector<double> x, w;
    quad::gauss_legendre(20, x, w);
    return std::pair{x, w};
  }();
  return weights ? table.second : table.first;
}

// Gauss-Legendre nodes on [lo,hi]: panels no wider than width, geometrically
// graded toward the graded ends.
inline void add_panels(Panels& P, double lo, double hi, double width, bool grade_lo, bool grade_hi) {
  const auto& gx = gl_nodes(false);
  const auto& gw = gl_nodes(true);
  auto panel = [&](double p, double q) {
    const double c = 0.5 * (p + q), r = 0.5 * (q - p);
    for (std::size_t i = 0; i < gx.size(); ++i) {
      P.x.push_back(c + r * gx[i]);
      P.w.push_back(r * gw[i]);
    }
  };
  // Geometric panels shrinking toward end e of [p,q].
  auto graded = [&](double p, double q, bool toward_q) {
    constexpr double ratio = 0.15;
    constexpr int levels = 12;
    const double e = toward_q ? q : p;
    double d = (q - p) * ratio;
    toward_q ? panel(p, q - d) : panel(p + d, q);
    for (int k = 0; k < levels; ++k) {
      const double dn = d * ratio;
      toward_q ? panel(e - d, e - dn) : panel(e + dn, e + d);
      d = dn;
    }
  };
  const double len = hi - lo;
  if (!(len > 0.0)) return;
  const int n = std::max(2, static_cast<int>(std::ceil(len / width)));
  const double step = len / n;
  for (int i = 0; i < n; ++i) {
    const double p = lo + i * step, q = i + 1 == n ? hi : lo + (i + 1) * step;
    if (grade_lo && i == 0) graded(p, q, false);
    else if (grade_hi && i + 1 == n) graded(p, q, true);
    else panel(p, q);
  }
}

// int_0^inf sigma^{M/2} u(sigma) J_{M/2-1}(2 pi rho sigma) d sigma.
inline double hankel_inner(const RadialFunction& u, double rho) {
  const double nu = 0.5 * u.M - 1.0;
  const double k = 2.0 * kPi * rho;
  std::vector<double> edges{0.0};
  for (double b : u.breakpoints) {
    if (b > 0.0 && b < u.R) edges.push_back(b);
  }
  edges.push_back(u.R);
  std::sort(edges.begin(), edges.end());
  Panels P;
  const double width = 1.0 / std::max(rho, 1.0 / u.R);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) add_panels(P, edges[i], edges[i + 1], width, i > 0, true);
  const double C = u.tail_coeff, p = u.tail_power, half = 0.5 * u.M;
  double sum = 0.0;
  for (std::size_t i = 0; i < P.x.size(); ++i) {
    const double sg = P.x[i];
    double val = u.profile(sg);
    if (C != 0.0) val -= C * std::pow(sg, -p);
    sum += P.w[i] * std::pow(sg, half) * val * bessel_j(nu, k * sg);
  }
  if (C != 0.0) sum += C * mellin_bessel(half - p, nu, k);
  return sum;
}

// C-infinity step: 1 on t <= 1/2, 0 on t >= 1.
inline double taper(double t) {
  if (t <= 0.5) return 1.0;
  if (t >= 1.0) return 0.0;
  const double tau = 2.0 * t - 1.0;
  const double e0 = std::exp(-1.0 / tau), e1 = std::exp(-1.0 / (1.0 - tau));
  return e1 / (e0 + e1);
}

}  // namespace detail

struct RadialOptions {
  double rel_tol = 1e-7;
  int max_doublings = 6;
};

// F(u)(xi) = 2 pi |xi|^{1-M/2} int_0^inf tau^{M/2} u(tau) J_{M/2-1}(2 pi |xi| tau) d tau
inline double fourier_bessel_at(const RadialFunction& u, double xi) {
  validate(u);
  if (!(xi >= 0.0)) throw DomainError("fourier_bessel_transform: |xi| must be >= 0");
  if (xi == 0.0) {
    if (u.tail_coeff != 0.0) return HUGE_VAL;
    const double nu = 0.5 * u.M - 1.0;
    detail::Panels P;
    detail::add_panels(P, 0.0, u.R, u.R, false, true);
    double m = 0.0;
    for (std::size_t i = 0; i < P.x.size(); ++i) m += P.w[i] * std::pow(P.x[i], u.M - 1.0) * u.profile(P.x[i]);
    return 2.0 * std::pow(kPi, nu + 1.0) * rgamma(nu + 1.0) * m;
  }
  return 2.0 * kPi * std::pow(xi, 1.0 - 0.5 * u.M) * detail::hankel_inner(u, xi);
}

// Transform as a radial function, truncated to |xi| <= cutoff.
inline RadialFunction fourier_bessel_transform(const RadialFunction& u, double cutoff = 8.0) {
  validate(u);
  return {[u](double xi) { return fourier_bessel_at(u, xi); }, u.M, cutoff, 0.0, 0.0, {}};
}

// (2 pi)^{2s+2} r^{1-M/2} int_0^inf rho^{1+2s} J_{M/2-1}(2 pi r rho) H(rho) d rho
// with H the inner Hankel integral. The oscillatory rho-tail is damped by a
// smooth taper of width P; the result is accepted once P and 2P agree.
inline double fraclap_radial(const RadialFunction& u, double s, double r, const RadialOptions& opt = {}) {
  validate(u);
  validate(FractionalOrder{s, u.M});
  if (!(r > 0.0)) throw DomainError("fraclap_radial: r must be > 0");
  const double nu = 0.5 * u.M - 1.0;
  std::vector<double> edges{u.R};
  for (double b : u.breakpoints) edges.push_back(b);
  double beat = std::numeric_limits<double>::infinity();
  for (double e : edges) beat = std::min(beat, std::abs(e - r));
  if (beat < 1e-6 * u.R) throw DomainError("fraclap_radial: r sits on a breakpoint of the profile");
  // The slowest surviving oscillation has frequency ~ beat; the taper must span many periods.
  double P = 10.0 / beat;
  const double width = 1.0 / (r + u.R);
  const double rho0 = std::min(width, 0.5 * P);

  // rho-nodes: tanh-sinh on [0, rho0] (algebraic behaviour at 0), panels beyond.
  std::vector<double> nodes, weights, values;
  {
    quad::Options qo;
    qo.rel_tol = 1e-12;
    qo.abs_tol = 0.0;
    auto f = [&](double rho) {
      return std::pow(rho, 1.0 + 2.0 * s) * bessel_j(nu, 2.0 * kPi * r * rho) * detail::hankel_inner(u, rho);
    };
    const double head = quad::require(quad::tanh_sinh(f, 0.0, rho0, qo), "fraclap_radial");
    nodes.push_back(0.0);
    weights.push_back(0.0);
    values.push_back(head);
  }
  double prev = 0.0;
  double covered = rho0;
  double result = 0.0;
  for (int d = 0; d <= opt.max_doublings; ++d) {
    if (covered < P) {
      detail::Panels pn;
      detail::add_panels(pn, covered, P, width, false, false);
      for (std::size_t i = 0; i < pn.x.size(); ++i) {
        const double rho = pn.x[i];
        nodes.push_back(rho);
        weights.push_back(pn.w[i]);
        values.push_back(std::pow(rho, 1.0 + 2.0 * s) * bessel_j(nu, 2.0 * kPi * r * rho) * detail::hankel_inner(u, rho));
      }
      covered = P;
    }
    double sum = values[0];
    for (std::size_t i = 1; i < nodes.size(); ++i) sum += weights[i] * values[i] * detail::taper(nodes[i] / P);
    result = std::pow(2.0 * kPi, 2.0 * s + 2.0) * std::pow(r, 1.0 - 0.5 * u.M) * sum;
    if (d > 0 && std::abs(result - prev) <= opt.rel_tol * std::max(std::abs(result), 1e-300)) return result;
    prev = result;
    P *= 2.0;
  }
  std::ostringstream os;
  os << "fraclap_radial: tapered Hankel integral did not settle at r = " << r << " (last two values " << prev
     << ", " << result << ")";
  throw NumericError(os.str());
}

// ------------------------------------------------------------ spherical mean

// U(r) = r^{-N} int_0^r u rho^{N-1} d rho for a profile supported in [0,R],
// tabulated with exact derivatives U' = (u - N U)/r and read by cubic Hermite
// interpolation; C r^{-N} beyond R.
class SphericalMean {
 public:
  SphericalMean(std::function<double(double)> u, double R, int N, int cells = 2048)
      : u_(std::move(u)), R_(R), N_(N) {
    if (N < 1) throw DomainError("spherical_mean: dimension must be >= 1");
    if (!(R > 0.0)) throw DomainError("spherical_mean: support radius must be > 0");
    std::vector<double> gx, gw;
    quad::gauss_legendre(10, gx, gw);
    t_.resize(cells + 1);
    U_.resize(cells + 1);
    dU_.resize(cells + 1);
    double acc = 0.0;
    const double h = R / cells;
    t_[0] = 0.0;
    U_[0] = u_(0.0) / N;
    for (int i = 1; i <= cells; ++i) {
      const double a = (i - 1) * h, b = i == cells ? R : i * h;
      for (std::size_t k = 0; k < gx.size(); ++k) {
        const double x = 0.5 * (a + b) + 0.5 * (b - a) * gx[k];
        acc += 0.5 * (b - a) * gw[k] * u_(x) * std::pow(x, N - 1);
      }
      t_[i] = b;
      U_[i] = acc * std::pow(b, -N);
      dU_[i] = (u_(b) - N * U_[i]) / b;
    }
    // U'(0) = N/(N+1) u'(0+)
    const double e = 1e-6 * R;
    dU_[0] = N / (N + 1.0) * (u_(e) - u_(0.0)) / e;
    C_ = acc;
  }

  int N() const { return N_; }
  double R() const { return R_; }
  double tail_coeff() const { return C_; }
  double base(double r) const { return r <= R_ ? u_(r) : 0.0; }

  double operator()(double r) const {
    if (r < 0.0) throw DomainError("spherical_mean: r must be >= 0");
    if (r >= R_) return C_ * std::pow(r, -N_);
    const std::size_t n = t_.size() - 1;
    std::size_t i = std::min<std::size_t>(n - 1, static_cast<std::size_t>(r / R_ * n));
    const double h = t_[i + 1] - t_[i];
    const double q = (r - t_[i]) / h;
    const double h00 = (1 + 2 * q) * (1 - q) * (1 - q), h10 = q * (1 - q) * (1 - q);
    const double h01 = q * q * (3 - 2 * q), h11 = q * q * (q - 1);
    return h00 * U_[i] + h10 * h * dU_[i] + h01 * U_[i + 1] + h11 * h * dU_[i + 1];
  }

  double derivative(double r) const {
    if (!(r > 0.0)) throw DomainError("spherical_mean: derivative needs r > 0");
    return (base(r) - N_ * (*this)(r)) / r;
  }

  // U as a radial function in dimension N + 2.
  RadialFunction as_radial() const {
    auto self = *this;
    return {[self](double r) { return self(r); }, N_ + 2, R_, C_, static_cast<double>(N_), {}};
  }

 private:
  std::function<double(double)> u_;
  double R_;
  int N_;
  std::vector<double> t_, U_, dU_;
  double C_ = 0.0;
};

inline SphericalMean spherical_mean(const std::function<double(double)>& u, double R, int N) {
  return SphericalMean(u, R, N);
}

// Sampled radial profile on [0,R] (a rearranged function: u >= 0, nonincreasing).
inline SphericalMean spherical_mean(const SampledFunction& u, int N) {
  validate(u);
  if (u.a() != 0.0) throw DomainError("spherical_mean: radial grid must start at 0");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u.v[i] < 0.0) throw DomainError("spherical_mean: profile must be nonnegative");
    if (i > 0 && u.v[i] > u.v[i - 1]) throw DomainError("spherical_mean: profile must be nonincreasing");
  }
  return SphericalMean([u](double r) { return u(r); }, u.b(), N);
}

// ------------------------------------------------------------ Y identity

struct YIdentity {
  double lhs = 0.0;  // gamma(N,s) int_0^r (int_r^inf (u(tau)-u(rho)) Theta rho^{N-1} d rho) tau^{N-1} d tau
  double rhs = 0.0;  // r^N (-Delta)^s_{R^{N+2}} U(r)
  double residual = 0.0;
};

inline YIdentity y_identity(const std::function<double(double)>& u, double R, double s, int N, double r) {
  validate(FractionalOrder{s, N});
  if (!(r > 0.0)) throw DomainError("check_Y_identity: r must be > 0");
  const double g = gamma_constant({s, N});
  quad::Options qo;
  qo.rel_tol = 1e-8;
  qo.abs_tol = 1e-14;
  qo.max_level = 10;
  auto inner = [&](double tau, double gap_tau) {
    const double ut = u(tau);
    double sum = 0.0;
    auto f = [&](double rho, double dl, double) {
      const double gap = dl + gap_tau;
      double diff;
      if (gap < 1e-5 * R && rho + 1e-5 * R < R) {
        // u(tau) - u(rho) from the slope, free of cancellation.
        const double m = 0.5 * (tau + rho), e = 1e-5 * R;
        diff = -(u(m + e) - u(m - e)) / (2.0 * e) * gap;
      } else {
        diff = ut - (rho <= R ? u(rho) : 0.0);
      }
      return diff * theta_formal(N, s, tau, rho, gap) * std::pow(rho, N - 1);
    };
    const double top = std::max(r, R);
    if (top > r) {
      const double mid = std::min(top, r + 4.0 * gap_tau);
      sum += quad::require(quad::tanh_sinh(f, r, mid, qo), "check_Y_identity");
      if (top > mid) {
        const double off = mid - r;
        auto f2 = [&](double rho, double dl, double) { return f(rho, off + dl, 0.0); };
        sum += quad::require(quad::tanh_sinh(f2, mid, top, qo), "check_Y_identity");
      }
    }
    if (ut != 0.0) {
      auto t = [&](double rho) { return theta_formal(N, s, tau, rho, rho - tau) * std::pow(rho, N - 1); };
      sum += ut * quad::require(quad::tanh_sinh_inf(t, top, qo), "check_Y_identity");
    }
    return sum;
  };
  // Nodes within 1e-100 r of the diagonal carry weight ~ dr |log dr| and are dropped.
  auto outer = [&](double tau, double, double dr) {
    return dr < 1e-100 * r ? 0.0 : inner(tau, dr) * std::pow(tau, N - 1);
  };
  quad::Options qo2 = qo;
  qo2.rel_tol = 1e-6;
  YIdentity out;
  out.lhs = g * quad::require(quad::tanh_sinh(outer, 0.0, r, qo2), "check_Y_identity");
  const SphericalMean U(u, R, N);
  out.rhs = std::pow(r, N) * fraclap_radial(U.as_radial(), s, r);
  const double scale = std::max(std::abs(out.lhs), std::abs(out.rhs));
  out.residual = scale == 0.0 ? 0.0 : std::abs(out.lhs - out.rhs) / scale;
  return out;
}

// Relative residual between the double-integral and Fourier-Bessel forms of
// Y(r); the samples are read through their natural cubic spline.
inline double check_Y_identity(const SampledFunction& u, double s, int N, double r) {
  validate(u);
  if (u.a() != 0.0) throw DomainError("check_Y_identity: radial grid must start at 0");
  const detail::CubicSpline sp(u);
  return y_identity([sp](double t) { return sp(t); }, u.b(), s, N, r).residual;
}

// ------------------------------------------------------------ Gagliardo seminorm

namespace detail {

// D(h) = int_R (u(x+h) - u(x))^2 dx for the piecewise-linear interpolant of u
// extended by zero; exact (two-point Gauss on each linear piece).
inline double shift_energy(const SampledFunction& u, double h) {
  const auto& x = u.x;
  std::vector<double> pts;
  pts.reserve(2 * x.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < x.size()) {
    const double a = i < x.size() ? x[i] : HUGE_VAL;
    const double b = j < x.size() ? x[j] - h : HUGE_VAL;
    if (a <= b) {
      pts.push_back(a);
      ++i;
    } else {
      pts.push_back(b);
      ++j;
    }
  }
  constexpr double g = 0.28867513459481288225;  // 1/(2 sqrt 3)
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double p = pts[k], q = pts[k + 1];
    const double len = q - p;
    if (!(len > 0.0)) continue;
    const double c = 0.5 * (p + q);
    const double t1 = c - g * len, t2 = c + g * len;
    const double d1 = u(t1 + h) - u(t1), d2 = u(t2 + h) - u(t2);
    sum += 0.5 * len * (d1 * d1 + d2 * d2);
  }
  return sum;
}

}  // namespace detail

// [u]^2_{H^s(R)} = int int |u(x)-u(y)|^2 / |x-y|^{1+2s} for the piecewise-linear
// interpolant extended by zero, as 2 int_0^inf h^{-1-2s} D(h) dh.
inline double gagliardo_seminorm_sq(const SampledFunction& u, double s) {
  validate(u);
  validate(FractionalOrder{s, 1});
  if (u.N != 1) throw DomainError("gagliardo_seminorm: sampled function must be one-dimensional");
  double top = 0.0;
  for (double v : u.v) top = std::max(top, std::abs(v));
  if (top == 0.0) return 0.0;
  const double edge = std::max(std::abs(u.v.front()), std::abs(u.v.back()));
  if (s >= 0.5 && edge > 1e-12 * top) {
    std::ostringstream os;
    os << "gagliardo_seminorm: u jumps by " << edge << " at the edge of its support; the seminorm diverges for s = "
       << s << " >= 1/2";
    throw NumericError(os.str());
  }
  double hmin = HUGE_VAL;
  for (std::size_t i = 1; i < u.size(); ++i) hmin = std::min(hmin, u.x[i] - u.x[i - 1]);
  const double L = u.b() - u.a();
  hmin = std::min(hmin, 0.5 * L);
  // Below the grid scale D(h) = d1 h + d2 h^2 + d3 h^3 exactly; fit and
  // integrate against h^{-1-2s} in closed form.
  const double e1 = detail::shift_energy(u, 0.25 * hmin) / (0.25 * hmin);
  const double e2 = detail::shift_energy(u, 0.5 * hmin) / (0.5 * hmin);
  const double e3 = detail::shift_energy(u, hmin) / hmin;
  // e(h) = d1 + d2 h + d3 h^2 through the three samples.
  const double q = 0.25 * hmin;
  const double d3 = (e3 - 3.0 * e2 + 2.0 * e1) / (6.0 * q * q);
  const double d2 = (e2 - e1) / q - 3.0 * q * d3;
  const double d1 = s < 0.5 ? e1 - d2 * q - d3 * q * q : 0.0;  // edge jumps, zero here for s >= 1/2
  double sum = d2 * std::pow(hmin, 2.0 - 2.0 * s) / (2.0 - 2.0 * s) + d3 * std::pow(hmin, 3.0 - 2.0 * s) / (3.0 - 2.0 * s);
  if (d1 != 0.0) sum += d1 * std::pow(hmin, 1.0 - 2.0 * s) / (1.0 - 2.0 * s);
  const double p = -1.0 - 2.0 * s;
  auto f = [&](double h) { return std::pow(h, p) * detail::shift_energy(u, h); };
  quad::Options qo;
  qo.rel_tol = 1e-9;
  qo.abs_tol = 0.0;
  qo.max_intervals = 20000;
  sum += quad::require(quad::adaptive_gk(f, hmin, L, qo), "gagliardo_seminorm");
  // h > L: the shifted copies are disjoint, D(h) = 2 ||u||_2^2.
  sum += detail::shift_energy(u, 2.0 * L + 1.0) * std::pow(L, -2.0 * s) / (2.0 * s);
  return 2.0 * sum;
}

inline double gagliardo_seminorm(const SampledFunction& u, double s) { return std::sqrt(gagliardo_seminorm_sq(u, s)); }

// [u]^2 - [u#]^2, nonnegative by the Polya-Szego principle.
inline double polya_szego_check(const SampledFunction& u, double s) {
  validate(u);
  for (double v : u.v) {
    if (v < 0.0) throw DomainError("polya_szego_check: u must be nonnegative");
  }
  return gagliardo_seminorm_sq(u, s) - gagliardo_seminorm_sq(schwarz_rearrangement(u), s);
}

}  // namespace fracsym
