#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "quadrature.hpp"
#include "sampled.hpp"
#include "specfun.hpp"

namespace fracsym {

// ------------------------------------------------------------ kernels

inline double green_half(double x, double y) {
  if (!(std::abs(x) < 1.0) || !(std::abs(y) < 1.0)) throw DomainError("green_half: points must lie in (-1,1)");
  if (x == y) throw SingularityError("green_half: x == y");
  const double root = std::sqrt((1.0 - x) * (1.0 + x) * (1.0 - y) * (1.0 + y));
  return std::log((1.0 - x * y + root) / std::abs(x - y)) / kPi;
}

// Dirichlet Green function of (-Delta)^s on (-1,1):
//   G(x,y) = kappa |x-y|^{2s-1} int_0^{r0} t^{s-1} (1+t)^{-1/2} dt,
//   r0 = (1-x^2)(1-y^2)/(x-y)^2,  kappa = 1/(2^{2s} Gamma(s)^2).
class GreenKernel {
 public:
  explicit GreenKernel(double s) : s_(s) {
    if (!(s > 0.0 && s < 1.0)) throw DomainError("GreenKernel: s must lie in (0,1)");
    prefactor_ = 1.0 / (std::pow(2.0, 2.0 * s) * gamma(s) * gamma(s));
    p_ = 0.5 - s;
    i2_ = small_r(2.0);
    // Binomial coefficients of (1+w)^{-1/2} and the tail constant at w = 1/2.
    beta_.push_back(1.0);
    for (int k = 1; k < 80; ++k) beta_.push_back(beta_.back() * -(k - 0.5) / k);
    a_half_ = 0.0;
    double wp = std::pow(0.5, 1.0 + p_);
    for (int k = 1; k < 80; ++k) {
      a_half_ += beta_[k] * wp / (k + p_);
      wp *= 0.5;
    }
  }

  double s() const { return s_; }
  double prefactor() const { return prefactor_; }

  // int_0^{r0} t^{s-1} (1+t)^{-1/2} dt, with w0 = 1/r0 used when r0 > 2.
  double inner(double r0, double w0) const {
    if (r0 <= 2.0) return small_r(r0);
    // I(2) + int_{w0}^{1/2} w^{p-1}(1+w)^{-1/2} dw, p = 1/2 - s
    const double lg = std::log(0.5) - std::log(w0);
    const double lead = p_ == 0.0 ? lg : std::pow(w0, p_) * std::expm1(p_ * lg) / p_;
    return i2_ + a_half_ + lead - tail(w0);
  }

  // G with the gap d = |x-y| and the boundary factors 1-x^2, 1-y^2 supplied.
  // Works in logarithms so that d down to the smallest normal double is safe.
  double eval(double d, double bx, double by) const {
    if (!(d > 0.0)) throw SingularityError("green_general: x == y");
    if (bx <= 0.0 || by <= 0.0) return 0.0;
    const double lprod = std::log(bx) + std::log(by);
    const double ld = std::log(d);
    const double lr0 = lprod - 2.0 * ld;
    const double dpow = std::exp((2.0 * s_ - 1.0) * ld);
    if (lr0 <= std::log(2.0)) return prefactor_ * dpow * small_r(std::exp(lr0));
    // d^{2s-1} w0^p = prod^{-p}, so the leading term is carried without d.
    const double lw0 = -lr0;
    const double lg = std::log(0.5) - lw0;
    double lead;
    if (p_ == 0.0) {
      lead = lg;
    } else if (std::abs(p_ * lg) < 1.0) {
      lead = std::exp(-p_ * lprod) * std::expm1(p_ * lg) / p_;
    } else {
      lead = (std::pow(0.5, p_) * dpow - std::exp(-p_ * lprod)) / p_;
    }
    return prefactor_ * (dpow * (i2_ + a_half_ - tail(std::exp(lw0))) + lead);
  }

  double operator()(double x, double y) const {
    if (!(std::abs(x) <= 1.0) || !(std::abs(y) <= 1.0)) throw DomainError("green_general: points must lie in [-1,1]");
    return eval(std::abs(x - y), (1.0 - x) * (1.0 + x), (1.0 - y) * (1.0 + y));
  }

 private:
  // sum_{k>=1} beta_k w^{k+p}/(k+p)
  double tail(double w0) const {
    double sum = 0.0;
    double wp = std::pow(w0, 1.0 + p_);
    for (int k = 1; k < 80 && wp > 0.0; ++k) {
      const double term = beta_[k] * wp / (k + p_);
      sum += term;
      if (std::abs(term) < 1e-18) break;
      wp *= w0;
    }
    return sum;
  }

  // (r^s/s)(1+r)^{-1/2} sum_k (1/2)_k/(s+1)_k z^k, z = r/(1+r)
  double small_r(double r) const {
    if (r == 0.0) return 0.0;
    const double z = r / (1.0 + r);
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < 400; ++k) {
      term *= (0.5 + k) / (s_ + 1.0 + k) * z;
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return std::pow(r, s_) / s_ / std::sqrt(1.0 + r) * sum;
  }

  double s_;
  double prefactor_;
  double p_;
  double i2_;
  double a_half_;
  std::vector<double> beta_;
};

inline double green_general(double s, double x, double y) { return GreenKernel(s)(x, y); }

// ------------------------------------------------------------ sources

// Source term as a callable plus the points where it is not smooth.
struct SourceTerm {
  std::string name;
  std::function<double(double)> f;
  std::vector<double> breakpoints;
};

inline SourceTerm constant_source(double c = 1.0) {
  return {"constant", [c](double) { return c; }, {}};
}
inline SourceTerm abs_source() {
  return {"abs", [](double x) { return std::abs(x); }, {0.0}};
}
inline SourceTerm indicator_source() {
  return {"indicator", [](double x) { return std::abs(x) > 0.5 ? 1.0 : 0.0; }, {-0.5, 0.5}};
}
// Schwarz rearrangements of the two sources above.
inline SourceTerm abs_source_sharp() {
  return {"abs_sharp", [](double x) { return 1.0 - std::abs(x); }, {0.0}};
}
inline SourceTerm indicator_source_sharp() {
  return {"indicator_sharp", [](double x) { return std::abs(x) < 0.5 ? 1.0 : 0.0; }, {-0.5, 0.5}};
}

inline SourceTerm source_from_samples(const SampledFunction& f, const std::string& name = "sampled") {
  return {name, [f](double x) { return f(x); }, f.x};
}

// Twin nodes at b +- eps represent a jump of a sampled source.
inline constexpr double kJumpHalfWidth = 1e-9;

// Samples of a source on a grid, with twin nodes around its breakpoints.
inline SampledFunction sample_source(const SourceTerm& src, const std::vector<double>& grid) {
  std::vector<double> extra;
  for (double b : src.breakpoints) {
    extra.push_back(b - kJumpHalfWidth);
    extra.push_back(b + kJumpHalfWidth);
  }
  std::vector<double> g = merge_grids(grid, extra, 1e-15);
  std::vector<double> keep;
  for (double t : g) {
    bool near = false;
    for (double b : src.breakpoints) near |= std::abs(t - b) < 0.5 * kJumpHalfWidth;
    if (!near) keep.push_back(t);
  }
  SampledFunction out{keep, std::vector<double>(keep.size()), 1};
  for (std::size_t i = 0; i < keep.size(); ++i) out.v[i] = src.f(keep[i]);
  return out;
}

// ------------------------------------------------------------ solve

struct SolveOptions {
  double rel_tol = 1e-11;
  double abs_tol = 1e-14;
};

// u(x) = int_{-1}^{1} G(x,y) f(y) dy at one point |x| < 1.
inline double solve_at(const GreenKernel& g, const SourceTerm& src, double x, const SolveOptions& opt = {}) {
  if (!(std::abs(x) < 1.0)) return 0.0;
  std::vector<double> cuts{-1.0};
  for (double b : src.breakpoints) {
    if (b > -1.0 && b < 1.0 && std::abs(b - x) > 1e-12) cuts.push_back(b);
  }
  cuts.push_back(x);
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const double bx = (1.0 - x) * (1.0 + x);
  quad::Options qo;
  qo.rel_tol = opt.rel_tol;
  qo.abs_tol = opt.abs_tol;
  qo.max_level = 10;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double p = cuts[i], q = cuts[i + 1];
    auto integrand = [&](double y, double dl, double dr) {
      const double d = p == x ? dl : (q == x ? dr : std::abs(x - y));
      const double by = p == -1.0 ? dl * (2.0 - dl) : (q == 1.0 ? dr * (2.0 - dr) : (1.0 - y) * (1.0 + y));
      const double fy = src.f(y);
      return fy == 0.0 ? 0.0 : g.eval(d, bx, by) * fy;
    };
    const auto r = quad::tanh_sinh(integrand, p, q, qo);
    if (!r.converged || !std::isfinite(r.value)) {
      std::ostringstream os;
      os << "solve: quadrature did not converge for source '" << src.name << "' at x = " << x << " on [" << p
         << ", " << q << "] (estimate " << r.value << ", error " << r.error << ")";
      throw NumericError(os.str());
    }
    total += r.value;
  }
  return total;
}

inline double solve_at(double s, const SourceTerm& src, double x, const SolveOptions& opt = {}) {
  return solve_at(GreenKernel(s), src, x, opt);
}

// Default target grid: Chebyshev-Lobatto points on [-1,1] merged with the
// breakpoints of the source.
inline std::vector<double> default_grid(int n = 401, const std::vector<double>& breakpoints = {}) {
  std::vector<double> bp;
  for (double b : breakpoints) {
    if (b > -1.0 && b < 1.0) bp.push_back(b);
  }
  std::vector<double> nodes;
  for (double t : chebyshev_grid(n)) {
    bool near = false;
    for (double b : bp) near |= std::abs(t - b) < 1e-12;
    if (!near) nodes.push_back(t);
  }
  return merge_grids(nodes, bp, 0.0);
}

inline SampledFunction solve(double s, const SourceTerm& src, const std::vector<double>& grid,
                             const SolveOptions& opt = {}) {
  const GreenKernel g(s);
  SampledFunction u{grid, std::vector<double>(grid.size(), 0.0), 1};
  for (std::size_t i = 0; i < grid.size(); ++i) u.v[i] = solve_at(g, src, grid[i], opt);
  return u;
}

inline SampledFunction solve(double s, const SourceTerm& src) {
  return solve(s, src, default_grid(401, src.breakpoints));
}

// Dense weights W with u(x_i) = sum_j W_ij f(y_j) for a piecewise-linear
// source sampled on the nodes y_j.
class GreenOperator {
 public:
  GreenOperator(double s, std::vector<double> targets, std::vector<double> sources)
      : kernel_(s), targets_(std::move(targets)), sources_(std::move(sources)) {
    for (std::size_t j = 1; j < sources_.size(); ++j) {
      if (!(sources_[j] > sources_[j - 1])) throw DomainError("GreenOperator: source grid not increasing");
    }
    if (sources_.size() < 2) throw DomainError("GreenOperator: need at least two source nodes");
    w_.assign(targets_.size() * sources_.size(), 0.0);
    for (std::size_t i = 0; i < targets_.size(); ++i) build_row(i);
  }

  double s() const { return kernel_.s(); }
  const std::vector<double>& targets() const { return targets_; }
  const std::vector<double>& sources() const { return sources_; }
  double weight(std::size_t i, std::size_t j) const { return w_[i * sources_.size() + j]; }

  std::vector<double> apply(const std::vector<double>& f) const {
    if (f.size() != sources_.size()) throw DomainError("GreenOperator::apply: size mismatch");
    std::vector<double> u(targets_.size(), 0.0);
    for (std::size_t i = 0; i < targets_.size(); ++i) {
      const double* row = &w_[i * sources_.size()];
      double acc = 0.0;
      for (std::size_t j = 0; j < f.size(); ++j) acc += row[j] * f[j];
      u[i] = acc;
    }
    return u;
  }

  SampledFunction apply(const SampledFunction& f) const {
    std::vector<double> vals(sources_.size());
    for (std::size_t j = 0; j < sources_.size(); ++j) vals[j] = f(sources_[j]);
    return {targets_, apply(vals), 1};
  }

 private:
  void build_row(std::size_t i) {
    const double x = targets_[i];
    if (!(std::abs(x) < 1.0)) return;
    const double bx = (1.0 - x) * (1.0 + x);
    double* row = &w_[i * sources_.size()];
    quad::Options qo;
    qo.rel_tol = 1e-11;
    qo.abs_tol = 1e-15;
    qo.max_level = 10;
    for (std::size_t j = 0; j + 1 < sources_.size(); ++j) {
      const double y0 = std::max(sources_[j], -1.0), y1 = std::min(sources_[j + 1], 1.0);
      if (!(y1 > y0)) continue;
      const double h = sources_[j + 1] - sources_[j];
      // A target within rounding of a node is treated as sitting on it.
      double xs = x;
      if (std::abs(x - y0) <= 1e-12) xs = y0;
      if (std::abs(x - y1) <= 1e-12) xs = y1;
      std::vector<double> cuts{y0};
      if (xs > y0 && xs < y1) cuts.push_back(xs);
      cuts.push_back(y1);
      for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double p = cuts[c], q = cuts[c + 1];
        auto kern = [&](double y, double dl, double dr) {
          const double d = p == xs ? dl : (q == xs ? dr : std::abs(x - y));
          const double by = p == -1.0 ? dl * (2.0 - dl) : (q == 1.0 ? dr * (2.0 - dr) : (1.0 - y) * (1.0 + y));
          return kernel_.eval(d, bx, by);
        };
        const bool touches = p == xs || q == xs || p == -1.0 || q == 1.0;
        const double yl = sources_[j];
        auto m_right = [&](double y, double dl, double dr) { return kern(y, dl, dr) * (y - yl) / h; };
        double m0 = 0.0, m1 = 0.0;
        if (touches) {
          m0 = quad::require(quad::tanh_sinh(kern, p, q, qo), "GreenOperator");
          m1 = quad::require(quad::tanh_sinh(m_right, p, q, qo), "GreenOperator");
        } else {
          auto k1 = [&](double y) { return kern(y, y - p, q - y); };
          auto k2 = [&](double y) { return m_right(y, y - p, q - y); };
          m0 = quad::require(quad::adaptive_gk(k1, p, q, qo), "GreenOperator");
          m1 = quad::require(quad::adaptive_gk(k2, p, q, qo), "GreenOperator");
        }
        row[j] += m0 - m1;
        row[j + 1] += m1;
      }
    }
  }

  GreenKernel kernel_;
  std::vector<double> targets_;
  std::vector<double> sources_;
  std::vector<double> w_;
};

// Solution for a sampled (piecewise-linear) source on the given targets.
inline SampledFunction solve(double s, const SampledFunction& f, const std::vector<double>& targets) {
  validate(f);
  return GreenOperator(s, targets, f.x).apply(f);
}

inline SampledFunction solve(double s, const SampledFunction& f) { return solve(s, f, f.x); }

// ------------------------------------------------------------ catalog

namespace detail {

inline double xlogx_term(double c, double num, double den) {
  // c * log(num/den), with c -> 0 and den -> 0 together at the removable point.
  if (c == 0.0) return 0.0;
  return c * std::log(num / den);
}

inline void require_half(const std::string& name, double s) {
  if (std::abs(s - 0.5) > 1e-12) {
    throw DomainError("closed_form_catalog: '" + name + "' is only available for s = 1/2");
  }
}

}  // namespace detail

inline double closed_form_catalog(const std::string& name, double s, double x) {
  const double ax = std::abs(x);
  if (!(ax <= 1.0)) throw DomainError("closed_form_catalog: |x| must be <= 1");
  const double root = std::sqrt((1.0 - ax) * (1.0 + ax));
  if (name == "sqrt") return root;
  if (name == "power_s") {
    if (!(s > 0.0 && s < 1.0)) throw DomainError("closed_form_catalog: s must lie in (0,1)");
    return std::pow((1.0 - ax) * (1.0 + ax), s) / gamma(2.0 * s + 1.0);
  }
  auto u1 = [&] {
    const double tail = ax == 0.0 ? 0.0 : x * x * (std::log1p(root) - std::log(ax));
    return (root + tail) / kPi;
  };
  auto u2 = [&] {
    const double h = 0.5 * std::sqrt(3.0) * root;
    const double a = detail::xlogx_term(0.5 - x, 1.0 - 0.5 * x + h, std::abs(x - 0.5));
    const double b = detail::xlogx_term(0.5 + x, 1.0 + 0.5 * x + h, std::abs(x + 0.5));
    return (2.0 * kPi / 3.0 * root - a - b) / kPi;
  };
  if (name == "u1") {
    detail::require_half(name, s);
    return u1();
  }
  if (name == "v1") {
    detail::require_half(name, s);
    return root - u1();
  }
  if (name == "u2") {
    detail::require_half(name, s);
    return u2();
  }
  if (name == "v2") {
    detail::require_half(name, s);
    return root - u2();
  }
  throw UsageError("closed_form_catalog: unknown entry '" + name + "' (expected u1, u2, v1, v2, sqrt, power_s)");
}

// Solutions of the local problem -u'' = f on (-1,1), the s -> 1 reference.
inline double local_reference(const std::string& name, double x) {
  const double ax = std::abs(x);
  if (ax >= 1.0) return 0.0;
  const double base = 0.5 * (1.0 - x * x);
  if (name == "constant") return base;
  if (name == "u1") return (1.0 - ax * ax * ax) / 6.0;
  if (name == "v1") return base - (1.0 - ax * ax * ax) / 6.0;
  if (name == "u2") return ax >= 0.5 ? 0.5 * (ax - ax * ax) : 0.125;
  if (name == "v2") return base - (ax >= 0.5 ? 0.5 * (ax - ax * ax) : 0.125);
  throw UsageError("local_reference: unknown entry '" + name + "'");
}

// ------------------------------------------------------------ boundary

enum class Side { left, right };

struct BoundaryCoefficient {
  double value = 0.0;
  double order_s = 0.0;
  Side side = Side::right;
  double spread = 0.0;  // |last two extrapolants|
};

// lim u(x)/(1-x^2)^s at x -> +-1, Richardson extrapolation along
// x_k = 1 - 2^{-k}, k = 4..12, eliminating the powers delta^{1}, delta^{1+s},
// delta^{1+2s}, delta^{2}, ... of the boundary expansion.
inline BoundaryCoefficient boundary_coefficient(const std::function<double(double)>& u, double s, Side side,
                                                double tol = 1e-6) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("boundary_coefficient: s must lie in (0,1)");
  std::vector<double> ex{1.0, 1.0 + s, 1.0 + 2.0 * s, 2.0, 2.0 + s, 2.0 + 2.0 * s, 3.0, 3.0 + s};
  std::sort(ex.begin(), ex.end());
  ex.erase(std::unique(ex.begin(), ex.end(), [](double a, double b) { return std::abs(a - b) < 1e-9; }), ex.end());
  std::vector<double> q;
  for (int k = 4; k <= 12; ++k) {
    const double d = std::ldexp(1.0, -k);
    const double x = side == Side::right ? 1.0 - d : -1.0 + d;
    q.push_back(u(x) / std::pow(d * (2.0 - d), s));
  }
  // Neville-style table: T[j] at stage m eliminates delta^{ex[m]}.
  std::vector<double> t = q;
  std::vector<double> diag{t.back()};
  for (std::size_t m = 0; m < ex.size() && t.size() > 1; ++m) {
    const double f = std::pow(2.0, ex[m]);
    std::vector<double> nt;
    for (std::size_t j = 0; j + 1 < t.size(); ++j) nt.push_back((f * t[j + 1] - t[j]) / (f - 1.0));
    t = nt;
    diag.push_back(t.back());
  }
  BoundaryCoefficient out;
  out.order_s = s;
  out.side = side;
  out.value = diag.back();
  out.spread = std::abs(diag[diag.size() - 1] - diag[diag.size() - 2]);
  if (!std::isfinite(out.value) || out.spread > tol * std::max(std::abs(out.value), 1e-300)) {
    std::ostringstream os;
    os << "boundary_coefficient: extrapolation did not settle (last two estimates " << diag[diag.size() - 2]
       << ", " << diag.back() << ")";
    throw NumericError(os.str());
  }
  return out;
}

inline BoundaryCoefficient boundary_coefficient(const SampledFunction& u, double s, Side side) {
  return boundary_coefficient([&u](double x) { return u(x); }, s, side, 1e-3);
}

inline BoundaryCoefficient boundary_coefficient(const std::string& catalog_name, double s, Side side) {
  return boundary_coefficient([&](double x) { return closed_form_catalog(catalog_name, s, x); }, s, side);
}

// l_u for the source |x|: 1/(2^{2s} Gamma(s+1)^2).
inline double ell_u_exact(double s) { return 1.0 / (std::pow(2.0, 2.0 * s) * std::pow(gamma(s + 1.0), 2)); }
// l_v = 1/Gamma(2s+1) - l_u.
inline double ell_v_exact(double s) { return 1.0 / gamma(2.0 * s + 1.0) - ell_u_exact(s); }
// l_u - l_v = (1/Gamma(2s+1)) ((2/pi) B(s+1/2, 1/2) - 1).
inline double ell_gap_exact(double s) { return (2.0 / kPi * beta(s + 0.5, 0.5) - 1.0) / gamma(2.0 * s + 1.0); }

}  // namespace fracsym
