#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <type_traits>
#include <vector>

#include "error.hpp"

namespace fracsym::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

struct Options {
  double abs_tol = 1e-13;
  double rel_tol = 1e-11;
  int max_intervals = 2000;  // adaptive Gauss-Kronrod
  int max_level = 9;         // tanh-sinh halvings
};

namespace detail {

// Gauss-Kronrod 7/15 nodes and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
Result gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double rk = fc * kWgk[7];
  double rg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    rk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) rg += kWg[j / 2] * (f1 + f2);
  }
  Result r;
  r.value = rk * h;
  r.error = std::abs((rk - rg) * h);
  r.evaluations = 15;
  return r;
}

// Calls f(x) or f(x, x - a, b - x) depending on what the callable accepts.
template <class F>
double call3(const F& f, double x, double dl, double dr) {
  if constexpr (std::is_invocable_r_v<double, const F&, double, double, double>) {
    return f(x, dl, dr);
  } else {
    return f(x);
  }
}

}  // namespace detail

// Single 15-point Gauss-Kronrod panel.
template <class F>
Result gauss_kronrod15(const F& f, double a, double b) {
  return detail::gk15(f, a, b);
}

// Globally adaptive Gauss-Kronrod on a finite interval.
template <class F>
Result adaptive_gk(const F& f, double a, double b, const Options& opt = {}) {
  struct Panel {
    double a, b;
    Result r;
    bool operator<(const Panel& o) const { return r.error < o.r.error; }
  };
  Result total;
  if (a == b) {
    total.converged = true;
    return total;
  }
  std::priority_queue<Panel> heap;
  Panel p{a, b, detail::gk15(f, a, b)};
  total = p.r;
  heap.push(p);
  int n = 1;
  while (true) {
    const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(total.value));
    if (total.error <= tol) {
      total.converged = true;
      break;
    }
    if (n >= opt.max_intervals) break;
    Panel worst = heap.top();
    const double m = 0.5 * (worst.a + worst.b);
    if (m <= worst.a || m >= worst.b) break;
    heap.pop();
    Panel left{worst.a, m, detail::gk15(f, worst.a, m)};
    Panel right{m, worst.b, detail::gk15(f, m, worst.b)};
    total.value += left.r.value + right.r.value - worst.r.value;
    total.error += left.r.error + right.r.error - worst.r.error;
    total.evaluations += 30;
    heap.push(left);
    heap.push(right);
    ++n;
  }
  // Re-sum to limit drift from the incremental updates.
  double v = 0.0, e = 0.0;
  while (!heap.empty()) {
    v += heap.top().r.value;
    e += heap.top().r.error;
    heap.pop();
  }
  total.value = v;
  total.error = e;
  return total;
}

// Double-exponential (tanh-sinh) rule on [a,b]. The integrand may take
// (x, x - a, b - x) so that endpoint distances are available to full
// relative precision.
template <class F>
Result tanh_sinh(const F& f, double a, double b, const Options& opt = {}) {
  Result res;
  if (a == b) {
    res.converged = true;
    return res;
  }
  const double hw = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  constexpr double kHalfPi = 1.57079632679489661923;
  constexpr double kTiny = std::numeric_limits<double>::min();

  // Contribution of node t (and -t when t > 0), scaled by hw.
  auto node = [&](double t, bool& small) {
    const double sh = std::sinh(t);
    const double u = kHalfPi * sh;
    const double e = std::exp(-2.0 * std::abs(u));
    // 1 - tanh|u| = 2e/(1+e)
    const double comp = 2.0 * e / (1.0 + e);
    const double ch = std::cosh(u);
    const double w = kHalfPi * std::cosh(t) / (ch * ch);
    if (!(comp > 0.0) || w == 0.0 || !std::isfinite(w)) {
      small = true;
      return 0.0;
    }
    const double d = hw * comp;     // distance to the near endpoint
    const double dfar = hw * (2.0 - comp);
    if (d < kTiny * 16) {
      small = true;
      return 0.0;
    }
    double sum = 0.0;
    if (t == 0.0) {
      sum = w * detail::call3(f, c, hw, hw);
    } else {
      const double xr = b - d;
      const double xl = a + d;
      sum = w * (detail::call3(f, xr, dfar, d) + detail::call3(f, xl, d, dfar));
      res.evaluations += 2;
    }
    small = w < 1e-300;
    return sum;
  };

  auto level_sum = [&](double h, bool odd_only) {
    double s = 0.0;
    if (!odd_only) {
      bool sm = false;
      s += node(0.0, sm);
      ++res.evaluations;
    }
    const int step = odd_only ? 2 : 1;
    double last_scale = 0.0;
    int quiet = 0;
    for (int j = 1; j < 1 << 20; j += step) {
      bool sm = false;
      const double v = node(j * h, sm);
      s += v;
      last_scale = std::max(last_scale, std::abs(v));
      if (sm || (j * h > 3.0 && std::abs(v) <= 1e-20 * last_scale)) {
        if (++quiet >= 2) break;
      } else {
        quiet = 0;
      }
      if (j * h > 7.0) break;
    }
    return s;
  };

  double h = 1.0;
  double sum = level_sum(h, false);
  double est = hw * h * sum;
  double prev = est;
  for (int k = 1; k <= opt.max_level; ++k) {
    h *= 0.5;
    sum += level_sum(h, true);
    est = hw * h * sum;
    const double diff = std::abs(est - prev);
    res.value = est;
    res.error = diff;
    if (k >= 3 && diff <= std::max(opt.abs_tol, opt.rel_tol * std::abs(est))) {
      res.converged = true;
      return res;
    }
    prev = est;
  }
  res.value = est;
  return res;
}

// Integral over [a, inf) through x = a + (1 - t)/t, tanh-sinh on (0, 1].
template <class F>
Result tanh_sinh_inf(const F& f, double a, const Options& opt = {}) {
  auto g = [&](double t, double dl, double) {
    if (dl < 1e-150) return 0.0;
    const double x = a + (1.0 - t) / t;
    return f(x) / (t * t);
  };
  return tanh_sinh(g, 0.0, 1.0, opt);
}

// Throws NumericError when a quadrature result did not converge.
inline double require(const Result& r, const char* where) {
  if (!r.converged || !std::isfinite(r.value)) {
    std::ostringstream os;
    os << where << ": quadrature did not converge (value " << r.value << ", error estimate "
       << r.error << ", " << r.evaluations << " evaluations)";
    throw NumericError(os.str());
  }
  return r.value;
}

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

}  // namespace fracsym::quad
