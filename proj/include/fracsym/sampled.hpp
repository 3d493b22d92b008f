#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "error.hpp"
#include "specfun.hpp"

namespace fracsym {

// Samples of a function on a strictly increasing grid, read as the
// piecewise-linear interpolant and extended by zero outside [x.front(), x.back()].
// For dimension N = 1 the grid is a coordinate on the line; for N > 1 it is a
// radius r >= 0 of a radial profile in R^N.
struct SampledFunction {
  std::vector<double> x;
  std::vector<double> v;
  int N = 1;

  std::size_t size() const { return x.size(); }
  double a() const { return x.front(); }
  double b() const { return x.back(); }

  double operator()(double t) const {
    if (x.empty() || t < x.front() || t > x.back()) return 0.0;
    auto it = std::upper_bound(x.begin(), x.end(), t);
    if (it == x.end()) return v.back();
    const std::size_t i = static_cast<std::size_t>(it - x.begin());
    if (i == 0) return v.front();
    const double w = (t - x[i - 1]) / (x[i] - x[i - 1]);
    return v[i - 1] + w * (v[i] - v[i - 1]);
  }
};

inline void validate(const SampledFunction& f) {
  if (f.x.size() != f.v.size()) throw DomainError("sampled function: grid and values differ in length");
  if (f.x.size() < 2) throw DomainError("sampled function: need at least two samples");
  if (f.N < 1) throw DomainError("sampled function: dimension must be >= 1");
  for (std::size_t i = 0; i < f.x.size(); ++i) {
    if (!std::isfinite(f.x[i]) || !std::isfinite(f.v[i])) throw DomainError("sampled function: non-finite sample");
    if (i > 0 && !(f.x[i] > f.x[i - 1])) {
      std::ostringstream os;
      os << "sampled function: grid not strictly increasing at index " << i;
      throw DomainError(os.str());
    }
  }
  if (f.N > 1 && f.x.front() < 0.0) throw DomainError("sampled function: radial grid must be >= 0");
}

template <class F>
SampledFunction sample(const F& f, const std::vector<double>& grid, int n = 1) {
  SampledFunction out{grid, std::vector<double>(grid.size()), n};
  for (std::size_t i = 0; i < grid.size(); ++i) out.v[i] = f(grid[i]);
  return out;
}

// n Chebyshev-Lobatto points on [a,b], endpoints included.
inline std::vector<double> chebyshev_grid(int n, double a = -1.0, double b = 1.0) {
  if (n < 2) throw DomainError("chebyshev_grid: need at least two points");
  std::vector<double> g(n);
  for (int k = 0; k < n; ++k) g[k] = 0.5 * (a + b) - 0.5 * (b - a) * std::cos(kPi * k / (n - 1));
  g.front() = a;
  g.back() = b;
  return g;
}

inline std::vector<double> uniform_grid(int n, double a, double b) {
  if (n < 2) throw DomainError("uniform_grid: need at least two points");
  std::vector<double> g(n);
  for (int k = 0; k < n; ++k) g[k] = a + (b - a) * k / (n - 1);
  g.back() = b;
  return g;
}

// Sorted union of grids, merging points closer than tol.
inline std::vector<double> merge_grids(std::vector<double> g, const std::vector<double>& h, double tol = 1e-14) {
  g.insert(g.end(), h.begin(), h.end());
  std::sort(g.begin(), g.end());
  std::vector<double> out;
  for (double t : g) {
    if (out.empty() || t - out.back() > tol * std::max(1.0, std::abs(t))) out.push_back(t);
  }
  return out;
}

// Measure of the region between grid coordinates p < q: length for N = 1,
// ball-shell volume for N > 1.
inline double shell_measure(int n, double p, double q) {
  if (n == 1) return q - p;
  return omega(n) * (std::pow(q, n) - std::pow(p, n));
}

// Total measure of the sampling domain.
inline double domain_measure(const SampledFunction& f) { return shell_measure(f.N, f.a(), f.b()); }

}  // namespace fracsym
