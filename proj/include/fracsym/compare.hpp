#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "fraclap.hpp"
#include "greens1d.hpp"
#include "rearrange.hpp"
#include "sampled.hpp"

namespace fracsym {

struct PointwiseViolation {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double max_gap = 0.0;
  Side side = Side::right;
};

struct ComparisonReport {
  double s = 0.0;
  std::string source_name;
  ConcentrationVerdict concentration;
  double tol = 0.0;
  std::optional<PointwiseViolation> pointwise_violation;
  double energy_u = 0.0;
  double energy_v = 0.0;
  SampledFunction u;        // solution for f, on the target grid
  SampledFunction v;        // solution for f#, same grid
  SampledFunction u_sharp;  // u# resampled on the same grid
};

struct CompareOptions {
  int grid_points = 401;
  double concentration_rel = 1e-5;  // tol = rel * ||v||_1
  double pointwise_rel = 1e-4;      // tol = rel * max v
  bool energies = true;
};

namespace detail {

inline void check_order(double s, const char* who) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError(std::string(who) + ": s must lie in (0,1)");
}

inline void check_interval_source(const SampledFunction& f, const char* who) {
  validate(f);
  if (f.N != 1) throw DomainError(std::string(who) + ": source must be one-dimensional");
  if (f.a() < -1.0 || f.b() > 1.0) throw DomainError(std::string(who) + ": source must live on [-1,1]");
}

inline SampledFunction resample(const SampledFunction& f, const std::vector<double>& grid) {
  return sample([&f](double t) { return f(t); }, grid, f.N);
}

// |f| as a piecewise-linear function: zero crossings become nodes.
inline SampledFunction abs_samples(const SampledFunction& f) {
  SampledFunction out{{}, {}, f.N};
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i > 0 && f.v[i - 1] * f.v[i] < 0.0) {
      const double t = f.v[i - 1] / (f.v[i - 1] - f.v[i]);
      const double z = f.x[i - 1] + t * (f.x[i] - f.x[i - 1]);
      if (z > out.x.back() && z < f.x[i]) {
        out.x.push_back(z);
        out.v.push_back(0.0);
      }
    }
    out.x.push_back(f.x[i]);
    out.v.push_back(std::abs(f.v[i]));
  }
  return out;
}

// Fills verdicts of a report whose u and v are already set on a common grid.
inline void finish_report(ComparisonReport& rep, const CompareOptions& opt);

}  // namespace detail

// Largest interval touching x = +-1 on which u#(x) > v(x) + tol. A run counts
// as touching the boundary when every node between it and the edge has
// u# >= v - tol, so the common decay of both functions does not cut it off.
inline std::optional<PointwiseViolation> pointwise_violation_scan(const SampledFunction& u_sharp,
                                                                  const SampledFunction& v, double tol) {
  validate(u_sharp);
  validate(v);
  if (u_sharp.x != v.x) throw DomainError("pointwise_violation_scan: functions must share a grid");
  const std::size_t n = v.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = u_sharp.v[i] - v.v[i];
  std::optional<PointwiseViolation> best;
  auto run_from = [&](bool right) {
    // walk inward from the edge, skipping the endpoint itself
    std::vector<std::size_t> order;
    for (std::size_t k = 1; k + 1 < n; ++k) order.push_back(right ? n - 1 - k : k);
    std::size_t k = 0;
    while (k < order.size() && d[order[k]] <= tol) {
      if (d[order[k]] < -tol) return;
      ++k;
    }
    if (k == order.size()) return;
    PointwiseViolation pv;
    pv.side = right ? Side::right : Side::left;
    std::size_t first = order[k], last = order[k];
    for (; k < order.size() && d[order[k]] > tol; ++k) {
      last = order[k];
      pv.max_gap = std::max(pv.max_gap, d[order[k]]);
    }
    pv.x_lo = v.x[std::min(first, last)];
    pv.x_hi = v.x[std::max(first, last)];
    if (!best || pv.x_hi - pv.x_lo > best->x_hi - best->x_lo) best = pv;
  };
  run_from(true);
  run_from(false);
  return best;
}

inline std::optional<PointwiseViolation> pointwise_violation_scan(const SampledFunction& u_sharp,
                                                                  const SampledFunction& v) {
  double vmax = 0.0;
  for (double t : v.v) vmax = std::max(vmax, std::abs(t));
  return pointwise_violation_scan(u_sharp, v, 1e-4 * vmax);
}

inline std::pair<double, double> energy_comparison(const SampledFunction& u, const SampledFunction& v, double s) {
  return {gagliardo_seminorm(u, s), gagliardo_seminorm(v, s)};
}

namespace detail {

inline void finish_report(ComparisonReport& rep, const CompareOptions& opt) {
  rep.u_sharp = resample(schwarz_rearrangement(rep.u), rep.v.x);
  rep.tol = opt.concentration_rel * lp_norm(rep.v, 1.0);
  rep.concentration = is_less_concentrated(concentration(rep.u), concentration(rep.v), rep.tol);
  double vmax = 0.0;
  for (double t : rep.v.v) vmax = std::max(vmax, std::abs(t));
  rep.pointwise_violation = pointwise_violation_scan(rep.u_sharp, rep.v, opt.pointwise_rel * vmax);
  if (opt.energies) {
    const auto e = energy_comparison(rep.u, rep.v, rep.s);
    rep.energy_u = e.first;
    rep.energy_v = e.second;
  }
}

}  // namespace detail

// u = G f, v = G f#, u# and the comparison verdicts on a Chebyshev target grid.
inline ComparisonReport run_comparison(double s, const SampledFunction& f, const std::string& name = "sampled",
                                       const CompareOptions& opt = {}) {
  detail::check_order(s, "run_comparison");
  detail::check_interval_source(f, "run_comparison");
  if (opt.grid_points < 16) throw DomainError("run_comparison: grid needs at least 16 points");
  const auto fs = schwarz_rearrangement(f);
  const auto targets = default_grid(opt.grid_points);
  ComparisonReport rep;
  rep.s = s;
  rep.source_name = name;
  rep.u = GreenOperator(s, targets, f.x).apply(f);
  rep.v = GreenOperator(s, targets, fs.x).apply(fs);
  detail::finish_report(rep, opt);
  return rep;
}

// Catalog sources on the default grid with their breakpoints.
inline SampledFunction catalog_source(const std::string& name, int grid_points = 401) {
  SourceTerm src;
  if (name == "abs") {
    src = abs_source();
  } else if (name == "indicator") {
    src = indicator_source();
  } else if (name == "constant") {
    src = constant_source();
  } else {
    throw UsageError("unknown source '" + name + "' (expected abs, indicator or constant)");
  }
  return sample_source(src, default_grid(grid_points, src.breakpoints));
}

// ------------------------------------------------------------ s -> 1

struct TrendPoint {
  double s = 0.0;
  double max_violation = 0.0;  // max_x (u# - v)_+
};

struct TrendReport {
  std::string source_name;
  std::vector<TrendPoint> points;
  bool decreasing = true;
};

namespace detail {

inline std::pair<std::string, std::string> local_names(const std::string& source) {
  if (source == "abs") return {"u1", "v1"};
  if (source == "indicator") return {"u2", "v2"};
  if (source == "constant") return {"constant", "constant"};
  throw UsageError("unknown source '" + source + "' (expected abs, indicator or constant)");
}

inline double max_positive_gap(const SampledFunction& a, const SampledFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, a.v[i] - b.v[i]);
  return m;
}

}  // namespace detail

// Local problem -u'' = f, the s = 1 end of the trend.
inline ComparisonReport local_comparison(const std::string& source, int grid_points = 401) {
  const auto names = detail::local_names(source);
  const auto grid = default_grid(grid_points);
  ComparisonReport rep;
  rep.s = 1.0;
  rep.source_name = source;
  rep.u = sample([&](double x) { return local_reference(names.first, x); }, grid);
  rep.v = sample([&](double x) { return local_reference(names.second, x); }, grid);
  CompareOptions opt;
  opt.grid_points = grid_points;
  opt.energies = false;
  detail::finish_report(rep, opt);
  return rep;
}

inline TrendReport talenti_limit_trend(const std::string& source, const std::vector<double>& s_grid,
                                       int grid_points = 401) {
  if (s_grid.empty()) throw UsageError("talenti_limit_trend: empty s grid");
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    if (!(s_grid[i] > 0.0 && s_grid[i] <= 1.0)) throw DomainError("talenti_limit_trend: s must lie in (0,1]");
    if (i > 0 && !(s_grid[i] > s_grid[i - 1])) throw DomainError("talenti_limit_trend: s grid must increase");
  }
  TrendReport out;
  out.source_name = source;
  CompareOptions opt;
  opt.grid_points = grid_points;
  opt.energies = false;
  const auto f = catalog_source(source, grid_points);
  for (double s : s_grid) {
    const auto rep = s == 1.0 ? local_comparison(source, grid_points) : run_comparison(s, f, source, opt);
    out.points.push_back({s, detail::max_positive_gap(rep.u_sharp, rep.v)});
  }
  for (std::size_t i = 1; i < out.points.size(); ++i) {
    out.decreasing &= out.points[i].max_violation <= out.points[i - 1].max_violation;
  }
  return out;
}

// ------------------------------------------------------------ zero order

namespace detail {

// Largest eigenvalue of a nonnegative matrix by power iteration on the
// operator's weights (row sums bound it from above).
inline double perron_root(const GreenOperator& op, int iters = 200) {
  const std::size_t n = op.sources().size();
  std::vector<double> x(n, 1.0);
  double lam = 0.0;
  for (int k = 0; k < iters; ++k) {
    auto y = op.apply(x);
    double m = 0.0;
    for (double t : y) m = std::max(m, std::abs(t));
    if (m == 0.0) return 0.0;
    for (double& t : y) t /= m;
    const double prev = lam;
    lam = m;
    x = std::move(y);
    if (k > 5 && std::abs(lam - prev) <= 1e-12 * lam) break;
  }
  return lam;
}

// Fixed point of u = G(f - c u) on the operator's own nodes.
inline std::vector<double> neumann_solve(const GreenOperator& op, const std::vector<double>& f, double c,
                                         const char* which) {
  const double rho = perron_root(op);
  if (c * rho >= 1.0) {
    std::ostringstream os;
    os << "zero_order_comparison: iteration for " << which << " does not contract (c * rho(G) = " << c * rho
       << " >= 1)";
    throw NumericError(os.str());
  }
  std::vector<double> u = op.apply(f);
  std::vector<double> rhs(f.size());
  for (int k = 0; k < 2000; ++k) {
    for (std::size_t j = 0; j < f.size(); ++j) rhs[j] = f[j] - c * u[j];
    auto next = op.apply(rhs);
    double diff = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
      diff = std::max(diff, std::abs(next[j] - u[j]));
      scale = std::max(scale, std::abs(next[j]));
    }
    u = std::move(next);
    if (diff <= 1e-13 * std::max(scale, 1e-300)) return u;
  }
  std::ostringstream os;
  os << "zero_order_comparison: iteration for " << which << " stalled (c * rho(G) = " << c * rho << ")";
  throw NumericError(os.str());
}

}  // namespace detail

// ((-Delta)^s + c) u = f and the same with f#, compared as in run_comparison.
inline ComparisonReport zero_order_comparison(double s, double c, const SampledFunction& f,
                                              const std::string& name = "sampled", const CompareOptions& opt = {}) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("zero_order_comparison: c must be a finite constant >= 0");
  if (c == 0.0) return run_comparison(s, f, name, opt);
  detail::check_order(s, "zero_order_comparison");
  detail::check_interval_source(f, "zero_order_comparison");
  if (opt.grid_points < 16) throw DomainError("zero_order_comparison: grid needs at least 16 points");
  const auto fs = schwarz_rearrangement(f);
  const auto targets = default_grid(opt.grid_points);
  auto solve_on = [&](const SampledFunction& src, const char* which) {
    const auto nodes = merge_grids(targets, src.x, 0.0);
    const GreenOperator op(s, nodes, nodes);
    const auto fv = detail::resample(src, nodes).v;
    return detail::resample(SampledFunction{nodes, detail::neumann_solve(op, fv, c, which), 1}, targets);
  };
  ComparisonReport rep;
  rep.s = s;
  rep.source_name = name;
  rep.u = solve_on(f, "u");
  rep.v = solve_on(fs, "v");
  detail::finish_report(rep, opt);
  return rep;
}

// ------------------------------------------------------------ mixed sign

struct MixedSignReport {
  ConcentrationVerdict u_vs_abs;  // u# < (G|f|)#
  ConcentrationVerdict abs_vs_v;  // (G|f|)# < v
  ConcentrationVerdict u_vs_v;
  double tol = 0.0;
};

// Sign-changing f: u = G f, w = G|f|, v = G f#; u# < w# < v.
inline MixedSignReport mixed_sign_comparison(double s, const SampledFunction& f, const CompareOptions& opt = {}) {
  detail::check_order(s, "mixed_sign_comparison");
  detail::check_interval_source(f, "mixed_sign_comparison");
  const auto targets = default_grid(opt.grid_points);
  const auto u = GreenOperator(s, targets, f.x).apply(f);
  const auto fa = detail::abs_samples(f);
  const auto w = GreenOperator(s, targets, fa.x).apply(fa);
  const auto fs = schwarz_rearrangement(f);
  const auto v = GreenOperator(s, targets, fs.x).apply(fs);
  MixedSignReport out;
  out.tol = opt.concentration_rel * lp_norm(v, 1.0);
  const auto cu = concentration(u), cw = concentration(w), cv = concentration(v);
  out.u_vs_abs = is_less_concentrated(cu, cw, out.tol);
  out.abs_vs_v = is_less_concentrated(cw, cv, out.tol);
  out.u_vs_v = is_less_concentrated(cu, cv, out.tol);
  return out;
}

}  // namespace fracsym
