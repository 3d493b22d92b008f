#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "error.hpp"
#include "quadrature.hpp"
#include "sampled.hpp"
#include "specfun.hpp"

namespace fracsym {

struct ConcentrationCurve {
  std::vector<double> sigma;    // measure parameter, starts at 0
  std::vector<double> mass;     // int_0^sigma f*
  std::vector<double> density;  // f*(sigma)

  double total() const { return mass.empty() ? 0.0 : mass.back(); }

  double density_at(double s) const {
    if (sigma.empty() || s < 0.0 || s > sigma.back()) return 0.0;
    auto it = std::upper_bound(sigma.begin(), sigma.end(), s);
    if (it == sigma.end()) return density.back();
    const std::size_t i = static_cast<std::size_t>(it - sigma.begin());
    if (i == 0) return density.front();
    const double w = (s - sigma[i - 1]) / (sigma[i] - sigma[i - 1]);
    return density[i - 1] + w * (density[i] - density[i - 1]);
  }

  // Exact for the piecewise-linear density.
  double at(double s) const {
    if (sigma.empty() || s <= 0.0) return 0.0;
    if (s >= sigma.back()) return mass.back();
    auto it = std::upper_bound(sigma.begin(), sigma.end(), s);
    const std::size_t i = static_cast<std::size_t>(it - sigma.begin()) - 1;
    return mass[i] + 0.5 * (s - sigma[i]) * (density[i] + density_at(s));
  }
};

struct RadiusFunction {
  std::vector<double> levels;  // decreasing
  std::vector<double> radii;   // omega_N r^N = mu(t)
};

struct ConcentrationVerdict {
  bool holds = true;
  double worst_sigma = 0.0;
  double gap = 0.0;  // max over sigma of mass_f - mass_g
};

namespace detail {

// Linear piece of |f| on [x0,x1], nonnegative throughout.
struct AbsPiece {
  double x0, x1, g0, g1;
};

inline std::vector<AbsPiece> abs_pieces(const SampledFunction& f) {
  std::vector<AbsPiece> out;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    const double x0 = f.x[i], x1 = f.x[i + 1], v0 = f.v[i], v1 = f.v[i + 1];
    if ((v0 < 0.0 && v1 > 0.0) || (v0 > 0.0 && v1 < 0.0)) {
      const double xc = x0 + v0 / (v0 - v1) * (x1 - x0);
      out.push_back({x0, xc, std::abs(v0), 0.0});
      out.push_back({xc, x1, 0.0, std::abs(v1)});
    } else {
      out.push_back({x0, x1, std::abs(v0), std::abs(v1)});
    }
  }
  return out;
}

// Measure of {|f| > t} (strict) or {|f| >= t} on one piece.
inline double piece_measure(int n, const AbsPiece& p, double t, bool strict) {
  const double lo = std::min(p.g0, p.g1), hi = std::max(p.g0, p.g1);
  const bool all = strict ? t < lo : t <= lo;
  const bool none = strict ? t >= hi : t > hi;
  if (all) return shell_measure(n, p.x0, p.x1);
  if (none) return 0.0;
  const double xc = p.x0 + (t - p.g0) / (p.g1 - p.g0) * (p.x1 - p.x0);
  return p.g1 > p.g0 ? shell_measure(n, xc, p.x1) : shell_measure(n, p.x0, xc);
}

inline double measure_above(const SampledFunction& f, const std::vector<AbsPiece>& pieces, double t, bool strict) {
  double m = 0.0;
  for (const auto& p : pieces) m += piece_measure(f.N, p, t, strict);
  return m;
}

// Grid coordinates where the interpolant of f crosses any of the given levels.
inline std::vector<double> level_crossings(const SampledFunction& f, const std::vector<double>& levels) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    const double v0 = f.v[i], v1 = f.v[i + 1];
    for (double c : levels) {
      if ((v0 - c) * (v1 - c) < 0.0) out.push_back(f.x[i] + (c - v0) / (v1 - v0) * (f.x[i + 1] - f.x[i]));
    }
  }
  return out;
}

// int over [grid] of phi(x) dm(x), Gauss-Legendre per cell; dm = dx for
// N = 1 and N omega_N r^{N-1} dr otherwise.
template <class Phi>
double integrate_cells(const std::vector<double>& grid, int n, const Phi& phi) {
  static thread_local std::vector<double> gx, gw;
  if (gx.empty()) quad::gauss_legendre(8, gx, gw);
  const double wn = n == 1 ? 1.0 : n * omega(n);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double c = 0.5 * (grid[i] + grid[i + 1]), h = 0.5 * (grid[i + 1] - grid[i]);
    double cell = 0.0;
    for (std::size_t k = 0; k < gx.size(); ++k) {
      const double x = c + h * gx[k];
      const double w = n == 1 ? 1.0 : wn * std::pow(x, n - 1);
      cell += gw[k] * w * phi(x);
    }
    sum += h * cell;
  }
  return sum;
}

inline std::vector<double> sorted_levels(const SampledFunction& f, int refine) {
  std::vector<double> lv;
  lv.reserve(f.size() + 1);
  for (double t : f.v) lv.push_back(std::abs(t));
  bool sign_change = false;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) sign_change |= f.v[i] * f.v[i + 1] < 0.0;
  if (sign_change) lv.push_back(0.0);
  std::sort(lv.begin(), lv.end());
  lv.erase(std::unique(lv.begin(), lv.end()), lv.end());
  std::vector<double> out;
  for (std::size_t i = 0; i < lv.size(); ++i) {
    out.push_back(lv[i]);
    if (i + 1 < lv.size()) {
      for (int k = 1; k <= refine; ++k) out.push_back(lv[i] + (lv[i + 1] - lv[i]) * k / (refine + 1.0));
    }
  }
  std::sort(out.begin(), out.end());
  std::vector<double> dedup;
  for (double t : out) {
    if (dedup.empty() || t - dedup.back() > 1e-14 * std::max(1.0, t)) dedup.push_back(t);
  }
  return dedup;
}

}  // namespace detail

// mu_f(t) = |{ |f| > t }| for the piecewise-linear interpolant.
inline double distribution(const SampledFunction& f, double t) {
  validate(f);
  if (!(t >= 0.0)) throw DomainError("distribution: level must be >= 0");
  return detail::measure_above(f, detail::abs_pieces(f), t, true);
}

// f*(sigma) = sup{t : mu_f(t) > sigma} on (0, |domain|), as samples in sigma.
// Exact for N = 1 (mu is piecewise linear in t); for N > 1 levels are refined
// between sample values.
inline SampledFunction decreasing_rearrangement(const SampledFunction& f) {
  validate(f);
  const auto pieces = detail::abs_pieces(f);
  const auto levels = detail::sorted_levels(f, f.N == 1 ? 1 : 8);
  const double total = domain_measure(f);
  struct Pt {
    double s, t;
  };
  std::vector<Pt> pts;
  pts.reserve(2 * levels.size() + 2);
  for (double t : levels) {
    pts.push_back({std::min(total, detail::measure_above(f, pieces, t, true)), t});
    pts.push_back({std::min(total, detail::measure_above(f, pieces, t, false)), t});
  }
  pts.push_back({total, levels.front()});
  std::sort(pts.begin(), pts.end(), [](const Pt& p, const Pt& q) { return p.s < q.s || (p.s == q.s && p.t > q.t); });
  SampledFunction out;
  out.N = 1;
  const double tol = 1e-14 * std::max(1.0, total);
  for (const auto& p : pts) {
    if (!out.x.empty() && p.s - out.x.back() <= tol) continue;
    out.x.push_back(p.s);
    out.v.push_back(p.t);
  }
  if (out.x.front() > 0.0) {
    out.x.insert(out.x.begin(), 0.0);
    out.v.insert(out.v.begin(), out.v.front());
  }
  if (out.x.size() == 1) {
    out.x.push_back(std::max(total, tol));
    out.v.push_back(out.v.front());
  }
  return out;
}

// f#(x) = f*(omega_N |x|^N). For N = 1 the result lives on [-|dom|/2, |dom|/2];
// for N > 1 it is a radial profile on [0, R#].
inline SampledFunction schwarz_rearrangement(const SampledFunction& f) {
  const auto fs = decreasing_rearrangement(f);
  SampledFunction out;
  out.N = f.N;
  if (f.N == 1) {
    for (std::size_t k = fs.size(); k-- > 1;) {
      out.x.push_back(-0.5 * fs.x[k]);
      out.v.push_back(fs.v[k]);
    }
    out.x.push_back(0.0);
    out.v.push_back(fs.v.front());
    for (std::size_t k = 1; k < fs.size(); ++k) {
      out.x.push_back(0.5 * fs.x[k]);
      out.v.push_back(fs.v[k]);
    }
  } else {
    const double w = omega(f.N);
    for (std::size_t k = 0; k < fs.size(); ++k) {
      const double r = std::pow(fs.x[k] / w, 1.0 / f.N);
      if (!out.x.empty() && !(r > out.x.back())) continue;
      out.x.push_back(r);
      out.v.push_back(fs.v[k]);
    }
  }
  return out;
}

// Pointwise G_{t,h}: 0 below t, theta - t on (t, t+h], h above t + h. Nodes
// are inserted where the interpolant crosses t and t + h.
inline double truncate_value(double theta, double t, double h) {
  if (theta <= t) return 0.0;
  if (theta <= t + h) return theta - t;
  return h;
}

inline SampledFunction truncation(const SampledFunction& f, double t,
                                  double h = std::numeric_limits<double>::infinity()) {
  validate(f);
  if (!(t >= 0.0) || !(h > 0.0)) throw DomainError("truncation: requires t >= 0 and h > 0");
  std::vector<double> lv{t};
  if (std::isfinite(h)) lv.push_back(t + h);
  const auto grid = merge_grids(f.x, detail::level_crossings(f, lv));
  SampledFunction out{grid, std::vector<double>(grid.size()), f.N};
  for (std::size_t i = 0; i < grid.size(); ++i) out.v[i] = truncate_value(f(grid[i]), t, h);
  return out;
}

inline ConcentrationCurve concentration(const SampledFunction& f) {
  const auto fs = decreasing_rearrangement(f);
  ConcentrationCurve c{fs.x, std::vector<double>(fs.size(), 0.0), fs.v};
  for (std::size_t i = 1; i < fs.size(); ++i) c.mass[i] = c.mass[i - 1] + 0.5 * (fs.x[i] - fs.x[i - 1]) * (fs.v[i] + fs.v[i - 1]);
  return c;
}

// f < g in the mass-concentration order, checked at every breakpoint of
// either curve and at interior crossings of the densities (where the mass
// difference is extremal).
inline ConcentrationVerdict is_less_concentrated(const ConcentrationCurve& f, const ConcentrationCurve& g, double tol) {
  ConcentrationVerdict out;
  out.gap = -std::numeric_limits<double>::infinity();
  const auto grid = merge_grids(f.sigma, g.sigma, 0.0);
  auto consider = [&](double s) {
    const double d = f.at(s) - g.at(s);
    if (d > out.gap) {
      out.gap = d;
      out.worst_sigma = s;
    }
  };
  for (std::size_t i = 0; i < grid.size(); ++i) {
    consider(grid[i]);
    if (i + 1 < grid.size()) {
      const double p = grid[i], q = grid[i + 1];
      const double e0 = f.density_at(p) - g.density_at(p);
      const double e1 = f.density_at(q) - g.density_at(q);
      if (e0 > 0.0 && e1 < 0.0) consider(p + e0 / (e0 - e1) * (q - p));
    }
  }
  out.holds = out.gap <= tol;
  return out;
}

inline ConcentrationVerdict is_less_concentrated(const ConcentrationCurve& f, const ConcentrationCurve& g) {
  return is_less_concentrated(f, g, 1e-7 * g.total());
}

// ||f||_p over the sampling domain (p = inf gives the max of |f|).
inline double lp_norm(const SampledFunction& f, double p) {
  validate(f);
  if (std::isinf(p)) {
    double m = 0.0;
    for (double t : f.v) m = std::max(m, std::abs(t));
    return m;
  }
  if (!(p >= 1.0)) throw DomainError("lp_norm: requires p >= 1");
  const auto grid = merge_grids(f.x, detail::level_crossings(f, {0.0}));
  const double i = detail::integrate_cells(grid, f.N, [&](double x) { return std::pow(std::abs(f(x)), p); });
  return std::pow(i, 1.0 / p);
}

// int |f g| - int f* g* (nonpositive by the Hardy-Littlewood inequality).
inline double hardy_littlewood_check(const SampledFunction& f, const SampledFunction& g) {
  validate(f);
  validate(g);
  if (f.N != g.N) throw DomainError("hardy_littlewood_check: dimensions differ");
  const double lo = std::max(f.a(), g.a()), hi = std::min(f.b(), g.b());
  double lhs = 0.0;
  if (hi > lo) {
    auto grid = merge_grids(f.x, g.x);
    grid = merge_grids(grid, detail::level_crossings(f, {0.0}));
    grid = merge_grids(grid, detail::level_crossings(g, {0.0}));
    std::vector<double> clipped{lo};
    for (double t : grid) {
      if (t > lo && t < hi) clipped.push_back(t);
    }
    clipped.push_back(hi);
    lhs = detail::integrate_cells(clipped, f.N, [&](double x) { return std::abs(f(x) * g(x)); });
  }
  const auto fs = decreasing_rearrangement(f);
  const auto gs = decreasing_rearrangement(g);
  const double top = std::min(fs.b(), gs.b());
  std::vector<double> sg{0.0};
  for (double t : merge_grids(fs.x, gs.x)) {
    if (t > 0.0 && t < top) sg.push_back(t);
  }
  sg.push_back(top);
  const double rhs = detail::integrate_cells(sg, 1, [&](double s) { return fs(s) * gs(s); });
  return lhs - rhs;
}

struct ConvexMeansReport {
  bool concentrated = false;  // f# < g#
  bool consistent = true;     // convex means ordered whenever concentrated
  double worst_gap = -std::numeric_limits<double>::infinity();
  std::vector<std::string> violations;
};

struct ConvexTest {
  std::string name;
  std::function<double(double)> phi;
  double kink = -1.0;  // level where phi is not smooth, if any
};

// t^2, t^3 and (t - c)_+ for c on a uniform grid of the joint range.
inline std::vector<ConvexTest> default_convex_family(double max_value, int levels = 8) {
  std::vector<ConvexTest> fam;
  fam.push_back({"t^2", [](double t) { return t * t; }});
  fam.push_back({"t^3", [](double t) { return t * t * t; }});
  for (int k = 0; k < levels; ++k) {
    const double c = max_value * k / levels;
    fam.push_back({"(t-" + std::to_string(c) + ")+", [c](double t) { return std::max(t - c, 0.0); }, c});
  }
  return fam;
}

// int phi(|f|) over the sampling domain.
inline double integrate_phi(const SampledFunction& f, const ConvexTest& t) {
  std::vector<double> lv{0.0};
  if (t.kink >= 0.0) {
    lv.push_back(t.kink);
    lv.push_back(-t.kink);
  }
  const auto grid = merge_grids(f.x, detail::level_crossings(f, lv));
  return detail::integrate_cells(grid, f.N, [&](double x) { return t.phi(std::abs(f(x))); });
}

// When f# < g#, checks int phi(f) <= int phi(g) + tol over the convex family.
inline ConvexMeansReport lemma1_equivalence_check(const SampledFunction& f, const SampledFunction& g,
                                            const std::vector<ConvexTest>& family, double tol = -1.0) {
  const auto cf = concentration(f), cg = concentration(g);
  ConvexMeansReport rep;
  rep.concentrated = is_less_concentrated(cf, cg).holds;
  for (const auto& t : family) {
    const double a = integrate_phi(f, t), b = integrate_phi(g, t);
    const double tl = tol >= 0.0 ? tol : 1e-7 * std::max(1.0, std::abs(b));
    rep.worst_gap = std::max(rep.worst_gap, a - b);
    if (rep.concentrated && a > b + tl) {
      rep.consistent = false;
      rep.violations.push_back(t.name + ": " + std::to_string(a) + " > " + std::to_string(b));
    }
  }
  return rep;
}

inline ConvexMeansReport lemma1_equivalence_check(const SampledFunction& f, const SampledFunction& g) {
  return lemma1_equivalence_check(f, g, default_convex_family(std::max(lp_norm(f, INFINITY), lp_norm(g, INFINITY))));
}

// r(t) with omega_N r(t)^N = mu_u(t), on the sample levels in (0, max u].
inline RadiusFunction radius_function(const SampledFunction& u) {
  validate(u);
  for (double t : u.v) {
    if (t < 0.0) throw DomainError("radius_function: requires u >= 0");
  }
  const auto pieces = detail::abs_pieces(u);
  auto lv = detail::sorted_levels(u, 1);
  RadiusFunction rf;
  const double w = omega(u.N);
  for (auto it = lv.rbegin(); it != lv.rend(); ++it) {
    if (!(*it > 0.0)) continue;
    rf.levels.push_back(*it);
    rf.radii.push_back(std::pow(detail::measure_above(u, pieces, *it, true) / w, 1.0 / u.N));
  }
  return rf;
}

}  // namespace fracsym
