#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "compare.hpp"
#include "fraclap.hpp"
#include "greens1d.hpp"
#include "kernel.hpp"
#include "rearrange.hpp"
#include "specfun.hpp"

namespace fracsym {

// One family of checks: the worst residual over its cases against a bound.
struct Check {
  std::string name;
  double worst = 0.0;
  double tol = 0.0;
  int cases = 0;
  bool pass = true;
  std::string error;  // set when a case threw

  void add(double residual) {
    ++cases;
    if (!std::isfinite(residual)) {
      worst = std::numeric_limits<double>::infinity();
      pass = false;
      return;
    }
    worst = std::max(worst, residual);
    pass = pass && residual <= tol;
  }
  void require(bool ok) { add(ok ? 0.0 : std::numeric_limits<double>::infinity()); }
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  std::vector<std::string> notes;  // tables and other human-readable output
  bool numeric_failure = false;    // a check failed by non-convergence

  int passed() const {
    return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.pass; }));
  }
  int failed() const { return static_cast<int>(checks.size()) - passed(); }
  bool ok() const { return failed() == 0; }
};

namespace detail {

// Runs body(check); an exception fails the check and records its message.
inline void run_check(SuiteReport& rep, const std::string& name, double tol, const std::function<void(Check&)>& body) {
  Check c;
  c.name = name;
  c.tol = tol;
  try {
    body(c);
  } catch (const NumericError& e) {
    c.pass = false;
    c.error = e.what();
    rep.numeric_failure = true;
  } catch (const std::exception& e) {
    c.pass = false;
    c.error = e.what();
  }
  rep.checks.push_back(c);
}

inline double rel_err(double a, double ref) { return std::abs(a - ref) / std::max(std::abs(ref), 1e-300); }

inline std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

inline SampledFunction random_pl(std::mt19937& rng, bool nonneg) {
  std::uniform_int_distribution<int> un(3, 25);
  std::uniform_real_distribution<double> uv(nonneg ? 0.0 : -1.0, 1.0), ux(-1.0, 1.0);
  const int n = un(rng);
  std::vector<double> x(n);
  for (double& t : x) t = ux(rng);
  std::sort(x.begin(), x.end());
  x.front() = -1.0;
  x.back() = 1.0;
  for (int i = 1; i < n; ++i) x[i] = std::max(x[i], x[i - 1] + 1e-3);
  SampledFunction f{x, std::vector<double>(n), 1};
  for (double& t : f.v) t = uv(rng);
  return f;
}

}  // namespace detail

inline SuiteReport verify_specfun() {
  SuiteReport rep{"specfun", {}, {}};
  std::mt19937 rng(101);
  detail::run_check(rep, "gamma duplication and reflection", 1e-12, [&](Check& c) {
    std::uniform_real_distribution<double> ux(0.05, 20.0), ur(-4.5, 4.5);
    for (int i = 0; i < 100; ++i) {
      c.add(duplication_residual(ux(rng)));
      const double x = ur(rng);
      if (std::abs(x - std::round(x)) > 1e-3) c.add(reflection_residual(x));
    }
  });
  detail::run_check(rep, "2F1 at zero", 0.0, [&](Check& c) {
    std::uniform_real_distribution<double> ua(-3.0, 3.0), uc(0.1, 4.0);
    for (int i = 0; i < 50; ++i) c.add(check_identity_zero({ua(rng), ua(rng), uc(rng)}));
  });
  detail::run_check(rep, "2F1 Gauss summation at x = 1", 1e-8, [&](Check& c) {
    std::uniform_real_distribution<double> ua(-1.0, 2.0), ub(0.2, 2.0), ug(0.2, 2.0);
    for (int i = 0; i < 30; ++i) {
      const double a = ua(rng), b = ub(rng);
      const double cc = std::max(a + b, b) + ug(rng);
      c.add(check_identity_gauss({a, b, cc}));
    }
  });
  detail::run_check(rep, "2F1 linear transformation", 1e-8, [&](Check& c) {
    std::uniform_real_distribution<double> ua(-1.5, 3.0), uc(0.2, 4.0), ux(0.0, 0.95);
    for (int i = 0; i < 60; ++i) {
      const HypergeometricParams p{ua(rng), ua(rng), uc(rng)};
      const double x = ux(rng);
      c.add(check_identity_linear(p, x) / std::max(1.0, std::abs(hyp2f1(p, x))));
    }
  });
  detail::run_check(rep, "2F1 derivative contiguous relation", 1e-6, [&](Check& c) {
    std::uniform_real_distribution<double> ua(-1.0, 3.0), uc(0.3, 3.0), ux(-0.9, 0.8);
    for (int i = 0; i < 50; ++i) {
      const HypergeometricParams p{ua(rng), ua(rng), uc(rng)};
      c.add(check_identity_formulona(p, ux(rng)));
    }
  });
  detail::run_check(rep, "2F1 angular integral", 1e-7, [&](Check& c) {
    std::uniform_real_distribution<double> ua(0.5, 3.0), ub(0.3, 2.0), ux(-0.9, 0.9);
    for (int i = 0; i < 20; ++i) c.add(check_identity_hyper(ua(rng), ub(rng), ux(rng)));
  });
  detail::run_check(rep, "Bessel zeros", 1e-12, [&](Check& c) {
    for (double nu : {0.0, 0.5, 1.0, 1.5, 2.25, 4.0}) {
      for (int k = 1; k <= 6; ++k) c.add(std::abs(bessel_j(nu, bessel_j_zero(nu, k))));
    }
  });
  return rep;
}

inline SuiteReport verify_kernel() {
  SuiteReport rep{"kernel", {}, {}};
  std::mt19937 rng(202);
  detail::run_check(rep, "gamma(N,s) dimension recurrence", 1e-12, [&](Check& c) {
    for (int n = 1; n <= 6; ++n) {
      for (int i = 1; i <= 9; ++i) {
        const double s = 0.1 * i;
        c.add(detail::rel_err(gamma_constant({s, n}) * (n + 2.0 * s) / (2.0 * kPi), gamma_constant({s, n + 2})));
      }
    }
  });
  detail::run_check(rep, "Theta closed form vs quadrature", 1e-7, [&](Check& c) {
    std::uniform_int_distribution<int> un(2, 6);
    std::uniform_real_distribution<double> us(0.05, 0.95), ur(0.05, 3.0);
    while (c.cases < 60) {
      const double r = ur(rng), rho = ur(rng);
      const auto k = make_kernel({us(rng), un(rng)});
      if (std::abs(r - rho) < 1e-3) continue;
      c.add(detail::rel_err(theta_closed_form(k, r, rho), theta_quadrature(k, r, rho)));
    }
    rep.notes.push_back(detail::fmt("max |closed - quadrature| / quadrature over 60 points: %.3e", c.worst));
  });
  detail::run_check(rep, "Theta recurrences", 1e-4, [&](Check& c) {
    std::uniform_int_distribution<int> un(1, 6);
    std::uniform_real_distribution<double> us(0.05, 0.95), ur(0.2, 3.0);
    while (c.cases < 120) {
      const double r = ur(rng), rho = ur(rng);
      if (std::abs(r - rho) < 0.05) continue;
      const auto k = make_kernel({us(rng), un(rng)});
      c.add(check_recurrence_a(k, r, rho));
      c.add(check_recurrence_b(k, r, rho));
    }
  });
  detail::run_check(rep, "Theta symmetry and homogeneity", 1e-10, [&](Check& c) {
    std::uniform_real_distribution<double> ur(0.05, 4.0), ul(0.1, 10.0);
    for (int n : {1, 2, 3, 5}) {
      for (double s : {0.1, 0.5, 0.9}) {
        const auto k = make_kernel({s, n});
        for (int i = 0; i < 10; ++i) {
          const double r = ur(rng), rho = ur(rng), lam = ul(rng);
          const double t = theta(k, r, rho);
          c.add(detail::rel_err(theta(k, rho, r), t));
          c.add(detail::rel_err(theta(k, lam * r, lam * rho), std::pow(lam, -n - 2.0 * s) * t));
        }
      }
    }
  });
  return rep;
}

inline SuiteReport verify_rearrange() {
  SuiteReport rep{"rearrange", {}, {}};
  std::mt19937 rng(303);
  std::vector<SampledFunction> fs;
  for (int i = 0; i < 200; ++i) fs.push_back(detail::random_pl(rng, false));
  detail::run_check(rep, "equimeasurability", 1e-12, [&](Check& c) {
    for (const auto& f : fs) {
      const auto r = decreasing_rearrangement(f);
      const double mx = lp_norm(f, INFINITY);
      for (int k = 0; k <= 20; ++k) c.add(std::abs(distribution(r, mx * k / 20.0) - distribution(f, mx * k / 20.0)));
    }
  });
  detail::run_check(rep, "L^p norms preserved", 1e-8, [&](Check& c) {
    for (const auto& f : fs) {
      const auto r = schwarz_rearrangement(f);
      for (double p : {1.0, 2.0, 3.5, HUGE_VAL}) c.add(detail::rel_err(lp_norm(r, p), lp_norm(f, p)));
    }
  });
  detail::run_check(rep, "Hardy-Littlewood direction", 1e-12, [&](Check& c) {
    for (std::size_t i = 0; i + 1 < fs.size(); ++i) c.add(std::max(0.0, hardy_littlewood_check(fs[i], fs[i + 1])));
  });
  detail::run_check(rep, "concentration curve concave", 1e-10, [&](Check& c) {
    for (const auto& f : fs) {
      const auto cc = concentration(f);
      for (std::size_t i = 1; i + 1 < cc.sigma.size(); ++i) {
        const double s0 = (cc.mass[i] - cc.mass[i - 1]) / (cc.sigma[i] - cc.sigma[i - 1]);
        const double s1 = (cc.mass[i + 1] - cc.mass[i]) / (cc.sigma[i + 1] - cc.sigma[i]);
        c.add(std::max(0.0, s1 - s0));
      }
    }
  });
  detail::run_check(rep, "order reflexive and transitive", 0.0, [&](Check& c) {
    int chains = 0;
    for (std::size_t i = 0; i + 2 < fs.size(); ++i) {
      const auto a = concentration(fs[i]);
      c.require(is_less_concentrated(a, a).holds);
      auto g = fs[i];
      for (double& t : g.v) t *= 1.25;
      const auto b = concentration(g), h = concentration(fs[i + 1]);
      if (is_less_concentrated(a, b).holds && is_less_concentrated(b, h).holds) {
        ++chains;
        c.require(is_less_concentrated(a, h).holds);
      }
      c.require(is_less_concentrated(a, b).holds);
    }
    c.require(chains > 0);
  });
  return rep;
}

inline SuiteReport verify_greens() {
  SuiteReport rep{"greens", {}, {}};
  detail::run_check(rep, "s = 1/2, f = 1 gives sqrt(1-x^2)", 1e-6, [&](Check& c) {
    const auto u = solve(0.5, constant_source(), default_grid(201));
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (std::abs(u.x[i]) <= 0.99) c.add(std::abs(u.v[i] - std::sqrt(1.0 - u.x[i] * u.x[i])));
    }
  });
  detail::run_check(rep, "f = Gamma(2s+1) gives (1-x^2)^s", 1e-5, [&](Check& c) {
    for (double s : {0.25, 0.5, 0.75}) {
      const auto u = solve(s, constant_source(gamma(2.0 * s + 1.0)), default_grid(201));
      for (std::size_t i = 0; i < u.size(); ++i) c.add(std::abs(u.v[i] - std::pow(1.0 - u.x[i] * u.x[i], s)));
    }
  });
  detail::run_check(rep, "s = 1/2 closed forms u1, v1, u2, v2", 1e-9, [&](Check& c) {
    const auto grid = default_grid(101, {-0.5, 0.5});
    const auto u1 = solve(0.5, abs_source(), grid), v1 = solve(0.5, abs_source_sharp(), grid);
    const auto u2 = solve(0.5, indicator_source(), grid), v2 = solve(0.5, indicator_source_sharp(), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double x = grid[i];
      c.add(std::abs(u1.v[i] - closed_form_catalog("u1", 0.5, x)));
      c.add(std::abs(v1.v[i] - closed_form_catalog("v1", 0.5, x)));
      c.add(std::abs(u2.v[i] - closed_form_catalog("u2", 0.5, x)));
      c.add(std::abs(v2.v[i] - closed_form_catalog("v2", 0.5, x)));
    }
  });
  detail::run_check(rep, "boundary coefficients l_u, l_v", 1e-3, [&](Check& c) {
    for (double s : {0.25, 0.5, 0.75}) {
      const GreenKernel g(s);
      auto u = [&](double x) { return solve_at(g, abs_source(), x); };
      auto v = [&](double x) { return solve_at(g, abs_source_sharp(), x); };
      c.add(detail::rel_err(boundary_coefficient(u, s, Side::right).value, ell_u_exact(s)));
      c.add(detail::rel_err(boundary_coefficient(v, s, Side::left).value, ell_v_exact(s)));
    }
    c.add(detail::rel_err(ell_u_exact(0.5), 2.0 / kPi));
    c.add(detail::rel_err(ell_v_exact(0.5), (kPi - 2.0) / kPi));
    c.add(detail::rel_err(ell_gap_exact(0.5), 4.0 / kPi - 1.0));
  });
  detail::run_check(rep, "l_u - l_v positive for s in (0,1)", 0.0, [&](Check& c) {
    rep.notes.push_back("     s         l_u          l_v      l_u - l_v");
    for (int i = 1; i <= 9; ++i) {
      const double s = 0.1 * i;
      const double lu = ell_u_exact(s), lv = ell_v_exact(s), gap = ell_gap_exact(s);
      rep.notes.push_back(detail::fmt("  %.1f  %.9f  %.9f  %.9f", s, lu, lv, gap));
      c.require(gap > 0.0 && std::abs(gap - (lu - lv)) < 1e-14);
    }
  });
  return rep;
}

inline SuiteReport verify_fraclap() {
  SuiteReport rep{"fraclap", {}, {}};
  detail::run_check(rep, "fraclap_1d((1-x^2)^s) = Gamma(2s+1)", 5e-3, [&](Check& c) {
    for (double s : {0.25, 0.5, 0.75}) {
      auto u = [s](double x) { return std::pow((1.0 - x) * (1.0 + x), s); };
      const double ref = gamma(2.0 * s + 1.0);
      for (double x : uniform_grid(17, -0.8, 0.8)) c.add(detail::rel_err(fraclap_1d(u, -1.0, 1.0, s, x), ref));
    }
  });
  detail::run_check(rep, "Y identity on (1-r^2)_+^2", 1e-2, [&](Check& c) {
    auto u = [](double r) { return r < 1.0 ? std::pow(1.0 - r * r, 2) : 0.0; };
    c.add(y_identity(u, 1.0, 0.5, 1, 0.5).residual);
    c.add(y_identity(u, 1.0, 0.25, 3, 0.5).residual);
  });
  detail::run_check(rep, "energy identity (gamma/2)[u]^2 = int f u", 1e-3, [&](Check& c) {
    const auto u = sample([](double x) { return std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x))); }, chebyshev_grid(801));
    c.add(detail::rel_err(0.5 * gamma_constant({0.5, 1}) * gagliardo_seminorm_sq(u, 0.5), kPi / 2.0));
  });
  detail::run_check(rep, "Polya-Szego on random profiles", 1e-9, [&](Check& c) {
    std::mt19937 rng(404);
    for (int i = 0; i < 10; ++i) {
      auto f = detail::random_pl(rng, true);
      f.v.front() = f.v.back() = 0.0;
      c.add(std::max(0.0, -polya_szego_check(f, 0.3)));
    }
  });
  detail::run_check(rep, "radial fraclap of a Gaussian", 1e-6, [&](Check& c) {
    // (-Delta)^s e^{-pi r^2} in R^M = (4 pi)^s Gamma(M/2+s)/Gamma(M/2) M(M/2+s; M/2; -pi r^2)
    auto kummer = [](double a, double b, double z) {
      long double term = 1.0L, sum = 1.0L;
      for (int k = 0; k < 400 && std::fabs(term) >= 1e-20L * std::fabs(sum); ++k) {
        term *= (a + k) / ((b + k) * (k + 1.0L)) * z;
        sum += term;
      }
      return static_cast<double>(sum);
    };
    for (int m : {1, 2, 3}) {
      const RadialFunction u{[](double r) { return std::exp(-kPi * r * r); }, m, 6.0, 0.0, 0.0, {}};
      for (double s : {0.3, 0.7}) {
        for (double r : {0.3, 0.9}) {
          const double ref = std::pow(4.0 * kPi, s) * gamma(0.5 * m + s) / gamma(0.5 * m) *
                             kummer(0.5 * m + s, 0.5 * m, -kPi * r * r);
          c.add(std::abs(fraclap_radial(u, s, r) - ref) / std::max(1.0, std::abs(ref)));
        }
      }
    }
  });
  return rep;
}

inline SuiteReport verify_compare() {
  SuiteReport rep{"compare", {}, {}};
  std::vector<ComparisonReport> reports;
  detail::run_check(rep, "concentration u# < v holds", 0.0, [&](Check& c) {
    for (const char* name : {"abs", "indicator"}) {
      const auto f = catalog_source(name);
      for (double s : {0.25, 0.5, 0.75}) {
        reports.push_back(run_comparison(s, f, name));
        const auto& r = reports.back();
        c.add(std::max(0.0, r.concentration.gap - r.tol));
        rep.notes.push_back(detail::fmt("  s = %.2f  concentration gap %.2e (tol %.2e)", s, r.concentration.gap, r.tol) +
                            "  source " + name);
      }
    }
  });
  detail::run_check(rep, "pointwise violation at the boundary", 0.0, [&](Check& c) {
    c.require(reports.size() == 6);
    for (const auto& r : reports) {
      const auto& pv = r.pointwise_violation;
      c.require(pv.has_value() && std::min(std::abs(pv->x_lo), std::abs(pv->x_hi)) > 0.5);
      if (pv) {
        rep.notes.push_back(detail::fmt("  s = %.2f  u# > v on [%.4f, %.6f], max gap %.4e", r.s, pv->x_lo, pv->x_hi,
                                        pv->max_gap) +
                            "  source " + r.source_name);
      }
    }
  });
  detail::run_check(rep, "energy [u] <= [v]", 1e-3, [&](Check& c) {
    for (const auto& r : reports) c.add(std::max(0.0, (r.energy_u - r.energy_v) / r.energy_v));
  });
  detail::run_check(rep, "violation shrinks as s -> 1", 0.0, [&](Check& c) {
    const auto tr = talenti_limit_trend("abs", {0.5, 0.7, 0.9, 0.95, 1.0}, 201);
    c.require(tr.decreasing && tr.points.back().max_violation < 1e-12);
    for (const auto& p : tr.points) rep.notes.push_back(detail::fmt("  s = %.2f  max (u# - v)+ = %.4e", p.s, p.max_violation));
  });
  return rep;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"specfun", "kernel", "rearrange", "greens", "fraclap", "compare"};
  return names;
}

inline SuiteReport verify_suite(const std::string& name) {
  if (name == "specfun") return verify_specfun();
  if (name == "kernel") return verify_kernel();
  if (name == "rearrange") return verify_rearrange();
  if (name == "greens") return verify_greens();
  if (name == "fraclap") return verify_fraclap();
  if (name == "compare") return verify_compare();
  throw UsageError("unknown suite '" + name + "' (expected specfun, kernel, rearrange, greens, fraclap, compare or all)");
}

}  // namespace fracsym
