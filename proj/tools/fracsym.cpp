// fracsym: solve, rearrange and compare on the interval, probe the angular
// kernel, run the verification suites and emit figure data.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 numeric
// non-convergence.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "fracsym/fracsym.hpp"

using namespace fracsym;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kNumeric = 3 };

struct Config {
  double s = 0.5;
  std::string source = "abs";
  int grid = 401;
  std::string out;
  double tol = -1.0;  // negative: command default
  double c = 0.0;
  int N = 3;
  double r = 0.5, rho = 1.0;
  std::string suite = "all";
  std::string format = "text";
  std::vector<double> s_list;
};

bool is_named(const std::string& src) { return src == "abs" || src == "indicator" || src == "constant"; }

void require_order(double s) {
  if (!(s > 0.0 && s < 1.0)) throw UsageError("--s must lie in (0,1)");
}

SourceTerm named_source(const std::string& src) {
  if (src == "abs") return abs_source();
  if (src == "indicator") return indicator_source();
  return constant_source();
}

SampledFunction load_source(const std::string& src, int grid) {
  if (is_named(src)) return catalog_source(src, grid);
  if (!std::filesystem::exists(src)) {
    throw UsageError("--source must be abs, indicator, constant or an existing CSV file (got '" + src + "')");
  }
  return read_sampled_csv(src);
}

std::string source_label(const std::string& src) {
  return is_named(src) ? src : std::filesystem::path(src).stem().string();
}

void emit_csv(const std::string& path, const std::vector<std::string>& header,
              const std::vector<std::vector<double>>& cols) {
  if (path.empty() || path == "-") {
    write_csv(std::cout, header, cols);
  } else {
    write_csv(path, header, cols);
  }
}

// ------------------------------------------------------------ commands

int cmd_solve(const Config& cfg) {
  require_order(cfg.s);
  SampledFunction u;
  if (is_named(cfg.source)) {
    const auto src = named_source(cfg.source);
    SolveOptions opt;
    if (cfg.tol > 0.0) opt.rel_tol = cfg.tol;
    u = solve(cfg.s, src, default_grid(cfg.grid, src.breakpoints), opt);
  } else {
    const auto f = load_source(cfg.source, cfg.grid);
    if (f.a() < -1.0 || f.b() > 1.0) throw UsageError("source samples must lie in [-1,1]");
    u = solve(cfg.s, f, default_grid(cfg.grid));
  }
  emit_csv(cfg.out, {"x", "u"}, {u.x, u.v});
  return kOk;
}

int cmd_rearrange(const Config& cfg) {
  const auto f = load_source(cfg.source, cfg.grid);
  const auto fs = schwarz_rearrangement(f);
  emit_csv(cfg.out, {"x", "f_sharp"}, {fs.x, fs.v});
  return kOk;
}

json violation_json(const std::optional<PointwiseViolation>& pv) {
  if (!pv) return nullptr;
  return {{"x_lo", pv->x_lo},
          {"x_hi", pv->x_hi},
          {"max_gap", pv->max_gap},
          {"side", pv->side == Side::right ? "right" : "left"}};
}

int cmd_compare(const Config& cfg) {
  require_order(cfg.s);
  if (!(cfg.c >= 0.0)) throw UsageError("--c must be >= 0");
  const auto f = load_source(cfg.source, cfg.grid);
  CompareOptions opt;
  opt.grid_points = cfg.grid;
  if (cfg.tol > 0.0) opt.concentration_rel = cfg.tol;
  const auto name = source_label(cfg.source);
  const auto rep = zero_order_comparison(cfg.s, cfg.c, f, name, opt);
  const bool energy_ok = rep.energy_u <= rep.energy_v * (1.0 + 1e-3);
  json j = {{"s", rep.s},
            {"c", cfg.c},
            {"source", rep.source_name},
            {"grid_points", cfg.grid},
            {"concentration", {{"holds", rep.concentration.holds},
                               {"gap", rep.concentration.gap},
                               {"worst_sigma", rep.concentration.worst_sigma},
                               {"tol", rep.tol}}},
            {"pointwise_violation", violation_json(rep.pointwise_violation)},
            {"energy_u", rep.energy_u},
            {"energy_v", rep.energy_v},
            {"energy_ordered", energy_ok}};
  std::cout << j.dump(2) << '\n';
  if (!cfg.out.empty()) write_csv(cfg.out, {"x", "u", "v", "u_sharp"}, {rep.u.x, rep.u.v, rep.v.v, rep.u_sharp.v});
  return rep.concentration.holds && energy_ok ? kOk : kFailed;
}

int cmd_kernel(const Config& cfg) {
  require_order(cfg.s);
  if (cfg.N < 1) throw UsageError("--N must be >= 1");
  if (!(cfg.r > 0.0) || !(cfg.rho > 0.0)) throw UsageError("--r and --rho must be positive");
  if (cfg.r == cfg.rho) throw UsageError("--r and --rho must differ (the kernel is singular on the diagonal)");
  const auto k = make_kernel({cfg.s, cfg.N});
  const double closed = theta_closed_form(k, cfg.r, cfg.rho);
  const double quad = theta_quadrature(k, cfg.r, cfg.rho);
  const double dev = std::abs(closed - quad) / std::abs(quad);
  const double ra = check_recurrence_a(k, cfg.r, cfg.rho);
  const double rb = check_recurrence_b(k, cfg.r, cfg.rho);
  const double tol = cfg.tol > 0.0 ? cfg.tol : 1e-7;
  json j = {{"N", cfg.N},
            {"s", cfg.s},
            {"r", cfg.r},
            {"rho", cfg.rho},
            {"gamma", gamma_constant(k.order)},
            {"theta_closed_form", closed},
            {"theta_quadrature", quad},
            {"relative_deviation", dev},
            {"recurrence_a_residual", ra},
            {"recurrence_b_residual", rb}};
  std::cout << j.dump(2) << '\n';
  return dev <= tol && ra <= 1e-4 && rb <= 1e-4 ? kOk : kFailed;
}

int cmd_verify(const Config& cfg) {
  std::vector<std::string> names;
  if (cfg.suite == "all") {
    names = suite_names();
  } else if (std::find(suite_names().begin(), suite_names().end(), cfg.suite) != suite_names().end()) {
    names = {cfg.suite};
  } else {
    throw UsageError("--suite must be one of specfun, kernel, rearrange, greens, fraclap, compare, all");
  }
  json summary = json::array();
  bool failed = false, numeric = false;
  for (const auto& n : names) {
    const auto rep = verify_suite(n);
    failed |= !rep.ok();
    numeric |= rep.numeric_failure;
    json checks = json::array();
    for (const auto& c : rep.checks) {
      json cj = {{"name", c.name}, {"pass", c.pass}, {"worst", c.worst}, {"tol", c.tol}, {"cases", c.cases}};
      if (!c.error.empty()) cj["error"] = c.error;
      checks.push_back(cj);
    }
    double worst = 0.0;
    for (const auto& c : rep.checks) worst = std::max(worst, c.tol > 0.0 ? c.worst / c.tol : c.worst);
    summary.push_back({{"suite", rep.suite},
                       {"passed", rep.passed()},
                       {"failed", rep.failed()},
                       {"worst_relative_to_tol", worst},
                       {"checks", checks},
                       {"notes", rep.notes}});
    if (cfg.format == "text") {
      std::printf("[%s] %d passed, %d failed\n", rep.suite.c_str(), rep.passed(), rep.failed());
      for (const auto& c : rep.checks) {
        std::printf("  %s  %-42s worst %.3e  tol %.1e  (%d cases)%s%s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                    c.worst, c.tol, c.cases, c.error.empty() ? "" : "  error: ", c.error.c_str());
      }
      for (const auto& line : rep.notes) std::printf("%s\n", line.c_str());
      std::fflush(stdout);
    }
  }
  if (cfg.format == "json") std::cout << summary.dump(2) << '\n';
  if (numeric) return kNumeric;
  return failed ? kFailed : kOk;
}

// One CSV per (s, source) with columns x, u, v, u_sharp.
int cmd_figures(const Config& cfg) {
  if (cfg.s_list.empty()) throw UsageError("--s-list must name at least one order");
  for (double s : cfg.s_list) {
    if (!(s > 0.0 && s <= 1.0)) throw UsageError("--s-list entries must lie in (0,1]");
  }
  const std::string dir = cfg.out.empty() ? "." : cfg.out;
  std::filesystem::create_directories(dir);
  const auto grid = default_grid(cfg.grid);
  CompareOptions opt;
  opt.grid_points = cfg.grid;
  opt.energies = false;
  json files = json::array();
  for (const std::string name : {"abs", "indicator"}) {
    const auto f = catalog_source(name, cfg.grid);
    const std::string idx = name == "abs" ? "1" : "2";
    for (double s : cfg.s_list) {
      SampledFunction u, v;
      std::string path_kind;
      if (s == 1.0) {
        u = sample([&](double x) { return local_reference("u" + idx, x); }, grid);
        v = sample([&](double x) { return local_reference("v" + idx, x); }, grid);
        path_kind = "local";
      } else if (s == 0.5) {
        u = sample([&](double x) { return closed_form_catalog("u" + idx, 0.5, x); }, grid);
        v = sample([&](double x) { return closed_form_catalog("v" + idx, 0.5, x); }, grid);
        path_kind = "closed_form";
      } else {
        const auto rep = run_comparison(s, f, name, opt);
        u = rep.u;
        v = rep.v;
        path_kind = "numeric";
      }
      const auto rs = schwarz_rearrangement(u);
      const auto u_sharp = sample([&](double x) { return rs(x); }, grid);
      double viol = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) viol = std::max(viol, u_sharp.v[i] - v.v[i]);
      char fname[64];
      std::snprintf(fname, sizeof fname, "figure_%s_s%.4g.csv", name.c_str(), s);
      const auto path = (std::filesystem::path(dir) / fname).string();
      write_csv(path, {"x", "u", "v", "u_sharp"}, {grid, u.v, v.v, u_sharp.v});
      files.push_back({{"source", name}, {"s", s}, {"path", path}, {"method", path_kind}, {"max_violation", viol}});
    }
  }
  std::cout << files.dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional Laplacian symmetrization toolkit"};
  app.require_subcommand(1);
  Config cfg;

  auto add_s = [&](CLI::App* sc, bool required) {
    auto* o = sc->add_option("--s", cfg.s, "fractional order in (0,1)");
    if (required) o->required();
  };
  auto add_source = [&](CLI::App* sc) {
    sc->add_option("--source", cfg.source, "abs | indicator | constant | path to an (x,value) CSV")->required();
  };
  auto add_grid = [&](CLI::App* sc) {
    sc->add_option("--grid", cfg.grid, "number of grid points (>= 16)")->check(CLI::Range(16, 100000));
  };

  auto* solve_cmd = app.add_subcommand("solve", "solve (-Delta)^s u = f on (-1,1), u = 0 outside; CSV x,u");
  add_s(solve_cmd, true);
  add_source(solve_cmd);
  add_grid(solve_cmd);
  solve_cmd->add_option("--out", cfg.out, "output CSV (stdout if omitted)");
  solve_cmd->add_option("--tol", cfg.tol, "relative quadrature tolerance");

  auto* rear_cmd = app.add_subcommand("rearrange", "Schwarz rearrangement of a source; CSV x,f_sharp");
  add_source(rear_cmd);
  add_grid(rear_cmd);
  rear_cmd->add_option("--out", cfg.out, "output CSV (stdout if omitted)");

  auto* cmp_cmd = app.add_subcommand("compare", "concentration, pointwise and energy comparison of u# and v");
  add_s(cmp_cmd, true);
  add_source(cmp_cmd);
  add_grid(cmp_cmd);
  cmp_cmd->add_option("--c", cfg.c, "constant zero-order coefficient >= 0");
  cmp_cmd->add_option("--tol", cfg.tol, "concentration tolerance relative to ||v||_1");
  cmp_cmd->add_option("--out", cfg.out, "CSV x,u,v,u_sharp");

  auto* ker_cmd = app.add_subcommand("kernel", "angular kernel: closed form against quadrature, recurrences");
  add_s(ker_cmd, true);
  ker_cmd->add_option("--N", cfg.N, "dimension");
  ker_cmd->add_option("--r", cfg.r, "first radius");
  ker_cmd->add_option("--rho", cfg.rho, "second radius");
  ker_cmd->add_option("--tol", cfg.tol, "relative deviation bound");

  auto* ver_cmd = app.add_subcommand("verify", "run invariant suites");
  ver_cmd->add_option("--suite", cfg.suite, "specfun | kernel | rearrange | greens | fraclap | compare | all");
  ver_cmd->add_option("--format", cfg.format, "text | json")->check(CLI::IsMember({"text", "json"}));

  auto* fig_cmd = app.add_subcommand("figures", "u, v, u# data for the sources |x| and chi_{|x|>1/2}");
  fig_cmd->add_option("--s-list", cfg.s_list, "orders in (0,1], comma separated")->delimiter(',')->required();
  add_grid(fig_cmd);
  fig_cmd->add_option("--out", cfg.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(cfg);
    if (*rear_cmd) return cmd_rearrange(cfg);
    if (*cmp_cmd) return cmd_compare(cfg);
    if (*ker_cmd) return cmd_kernel(cfg);
    if (*ver_cmd) return cmd_verify(cfg);
    if (*fig_cmd) return cmd_figures(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kNumeric;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}
