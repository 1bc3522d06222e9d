// Command-line laboratory for the hyperbolic-umbilic fast-slow system:
// simulation, fan-out and scaling experiments, stratification and chart
// diagnostics. All numeric output uses 17 significant digits; CSV artifacts
// land in the --out directory.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "umbilic/airy.hpp"
#include "umbilic/blowup.hpp"
#include "umbilic/errors.hpp"
#include "umbilic/experiments.hpp"
#include "umbilic/fast_subsystem.hpp"
#include "umbilic/germ.hpp"
#include "umbilic/geometry.hpp"
#include "umbilic/riccati.hpp"
#include "umbilic/slow_flow.hpp"

namespace fs = std::filesystem;
using namespace umbilic;

namespace {

int log_level() {
  static int level = [] {
    const char* env = std::getenv("UMBILIC_LOG");
    if (!env) return 1;
    std::string v = env;
    if (v == "error") return 0;
    if (v == "debug") return 2;
    return 1;
  }();
  return level;
}

void info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[umbilic] " << msg << "\n";
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "./out";
  double eps = -1, nu = -1, tau = -1, rtol = -1, atol = -1;
  int seeds = -1, jobs = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_config) {
  auto* copt = cmd->add_option("--config", o.config_path, "run spec file");
  if (needs_config) copt->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out_dir, "output directory (default ./out)");
  cmd->add_option("--eps", o.eps, "override eps");
  cmd->add_option("--nu", o.nu, "override nu");
  cmd->add_option("--tau", o.tau, "override tau");
  cmd->add_option("--seeds", o.seeds, "override seed count");
  cmd->add_option("--jobs", o.jobs, "worker count (default: hardware)");
  cmd->add_option("--rtol", o.rtol, "override integrator rtol");
  cmd->add_option("--atol", o.atol, "override integrator atol");
}

RunConfig build_run_config(const CommonOpts& o) {
  ConfigData data = load_config_file(o.config_path);
  if (o.eps > 0) data.run.eps = o.eps;
  if (o.nu > 0) data.run.nu = o.nu;
  if (o.tau > 0) data.run.tau = o.tau;
  if (o.seeds > 0) data.run.seeds = o.seeds;
  if (o.rtol > 0) data.run.rtol = o.rtol;
  if (o.atol > 0) data.run.atol = o.atol;
  RunConfig cfg = RunConfig::from_config(data);
  cfg.jobs = o.jobs;
  if (cfg.eps > 0.05)
    info("warning: eps = " + g17(cfg.eps) + " is large for a fast-slow run");
  return cfg;
}

ConfigData effective_config(const RunConfig& cfg, const ConfigData& base) {
  ConfigData out = base;
  out.run.eps = cfg.eps;
  out.run.nu = cfg.nu;
  out.run.tau = cfg.tau;
  out.run.seeds = cfg.seeds.count;
  out.run.w_x = cfg.seeds.w_x;
  out.run.k_a = cfg.seeds.k_a;
  out.run.delta0 = cfg.seeds.delta0;
  out.run.rtol = cfg.integrator.rtol;
  out.run.atol = cfg.integrator.atol;
  return out;
}

std::ofstream open_out(const CommonOpts& o, const std::string& name) {
  fs::create_directories(o.out_dir);
  fs::path p = fs::path(o.out_dir) / name;
  std::ofstream f(p);
  if (!f) throw Error("io", "cannot write " + p.string());
  info("writing " + p.string());
  return f;
}

void write_exits_csv(std::ofstream& f, const std::vector<ExitRecord>& records) {
  f << "seed_id,x,y,a,b,c,x5,class,flight_time\n";
  for (const auto& r : records) {
    f << r.seed_id << "," << g17(r.exit_state.x) << "," << g17(r.exit_state.y)
      << "," << g17(r.exit_state.a) << "," << g17(r.exit_state.b) << ","
      << g17(r.exit_state.c) << "," << g17(r.x5) << "," << to_string(r.fan_class)
      << "," << g17(r.flight_time) << "\n";
  }
}

void write_trajectory_csv(std::ofstream& f, const Trajectory& traj) {
  f << "t,x,y,a,b,c\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    auto s = traj.state(i);
    f << g17(traj.time(i));
    for (std::size_t k = 0; k < 5 && k < s.size(); ++k) f << "," << g17(s[k]);
    f << "\n";
  }
}

void write_plot_script(const CommonOpts& o) {
  auto f = open_out(o, "plot_exits.py");
  f << "# Scatter of exit records produced by the fanout/simulate commands.\n"
       "import csv\n"
       "import matplotlib.pyplot as plt\n\n"
       "xs, ys, cls = [], [], []\n"
       "with open('exits.csv') as fh:\n"
       "    for row in csv.DictReader(fh):\n"
       "        xs.append(float(row['x']))\n"
       "        ys.append(float(row['y']))\n"
       "        cls.append(row['class'])\n"
       "colors = {'Lx': 'tab:red', 'R': 'tab:orange', 'Ly': 'tab:purple'}\n"
       "plt.scatter(xs, ys, c=[colors[c] for c in cls], s=12)\n"
       "plt.xlabel('x'); plt.ylabel('y'); plt.title('exit section')\n"
       "plt.savefig('exits.png', dpi=150)\n";
}

int cmd_simulate(const CommonOpts& o, bool dump_config, int n_traj) {
  ConfigData base = load_config_file(o.config_path);
  RunConfig cfg = build_run_config(o);
  if (dump_config) {
    std::cout << serialize_config(effective_config(cfg, base));
    return 0;
  }
  auto es = entry_seeds(cfg);
  std::vector<ExitRecord> records(es.seeds.size());
  std::vector<Trajectory> trajs(std::min<std::size_t>(n_traj, es.seeds.size()));
  parallel_for(static_cast<int>(es.seeds.size()), cfg.jobs, [&](int i) {
    Trajectory* t = i < static_cast<int>(trajs.size()) ? &trajs[i] : nullptr;
    records[i] = transition_map(cfg, es.seeds[i], i, t);
  });
  auto f = open_out(o, "exits.csv");
  write_exits_csv(f, records);
  for (std::size_t i = 0; i < trajs.size(); ++i) {
    auto tf = open_out(o, "traj_" + std::to_string(i) + ".csv");
    write_trajectory_csv(tf, trajs[i]);
  }
  std::cout << "p = (" << g17(es.p.x) << ", " << g17(es.p.y) << ", "
            << g17(es.p.a) << ")\n";
  std::cout << "seeds = " << records.size() << "\n";
  return 0;
}

int cmd_fanout(const CommonOpts& o, bool plot_script) {
  RunConfig cfg = build_run_config(o);
  auto fo = fanout_experiment(cfg);
  auto records = fo.records;
  if (fo.aimed) records.push_back(*fo.aimed);
  if (fo.band_x) records.push_back(*fo.band_x);
  if (fo.band_y) records.push_back(*fo.band_y);
  auto f = open_out(o, "exits.csv");
  write_exits_csv(f, records);
  if (plot_script) write_plot_script(o);
  std::cout << "classes: Lx = " << fo.count_lx << ", R = " << fo.count_r
            << ", Ly = " << fo.count_ly << "\n";
  if (fo.aimed)
    std::cout << "aimed: x5 = " << g17(fo.aimed->x5) << " after "
              << fo.bisection_steps << " bisection steps (converged "
              << (fo.aimed_converged ? "yes" : "no") << ")\n";
  return 0;
}

int cmd_sweep(const CommonOpts& o, int points, double eps_min, double eps_max,
              double a_scale) {
  RunConfig cfg = build_run_config(o);
  std::vector<double> grid;
  for (int k = 0; k < points; ++k)
    grid.push_back(eps_min * std::pow(eps_max / eps_min,
                                      points == 1 ? 0.0 : double(k) / (points - 1)));
  auto fit = scaling_sweep(cfg.sys, grid, cfg, a_scale);
  auto f = open_out(o, "sweep.csv");
  f << "eps,abs_a,abs_b,abs_c,flight_time\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    f << g17(grid[i]) << "," << g17(fit.a.magnitudes[i]) << ","
      << g17(fit.b.magnitudes[i]) << "," << g17(fit.c.magnitudes[i]) << ","
      << g17(fit.flight_times[i]) << "\n";
  auto report = [](const char* name, const ScalingComponent& c) {
    if (c.degenerate)
      std::cout << name << ": degenerate (exit magnitude below 1e-14)\n";
    else
      std::cout << name << ": exponent = " << g17(c.exponent)
                << ", max log-residual = " << g17(c.max_residual) << "\n";
  };
  report("p_a", fit.a);
  report("p_b", fit.b);
  report("p_c", fit.c);
  return 0;
}

int cmd_sigma(const CommonOpts& o) {
  RunConfig cfg = build_run_config(o);
  auto res = sigma_trajectory(cfg.sys, cfg.nu, cfg.seeds.delta0, cfg.integrator);
  auto f = open_out(o, "sigma.csv");
  f << "t,x,y,a\n";
  const auto& tr = res.trajectory;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    auto s = tr.state(i);
    f << g17(tr.time(i)) << "," << g17(s[0]) << "," << g17(s[1]) << ","
      << g17(s[2]) << "\n";
  }
  std::cout << "p = (" << g17(res.p.x) << ", " << g17(res.p.y) << ", "
            << g17(res.p.a) << ")\n";
  return 0;
}

int cmd_strata(double x, double y, double a, double tol) {
  auto label = stratify(x, y, a, tol);
  double det = catastrophe_jacobian_det(x, y, a);
  std::cout << to_string(label) << "\n";
  std::cout << "det = " << g17(det) << "\n";
  std::cout << "cusp residuals: |x-y| = " << g17(std::abs(x - y))
            << ", |x-a/2| = " << g17(std::abs(x - a / 2)) << "\n";
  return 0;
}

int cmd_germ(const std::string& poly, int max_degree) {
  auto f = PolyExpr::parse(poly);
  auto res = germ_codimension(f, max_degree);
  std::cout << "codim " << res.codim << "\n";
  std::cout << "basis:";
  for (const auto& m : res.basis) std::cout << " " << m;
  std::cout << "\n";
  return 0;
}

int cmd_classify_fast(double a, double b, double c) {
  FastParams p{a, b, c};
  auto eqs = fast_equilibria(p);
  std::cout << "equilibria (" << eqs.size() << "):\n";
  for (const auto& e : eqs)
    std::cout << "  (" << g17(e.x) << ", " << g17(e.y) << ") det = " << g17(e.det)
              << " trace = " << g17(e.trace) << " " << to_string(e.kind) << "\n";
  std::cout << "configuration: " << to_string(classify_config(p)) << "\n";
  return 0;
}

int cmd_jumps(double a, double b, double c, double delta, double nu) {
  FastParams p{a, b, c};
  auto eqs = fast_equilibria(p);
  auto outs = jump_outcomes(p, delta, nu);
  std::cout << outs.size() << " launches:\n";
  for (const auto& oc : outs) {
    switch (oc.type) {
      case JumpOutcome::Type::Escape:
        std::cout << "  escape at (" << g17(oc.exit_state[0]) << ", "
                  << g17(oc.exit_state[1]) << ") t = " << g17(oc.flight_time) << "\n";
        break;
      case JumpOutcome::Type::ToEquilibrium:
        std::cout << "  to equilibrium #" << oc.equilibrium_index << " ("
                  << g17(eqs[oc.equilibrium_index].x) << ", "
                  << g17(eqs[oc.equilibrium_index].y) << ", "
                  << to_string(eqs[oc.equilibrium_index].kind)
                  << ") t = " << g17(oc.flight_time) << "\n";
        break;
      case JumpOutcome::Type::Undecided:
        std::cout << "  undecided\n";
        break;
    }
  }
  return 0;
}

int cmd_charts_check(const CommonOpts& o, int samples) {
  RunConfig cfg = build_run_config(o);
  BlowupAtlas atlas(cfg.sys);
  std::mt19937_64 rng(20240517);
  std::uniform_real_distribution<double> d(-1, 1);
  std::uniform_real_distribution<double> dr(0.05, 1.0);
  const ChartId charts[5] = {ChartId::MinusY, ChartId::Eps, ChartId::PlusA,
                             ChartId::MinusA, ChartId::Exit};
  double max_push = 0;
  for (ChartId c : charts) {
    auto maps = chart_map_polys(c);
    for (int i = 0; i < samples; ++i) {
      ChartPoint p;
      p.chart = c;
      for (auto& v : p.coords) v = d(rng);
      p.coords[chart_radial_slot(c)] = dr(rng);
      auto w = atlas.field(p);
      StateZ s = blow_up(p);
      auto xf = eval_fast_field(cfg.sys, s, s.eps);
      std::array<double, 6> want = {xf[0], xf[1], xf[2], xf[3], xf[4], 0.0};
      for (int row = 0; row < 6; ++row) {
        double lhs = 0;
        for (int col = 0; col < 6; ++col)
          lhs += maps[row].differentiate(col).eval(p.coords) * w[col];
        lhs *= p.radial();
        double rel = std::abs(lhs - want[row]) / std::max(1.0, std::abs(want[row]));
        max_push = std::max(max_push, rel);
      }
    }
  }
  std::cout << "pushforward max relative error: " << g17(max_push) << "\n";

  struct Pair {
    ChartId from, to;
  };
  const Pair pairs[] = {
      {ChartId::MinusY, ChartId::Eps},    {ChartId::MinusY, ChartId::PlusA},
      {ChartId::MinusY, ChartId::MinusA}, {ChartId::Eps, ChartId::PlusA},
      {ChartId::Eps, ChartId::MinusA},    {ChartId::Eps, ChartId::Exit},
      {ChartId::PlusA, ChartId::Exit},    {ChartId::MinusA, ChartId::Exit},
  };
  double max_rt = 0;
  std::uniform_real_distribution<double> dp(0.1, 0.9);
  for (const auto& pr : pairs) {
    for (int i = 0; i < samples; ++i) {
      ChartPoint a;
      a.chart = pr.from;
      double sgn = pr.to == ChartId::MinusA ? -1.0 : 1.0;
      a.coords = {dp(rng), dp(rng), sgn * dp(rng), dp(rng), dp(rng), dp(rng)};
      if (pr.from == ChartId::MinusY && pr.to == ChartId::MinusA)
        a.coords[2] = -dp(rng);
      if (pr.from == ChartId::Eps) a.coords[2] = sgn * dp(rng);
      auto b = coordinate_change(pr.from, pr.to, a);
      auto rt = coordinate_change(pr.to, pr.from, b);
      for (int k = 0; k < 6; ++k)
        max_rt = std::max(max_rt, std::abs(rt.coords[k] - a.coords[k]) /
                                      std::max(1.0, std::abs(a.coords[k])));
    }
  }
  std::cout << "round-trip max relative error: " << g17(max_rt) << "\n";
  return max_push <= 1e-9 && max_rt <= 1e-12 ? 0 : 1;
}

int cmd_dividing(double B0, double C0, double s, double t) {
  auto g = gamma_family(B0, C0, s, t);
  std::cout << "x2 = " << g17(g.x2) << "\n";
  std::cout << "y2 = " << g17(g.y2) << "\n";
  std::cout << "a2 = 0\n";
  std::cout << "b2 = " << g17(g.b2) << "\n";
  std::cout << "c2 = " << g17(g.c2) << "\n";
  std::cout << "s0 = " << g17(s_critical(B0, C0)) << ", class "
            << to_string(classify_gamma(B0, C0, s)) << "\n";
  return 0;
}

int cmd_airy(double z) {
  auto e = airy(z);
  std::cout << "Ai = " << g17(e.Ai) << "\n";
  std::cout << "Aip = " << g17(e.Aip) << "\n";
  std::cout << "Bi = " << g17(e.Bi) << "\n";
  std::cout << "Bip = " << g17(e.Bip) << "\n";
  std::cout << "wronskian = " << g17(e.wronskian()) << "\n";
  return 0;
}

int cmd_alt_unfolding(const CommonOpts& o) {
  RunConfig cfg = build_run_config(o);
  auto res = alt_unfolding_experiment(cfg);
  auto f = open_out(o, "alt_exits.csv");
  f << "seed_id,reached,angle,x,y\n";
  for (const auto& e : res.exits)
    f << e.seed_id << "," << (e.reached_circle ? 1 : 0) << "," << g17(e.angle)
      << "," << g17(e.exit_xy[0]) << "," << g17(e.exit_xy[1]) << "\n";
  std::cout << "distinct exit directions: " << res.distinct_directions << "\n";
  std::cout << "fan out: " << (res.fan_out ? "yes" : "no") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperbolic-umbilic fast-slow laboratory"};
  app.require_subcommand(1);

  CommonOpts o;
  bool dump_config = false, plot_script = false;
  int n_traj = 0, sweep_points = 7, samples = 1000, max_degree = 6;
  double x = 0, y = 0, a = 0, b = 0, c = 0, tol = 1e-9;
  double eps_min = 1e-6, eps_max = 1e-3, a_scale = std::nan("");
  double B0 = 1, C0 = 1, s_par = 0, t_par = 0, z = 0;
  double delta = 1e-4, jump_nu = 2.0;
  std::string poly;

  auto* simulate = app.add_subcommand("simulate", "run the seed ensemble to the exit section");
  add_common(simulate, o, true);
  simulate->add_flag("--dump-config", dump_config, "print the effective config and exit");
  simulate->add_option("--trajectories", n_traj, "write traj_<id>.csv for the first N seeds");

  auto* fanout = app.add_subcommand("fanout", "fan-out experiment with interior aiming");
  add_common(fanout, o, true);
  fanout->add_flag("--plot-script", plot_script, "emit plot_exits.py next to the CSV");

  auto* sweep = app.add_subcommand("sweep", "eps-scaling regression of the exit magnitudes");
  add_common(sweep, o, true);
  sweep->add_option("--points", sweep_points, "grid points (default 7)");
  sweep->add_option("--eps-min", eps_min, "smallest eps (default 1e-6)");
  sweep->add_option("--eps-max", eps_max, "largest eps (default 1e-3)");
  sweep->add_option("--a-scale", a_scale, "seed a-offset scale (default: edge rule)");

  auto* sigma = app.add_subcommand("sigma", "distinguished slow trajectory to the entry section");
  add_common(sigma, o, true);

  auto* strata = app.add_subcommand("strata", "stratum label of a critical-manifold point");
  strata->add_option("--x", x)->required();
  strata->add_option("--y", y)->required();
  strata->add_option("--a", a)->required();
  strata->add_option("--tol", tol, "classification tolerance (default 1e-9)");

  auto* germ = app.add_subcommand("germ", "jet-space codimension of a polynomial germ");
  germ->add_option("--poly", poly, "germ in x, y")->required();
  germ->add_option("--max-degree", max_degree, "jet truncation degree (default 6)");

  auto* classify = app.add_subcommand("classify-fast", "equilibria of the planar fast system");
  classify->add_option("--a", a)->required();
  classify->add_option("--b", b)->required();
  classify->add_option("--c", c)->required();

  auto* jumps = app.add_subcommand("jumps", "jump oracle at bifurcation parameters");
  jumps->add_option("--a", a)->required();
  jumps->add_option("--b", b)->required();
  jumps->add_option("--c", c)->required();
  jumps->add_option("--delta", delta, "launch offset (default 1e-4)");
  jumps->add_option("--jump-nu", jump_nu, "exit section parameter (default 2)");

  auto* charts = app.add_subcommand("charts-check", "pushforward and round-trip diagnostics");
  add_common(charts, o, true);
  charts->add_option("--samples", samples, "points per chart (default 1000)");

  auto* dividing = app.add_subcommand("dividing", "dividing-solution family member");
  dividing->add_option("--B0", B0)->required();
  dividing->add_option("--C0", C0)->required();
  dividing->add_option("--s", s_par, "family parameter");
  dividing->add_option("--t", t_par, "time");

  auto* airy_cmd = app.add_subcommand("airy", "Airy function values");
  airy_cmd->add_option("--z", z)->required();

  auto* alt = app.add_subcommand("alt-unfolding", "rotated-unfolding fan-out run");
  add_common(alt, o, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  try {
    if (simulate->parsed()) return cmd_simulate(o, dump_config, n_traj);
    if (fanout->parsed()) return cmd_fanout(o, plot_script);
    if (sweep->parsed()) return cmd_sweep(o, sweep_points, eps_min, eps_max, a_scale);
    if (sigma->parsed()) return cmd_sigma(o);
    if (strata->parsed()) return cmd_strata(x, y, a, tol);
    if (germ->parsed()) return cmd_germ(poly, max_degree);
    if (classify->parsed()) return cmd_classify_fast(a, b, c);
    if (jumps->parsed()) return cmd_jumps(a, b, c, delta, jump_nu);
    if (charts->parsed()) return cmd_charts_check(o, samples);
    if (dividing->parsed()) return cmd_dividing(B0, C0, s_par, t_par);
    if (airy_cmd->parsed()) return cmd_airy(z);
    if (alt->parsed()) return cmd_alt_unfolding(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
