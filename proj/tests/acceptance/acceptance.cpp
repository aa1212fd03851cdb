// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "exact_riemann.hpp"
#include "qmhd/config.hpp"
#include "qmhd/diagnostics.hpp"
#include "qmhd/io.hpp"
#include "qmhd/runner.hpp"
#include "qmhd/scenario.hpp"
#include "test_util.hpp"

using namespace qmhd;
using namespace qmhd::testing;
namespace fs = std::filesystem;

namespace {

const std::string config_dir = QMHD_CONFIG_DIR;
constexpr double two_pi = 6.283185307179586;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qmhd_acceptance_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

RunConfig config(const std::string& file, std::vector<std::string> overrides = {}) {
  return load_run_config(config_dir + "/" + file, overrides);
}

StudySetup setup_from(const RunConfig& cfg) {
  StudySetup s;
  s.dim = cfg.grid.dim;
  s.lo = cfg.grid.lo;
  s.hi = cfg.grid.hi;
  s.order = cfg.grid.stencil_order;
  s.params = cfg.reg;
  s.force = cfg.sources.force_value;
  s.heat = cfg.sources.heat_value;
  return s;
}

// ---------------------------------------------------------------------------

Outcome tau_zero_reduction() {
  std::mt19937_64 gen(101);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const EosModel eos = EosModel::ideal(1.0, 1.5);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int dim = i % 2 == 0 ? 2 : 1;
    const Grid g = dim == 2 ? Grid::square(24, 0.0, two_pi, Boundary::periodic)
                            : Grid::line(64, 0.0, two_pi, Boundary::periodic);
    const FieldState s = random_manufactured(1000 + static_cast<std::uint64_t>(i), g).sample(g, true);
    const RegParams p = constant_params(0.0, 0.1 * unit(gen), 0.1 * unit(gen), 0.1 * unit(gen));
    const SourceFields src =
        constant_sources(g, Vec3{unit(gen) - 0.5, unit(gen) - 0.5, unit(gen) - 0.5}, unit(gen));
    const Tendencies reg = rhs_regularized(s, p, src, eos);
    const Tendencies cls = rhs_classical(s, p, src, eos);
    worst = std::max(worst, max_diff(reg, cls) / std::max(1.0, cls.max_abs()));
  }
  return {worst <= 1e-12, "max |rhs_reg(tau=0) - rhs_classical| / scale = " + fmt("%.3e", worst) +
                              " over 100 states (tol 1e-12)"};
}

struct BrioWuRun {
  RunSummary summary;
  double worst_div = 0.0;      // max |div B| * h / max|B| over all steps
  double worst_decrease = INFINITY;  // smallest per-step change of corrected entropy
};

const BrioWuRun& briowu_run() {
  static const BrioWuRun r = [] {
    BrioWuRun out;
    const fs::path dir = scratch("briowu");
    const RunConfig cfg = config("briowu.ini", {"output.directory=" + dir.string(),
                                                "output.every_steps=1", "output.every_time=0",
                                                "output.snapshots=false"});
    std::ostringstream log;
    out.summary = run(cfg, log);
    const Grid g = cfg.make_grid();
    const double bmax = std::sqrt(0.75 * 0.75 + 1.0);
    for (std::size_t i = 0; i < out.summary.audit.size(); ++i) {
      const AuditRow& row = out.summary.audit[i];
      out.worst_div = std::max(out.worst_div, row.max_div_B * g.min_spacing() / bmax);
      if (i > 0)
        out.worst_decrease = std::min(
            out.worst_decrease, row.entropy_corrected - out.summary.audit[i - 1].entropy_corrected);
    }
    return out;
  }();
  return r;
}

Outcome solenoidality() {
  const BrioWuRun& bw = briowu_run();
  const bool bw_ok = bw.summary.status == 0 && bw.summary.steps >= 1000 && bw.worst_div <= 1e-10;

  const RunConfig cfg = config("manufactured.ini");
  const Grid g = cfg.make_grid();
  const Solver solver = make_solver(cfg);
  FieldState s = initial_state(cfg, g);
  const double dt = solver.stable_dt(s, cfg.time.cfl);
  double worst = 0.0;
  bool ok2d = true;
  for (int i = 0; i <= 1000; ++i) {
    const double ratio = max_abs(div(g, s.B)) * g.min_spacing() / max_abs(s.B);
    worst = std::max(worst, ratio);
    if (i < 1000) {
      try {
        s = solver.step(s, dt);
      } catch (const Error&) {
        ok2d = false;
        break;
      }
    }
  }
  ok2d = ok2d && worst <= 1e-10;
  return {bw_ok && ok2d, "Brio-Wu " + std::to_string(bw.summary.steps) + " steps max|divB| h/max|B| = " +
                             fmt("%.3e", bw.worst_div) + "; 2D smooth 1000 steps = " +
                             fmt("%.3e", worst) + " (tol 1e-10)"};
}

Outcome conservation() {
  const RunConfig cfg = config("manufactured.ini", {"sources.force=none", "sources.heat=none"});
  const Grid g = cfg.make_grid();
  const Solver solver = make_solver(cfg);
  const FieldState s0 = initial_state(cfg, g);
  const EosModel& eos = cfg.eos;
  const double dt = solver.stable_dt(s0, cfg.time.cfl);

  auto advance = [&](double step, int n) {
    FieldState s = s0;
    for (int i = 0; i < n; ++i) s = solver.step(s, step);
    return s;
  };

  const Totals t0 = totals(s0, eos);
  double mom_scale = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) mom_scale += s0.rho[k] * norm(s0.u[k]);
  mom_scale *= g.cell_volume();

  const FieldState a = advance(dt, 1000);
  const FieldState b = advance(dt / 2, 2000);
  const FieldState c = advance(dt / 4, 4000);
  const Totals ta = totals(a, eos), tb = totals(b, eos);
  const double mass = std::max(std::abs(ta.mass - t0.mass), std::abs(tb.mass - t0.mass)) / t0.mass;
  const double mom = std::max(max_abs(ta.momentum - t0.momentum), max_abs(tb.momentum - t0.momentum)) /
                     mom_scale;
  const double ea = std::abs(ta.energy - t0.energy) / t0.energy;
  const double eb = std::abs(tb.energy - t0.energy) / t0.energy;

  // The total is a telescoping sum, so its drift is round-off. The time
  // integration error itself is measured on the energy density field.
  const ConservedState ca = to_conserved(a, eos), cb = to_conserved(b, eos), cc = to_conserved(c, eos);
  const double field_ratio = max_diff(ca.energy, cb.energy) / max_diff(cb.energy, cc.energy);

  const bool drift_ok = (ea <= 1e-12 && eb <= 1e-12) ||
                        (ea > 1e-12 && std::abs(ea / eb - 4.0) <= 0.5);
  const bool pass = mass <= 1e-12 && mom <= 1e-12 && drift_ok && std::abs(field_ratio - 4.0) <= 0.5;
  return {pass, "mass drift " + fmt("%.2e", mass) + ", momentum drift " + fmt("%.2e", mom) +
                    " (tol 1e-12); energy drift " + fmt("%.2e", ea) + " / " + fmt("%.2e", eb) +
                    " at dt, dt/2; energy field self-convergence ratio " + fmt("%.3f", field_ratio) +
                    " (4 +- 0.5)"};
}

struct BalanceSummary {
  double min_internal = INFINITY;
  double min_form_a = INFINITY;
  double min_form_b = INFINITY;
  double worst_agreement = 0.0;
  bool agreement_ok = true;
};

const BalanceSummary& balances() {
  static const BalanceSummary b = [] {
    BalanceSummary out;
    const RunConfig cfg = config("manufactured.ini");
    const StudySetup setup = setup_from(cfg);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const ManufacturedState m = random_manufactured(seed, study_grid(setup, 32));
      const StudyReport rep = balance_study(m, setup, {32, 64, 128}, cfg.eos);
      out.min_internal = std::min(out.min_internal, rep.at("internal_energy").rate);
      out.min_form_a = std::min(out.min_form_a, rep.at("entropy_form_a").rate);
      out.min_form_b = std::min(out.min_form_b, rep.at("entropy_form_b").rate);
      const StudyEntry& agree = rep.at("entropy_form_agreement");
      for (std::size_t i = 0; i < agree.residual.size(); ++i)
        out.worst_agreement = std::max(out.worst_agreement, agree.residual[i] / agree.scale[i]);
      out.agreement_ok = out.agreement_ok && agree.pass;
    }
    return out;
  }();
  return b;
}

Outcome internal_energy_certificate() {
  const BalanceSummary& b = balances();
  return {b.min_internal >= 1.8,
          "min fitted rate " + fmt("%.3f", b.min_internal) + " over 5 seeds, N = 32,64,128 (>= 1.8)"};
}

Outcome entropy_certificate() {
  const BalanceSummary& b = balances();
  const double rate = std::min(b.min_form_a, b.min_form_b);
  return {rate >= 1.8 && b.agreement_ok && b.worst_agreement <= 1e-10,
          "min fitted rate " + fmt("%.3f", rate) + " (>= 1.8); form a/b residual agreement " +
              fmt("%.2e", b.worst_agreement) + " relative (tol 1e-10)"};
}

// Random point states with exact derivatives taken from manufactured fields.
struct PointSampler {
  std::mt19937_64 gen;
  std::uniform_real_distribution<double> unit{0.0, 1.0};
  explicit PointSampler(std::uint64_t seed) : gen(seed) {}

  PointJet jet(int dim) {
    const Grid g = dim == 2 ? Grid::square(16, 0.0, two_pi, Boundary::periodic)
                            : Grid::line(16, 0.0, two_pi, Boundary::periodic);
    const ManufacturedState m = random_manufactured(gen(), g);
    const Vec3 x{two_pi * unit(gen), dim == 2 ? two_pi * unit(gen) : 0.0, 0.0};
    return m.jet(x);
  }
};

Outcome form_equivalence() {
  PointSampler ps(606);
  const EosModel eos = EosModel::ideal(1.0, 1.5);
  double worst = 0.0;
  int undefined = 0;
  for (int i = 0; i < 1000; ++i) {
    const PointJet j = ps.jet(i % 2 == 0 ? 2 : 1);
    const double tau = 0.1 * ps.unit(ps.gen);
    const Vec3 F{ps.unit(ps.gen) - 0.5, ps.unit(ps.gen) - 0.5, ps.unit(ps.gen) - 0.5};
    const XiPoint x = exact_xi_point(j, eos, tau, F, 2.0 * ps.unit(ps.gen), 0.1 * ps.unit(ps.gen),
                                     0.1 * ps.unit(ps.gen), 0.1 * ps.unit(ps.gen));
    const double a = xi_form_a(x).total();
    const auto b = xi_form_b(x);
    if (!b) {
      ++undefined;
      continue;
    }
    worst = std::max(worst, std::abs(a - b->total()) / std::max(std::abs(a), std::abs(b->total())));
  }
  return {worst <= 1e-10 && undefined == 0,
          "max |Xi_a - Xi_b| / max(|Xi_a|, |Xi_b|) = " + fmt("%.3e", worst) +
              " over 1000 states (tol 1e-10)"};
}

// A 1D state whose thermal square vanishes near x = 0 and whose body force
// cancels the pressure gradient, so the heat-source term dominates Xi.
bool violating_state_flagged() {
  const EosModel eos = EosModel::ideal(1.0, 1.5);
  const Grid g = Grid::line(256, -two_pi / 512, two_pi - two_pi / 512, Boundary::periodic);
  const double U = 40.0, amp = 0.2, tau = 0.5;
  FieldState s = uniform(g, 1.0, Vec3{U, 0, 0}, 1.0, Vec3{});
  for (std::size_t k = 0; k < g.size(); ++k) s.theta[k] = 1.0 + amp * std::sin(g.center(k)[0]);
  const double Q = 2.0 * 1.5 * U * amp;
  SourceFields src = constant_sources(g, Vec3{}, Q);
  const VectorField gp =
      grad(g, map_cells<double>(g, [](double r, double t) { return r * t; }, s.rho, s.theta));
  for (std::size_t k = 0; k < g.size(); ++k) src.F[k] = (1.0 / s.rho[k]) * gp[k];
  const RegParams p = constant_params(tau, 0, 0, 0);
  const EntropyAudit a = audit_entropy(s, compute_regterms(s, p, src, eos), src, p);
  return !a.condition_ok && !a.condition_violations.empty() && !a.negative_cells.empty();
}

Outcome nonnegativity() {
  PointSampler ps(707);
  const EosModel ideal = EosModel::ideal(1.0, 1.5);
  const EosModel vdw = EosModel::van_der_waals(1.0, 2.5, 0.05, 0.02);
  double worst = INFINITY;
  int ns_negative = 0, redrawn = 0;
  for (int i = 0; i < 10000; ++i) {
    const EosModel& eos = i % 4 == 3 ? vdw : ideal;
    // admissible means p_rho >= 0 as well; redraw otherwise
    PointJet j = ps.jet(i % 2 == 0 ? 2 : 1);
    while (!(eos.evaluate(j.rho, j.theta).p_rho >= 0.0)) {
      ++redrawn;
      j = ps.jet(i % 2 == 0 ? 2 : 1);
    }
    const ThermoPoint th = eos.evaluate(j.rho, j.theta);
    const double tau = 0.2 * ps.unit(ps.gen);
    const double qmax = 4.0 * j.rho * j.theta * th.eps_theta / std::max(tau, 1e-300);
    // Every third state is generic. The others cancel the inertial term with
    // the body force and drop transport, and put Q at the bound or at zero,
    // so that Xi gets close to zero.
    const int family = i % 3;
    Vec3 F{ps.unit(ps.gen) - 0.5, ps.unit(ps.gen) - 0.5, ps.unit(ps.gen) - 0.5};
    double Q = ps.unit(ps.gen) * std::min(qmax, 20.0);
    double mu = ps.unit(ps.gen), lambda = ps.unit(ps.gen), kappa = ps.unit(ps.gen);
    if (family != 0) {
      F = (1.0 / j.rho) * w_hat_drive_exact(j, th, Vec3{});
      Q = family == 1 ? qmax : 0.0;
      mu = lambda = kappa = 0.0;
    }
    const XiPoint x = exact_xi_point(j, eos, tau, F, Q, mu, lambda, kappa);
    const XiTerms t = xi_form_a(x);
    if (t.magnitude() > 0.0) worst = std::min(worst, t.total() / t.magnitude());
    if (t.navier_stokes < 0.0) ++ns_negative;
  }
  const bool flagged = violating_state_flagged();
  return {worst >= -1e-12 && ns_negative == 0 && flagged,
          "min Xi_a / scale = " + fmt("%.3e", worst) + " over 10^4 states (>= -1e-12, " + std::to_string(redrawn) +
              " redrawn with p_rho < 0); " +
              "violating state " + (flagged ? "flagged" : "NOT flagged")};
}

Outcome identity_suite_check() {
  const RunConfig base = config("manufactured.ini");
  std::string worst_name;
  double worst_margin = INFINITY;
  bool pass = true;
  for (int order : {2, 4}) {
    StudySetup setup = setup_from(base);
    setup.order = order;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const ManufacturedState m = random_manufactured(seed, study_grid(setup, 32));
      const StudyReport rep = identity_suite(m, setup, {32, 64, 128}, base.eos);
      pass = pass && rep.all_pass() && rep.entries.size() == 6;
      for (const auto& e : rep.entries) {
        if (e.exact) continue;
        const double margin = e.rate - (order - 0.2);
        if (margin < worst_margin) {
          worst_margin = margin;
          worst_name = e.name + " (order " + std::to_string(order) + ", rate " + fmt("%.3f", e.rate) + ")";
        }
      }
    }
  }
  return {pass, "6 identities x 5 seeds x orders 2,4 pass; tightest " + worst_name};
}

Outcome physical_sanity() {
  const fs::path dir = scratch("sod");
  const RunConfig cfg = config("sod.ini", {"output.directory=" + dir.string(), "output.audit=false"});
  std::ostringstream log;
  const RunSummary sum = run(cfg, log);
  double l1 = INFINITY;
  if (sum.status == 0) {
    char name[48];
    std::snprintf(name, sizeof name, "snapshot_%06ld.csv", sum.steps);
    const Grid g = cfg.make_grid();
    const FieldState s = read_snapshot((dir / name).string(), g);
    const ExactRiemann exact({1.0, 0.0, 1.0}, {0.125, 0.0, 0.1}, 1.4);
    l1 = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k)
      l1 += std::abs(s.rho[k] - exact.sample((g.center(k)[0] - 0.5) / sum.t).rho) * g.cell_volume();
  }
  const BrioWuRun& bw = briowu_run();
  const bool bw_ok = bw.summary.status == 0 && std::abs(bw.summary.t - 0.1) <= 1e-12 &&
                     bw.worst_decrease >= -1e-6;
  return {l1 <= 0.02 && bw_ok,
          "Sod L1(rho) = " + fmt("%.4f", l1) + " (<= 0.02); Brio-Wu " +
              (bw.summary.status == 0 ? "completed t = " + fmt("%.3f", bw.summary.t) : "FAILED") +
              ", min step change of corrected entropy " + fmt("%.2e", bw.worst_decrease) +
              " (>= -1e-6)"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {1, "tau = 0 reduction", tau_zero_reduction},
      {2, "discrete solenoidality", solenoidality},
      {3, "conservation", conservation},
      {4, "internal energy balance", internal_energy_certificate},
      {5, "entropy balance", entropy_certificate},
      {6, "entropy production form equivalence", form_equivalence},
      {7, "entropy production nonnegativity", nonnegativity},
      {8, "identity suite", identity_suite_check},
      {9, "shock tubes", physical_sanity},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
