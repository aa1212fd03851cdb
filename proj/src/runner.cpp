#include "qmhd/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "qmhd/scenario.hpp"

namespace qmhd {

namespace fs = std::filesystem;

Solver make_solver(const RunConfig& cfg) {
  return Solver(cfg.eos, cfg.reg, cfg.make_sources(), cfg.time.scheme);
}

AuditRow audit_row(const FieldState& s, const Solver& solver, long step,
                   double entropy_outflow_integral) {
  const SourceFields src = sample_sources(solver.sources(), s.grid, s.t);
  const RegTerms r = compute_regterms(s, solver.params(), src, solver.eos());
  const Tendencies d = rhs_regularized(s, r, src);
  const EntropyAudit ea = audit_entropy(s, r, src, solver.params());
  const Totals tot = totals(s, solver.eos());

  AuditRow row;
  row.step = step;
  row.t = s.t;
  row.mass = tot.mass;
  row.momentum = tot.momentum;
  row.energy = tot.energy;
  row.entropy = tot.entropy;
  row.entropy_corrected = tot.entropy + entropy_outflow_integral;
  row.max_div_B = tot.max_div_B;
  row.min_xi = ea.min_xi;
  row.equiv_err = ea.xi_b ? ea.equiv_err : std::nan("");
  row.res_internal_energy = max_abs(residual_internal_energy(s, r, src, d));
  row.res_entropy = max_abs(residual_entropy_balance(s, r, d, ea.xi_a));
  return row;
}

namespace {

bool has_open_boundary(const Grid& g) {
  for (int a = 0; a < g.dim(); ++a)
    if (g.boundary(a) == Boundary::transmissive) return true;
  return false;
}

double outflow_rate(const FieldState& s, const Solver& solver) {
  const SourceFields src = sample_sources(solver.sources(), s.grid, s.t);
  return entropy_boundary_outflow(s, compute_regterms(s, solver.params(), src, solver.eos()));
}

std::string snapshot_name(long step) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "snapshot_%06ld.csv", step);
  return buf;
}

}  // namespace

RunSummary run(const RunConfig& cfg, std::ostream& log) {
  RunSummary summary;
  const fs::path dir(cfg.output.directory);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    summary.status = exit_code::io;
    summary.message = "cannot create output directory '" + dir.string() + "': " + ec.message();
    return summary;
  }

  try {
    write_text((dir / "config.ini").string(), cfg.raw.dump());
    const Grid grid = cfg.make_grid();
    const Solver solver = make_solver(cfg);
    FieldState state = initial_state(cfg, grid);
    const bool open = has_open_boundary(grid);
    double outflow_integral = 0.0;
    double outflow_now = open ? outflow_rate(state, solver) : 0.0;

    std::optional<AuditWriter> audit;
    if (cfg.output.audit) audit.emplace((dir / "audit.csv").string());

    auto emit = [&](long step) {
      if (audit) {
        const AuditRow row = audit_row(state, solver, step, outflow_integral);
        audit->write(row);
        summary.audit.push_back(row);
      }
      if (cfg.output.snapshots) write_snapshot((dir / snapshot_name(step)).string(), state, cfg.eos);
    };

    emit(0);
    long step = 0;
    double next_output_time = cfg.output.every_time;
    const double t_end = cfg.time.t_end;
    auto done = [&] {
      if (cfg.time.max_steps > 0 && step >= cfg.time.max_steps) return true;
      return t_end > 0.0 && state.t >= t_end * (1.0 - 1e-14);
    };

    bool emitted_last = true;
    while (!done()) {
      double dt = cfg.time.dt > 0.0 ? cfg.time.dt : solver.stable_dt(state, cfg.time.cfl);
      if (t_end > 0.0 && state.t + dt > t_end) dt = t_end - state.t;
      FieldState next(grid);
      try {
        next = solver.step(state, dt);
      } catch (const NonPhysicalStateError& e) {
        write_snapshot((dir / "snapshot_last_good.csv").string(), state, cfg.eos);
        summary.status = exit_code::physical;
        summary.steps = step;
        summary.t = state.t;
        summary.message = std::string("non-physical state at step ") + std::to_string(step + 1) +
                          ": " + e.what();
        log << summary.message << '\n';
        return summary;
      }
      if (open) {
        const double outflow_next = outflow_rate(next, solver);
        outflow_integral += 0.5 * dt * (outflow_now + outflow_next);
        outflow_now = outflow_next;
      }
      state = std::move(next);
      ++step;
      emitted_last = false;
      bool out = cfg.output.every_steps > 0 && step % cfg.output.every_steps == 0;
      if (cfg.output.every_time > 0.0 && state.t >= next_output_time * (1.0 - 1e-14)) {
        out = true;
        while (next_output_time <= state.t * (1.0 + 1e-14)) next_output_time += cfg.output.every_time;
      }
      if (out) {
        emit(step);
        emitted_last = true;
      }
    }
    if (!emitted_last) emit(step);
    summary.steps = step;
    summary.t = state.t;
    log << "completed " << step << " steps, t = " << std::setprecision(10) << state.t << '\n';
  } catch (const IoError& e) {
    summary.status = exit_code::io;
    summary.message = e.what();
  } catch (const NonPhysicalStateError& e) {
    summary.status = exit_code::physical;
    summary.message = e.what();
  } catch (const ConfigError& e) {
    summary.status = exit_code::config;
    summary.message = e.what();
  } catch (const DomainError& e) {
    summary.status = exit_code::config;
    summary.message = e.what();
  }
  if (summary.status != exit_code::ok) log << "error: " << summary.message << '\n';
  return summary;
}

ConvergenceResult convergence(const RunConfig& cfg, const std::vector<int>& levels,
                              std::ostream& log) {
  if (cfg.scenario != "manufactured")
    throw ConfigError("convergence requires the manufactured scenario");
  for (int a = 0; a < cfg.grid.dim; ++a)
    if (cfg.grid.boundary[static_cast<std::size_t>(a)] != Boundary::periodic)
      throw ConfigError("convergence requires periodic boundaries");
  if (cfg.sources.heat == "sine") throw ConfigError("convergence supports constant heat sources only");
  if (levels.size() < 2) throw ConfigError("convergence needs at least two levels");

  StudySetup setup;
  setup.dim = cfg.grid.dim;
  setup.lo = cfg.grid.lo;
  setup.hi = cfg.grid.hi;
  setup.order = cfg.grid.stencil_order;
  setup.params = cfg.reg;
  setup.force = cfg.sources.force == "constant" ? cfg.sources.force_value : Vec3{};
  setup.heat = cfg.sources.heat == "constant" ? cfg.sources.heat_value : 0.0;

  const Grid g0 = cfg.make_grid(levels.front());
  const ManufacturedState m = manufactured_for(cfg, g0);
  ConvergenceResult r{identity_suite(m, setup, levels, cfg.eos),
                      balance_study(m, setup, levels, cfg.eos)};

  const fs::path dir(cfg.output.directory);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "'");
  std::ostringstream csv;
  csv.precision(17);
  csv << "study,name,level,residual,scale,rate,exact,pass\n";
  for (const auto* rep : {&r.identities, &r.balances}) {
    const char* study = rep == &r.identities ? "identity" : "balance";
    for (const auto& e : rep->entries)
      for (std::size_t i = 0; i < rep->levels.size(); ++i)
        csv << study << ',' << e.name << ',' << rep->levels[i] << ',' << e.residual[i] << ','
            << e.scale[i] << ',' << e.rate << ',' << (e.exact ? 1 : 0) << ','
            << (e.pass ? 1 : 0) << '\n';
  }
  write_text((dir / "convergence.csv").string(), csv.str());
  write_text((dir / "config.ini").string(), cfg.raw.dump());
  log << format_convergence_table(r);
  return r;
}

std::string format_convergence_table(const ConvergenceResult& r) {
  std::ostringstream os;
  for (const auto* rep : {&r.identities, &r.balances}) {
    os << std::left << std::setw(26) << "quantity";
    for (int n : rep->levels) os << std::setw(14) << ("N=" + std::to_string(n));
    os << std::setw(10) << "rate" << "status\n";
    for (const auto& e : rep->entries) {
      os << std::setw(26) << e.name;
      for (double v : e.residual) {
        std::ostringstream cell;
        cell << std::scientific << std::setprecision(3) << v;
        os << std::setw(14) << cell.str();
      }
      std::ostringstream rate;
      if (e.exact)
        rate << "exact";
      else
        rate << std::fixed << std::setprecision(2) << e.rate;
      os << std::setw(10) << rate.str() << (e.pass ? "pass" : "FAIL") << '\n';
    }
    os << '\n';
  }
  return os.str();
}

AuditRow audit_snapshot(const std::string& snapshot_path, const RunConfig& cfg) {
  const Grid grid = cfg.make_grid();
  FieldState s = read_snapshot(snapshot_path, grid);
  s.validate(cfg.eos);
  return audit_row(s, make_solver(cfg), 0, 0.0);
}

}  // namespace qmhd
