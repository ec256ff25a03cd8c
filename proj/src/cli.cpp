#include "rdsplit/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "rdsplit/erroranalysis.hpp"
#include "rdsplit/harness.hpp"

namespace rdsplit::cli {
namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> default_dt_grid(const Problem& p, double t_final) {
  std::vector<double> grid;
  if (p.kind == ProblemKind::linear_potential) {
    for (int e = 4; e <= 14; ++e) grid.push_back(std::pow(2.0, -e));
  } else {
    grid = {1e-1, 5e-2, 2e-2, 1e-2, 5e-3, 2e-3, 1e-3};
  }
  std::vector<double> ok;
  for (double dt : grid) {
    try {
      steps_for(dt, t_final);
      ok.push_back(dt);
    } catch (const std::invalid_argument&) {
      // skip grid entries that do not tile a user-supplied t_final
    }
  }
  if (ok.empty())
    throw std::invalid_argument(
        "no default dt grid entry tiles t_final; pass --dt-grid");
  return ok;
}

std::vector<Scheme> collect_schemes(const RunConfig& cfg) {
  std::vector<Scheme> schemes;
  for (int order : cfg.orders) schemes.push_back(build_order(order));
  for (const std::string& f : cfg.scheme_files)
    schemes.push_back(load_scheme(f, cfg.allow_invalid));
  if (schemes.empty())
    throw std::invalid_argument("no schemes selected (--orders or --scheme-file)");
  return schemes;
}

int cmd_study(const RunConfig& cfg, bool efficiency) {
  const Problem p = preset(cfg.preset);
  StudyOptions opt;
  opt.t_final = cfg.t_final > 0 ? cfg.t_final : p.default_t_final;
  if (!(opt.t_final > 0))
    throw std::invalid_argument("preset has no default t_final; pass --t-final");
  opt.dt_grid =
      cfg.dt_grid.empty() ? default_dt_grid(p, opt.t_final) : cfg.dt_grid;
  opt.reference_dt = cfg.ref_dt > 0 ? cfg.ref_dt : p.reference_dt;
  opt.cache_dir = cfg.cache_dir;
  opt.norm = cfg.norm == "dx" ? GsNorm::dx_weighted : GsNorm::caption;
  opt.timing_reps = efficiency ? 3 : 1;
  opt.jobs = efficiency ? 1 : cfg.jobs;

  const StudyTable table = convergence_study(p, collect_schemes(cfg), opt);
  const std::string out =
      cfg.out.empty() ? ("study_" + cfg.preset + ".csv") : cfg.out;
  write_study_csv(table, out);
  std::cout << "wrote " << out << " (" << table.records.size() << " records)\n";
  return 0;
}

int cmd_simulate(const RunConfig& cfg) {
  const Problem p = preset(cfg.preset);
  const double dt = cfg.dt > 0 ? cfg.dt : p.default_dt;
  if (!(dt > 0))
    throw std::invalid_argument("preset has no default dt; pass --dt");
  const double t_final = cfg.t_final > 0 ? cfg.t_final : p.default_t_final;
  if (!(t_final > 0))
    throw std::invalid_argument(
        "simulate needs --t-final (the paper does not fix one for this "
        "preset)");

  SnapshotSink sink;
  sink.stride = cfg.stride;
  integrate(p, build_order(cfg.sim_order), dt, t_final, &sink);

  const std::string prefix =
      cfg.out.empty() ? ("simulate_" + cfg.preset) : cfg.out;
  write_snapshot_csv(sink.times, sink.u_rows, *p.grid, prefix + "_u.csv");
  std::cout << "wrote " << prefix << "_u.csv (" << sink.times.size()
            << " rows)\n";
  if (!sink.v_rows.empty()) {
    write_snapshot_csv(sink.times, sink.v_rows, *p.grid, prefix + "_v.csv");
    std::cout << "wrote " << prefix << "_v.csv\n";
  }
  return 0;
}

int cmd_table1(const RunConfig& cfg) {
  if (cfg.table1_D.empty())
    throw std::invalid_argument("table1 needs at least one --D value");
  const Problem p = preset("linpot-high");  // Fig. 1 mesh and profile
  GridPtr grid = cfg.table1_n == p.grid->n
                     ? p.grid
                     : make_grid(cfg.table1_n, p.grid->x_min, p.grid->x_max);
  Problem pn = p;
  pn.grid = grid;
  const Field u = pn.initial_u_field();
  const Field f = sample_potential(p.params, grid);

  std::vector<std::vector<ErrorTermReport>> cols;
  for (double D : cfg.table1_D) cols.push_back(strang_error_terms(u, D, f));

  std::ostringstream out;
  out << "term";
  for (double D : cfg.table1_D) out << ",D=" << fmt(D);
  out << "\n";
  for (std::size_t row = 0; row < cols.front().size(); ++row) {
    out << cols.front()[row].term_label;
    for (const auto& col : cols) out << "," << fmt(col[row].magnitude);
    out << "\n";
  }
  const std::string path = cfg.out.empty() ? "table1.csv" : cfg.out;
  atomic_write_text(path, out.str());
  std::cout << "wrote " << path << "\n";
  return 0;
}

int cmd_scheme(const RunConfig& cfg) {
  Scheme s;
  if (!cfg.scheme_load.empty())
    s = load_scheme(cfg.scheme_load, cfg.allow_invalid);
  else if (cfg.scheme_order > 0)
    s = build_order(cfg.scheme_order);
  else
    throw std::invalid_argument("scheme needs --order or --load");

  const SchemeCheck check = validate(s);
  for (const std::string& issue : check.issues)
    std::cerr << "warning: " << issue << "\n";

  if (cfg.scheme_print || cfg.scheme_save.empty()) {
    std::cout << "name " << s.name << " order " << s.nominal_order
              << " stages " << s.stages.size() << " source " << s.source
              << "\n";
    std::cout << "sum_a " << fmt(s.sum_a().real()) << "+"
              << fmt(s.sum_a().imag()) << "i sum_b " << fmt(s.sum_b().real())
              << "+" << fmt(s.sum_b().imag()) << "i max_arg "
              << fmt(max_stage_arg(s)) << "\n";
    for (const Stage& st : s.stages)
      std::cout << fmt(st.a.real()) << " " << fmt(st.a.imag()) << " "
                << fmt(st.b.real()) << " " << fmt(st.b.imag()) << "\n";
  }
  if (!cfg.scheme_save.empty()) {
    save_scheme(s, cfg.scheme_save);
    std::cout << "wrote " << cfg.scheme_save << "\n";
  }
  return check.ok || cfg.allow_invalid ? 0 : 2;
}

}  // namespace

int run(const RunConfig& cfg) {
  try {
    if (cfg.command == "converge") return cmd_study(cfg, false);
    if (cfg.command == "efficiency") return cmd_study(cfg, true);
    if (cfg.command == "simulate") return cmd_simulate(cfg);
    if (cfg.command == "table1") return cmd_table1(cfg);
    if (cfg.command == "scheme") return cmd_scheme(cfg);
    throw std::invalid_argument("unknown command '" + cfg.command + "'");
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: config: " << e.what() << std::endl;
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: numerical: " << e.what() << std::endl;
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: numerical: " << e.what() << std::endl;
    return 3;
  }
}

}  // namespace rdsplit::cli
