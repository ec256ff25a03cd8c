#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "rdsplit/cli.hpp"

namespace {

// config-file values fill any option the command line left untouched
void apply_config_file(const std::string& path, CLI::App& app,
                       rdsplit::cli::RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  nlohmann::json j;
  in >> j;

  auto unset = [&](const std::string& flag) {
    const CLI::Option* opt = app.get_option_no_throw(flag);
    return opt == nullptr || opt->count() == 0;
  };

  if (j.contains("preset") && unset("--preset"))
    cfg.preset = j["preset"].get<std::string>();
  if (j.contains("orders") && unset("--orders"))
    cfg.orders = j["orders"].get<std::vector<int>>();
  if (j.contains("dt_grid") && unset("--dt-grid"))
    cfg.dt_grid = j["dt_grid"].get<std::vector<double>>();
  if (j.contains("t_final") && unset("--t-final"))
    cfg.t_final = j["t_final"].get<double>();
  if (j.contains("ref_dt") && unset("--ref-dt"))
    cfg.ref_dt = j["ref_dt"].get<double>();
  if (j.contains("out") && unset("--out"))
    cfg.out = j["out"].get<std::string>();
  if (j.contains("cache_dir") && unset("--cache-dir"))
    cfg.cache_dir = j["cache_dir"].get<std::string>();
  if (j.contains("jobs") && unset("--jobs")) cfg.jobs = j["jobs"].get<int>();
  if (j.contains("norm") && unset("--norm"))
    cfg.norm = j["norm"].get<std::string>();
  if (j.contains("dt") && unset("--dt")) cfg.dt = j["dt"].get<double>();
  if (j.contains("order") && unset("--order"))
    cfg.sim_order = j["order"].get<int>();
  if (j.contains("stride") && unset("--stride"))
    cfg.stride = j["stride"].get<long>();
}

}  // namespace

int main(int argc, char** argv) {
  rdsplit::cli::RunConfig cfg;
  std::string config_file;

  CLI::App app{
      "rdsplit: Fourier-split integration of 1D periodic reaction-diffusion "
      "problems with complex-coefficient compositions"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto add_study_opts = [&](CLI::App* c) {
    c->add_option("--preset", cfg.preset, "problem preset")->required();
    c->add_option("--orders", cfg.orders,
                  "composition orders to construct (subset of 2,4,6,8)")
        ->delimiter(',');
    c->add_option("--scheme-file", cfg.scheme_files,
                  "extra coefficient files to include");
    c->add_option("--dt-grid", cfg.dt_grid, "time steps, decreasing")
        ->delimiter(',');
    c->add_option("--t-final", cfg.t_final, "final time");
    c->add_option("--ref-dt", cfg.ref_dt, "reference time step");
    c->add_option("--out", cfg.out, "output CSV path");
    c->add_option("--cache-dir", cfg.cache_dir, "reference cache directory");
    c->add_option("--norm", cfg.norm, "error norm: caption | dx")
        ->check(CLI::IsMember({"caption", "dx"}));
    c->add_option("--config", config_file, "JSON config file");
    c->add_flag("--allow-invalid", cfg.allow_invalid,
                "load scheme files that fail validation");
  };

  CLI::App* converge =
      app.add_subcommand("converge", "error vs time step study");
  add_study_opts(converge);
  converge->add_option("--jobs", cfg.jobs, "parallel study cells");

  CLI::App* efficiency = app.add_subcommand(
      "efficiency", "error vs wall-clock study (serial, median of 3)");
  add_study_opts(efficiency);

  CLI::App* simulate =
      app.add_subcommand("simulate", "space-time snapshot run");
  simulate->add_option("--preset", cfg.preset, "problem preset")->required();
  simulate->add_option("--t-final", cfg.t_final, "final time (required for "
                       "presets the captions leave open)");
  simulate->add_option("--dt", cfg.dt, "time step (preset default otherwise)");
  simulate->add_option("--order", cfg.sim_order,
                       "composition order (default 4)");
  simulate->add_option("--stride", cfg.stride, "snapshot stride in steps")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--out", cfg.out, "output prefix");
  simulate->add_option("--config", config_file, "JSON config file");

  CLI::App* table1 =
      app.add_subcommand("table1", "Strang error-term magnitudes");
  table1->add_option("--D", cfg.table1_D, "diffusivity column(s)");
  table1->add_option("--n", cfg.table1_n, "grid size");
  table1->add_option("--out", cfg.out, "output CSV path");

  CLI::App* scheme =
      app.add_subcommand("scheme", "construct, validate, or convert schemes");
  scheme->add_option("--order", cfg.scheme_order, "construct this order");
  scheme->add_option("--load", cfg.scheme_load, "load a coefficient file");
  scheme->add_option("--save", cfg.scheme_save, "write a coefficient file");
  scheme->add_flag("--print", cfg.scheme_print, "print stages");
  scheme->add_flag("--allow-invalid", cfg.allow_invalid,
                   "keep going on validation failures");

  try {
    app.parse(argc, argv);
    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (!config_file.empty()) apply_config_file(config_file, *sub, cfg);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    if (rc == 0) return 0;  // --help
    std::cerr << "error: config: " << e.what() << std::endl;
    return 2;
  }

  return rdsplit::cli::run(cfg);
}
