#ifndef RDSPLIT_CLI_HPP
#define RDSPLIT_CLI_HPP

#include <string>
#include <vector>

namespace rdsplit::cli {

// Resolved run configuration; precedence flags > config file > preset
// defaults is applied by the caller (tools/main.cpp merges, run() consumes).
struct RunConfig {
  std::string command;  // converge | efficiency | simulate | table1 | scheme

  std::string preset;
  std::vector<int> orders{2, 4, 6, 8};
  std::vector<std::string> scheme_files;
  std::vector<double> dt_grid;  // empty = per-problem default
  double t_final = 0.0;         // 0 = preset default
  double ref_dt = 0.0;          // 0 = preset default
  std::string out;              // output path (prefix for simulate)
  std::string cache_dir = "refcache";
  int jobs = 1;
  std::string norm = "caption";  // caption | dx

  // simulate
  double dt = 0.0;  // 0 = preset default
  int sim_order = 4;
  long stride = 1;

  // table1
  std::vector<double> table1_D{10.0, 0.01};
  int table1_n = 1024;

  // scheme
  int scheme_order = 0;
  std::string scheme_load;
  std::string scheme_save;
  bool scheme_print = false;
  bool allow_invalid = false;
};

// Executes the command; returns the process exit code (0 success, 2 config
// error, 3 numerical failure) and guarantees the last stderr line is
// machine-parsable (`error: <kind>: <message>`) on failure.
int run(const RunConfig& cfg);

}  // namespace rdsplit::cli

#endif
