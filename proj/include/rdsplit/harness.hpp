#ifndef RDSPLIT_HARNESS_HPP
#define RDSPLIT_HARNESS_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rdsplit/problems.hpp"

namespace rdsplit {

using State = std::variant<Field, GSState>;

// ---- integration driver -------------------------------------------------

// Collects real-part space-time snapshots every `stride` steps (the initial
// state is always row 0).
struct SnapshotSink {
  long stride = 1;
  std::vector<double> times;
  std::vector<std::vector<double>> u_rows;
  std::vector<std::vector<double>> v_rows;  // empty for one-species problems

  void record(double t, const State& s);
};

// Repeated cached-multiplier stepping; throws on a non-finite state with the
// offending step index.
State integrate(const Problem& p, const Scheme& scheme, double dt,
                double t_final, SnapshotSink* sink = nullptr);

// ---- error norms ---------------------------------------------------------

// sqrt(sum_i |ref_i - cand_i|^2) * dx, the Fig. 1 caption norm.
double error_l2(const Field& candidate, const Field& reference, double dx);

// Fig. 2 caption norm: per-species sqrt-sums added, no dx factor; the
// dx_weighted variant applies the Fig. 1 convention per species instead.
enum class GsNorm { caption, dx_weighted };
double gs_error(const GSState& candidate, const GSState& reference,
                GsNorm norm);

double state_error(const Problem& p, const State& candidate,
                   const State& reference, GsNorm norm = GsNorm::caption);

double state_max_abs(const State& s);

// ---- reference solutions -------------------------------------------------

// Order-8 integration at dt_ref, cached on disk keyed by a content hash of
// (problem, scheme coefficients, dt_ref, t_final). Corrupt or mismatched
// cache entries are recomputed.
State reference_solution(const Problem& p, double t_final, double dt_ref,
                         const std::filesystem::path& cache_dir);

// ---- studies ---------------------------------------------------------------

struct StudyRecord {
  std::string scheme_name;
  int order_nominal = 0;
  double dt = 0.0;
  double error = 0.0;
  double wall_seconds = 0.0;
  std::string flags;  // "", "floor", or "failed:<reason>"
};

struct StudyTable {
  std::vector<StudyRecord> records;  // sorted by (scheme_name, dt desc)
  std::string problem_name;
  double reference_dt = 0.0;
};

struct StudyOptions {
  std::vector<double> dt_grid;  // strictly decreasing
  double t_final = 0.0;
  double reference_dt = 0.0;
  std::filesystem::path cache_dir = "refcache";
  GsNorm norm = GsNorm::caption;
  int timing_reps = 1;  // 3 with median in efficiency mode
  int jobs = 1;         // parallel cells; forced serial when timing_reps > 1
};

StudyTable convergence_study(const Problem& p,
                             const std::vector<Scheme>& schemes,
                             const StudyOptions& opt);

// Floor below which records are flagged: 10 * eps * sqrt(n) * scale.
double study_floor(int n, double ref_scale);

struct OrderFit {
  double slope = 0.0;
  double residual = 0.0;  // rms log-space fit residual
  int points_used = 0;
};

// Least-squares slope of log(error) vs log(dt) over dt in [dt_lo, dt_hi],
// skipping flagged records; throws when fewer than 3 usable points remain.
OrderFit estimate_order(const StudyTable& table, const std::string& scheme,
                        double dt_lo, double dt_hi);

// ---- file I/O --------------------------------------------------------------

// Writes via a temp file + rename so failures leave no partial output.
void atomic_write_text(const std::filesystem::path& path,
                       const std::string& content);

void write_study_csv(const StudyTable& t, const std::filesystem::path& path);
StudyTable read_study_csv(const std::filesystem::path& path);

void write_snapshot_csv(const std::vector<double>& times,
                        const std::vector<std::vector<double>>& rows,
                        const Grid& grid, const std::filesystem::path& path);
std::pair<std::vector<double>, std::vector<std::vector<double>>>
read_snapshot_csv(const std::filesystem::path& path);

}  // namespace rdsplit

#endif
