#include "rdsplit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rdsplit/kernels.hpp"

namespace rdsplit {
namespace {

double fmt_tol_seconds() {
  return 1e-9;  // clock floor so recorded timings stay positive
}

void check_finite(const Field& f, long step) {
  const double s =
      kernels::active_ops().sum_abs2(f.values.data(), f.values.size());
  if (!std::isfinite(s))
    throw std::runtime_error("integrate: non-finite state at step " +
                             std::to_string(step));
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// FNV-1a over bytes
std::uint64_t fnv1a(const void* data, std::size_t len,
                    std::uint64_t h = 1469598103934665603ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

std::string reference_key(const Problem& p, const Scheme& s, double dt_ref,
                          double t_final) {
  std::ostringstream k;
  k << "problem=" << p.name << " kind=" << static_cast<int>(p.kind)
    << " n=" << p.grid->n << " x=[" << fmt(p.grid->x_min) << ","
    << fmt(p.grid->x_max) << ")"
    << " D=" << fmt(p.params.D) << " Du=" << fmt(p.params.D_u)
    << " Dv=" << fmt(p.params.D_v) << " alpha=" << fmt(p.params.alpha)
    << " beta=" << fmt(p.params.beta)
    << " ordering=" << static_cast<int>(p.ordering)
    << " nl=" << static_cast<int>(p.nonlinear_flow)
    << " scheme=" << s.name << " order=" << s.nominal_order;
  for (const Stage& st : s.stages)
    k << " " << fmt(st.a.real()) << "," << fmt(st.a.imag()) << ","
      << fmt(st.b.real()) << "," << fmt(st.b.imag());
  k << " dt_ref=" << fmt(dt_ref) << " t_final=" << fmt(t_final);
  return k.str();
}

std::vector<double> state_payload(const State& s) {
  std::vector<double> out;
  auto push = [&out](const Field& f) {
    for (const cplx& v : f.values) {
      out.push_back(v.real());
      out.push_back(v.imag());
    }
  };
  if (std::holds_alternative<Field>(s)) {
    push(std::get<Field>(s));
  } else {
    push(std::get<GSState>(s).u);
    push(std::get<GSState>(s).v);
  }
  return out;
}

State payload_to_state(const Problem& p, const std::vector<double>& payload) {
  auto fill = [&](Field& f, std::size_t off) {
    for (int j = 0; j < p.grid->n; ++j)
      f.values[j] = cplx(payload[off + 2 * j], payload[off + 2 * j + 1]);
  };
  if (p.kind == ProblemKind::linear_potential) {
    Field u = make_field(p.grid);
    fill(u, 0);
    return u;
  }
  GSState s{make_field(p.grid), make_field(p.grid)};
  fill(s.u, 0);
  fill(s.v, 2 * static_cast<std::size_t>(p.grid->n));
  return s;
}

std::vector<double> to_little_endian(std::vector<double> v) {
  if constexpr (std::endian::native == std::endian::big) {
    for (double& d : v) {
      std::uint64_t bits;
      std::memcpy(&bits, &d, 8);
      bits = __builtin_bswap64(bits);
      std::memcpy(&d, &bits, 8);
    }
  }
  return v;
}

}  // namespace

void SnapshotSink::record(double t, const State& s) {
  times.push_back(t);
  auto row_of = [](const Field& f) {
    std::vector<double> row(f.values.size());
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = f.values[j].real();
    return row;
  };
  if (std::holds_alternative<Field>(s)) {
    u_rows.push_back(row_of(std::get<Field>(s)));
  } else {
    const auto& gs = std::get<GSState>(s);
    u_rows.push_back(row_of(gs.u));
    v_rows.push_back(row_of(gs.v));
  }
}

State integrate(const Problem& p, const Scheme& scheme, double dt,
                double t_final, SnapshotSink* sink) {
  const long steps = steps_for(dt, t_final);

  if (p.kind == ProblemKind::linear_potential) {
    Field u = p.initial_u_field();
    const Field pot = sample_potential(p.params, p.grid);
    const LinearPotentialStepper st(scheme, p.ordering, pot, p.params.D, dt);
    if (sink) sink->record(0.0, State(u));
    for (long i = 1; i <= steps; ++i) {
      st.advance(u);
      check_finite(u, i);
      if (sink && (i % sink->stride == 0 || i == steps))
        sink->record(i * dt, State(u));
    }
    return u;
  }

  GSState s = p.initial_state();
  const GrayScottStepper st(scheme, p.ordering, *p.grid, p.params,
                            p.nonlinear_flow, dt);
  if (sink) sink->record(0.0, State(s));
  for (long i = 1; i <= steps; ++i) {
    st.advance(s);
    check_finite(s.u, i);
    check_finite(s.v, i);
    if (sink && (i % sink->stride == 0 || i == steps))
      sink->record(i * dt, State(s));
  }
  return s;
}

double error_l2(const Field& candidate, const Field& reference, double dx) {
  if (!same_grid(candidate, reference))
    throw std::invalid_argument("error_l2: grid mismatch");
  const double s2 = kernels::active_ops().sum_abs2_diff(
      candidate.values.data(), reference.values.data(),
      candidate.values.size());
  return std::sqrt(s2) * dx;
}

double gs_error(const GSState& candidate, const GSState& reference,
                GsNorm norm) {
  const auto& ops = kernels::active_ops();
  const double eu = std::sqrt(ops.sum_abs2_diff(candidate.u.values.data(),
                                                reference.u.values.data(),
                                                candidate.u.values.size()));
  const double ev = std::sqrt(ops.sum_abs2_diff(candidate.v.values.data(),
                                                reference.v.values.data(),
                                                candidate.v.values.size()));
  const double dx =
      norm == GsNorm::dx_weighted ? candidate.u.grid->dx : 1.0;
  return (eu + ev) * dx;
}

double state_error(const Problem& p, const State& candidate,
                   const State& reference, GsNorm norm) {
  if (p.kind == ProblemKind::linear_potential)
    return error_l2(std::get<Field>(candidate), std::get<Field>(reference),
                    p.grid->dx);
  return gs_error(std::get<GSState>(candidate), std::get<GSState>(reference),
                  norm);
}

double state_max_abs(const State& s) {
  if (std::holds_alternative<Field>(s))
    return max_abs(std::get<Field>(s));
  const auto& gs = std::get<GSState>(s);
  return std::max(max_abs(gs.u), max_abs(gs.v));
}

State reference_solution(const Problem& p, double t_final, double dt_ref,
                         const std::filesystem::path& cache_dir) {
  const Scheme ref_scheme = build_order(8);
  const std::string key = reference_key(p, ref_scheme, dt_ref, t_final);
  const std::string h = hex64(fnv1a(key.data(), key.size()));
  const auto bin = cache_dir / (h + ".bin");
  const auto meta = cache_dir / (h + ".txt");

  const std::size_t doubles_expected =
      (p.kind == ProblemKind::linear_potential ? 2u : 4u) *
      static_cast<std::size_t>(p.grid->n);

  if (std::filesystem::exists(bin) && std::filesystem::exists(meta)) {
    std::ifstream mf(meta);
    std::string l1, l2, l3;
    std::getline(mf, l1);
    std::getline(mf, l2);
    std::getline(mf, l3);
    std::ifstream bf(bin, std::ios::binary);
    std::vector<double> payload(doubles_expected);
    bf.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(payload.size() * sizeof(double)));
    if (mf && bf && bf.gcount() == static_cast<std::streamsize>(
                                       payload.size() * sizeof(double)) &&
        l1 == "rdsplit-reference-cache v1" && l2 == key) {
      payload = to_little_endian(std::move(payload));  // stored LE
      const std::string payload_hash =
          "payload-fnv " +
          hex64(fnv1a(payload.data(), payload.size() * sizeof(double)));
      if (l3 == payload_hash) return payload_to_state(p, payload);
    }
    // hash or key mismatch: fall through and recompute
  }

  const State s = integrate(p, ref_scheme, dt_ref, t_final);

  std::filesystem::create_directories(cache_dir);
  std::vector<double> payload = state_payload(s);
  const std::string payload_hash =
      "payload-fnv " +
      hex64(fnv1a(payload.data(), payload.size() * sizeof(double)));
  const std::vector<double> le = to_little_endian(payload);
  {
    const auto tmp = bin.string() + ".tmp";
    std::ofstream bf(tmp, std::ios::binary | std::ios::trunc);
    bf.write(reinterpret_cast<const char*>(le.data()),
             static_cast<std::streamsize>(le.size() * sizeof(double)));
    if (!bf) throw std::runtime_error("reference cache: write failed");
    bf.close();
    std::filesystem::rename(tmp, bin);
  }
  atomic_write_text(meta, "rdsplit-reference-cache v1\n" + key + "\n" +
                              payload_hash + "\n");
  return s;
}

double study_floor(int n, double ref_scale) {
  return 10.0 * std::numeric_limits<double>::epsilon() *
         std::sqrt(static_cast<double>(n)) * std::max(1.0, ref_scale);
}

StudyTable convergence_study(const Problem& p,
                             const std::vector<Scheme>& schemes,
                             const StudyOptions& opt) {
  if (opt.dt_grid.empty())
    throw std::invalid_argument("convergence_study: empty dt grid");
  for (std::size_t i = 1; i < opt.dt_grid.size(); ++i)
    if (!(opt.dt_grid[i] < opt.dt_grid[i - 1]))
      throw std::invalid_argument(
          "convergence_study: dt grid must be strictly decreasing");
  for (double dt : opt.dt_grid) steps_for(dt, opt.t_final);  // validate tiling

  const State ref =
      reference_solution(p, opt.t_final, opt.reference_dt, opt.cache_dir);
  const double floor = study_floor(p.grid->n, state_max_abs(ref));

  struct Cell {
    const Scheme* scheme;
    double dt;
    StudyRecord rec;
  };
  std::vector<Cell> cells;
  for (const Scheme& s : schemes)
    for (double dt : opt.dt_grid)
      cells.push_back({&s, dt, {s.name, s.nominal_order, dt, 0.0, 0.0, ""}});

  auto run_cell = [&](Cell& c) {
    try {
      std::vector<double> secs;
      State out;
      const int reps = std::max(1, opt.timing_reps);
      for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        out = integrate(p, *c.scheme, c.dt, opt.t_final);
        const auto t1 = std::chrono::steady_clock::now();
        secs.push_back(std::max(
            fmt_tol_seconds(),
            std::chrono::duration<double>(t1 - t0).count()));
      }
      std::sort(secs.begin(), secs.end());
      c.rec.wall_seconds = secs[secs.size() / 2];
      c.rec.error = state_error(p, out, ref, opt.norm);
      if (c.rec.error < floor) c.rec.flags = "floor";
    } catch (const std::exception& e) {
      c.rec.error = std::numeric_limits<double>::quiet_NaN();
      c.rec.wall_seconds = fmt_tol_seconds();
      c.rec.flags = std::string("failed:") + e.what();
    }
  };

  const int jobs =
      (opt.timing_reps > 1) ? 1 : std::max(1, opt.jobs);  // honest timings
  if (jobs == 1) {
    for (Cell& c : cells) run_cell(c);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= cells.size()) return;
        run_cell(cells[i]);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  StudyTable table;
  table.problem_name = p.name;
  table.reference_dt = opt.reference_dt;
  for (Cell& c : cells) table.records.push_back(std::move(c.rec));
  std::sort(table.records.begin(), table.records.end(),
            [](const StudyRecord& a, const StudyRecord& b) {
              if (a.scheme_name != b.scheme_name)
                return a.scheme_name < b.scheme_name;
              return a.dt > b.dt;
            });
  return table;
}

OrderFit estimate_order(const StudyTable& table, const std::string& scheme,
                        double dt_lo, double dt_hi) {
  std::vector<std::pair<double, double>> pts;
  for (const StudyRecord& r : table.records) {
    if (r.scheme_name != scheme) continue;
    if (r.dt < dt_lo * (1 - 1e-12) || r.dt > dt_hi * (1 + 1e-12)) continue;
    if (!r.flags.empty()) continue;  // floor or failed
    if (!(r.error > 0.0)) continue;
    pts.emplace_back(std::log(r.dt), std::log(r.error));
  }
  if (pts.size() < 3)
    throw std::invalid_argument(
        "estimate_order: window for '" + scheme +
        "' has fewer than 3 usable records (empty or in the round-off "
        "floor)");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(pts.size());
  const double denom = m * sxx - sx * sx;
  OrderFit fit;
  fit.slope = (m * sxy - sx * sy) / denom;
  const double icept = (sy - fit.slope * sx) / m;
  double rss = 0;
  for (auto [x, y] : pts) {
    const double d = y - (fit.slope * x + icept);
    rss += d * d;
  }
  fit.residual = std::sqrt(rss / m);
  fit.points_used = static_cast<int>(pts.size());
  return fit;
}

void atomic_write_text(const std::filesystem::path& path,
                       const std::string& content) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_study_csv(const StudyTable& t, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "# problem=" << t.problem_name
      << " reference_dt=" << fmt(t.reference_dt) << "\n";
  out << "scheme,order,dt,error,wall_seconds,flags\n";
  for (const StudyRecord& r : t.records)
    out << r.scheme_name << "," << r.order_nominal << "," << fmt(r.dt) << ","
        << fmt(r.error) << "," << fmt(r.wall_seconds) << "," << r.flags
        << "\n";
  atomic_write_text(path, out.str());
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

StudyTable read_study_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  StudyTable t;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto ppos = line.find("problem=");
      if (ppos != std::string::npos) {
        const auto end = line.find(' ', ppos + 8);
        t.problem_name = line.substr(ppos + 8, end - ppos - 8);
      }
      const auto rpos = line.find("reference_dt=");
      if (rpos != std::string::npos)
        t.reference_dt = std::stod(line.substr(rpos + 13));
      continue;
    }
    if (!header_seen) {
      if (line != "scheme,order,dt,error,wall_seconds,flags")
        throw std::runtime_error("unexpected study CSV header in " +
                                 path.string());
      header_seen = true;
      continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() != 6)
      throw std::runtime_error("malformed study CSV row in " + path.string());
    StudyRecord r;
    r.scheme_name = f[0];
    r.order_nominal = std::stoi(f[1]);
    r.dt = std::stod(f[2]);
    r.error = std::stod(f[3]);
    r.wall_seconds = std::stod(f[4]);
    r.flags = f[5];
    t.records.push_back(std::move(r));
  }
  if (!header_seen)
    throw std::runtime_error("study CSV missing header: " + path.string());
  return t;
}

void write_snapshot_csv(const std::vector<double>& times,
                        const std::vector<std::vector<double>>& rows,
                        const Grid& grid, const std::filesystem::path& path) {
  if (times.size() != rows.size())
    throw std::invalid_argument("snapshot CSV: times/rows mismatch");
  std::ostringstream out;
  out << "t";
  for (int j = 0; j < grid.n; ++j) out << "," << fmt(grid.nodes[j]);
  out << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << fmt(times[i]);
    for (double v : rows[i]) out << "," << fmt(v);
    out << "\n";
  }
  atomic_write_text(path, out.str());
}

std::pair<std::vector<double>, std::vector<std::vector<double>>>
read_snapshot_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.substr(0, 2) != "t,")
    throw std::runtime_error("unexpected snapshot CSV header in " +
                             path.string());
  const std::size_t ncols = split_csv_line(line).size();
  std::vector<double> times;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != ncols)
      throw std::runtime_error("ragged snapshot CSV row in " + path.string());
    times.push_back(std::stod(f[0]));
    std::vector<double> row(f.size() - 1);
    for (std::size_t j = 1; j < f.size(); ++j) row[j - 1] = std::stod(f[j]);
    rows.push_back(std::move(row));
  }
  return {std::move(times), std::move(rows)};
}

}  // namespace rdsplit
