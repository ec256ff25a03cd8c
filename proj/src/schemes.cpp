#include "rdsplit/schemes.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace rdsplit {

cplx Scheme::sum_a() const {
  cplx s = 0.0;
  for (const Stage& st : stages) s += st.a;
  return s;
}

cplx Scheme::sum_b() const {
  cplx s = 0.0;
  for (const Stage& st : stages) s += st.b;
  return s;
}

SchemeCheck validate(const Scheme& s) {
  SchemeCheck c;
  auto flag = [&](std::string msg) {
    c.ok = false;
    c.issues.push_back(std::move(msg));
  };
  if (s.stages.empty()) {
    flag("scheme has no stages");
    return c;
  }
  const double da = std::abs(s.sum_a() - 1.0);
  const double db = std::abs(s.sum_b() - 1.0);
  if (da > 1e-12)
    flag("sum of a-coefficients deviates from 1 by " + std::to_string(da));
  if (db > 1e-12)
    flag("sum of b-coefficients deviates from 1 by " + std::to_string(db));
  for (std::size_t j = 0; j < s.stages.size(); ++j) {
    const Stage& st = s.stages[j];
    if (st.a != cplx(0.0) && st.a.real() < 0.0)
      flag("stage " + std::to_string(j) + ": Re(a) < 0");
    if (st.b != cplx(0.0) && st.b.real() < 0.0)
      flag("stage " + std::to_string(j) + ": Re(b) < 0");
  }
  return c;
}

double max_stage_arg(const Scheme& s) {
  double m = 0.0;
  for (const Stage& st : s.stages) {
    if (st.a != cplx(0.0)) m = std::max(m, std::abs(std::arg(st.a)));
    if (st.b != cplx(0.0)) m = std::max(m, std::abs(std::arg(st.b)));
  }
  return m;
}

Scheme lie_trotter() {
  return {{{cplx(1.0), cplx(1.0)}}, 1, "lie-trotter", "constructed"};
}

Scheme strang() {
  return {{{cplx(0.5), cplx(1.0)}, {cplx(0.5), cplx(0.0)}},
          2,
          "strang",
          "constructed"};
}

Scheme triple_jump(const Scheme& base, int root_index,
                   bool require_admissible) {
  const int p = base.nominal_order;
  if (p < 2 || p % 2 != 0)
    throw std::invalid_argument("triple_jump: base order must be even >= 2");
  if (root_index < 0 || root_index > p)
    throw std::invalid_argument("triple_jump: root index out of range");

  const double ang = std::numbers::pi * (2.0 * root_index + 1.0) / (p + 1);
  const cplx omega =
      std::pow(2.0, 1.0 / (p + 1)) * cplx(std::cos(ang), std::sin(ang));
  const cplx g1 = 1.0 / (2.0 + omega);
  const cplx g2 = omega * g1;

  std::vector<Stage> flat;
  flat.reserve(3 * base.stages.size());
  for (const cplx g : {g1, g2, g1})
    for (const Stage& st : base.stages) flat.push_back({g * st.a, g * st.b});

  // a pure-A stage (b == 0) merges into the next stage's leading A-substep
  std::vector<Stage> merged;
  merged.reserve(flat.size());
  cplx carry = 0.0;
  for (std::size_t i = 0; i < flat.size(); ++i) {
    Stage st{carry + flat[i].a, flat[i].b};
    carry = 0.0;
    if (st.b == cplx(0.0) && i + 1 < flat.size())
      carry = st.a;
    else
      merged.push_back(st);
  }

  Scheme out{std::move(merged), p + 2,
             base.name + "*tj(k=" + std::to_string(root_index) + ")",
             "constructed"};
  if (require_admissible) {
    const SchemeCheck c = validate(out);
    if (!c.ok)
      throw std::domain_error("triple_jump: inadmissible result: " +
                              c.issues.front());
  }
  return out;
}

namespace {

void search_roots(const Scheme& cur, int target,
                  std::vector<int>& picks, std::vector<int>& best_picks,
                  std::optional<double>& best_arg, Scheme& best) {
  if (cur.nominal_order == target) {
    if (!validate(cur).ok) return;
    const double a = max_stage_arg(cur);
    if (!best_arg || a < *best_arg ||
        (a == *best_arg && picks < best_picks)) {
      best_arg = a;
      best = cur;
      best_picks = picks;
    }
    return;
  }
  for (int k = 0; k <= cur.nominal_order; ++k) {
    picks.push_back(k);
    search_roots(triple_jump(cur, k, false), target, picks, best_picks,
                 best_arg, best);
    picks.pop_back();
  }
}

}  // namespace

Scheme build_order(int order) {
  if (order < 2 || order > 8 || order % 2 != 0)
    throw std::invalid_argument("build_order: order must be one of 2,4,6,8");
  if (order == 2) return strang();

  std::vector<int> picks, best_picks;
  std::optional<double> best_arg;
  Scheme best;
  search_roots(strang(), order, picks, best_picks, best_arg, best);
  if (!best_arg)
    throw std::runtime_error(
        "build_order: no admissible root sequence keeps Re >= 0");
  best.name = "tj" + std::to_string(order);
  best.source = "constructed";
  return best;
}

Scheme load_scheme(const std::filesystem::path& path, bool allow_invalid) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_scheme: cannot open " + path.string());

  Scheme s;
  s.source = path.string();
  bool have_header = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank or comment-only

    if (!have_header) {
      std::string name_kw;
      if (first != "order" || !(ls >> s.nominal_order >> name_kw >> s.name) ||
          name_kw != "name")
        throw std::runtime_error("load_scheme: " + path.string() + ":" +
                                 std::to_string(lineno) +
                                 ": expected header `order N name TEXT`");
      have_header = true;
      continue;
    }

    double re_a, im_a, re_b, im_b;
    std::istringstream vs(line);
    if (!(vs >> re_a >> im_a >> re_b >> im_b))
      throw std::runtime_error("load_scheme: " + path.string() + ":" +
                               std::to_string(lineno) +
                               ": expected four decimal fields");
    s.stages.push_back({cplx(re_a, im_a), cplx(re_b, im_b)});
  }
  if (!have_header || s.stages.empty())
    throw std::runtime_error("load_scheme: " + path.string() +
                             ": missing header or stages");

  const double da = std::abs(s.sum_a() - 1.0);
  const double db = std::abs(s.sum_b() - 1.0);
  if (!allow_invalid) {
    if (da > 1e-9 || db > 1e-9)
      throw std::runtime_error(
          "load_scheme: " + path.string() +
          ": consistency sums deviate from 1 by (a: " + std::to_string(da) +
          ", b: " + std::to_string(db) + ")");
    const SchemeCheck c = validate(s);
    for (const std::string& issue : c.issues)
      if (issue.find("Re(") != std::string::npos)
        throw std::runtime_error("load_scheme: " + path.string() + ": " +
                                 issue + " (pass --allow-invalid to load)");
  }
  return s;
}

void save_scheme(const Scheme& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("save_scheme: cannot write " + path.string());
  out << "# splitting scheme, one stage per line: Re(a) Im(a) Re(b) Im(b)\n";
  out << "order " << s.nominal_order << " name "
      << (s.name.empty() ? "unnamed" : s.name) << "\n";
  char buf[128];
  for (const Stage& st : s.stages) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g\n", st.a.real(),
                  st.a.imag(), st.b.real(), st.b.imag());
    out << buf;
  }
  if (!out) throw std::runtime_error("save_scheme: write failed");
}

}  // namespace rdsplit
