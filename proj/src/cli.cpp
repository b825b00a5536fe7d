#include "nnsc/cli.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "nnsc/band_metric.hpp"
#include "nnsc/bartnik_data.hpp"
#include "nnsc/constructions.hpp"
#include "nnsc/criteria.hpp"
#include "nnsc/curvature.hpp"
#include "nnsc/error.hpp"
#include "nnsc/masses.hpp"
#include "nnsc/quasi_spherical.hpp"

namespace nnsc::cli {

namespace fs = std::filesystem;

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(const std::string& s) {
  double x = 0.0;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, x);
  if (ec != std::errc() || ptr != end || !std::isfinite(x)) return std::nullopt;
  return x;
}

std::optional<bool> parse_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  return std::nullopt;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  return out;
}

// Setter for one key; returns an error message or empty.
using Setter = std::function<std::string(const std::string&)>;

Setter number_into(double& target) {
  return [&target](const std::string& v) -> std::string {
    const auto x = parse_number(v);
    if (!x) return "malformed number '" + v + "'";
    target = *x;
    return {};
  };
}

Setter optional_number_into(std::optional<double>& target) {
  return [&target](const std::string& v) -> std::string {
    const auto x = parse_number(v);
    if (!x) return "malformed number '" + v + "'";
    target = *x;
    return {};
  };
}

Setter choice_into(std::string& target, std::vector<std::string> allowed) {
  return [&target, allowed](const std::string& v) -> std::string {
    for (const auto& a : allowed) {
      if (v == a) {
        target = v;
        return {};
      }
    }
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : "|") + a;
    return "invalid value '" + v + "' (expected " + list + ")";
  };
}

Setter text_into(std::string& target) {
  return [&target](const std::string& v) -> std::string {
    target = v;
    return {};
  };
}

}  // namespace

ProfileSamples read_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kConfig, "cannot open profile file " + path);
  ProfileSamples p;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto cells = split_csv(t);
    const std::string where = path + " line " + std::to_string(number);
    if (cells.size() != 4) {
      fail(ErrorKind::kConfig, where + ": expected 4 columns theta,f,h,H");
    }
    std::array<double, 4> row{};
    bool numeric = true;
    for (int k = 0; k < 4; ++k) {
      const auto x = parse_number(cells[static_cast<std::size_t>(k)]);
      numeric = numeric && x.has_value();
      if (x) row[static_cast<std::size_t>(k)] = *x;
    }
    if (!numeric) {
      if (p.theta.empty() && cells[0] == "theta") continue;  // header
      fail(ErrorKind::kConfig, where + ": malformed number");
    }
    if (!p.theta.empty() && !(row[0] > p.theta.back())) {
      fail(ErrorKind::kConfig, where + ": theta grid not strictly increasing");
    }
    p.theta.push_back(row[0]);
    p.f.push_back(row[1]);
    p.h.push_back(row[2]);
    p.H.push_back(row[3]);
  }
  if (p.theta.size() < 3) fail(ErrorKind::kConfig, path + ": too few rows");
  return p;
}

ProblemConfig parse_config_text(const std::string& text, const std::string& base_dir) {
  ProblemConfig c;
  std::vector<std::string> errors;
  std::map<std::string, Setter> keys;
  std::string section;
  std::map<std::string, int> profile_lines;

  auto enter = [&](const std::string& name) -> bool {
    keys.clear();
    if (name.empty()) {
      keys["command"] = choice_into(c.command,
                                    {"mass", "qs", "cobordism", "criteria", "curvature"});
      keys["n"] = [&c](const std::string& v) -> std::string {
        const auto x = parse_number(v);
        if (!x || *x != std::floor(*x)) return "malformed integer '" + v + "'";
        c.n = static_cast<int>(*x);
        return {};
      };
    } else if (name == "d1" || name == "d2") {
      auto& block = name == "d1" ? c.d1 : c.d2;
      if (!block) block = DataBlock{};
      DataBlock& d = *block;
      keys["kind"] = choice_into(d.kind, {"round", "axisym"});
      keys["radius"] = number_into(d.radius);
      keys["H"] = number_into(d.H);
      keys["profile"] = text_into(d.profile);
    } else if (name == "solver") {
      keys["step"] = number_into(c.solver.step);
      keys["tolerance"] = optional_number_into(c.solver.tolerance);
      keys["rho_max"] = number_into(c.solver.rho_max);
    } else if (name == "qs") {
      if (!c.qs) c.qs = QsSettings{};
      QsSettings& q = *c.qs;
      keys["background"] =
          choice_into(q.background, {"euclidean", "hyperbolic", "round_path", "psc_path"});
      keys["start"] = number_into(q.start);
      keys["end"] = number_into(q.end);
      keys["u0"] = number_into(q.u0);
      keys["kappa"] = number_into(q.kappa);
      keys["a2"] = number_into(q.a2);
      keys["gamma_radius"] = number_into(q.gamma_radius);
      keys["delta0"] = number_into(q.delta0);
      keys["H2"] = optional_number_into(q.H2);
    } else if (name == "band") {
      if (!c.band) c.band = BandSettings{};
      BandSettings& b = *c.band;
      keys["kind"] = choice_into(b.kind, {"euclidean", "hyperbolic", "schwarzschild"});
      keys["start"] = number_into(b.start);
      keys["end"] = number_into(b.end);
      keys["m"] = number_into(b.m);
      keys["kappa"] = number_into(b.kappa);
    } else if (name == "criteria") {
      keys["check"] = choice_into(c.check, {"mass_obstruction", "total_mean_curvature",
                                            "hyperbolic_threshold", "existence"});
      keys["C"] = number_into(c.C);
    } else if (name == "output") {
      keys["dir"] = text_into(c.out_dir);
      keys["plot_data"] = [&c](const std::string& v) -> std::string {
        const auto b = parse_bool(v);
        if (!b) return "invalid boolean '" + v + "'";
        c.plot_data = *b;
        return {};
      };
    } else {
      return false;
    }
    return true;
  };
  enter("");

  std::stringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    const std::string t = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (t.empty()) continue;
    const std::string where = "line " + std::to_string(number) + ": ";
    if (t.front() == '[') {
      if (t.back() != ']') {
        errors.push_back(where + "malformed section header");
        continue;
      }
      section = trim(t.substr(1, t.size() - 2));
      if (!enter(section)) {
        errors.push_back(where + "unknown section [" + section + "]");
        keys.clear();
      }
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      errors.push_back(where + "expected key = value");
      continue;
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    const auto it = keys.find(key);
    if (it == keys.end()) {
      errors.push_back(where + "unknown key '" + key + "'" +
                       (section.empty() ? "" : " in [" + section + "]"));
      continue;
    }
    if (std::string e = it->second(value); !e.empty()) {
      errors.push_back(where + key + ": " + e);
    } else if (key == "profile") {
      profile_lines[section] = number;
    }
  }

  if (c.command.empty()) errors.push_back("missing required key 'command'");
  if (c.n < Dimension::kMin || c.n > Dimension::kMax) {
    errors.push_back("n out of range [3,7]: " + std::to_string(c.n));
  }
  auto require = [&](bool present, const char* name) {
    if (!present) {
      errors.push_back("missing required section [" + std::string(name) + "] for command " +
                       c.command);
    }
  };
  if (c.command == "mass") require(c.d1.has_value(), "d1");
  if (c.command == "cobordism" || c.command == "criteria") {
    require(c.d1.has_value(), "d1");
    require(c.d2.has_value(), "d2");
  }
  if (c.command == "qs") require(c.qs.has_value(), "qs");
  if (c.command == "curvature") require(c.band.has_value(), "band");
  if (!(c.solver.step > 0.0)) errors.push_back("solver step must be positive");

  for (auto* block : {&c.d1, &c.d2}) {
    if (!*block) continue;
    DataBlock& d = **block;
    const char* name = block == &c.d1 ? "d1" : "d2";
    if (d.kind == "round") {
      if (!(d.radius > 0.0)) errors.push_back(std::string("[") + name + "] radius must be positive");
      continue;
    }
    if (d.profile.empty()) {
      errors.push_back(std::string("[") + name + "] axisym data needs a profile file");
      continue;
    }
    fs::path p(d.profile);
    if (p.is_relative()) p = fs::path(base_dir) / p;
    d.profile = fs::absolute(p).lexically_normal().string();
    try {
      d.samples = read_profile(d.profile);
    } catch (const Error& e) {
      errors.push_back(e.what());
    }
  }

  if (!errors.empty()) {
    std::string msg;
    for (const auto& e : errors) msg += (msg.empty() ? "" : "\n") + e;
    fail(ErrorKind::kConfig, msg);
  }
  return c;
}

ProblemConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kConfig, "cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), fs::path(path).parent_path().string().empty()
                                         ? "."
                                         : fs::path(path).parent_path().string());
}

std::string dump_config(const ProblemConfig& c) {
  std::ostringstream o;
  auto kv = [&o](const std::string& k, const std::string& v) { o << k << " = " << v << '\n'; };
  auto num = [&kv](const std::string& k, double v) { kv(k, format_number(v)); };
  kv("command", c.command);
  kv("n", std::to_string(c.n));
  for (const auto* block : {&c.d1, &c.d2}) {
    if (!*block) continue;
    o << "\n[" << (block == &c.d1 ? "d1" : "d2") << "]\n";
    const DataBlock& d = **block;
    kv("kind", d.kind);
    num("radius", d.radius);
    num("H", d.H);
    if (!d.profile.empty()) kv("profile", d.profile);
  }
  o << "\n[solver]\n";
  num("step", c.solver.step);
  if (c.solver.tolerance) num("tolerance", *c.solver.tolerance);
  num("rho_max", c.solver.rho_max);
  if (c.qs) {
    const QsSettings& q = *c.qs;
    o << "\n[qs]\n";
    kv("background", q.background);
    num("start", q.start);
    num("end", q.end);
    num("u0", q.u0);
    num("kappa", q.kappa);
    num("a2", q.a2);
    num("gamma_radius", q.gamma_radius);
    num("delta0", q.delta0);
    if (q.H2) num("H2", *q.H2);
  }
  if (c.band) {
    const BandSettings& b = *c.band;
    o << "\n[band]\n";
    kv("kind", b.kind);
    num("start", b.start);
    num("end", b.end);
    num("m", b.m);
    num("kappa", b.kappa);
  }
  o << "\n[criteria]\n";
  kv("check", c.check);
  num("C", c.C);
  o << "\n[output]\n";
  if (!c.out_dir.empty()) kv("dir", c.out_dir);
  kv("plot_data", c.plot_data ? "true" : "false");
  return o.str();
}

namespace {

class Table {
 public:
  explicit Table(std::ostream& out) : out_(out) {}
  void row(const std::string& name, const std::string& value) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%-26s", name.c_str());
    out_ << buf << ' ' << value << '\n';
  }
  void row(const std::string& name, double value) { row(name, format_number(value)); }

 private:
  std::ostream& out_;
};

BartnikData make_data(const DataBlock& d, int n) {
  if (d.kind == "round") return make_round(Dimension(n), d.radius, d.H);
  if (n != 3) fail(ErrorKind::kDimension, "axisymmetric data need n = 3");
  auto vec = [](const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  };
  const ProfileSamples& s = d.samples;
  return sampled_axisym(vec(s.theta), vec(s.f), vec(s.h), vec(s.H));
}

RoundBartnikData round_data(const DataBlock& d, int n, const char* name) {
  if (d.kind != "round") {
    fail(ErrorKind::kDomain, std::string(name) + " must be round for this check");
  }
  return make_round(Dimension(n), d.radius, d.H);
}

struct Artifacts {
  std::optional<fs::path> dir;
  bool plot_data = false;

  std::optional<fs::path> file(const std::string& name) const {
    if (!dir) return std::nullopt;
    fs::create_directories(*dir);
    return *dir / name;
  }
};

void write_band_csv(const fs::path& path, const BandMetric& g) {
  std::ofstream o(path, std::ios::binary);
  if (!o) fail(ErrorKind::kConfig, "cannot write " + path.string());
  o << "t,r,u,H,R\n";
  for (Eigen::Index i = 0; i < g.grid.size(); ++i) {
    const double t = g.grid(i);
    o << format_number(t) << ',' << format_number(g.radius(t)) << ','
      << format_number(g.lapse(t)) << ',' << format_number(slice_geometry(g, t).H) << ','
      << format_number(scalar_curvature_at(g, t)) << '\n';
  }
}

void write_plot(const fs::path& path, const std::string& x_name, const std::string& y_name,
                const BandMetric& g, const std::function<double(double)>& y) {
  std::ofstream o(path, std::ios::binary);
  if (!o) fail(ErrorKind::kConfig, "cannot write " + path.string());
  o << "# " << x_name << ' ' << y_name << '\n';
  for (Eigen::Index i = 0; i < g.grid.size(); ++i) {
    o << format_number(g.grid(i)) << ' ' << format_number(y(g.grid(i))) << '\n';
  }
}

void emit_band(const Artifacts& a, const BandMetric& g, Table& table) {
  if (const auto csv = a.file("band.csv")) {
    write_band_csv(*csv, g);
    table.row("csv", csv->string());
  }
  if (a.plot_data) {
    if (const auto p = a.file("plot_lapse.dat")) {
      write_plot(*p, "t", "u", g, [&g](double t) { return g.lapse(t); });
    }
    if (const auto p = a.file("plot_scalar_curvature.dat")) {
      write_plot(*p, "t", "R", g, [&g](double t) { return scalar_curvature_at(g, t); });
    }
  }
}

void print_verdict(const Verdict& v, Table& table) {
  table.row("verdict", v.summary());
  for (const auto& [k, x] : v.audit) table.row(k, x);
  for (const auto& s : v.assumptions) table.row("assumption", s);
  if (!v.note.empty()) table.row("note", v.note);
}

void run_mass(const ProblemConfig& c, Table& table) {
  for (const auto* block : {&c.d1, &c.d2}) {
    if (!*block) continue;
    const std::string prefix = block == &c.d1 ? "d1." : "d2.";
    const MassReport r = mass_report(make_data(**block, c.n));
    table.row(prefix + "area", r.area);
    table.row(prefix + "total_mean_curvature", r.total_mean_curvature);
    if (r.hawking) table.row(prefix + "m_H", *r.hawking);
    if (c.n == 3) {
      table.row(prefix + "m_BY", r.brown_york ? format_number(*r.brown_york)
                                              : std::string("undefined"));
    }
  }
}

void run_qs(const ProblemConfig& c, const Artifacts& a, Table& table) {
  const QsSettings& q = *c.qs;
  QsProblem p;
  p.n = Dimension(c.n);
  p.start = q.start;
  p.end = q.end;
  p.u0 = q.u0;
  p.step.step = c.solver.step;
  if (c.solver.tolerance) {
    p.step.adaptive = true;
    p.step.tolerance = *c.solver.tolerance;
  }
  table.row("background", q.background);
  table.row("n", static_cast<double>(c.n));
  BandMetric g;
  if (q.background == "euclidean") {
    p.background = background::Euclidean{};
    g = qs_euclidean_solve(p);
    table.row("u0", p.u0);
    table.row("u_end", g.lapse(g.b));
    table.row("adm_mass", adm_mass_from_tail(g));
  } else if (q.background == "hyperbolic") {
    p.background = background::Hyperbolic{q.kappa};
    g = qs_hyperbolic_solve(p);
    table.row("u0", p.u0);
    table.row("u_end", g.lapse(g.b));
    const auto& t = std::get<tag::HyperbolicQS>(g.tag);
    table.row("c0", t.c0);
    if (q.kappa == 1.0 && g.b >= 10.0 && q.u0 != 1.0) {
      const ExpansionConstants ex = extract_expansion_constants(g);
      const MassAspect aspect = hyperbolic_mass_aspect(g);
      table.row("limit_u", ex.limit_u);
      table.row("limit_U", ex.limit_U);
      table.row("mass_aspect_trace", aspect.trace);
      table.row("expansion_trace", aspect.expansion_trace);
    }
  } else {
    if (q.background == "round_path") {
      p.background = background::RoundPath{q.a2, q.gamma_radius, std::nullopt};
    } else {
      p.background = background::PscPath{q.delta0, q.gamma_radius};
    }
    if (q.H2) p.u0 = path_initial_lapse(p, *q.H2);
    const PathSolution s = qs_path_solve(p);
    g = s.band;
    table.row("u0", p.u0);
    table.row("K", s.K);
    table.row("H2_prime", s.H2_prime);
    table.row("u_sup", s.u_sup);
  }
  table.row("slices", static_cast<double>(g.grid.size()));
  emit_band(a, g, table);
}

void write_verdict_file(const fs::path& path, const std::string& check, const Verdict& v,
                        std::optional<double> Lambda) {
  std::ofstream o(path, std::ios::binary);
  if (!o) fail(ErrorKind::kConfig, "cannot write " + path.string());
  o << "check=" << check << '\n';
  o << "verdict=" << v.summary() << '\n';
  o << "outcome=" << to_string(v.outcome) << '\n';
  o << "theorem=" << v.theorem << '\n';
  if (Lambda) o << "Lambda=" << format_number(*Lambda) << '\n';
  for (const auto& [k, x] : v.audit) o << "audit." << k << '=' << format_number(x) << '\n';
  for (std::size_t i = 0; i < v.assumptions.size(); ++i) {
    o << "assumption." << i + 1 << '=' << v.assumptions[i] << '\n';
  }
  if (!v.note.empty()) o << "note=" << v.note << '\n';
}

void run_criteria(const ProblemConfig& c, const Artifacts& a, Table& table) {
  Verdict v;
  std::optional<double> Lambda;
  if (c.check == "mass_obstruction") {
    v = check_mass_obstruction(make_data(*c.d1, c.n), make_data(*c.d2, c.n));
  } else if (c.check == "total_mean_curvature") {
    const ThresholdResult r = total_mean_curvature_bound(round_data(*c.d1, c.n, "d1"),
                                                         make_data(*c.d2, c.n), c.C);
    v = r.verdict;
    Lambda = r.Lambda;
  } else if (c.check == "hyperbolic_threshold") {
    const ThresholdResult r = hyperbolic_threshold_check(
        round_data(*c.d1, c.n, "d1"), round_data(*c.d2, c.n, "d2"), c.C);
    v = r.verdict;
    Lambda = r.Lambda;
  } else {
    v = construct_existence(round_data(*c.d1, c.n, "d1"), round_data(*c.d2, c.n, "d2"));
  }
  table.row("check", c.check);
  if (Lambda) table.row("Lambda", *Lambda);
  print_verdict(v, table);
  const fs::path file = a.file("verdict.txt").value_or(fs::path("verdict.txt"));
  write_verdict_file(file, c.check, v, Lambda);
  table.row("verdict_file", file.string());
  if (v.construction) emit_band(a, *v.construction, table);
}

void run_cobordism(const ProblemConfig& c, const Artifacts& a, Table& table) {
  const Verdict v =
      construct_existence(round_data(*c.d1, c.n, "d1"), round_data(*c.d2, c.n, "d2"));
  print_verdict(v, table);
  if (v.construction) emit_band(a, *v.construction, table);
}

void run_curvature(const ProblemConfig& c, const Artifacts& a, Table& table) {
  const BandSettings& b = *c.band;
  const Dimension n(c.n);
  BandMetric g;
  if (b.kind == "euclidean") {
    g = euclidean_band(n, b.start, b.end);
  } else if (b.kind == "hyperbolic") {
    g = hyperbolic_band(n, b.kappa, b.start, b.end);
  } else {
    g = schwarzschild_metric_band(n, b.m, b.start, b.end);
  }
  const CurvatureReport r = curvature_report(g);
  FdOptions fd;
  fd.step = c.solver.step;
  const SampledFn R_fd = scalar_curvature_fd(g, fd);
  double fd_gap = 0.0;
  for (Eigen::Index i = 0; i < r.t.size(); ++i) {
    fd_gap = std::max(fd_gap, std::abs(r.R(i) - R_fd(r.t(i))));
  }
  table.row("band", b.kind);
  table.row("slices", static_cast<double>(r.t.size()));
  table.row("min_R", r.R.minCoeff());
  table.row("max_R", r.R.maxCoeff());
  table.row("max_gauss_residual", r.max_gauss_residual());
  table.row("max_fd_gap", fd_gap);
  emit_band(a, g, table);
}

}  // namespace

int run(const ProblemConfig& c, const RunOptions& opts, std::ostream& out,
        std::ostream& err) {
  Artifacts a;
  if (opts.out_dir) {
    a.dir = *opts.out_dir;
  } else if (!c.out_dir.empty()) {
    a.dir = c.out_dir;
  }
  a.plot_data = opts.plot_data || c.plot_data;
  Table table(out);
  try {
    if (c.command == "mass") {
      run_mass(c, table);
    } else if (c.command == "qs") {
      run_qs(c, a, table);
    } else if (c.command == "criteria") {
      run_criteria(c, a, table);
    } else if (c.command == "cobordism") {
      run_cobordism(c, a, table);
    } else if (c.command == "curvature") {
      run_curvature(c, a, table);
    } else {
      fail(ErrorKind::kConfig, "unknown command '" + c.command + "'");
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const fs::filesystem_error& e) {
    err << "error (io): " << e.what() << '\n';
    return exit_code(ErrorKind::kConfig);
  }
  return 0;
}

}  // namespace nnsc::cli
