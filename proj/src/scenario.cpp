#include "vdw/scenario.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vdw/error.hpp"
#include "vdw/forces.hpp"
#include "vdw/imaging.hpp"

namespace vdw::scenario {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const char *medium_name(MediumChoice m) {
  switch (m) {
  case MediumChoice::vacuum: return "vacuum";
  case MediumChoice::dielectric: return "dielectric";
  case MediumChoice::magnetic: return "magnetic";
  case MediumChoice::magnetodielectric: return "magnetodielectric";
  case MediumChoice::conducting: return "conducting";
  case MediumChoice::permeable: return "permeable";
  }
  return "?";
}

const char *family_name(Family f) {
  switch (f) {
  case Family::parallel: return "parallel";
  case Family::vertical: return "vertical";
  case Family::general: return "general";
  }
  return "?";
}

// Walks a JSON object, rejecting keys nobody asked for.
class Reader {
public:
  Reader(const json &j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError("config field '" + path_ + "' must be an object");
  }
  ~Reader() noexcept(false) {
    if (std::uncaught_exceptions() == 0) {
      for (const auto &[k, v] : j_.items())
        if (!seen_.count(k)) throw ConfigError("unknown config field '" + field(k) + "'");
    }
  }

  bool has(const std::string &k) {
    seen_.insert(k);
    return j_.contains(k);
  }
  std::string field(const std::string &k) const { return path_.empty() ? k : path_ + "." + k; }
  const json &at(const std::string &k) const { return j_.at(k); }

  void number(const std::string &k, double &out) {
    if (!has(k)) return;
    if (!at(k).is_number()) throw ConfigError("config field '" + field(k) + "' must be a number");
    out = at(k).get<double>();
  }
  void integer(const std::string &k, int &out) {
    if (!has(k)) return;
    if (!at(k).is_number_integer()) throw ConfigError("config field '" + field(k) + "' must be an integer");
    out = at(k).get<int>();
  }
  void boolean(const std::string &k, bool &out) {
    if (!has(k)) return;
    if (!at(k).is_boolean()) throw ConfigError("config field '" + field(k) + "' must be true or false");
    out = at(k).get<bool>();
  }
  bool text(const std::string &k, std::string &out) {
    if (!has(k)) return false;
    if (!at(k).is_string()) throw ConfigError("config field '" + field(k) + "' must be a string");
    out = at(k).get<std::string>();
    return true;
  }

private:
  const json &j_;
  std::string path_;
  std::set<std::string> seen_;
};

template <class E>
E pick(const std::string &field, const std::string &value, std::initializer_list<std::pair<const char *, E>> opts) {
  std::string allowed;
  for (const auto &[name, e] : opts) {
    if (value == name) return e;
    allowed += allowed.empty() ? name : std::string(", ") + name;
  }
  throw ConfigError("config field '" + field + "': '" + value + "' is not one of " + allowed);
}

void read_atom(Reader &parent, const std::string &key, ResonanceAtom &atom) {
  if (!parent.has(key)) return;
  Reader r(parent.at(key), parent.field(key));
  std::string kind;
  if (r.text("kind", kind))
    atom.kind = pick<AtomKind>(r.field("kind"), kind, {{"electric", AtomKind::electric}, {"magnetic", AtomKind::magnetic}});
  r.number("omega", atom.omega10);
  r.number("alpha0", atom.alpha0);
  try {
    validate(atom);
  } catch (const DomainError &e) {
    throw ConfigError("config field '" + parent.field(key) + "': " + e.what());
  }
}

void read_lorentz(Reader &parent, const std::string &key, LorentzMedium &m) {
  if (!parent.has(key)) return;
  Reader r(parent.at(key), parent.field(key));
  r.number("omega_p", m.omega_p);
  r.number("omega_t", m.omega_t);
  r.number("gamma", m.gamma);
  try {
    validate(m);
  } catch (const DomainError &e) {
    throw ConfigError("config field '" + parent.field(key) + "': " + e.what());
  }
}

json lorentz_json(const LorentzMedium &m) { return {{"omega_p", m.omega_p}, {"omega_t", m.omega_t}, {"gamma", m.gamma}}; }
json atom_json(const ResonanceAtom &a) {
  return {{"kind", a.kind == AtomKind::electric ? "electric" : "magnetic"}, {"omega", a.omega10}, {"alpha0", a.alpha0}};
}

PlanarGeometry geometry_at(const ScenarioConfig &cfg, double height, double l) {
  switch (cfg.family) {
  case Family::parallel: return PlanarGeometry::parallel(l, height);
  case Family::vertical: return PlanarGeometry::vertical(height, l);
  case Family::general: {
    const double dx = cfg.x_B - cfg.x_A, dz = cfg.z_B - cfg.z_A;
    const double s = l / std::hypot(dx, dz);
    return PlanarGeometry::make(cfg.x_A, cfg.z_A, cfg.x_A + s * dx, cfg.z_A + s * dz);
  }
  }
  throw InternalError("unknown geometry family");
}

std::vector<double> heights_of(const ScenarioConfig &cfg) {
  return cfg.family == Family::general ? std::vector<double>{cfg.z_A} : cfg.heights;
}

struct Row {
  std::vector<double> values;
  std::string status = "ok";
};

// Evaluate rows in parallel; a failing row keeps its place and records why.
template <class F> void fill(Table &t, std::size_t n, int threads, F compute) {
  auto rows = parallel_map<Row>(n, threads, [&](std::size_t i) {
    Row r;
    try {
      r.values = compute(i);
    } catch (const std::exception &e) {
      r.values.clear();
      r.status = e.what();
    }
    if (r.values.size() != t.columns.size()) r.values.resize(t.columns.size(), kNaN);
    return r;
  });
  for (auto &r : rows) {
    t.rows.push_back(std::move(r.values));
    t.status.push_back(std::move(r.status));
  }
}

std::string number_text(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

} // namespace

ScenarioConfig default_config() { return ScenarioConfig{}; }

ScenarioConfig parse_config(const std::string &json_text, const ScenarioConfig &base) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  ScenarioConfig cfg = base;
  {
    Reader root(j, "");
    if (root.has("atoms")) {
      Reader a(root.at("atoms"), "atoms");
      read_atom(a, "a", cfg.atoms.a);
      read_atom(a, "b", cfg.atoms.b);
    }
    if (root.has("medium")) {
      Reader m(root.at("medium"), "medium");
      std::string kind;
      if (m.text("kind", kind))
        cfg.medium = pick<MediumChoice>(m.field("kind"), kind,
                                        {{"vacuum", MediumChoice::vacuum},
                                         {"dielectric", MediumChoice::dielectric},
                                         {"magnetic", MediumChoice::magnetic},
                                         {"magnetodielectric", MediumChoice::magnetodielectric},
                                         {"conducting", MediumChoice::conducting},
                                         {"permeable", MediumChoice::permeable}});
      read_lorentz(m, "eps", cfg.eps);
      read_lorentz(m, "mu", cfg.mu);
      cfg.eps.kind = MediumKind::electric;
      cfg.mu.kind = MediumKind::magnetic;
    }
    if (root.has("geometry")) {
      Reader g(root.at("geometry"), "geometry");
      std::string fam;
      if (g.text("family", fam))
        cfg.family = pick<Family>(g.field("family"), fam,
                                  {{"parallel", Family::parallel}, {"vertical", Family::vertical}, {"general", Family::general}});
      if (g.has("heights")) {
        const json &h = g.at("heights");
        if (!h.is_array() || h.empty()) throw ConfigError("config field 'geometry.heights' must be a non-empty array");
        cfg.heights.clear();
        for (const auto &v : h) {
          if (!v.is_number()) throw ConfigError("config field 'geometry.heights' must contain numbers");
          cfg.heights.push_back(v.get<double>());
        }
      }
      g.number("x_A", cfg.x_A);
      g.number("z_A", cfg.z_A);
      g.number("x_B", cfg.x_B);
      g.number("z_B", cfg.z_B);
    }
    if (root.has("sweep")) {
      Reader s(root.at("sweep"), "sweep");
      s.number("from", cfg.sweep.from);
      s.number("to", cfg.sweep.to);
      s.integer("points", cfg.sweep.points);
      std::string scale;
      if (s.text("scale", scale)) cfg.sweep.log = pick<bool>(s.field("scale"), scale, {{"log", true}, {"linear", false}});
    }
    root.number("rel_tol", cfg.rel_tol);
    root.boolean("forces", cfg.forces);
    root.integer("threads", cfg.threads);
    if (root.has("output")) {
      Reader o(root.at("output"), "output");
      o.text("path", cfg.output);
      std::string f;
      if (o.text("format", f)) cfg.format = pick<Format>(o.field("format"), f, {{"csv", Format::csv}, {"json", Format::json}});
    }
  }
  check(cfg);
  return cfg;
}

ScenarioConfig load_config(const std::string &path, const ScenarioConfig &base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str(), base);
  } catch (const ConfigError &e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string effective_config(const ScenarioConfig &cfg, bool pretty) {
  json j = {
      {"atoms", {{"a", atom_json(cfg.atoms.a)}, {"b", atom_json(cfg.atoms.b)}}},
      {"medium", {{"kind", medium_name(cfg.medium)}, {"eps", lorentz_json(cfg.eps)}, {"mu", lorentz_json(cfg.mu)}}},
      {"geometry",
       {{"family", family_name(cfg.family)},
        {"heights", cfg.heights},
        {"x_A", cfg.x_A},
        {"z_A", cfg.z_A},
        {"x_B", cfg.x_B},
        {"z_B", cfg.z_B}}},
      {"sweep",
       {{"from", cfg.sweep.from},
        {"to", cfg.sweep.to},
        {"points", cfg.sweep.points},
        {"scale", cfg.sweep.log ? "log" : "linear"}}},
      {"rel_tol", cfg.rel_tol},
      {"forces", cfg.forces},
      {"threads", cfg.threads},
      {"output", {{"path", cfg.output}, {"format", cfg.format == Format::csv ? "csv" : "json"}}},
  };
  return pretty ? j.dump(2) : j.dump();
}

void check(const ScenarioConfig &cfg) {
  const Sweep &s = cfg.sweep;
  if (s.points < 1) throw ConfigError("config field 'sweep.points' must be >= 1");
  if (!(s.from > 0.0) || !(s.to > 0.0)) throw ConfigError("config field 'sweep': separations must be positive");
  if (s.points > 1 && !(s.to > s.from)) throw ConfigError("config field 'sweep': 'to' must exceed 'from'");
  if (!(cfg.rel_tol > 0.0) || !(cfg.rel_tol < 1.0)) throw ConfigError("config field 'rel_tol' must lie in (0, 1)");
  if (cfg.threads < 0) throw ConfigError("config field 'threads' must be >= 0");
  if (cfg.family == Family::general) {
    if (!(cfg.z_A > 0.0) || !(cfg.z_B > 0.0)) throw ConfigError("config field 'geometry': z_A and z_B must be positive");
    if (cfg.x_A == cfg.x_B && cfg.z_A == cfg.z_B) throw ConfigError("config field 'geometry': atoms coincide");
  } else {
    for (double h : cfg.heights)
      if (!(h > 0.0)) throw ConfigError("config field 'geometry.heights' must be positive");
  }
}

HalfSpaceMedium make_medium(const ScenarioConfig &cfg) {
  switch (cfg.medium) {
  case MediumChoice::vacuum: return HalfSpaceMedium::vacuum();
  case MediumChoice::dielectric: return HalfSpaceMedium::dielectric(cfg.eps);
  case MediumChoice::magnetic: return HalfSpaceMedium::magnetic(cfg.mu);
  case MediumChoice::magnetodielectric: return HalfSpaceMedium::lorentz(cfg.eps, cfg.mu);
  case MediumChoice::conducting: return HalfSpaceMedium::perfect(PerfectPlate::conducting);
  case MediumChoice::permeable: return HalfSpaceMedium::perfect(PerfectPlate::permeable);
  }
  throw InternalError("unknown medium");
}

std::vector<double> sweep_points(const Sweep &s) {
  std::vector<double> v;
  if (s.points == 1) return {s.from};
  for (int i = 0; i < s.points; ++i) {
    const double t = static_cast<double>(i) / (s.points - 1);
    v.push_back(s.log ? std::exp(std::log(s.from) + t * (std::log(s.to) - std::log(s.from)))
                      : s.from + t * (s.to - s.from));
  }
  v.back() = s.to;
  return v;
}

bool Table::all_ok() const {
  for (const auto &s : status)
    if (s != "ok") return false;
  return true;
}

Table free_space(const ScenarioConfig &cfg) {
  Table t;
  t.kind = "free-space";
  t.columns = {"l", "U", "U_retarded", "U_nonretarded", "force_on_B", "power"};
  const bool em = cfg.atoms.b.kind == AtomKind::magnetic;
  if (cfg.atoms.a.kind != AtomKind::electric)
    throw ConfigError("config field 'atoms.a.kind': atom A must be electric");
  const auto c = asymptotic_coefficients(cfg.atoms);
  const PairKind kind = em ? PairKind::electric_magnetic : PairKind::electric_electric;
  const auto ls = sweep_points(cfg.sweep);
  const double tol = std::min(cfg.rel_tol, 1e-6);
  fill(t, ls.size(), cfg.threads, [&](std::size_t i) {
    const double l = ls[i];
    const double u = u0_free(l, cfg.atoms, tol);
    const double ret = em ? c.c7_em / std::pow(l, 7) : -c.c7_ee / std::pow(l, 7);
    const double nonret = em ? c.c4 / std::pow(l, 4) : -c.c6 / std::pow(l, 6);
    const double f = free_space_force(l, cfg.atoms, kind, tol).on_B;
    return std::vector<double>{l, u, ret, nonret, f, l * f / u};
  });
  t.notes.push_back(em ? "pair: electric A, magnetic B" : "pair: electric A, electric B");
  return t;
}

Table half_space(const ScenarioConfig &cfg) {
  Table t;
  t.kind = "half-space";
  t.columns = {"height", "l", "x_A", "z_A", "x_B", "z_B", "U0", "U1", "U2", "U", "ratio", "abs_error"};
  if (cfg.forces)
    for (const char *c : {"F_on_A_x", "F_on_A_z", "F_on_B_x", "F_on_B_z", "force_ratio_A", "force_ratio_B"})
      t.columns.push_back(c);
  const HalfSpaceMedium medium = make_medium(cfg);
  const auto ls = sweep_points(cfg.sweep);
  const auto hs = heights_of(cfg);
  struct Point {
    double h, l;
  };
  std::vector<Point> pts;
  for (double h : hs)
    for (double l : ls) pts.push_back({h, l});
  fill(t, pts.size(), cfg.threads, [&](std::size_t i) {
    const auto g = geometry_at(cfg, pts[i].h, pts[i].l);
    const auto p = u_total(g, cfg.atoms, medium, cfg.rel_tol);
    std::vector<double> v = {pts[i].h, g.l(), g.x_A(), g.z_A(), g.x_B(), g.z_B(), p.u0, p.u1, p.u2, p.total, p.ratio,
                             p.abs_error};
    if (cfg.forces) {
      ForceOptions fo;
      fo.rel_tol = std::min(1e-9, cfg.rel_tol);
      const auto f = halfspace_forces(g, cfg.atoms, medium, fo);
      const double f0 = free_space_force(g.l(), cfg.atoms, PairKind::electric_electric).on_B;
      const double ex = g.X() / g.l(), ez = g.Z() / g.l();
      // Components along the connecting line, B pulled toward A counting as f0 < 0.
      const double along_B = f.f_on_B.x * ex + f.f_on_B.z * ez;
      const double along_A = -(f.f_on_A.x * ex + f.f_on_A.z * ez);
      v.insert(v.end(), {f.f_on_A.x, f.f_on_A.z, f.f_on_B.x, f.f_on_B.z, along_A / f0, along_B / f0});
    }
    return v;
  });
  t.notes.push_back(std::string("medium: ") + medium_name(cfg.medium) + ", family: " + family_name(cfg.family));
  return t;
}

const std::vector<std::string> &limit_case_names() {
  static const std::vector<std::string> names = {"all",
                                                 "retarded-conducting",
                                                 "retarded-permeable",
                                                 "nonretarded-parallel",
                                                 "nonretarded-vertical",
                                                 "threshold-vertical-conducting",
                                                 "threshold-vertical-permeable",
                                                 "nonretarded-medium"};
  return names;
}

LimitCase parse_limit_case(const std::string &name) {
  const auto &n = limit_case_names();
  for (std::size_t i = 0; i < n.size(); ++i)
    if (n[i] == name) return static_cast<LimitCase>(i);
  std::string all;
  for (const auto &s : n) all += (all.empty() ? "" : ", ") + s;
  throw ConfigError("unknown limit case '" + name + "' (expected one of " + all + ")");
}

Table limits(LimitCase which, const ScenarioConfig &cfg, PerfectPlate plate) {
  Table t;
  t.kind = "limits";
  const AtomPair &atoms = cfg.atoms;

  if (which == LimitCase::nonretarded_medium) {
    t.columns = {"height", "l", "U0", "U1", "U2", "U", "ratio"};
    const HalfSpaceMedium medium = make_medium(cfg);
    const auto ls = sweep_points(cfg.sweep);
    const auto hs = heights_of(cfg);
    for (double h : hs)
      for (double l : ls) {
        try {
          const auto g = geometry_at(cfg, h, l);
          PotentialBreakdown p;
          if (medium.is_perfect())
            p = perfect_nonretarded_closed(g, atoms, medium.plate());
          else if (medium.has_magnetic_response() && !medium.has_electric_response())
            p = nonretarded_magnetic_closed(g, atoms, medium);
          else
            p = nonretarded_electric_closed(g, atoms, medium);
          t.rows.push_back({h, l, p.u0, p.u1, p.u2, p.total, p.ratio});
          t.status.push_back("ok");
        } catch (const std::exception &e) {
          t.rows.push_back({h, l, kNaN, kNaN, kNaN, kNaN, kNaN});
          t.status.push_back(e.what());
        }
      }
    t.notes.push_back(std::string("nonretarded closed forms, medium: ") + medium_name(cfg.medium));
    return t;
  }

  // Named scalar results: one row each, labelled in the notes.
  t.columns = {"case", "value", "u1_over_u0", "u2_over_u0"};
  int index = 0;
  auto add = [&](const std::string &label, double value, double r1, double r2) {
    t.rows.push_back({static_cast<double>(index++), value, r1, r2});
    t.status.push_back("ok");
    t.notes.push_back("case " + std::to_string(index - 1) + ": " + label);
  };
  // z_A -> 0 along the vertical family; z -> 0 in the parallel case.
  const double lr = 100.0 / std::min(atoms.a.omega10, atoms.b.omega10);
  const double ln = 1e-4 / std::max(atoms.a.omega10, atoms.b.omega10);
  auto retarded = [&](PerfectPlate p, const char *label) {
    const auto r = perfect_retarded_closed(PlanarGeometry::vertical(1e-13 * lr, lr), atoms, p);
    add(std::string("retarded on-surface vertical ratio, ") + label, r.ratio, r.u1 / r.u0, r.u2 / r.u0);
  };
  auto nonretarded = [&](Alignment al) {
    const auto g = al == Alignment::parallel ? PlanarGeometry::parallel(ln, 0.5e-13 * ln)
                                             : PlanarGeometry::vertical(1e-13 * ln, ln);
    const auto r = perfect_nonretarded_closed(g, atoms, plate);
    add(std::string("nonretarded on-surface ") + (al == Alignment::parallel ? "parallel" : "vertical") + " ratio, " +
            (plate == PerfectPlate::conducting ? "conducting" : "permeable"),
        r.ratio, r.u1 / r.u0, r.u2 / r.u0);
  };
  auto thr = [&](ThresholdCase c, const char *label) { add(label, threshold(c), kNaN, kNaN); };

  const bool all = which == LimitCase::all;
  if (all || which == LimitCase::retarded_conducting) retarded(PerfectPlate::conducting, "conducting");
  if (all || which == LimitCase::retarded_permeable) retarded(PerfectPlate::permeable, "permeable");
  if (all || which == LimitCase::nonretarded_parallel) nonretarded(Alignment::parallel);
  if (all || which == LimitCase::nonretarded_vertical) nonretarded(Alignment::vertical);
  if (all || which == LimitCase::threshold_vertical_conducting)
    thr(ThresholdCase::retarded_conducting_vertical, "threshold z_B/z_A, retarded conducting vertical");
  if (all || which == LimitCase::threshold_vertical_permeable)
    thr(ThresholdCase::nonretarded_permeable_vertical, "threshold z_B/z_A, nonretarded permeable vertical");
  return t;
}

Table thresholds(const ScenarioConfig &cfg) {
  Table t;
  t.kind = "thresholds";
  t.columns = {"t", "retarded_conducting", "nonretarded_permeable"};
  const double r = threshold(ThresholdCase::retarded_conducting_vertical);
  const double n = threshold(ThresholdCase::nonretarded_permeable_vertical);
  t.notes.push_back("root retarded conducting vertical: " + number_text(r));
  t.notes.push_back("root nonretarded permeable vertical: " + number_text(n));
  t.notes.push_back("columns 2-3: (u1 + u2) from the closed forms at z_B/z_A = t, sign change at the root");
  Sweep s = cfg.sweep;
  s.from = 1.01;
  s.to = 100.0;
  for (double x : sweep_points(s)) {
    t.rows.push_back({x, threshold_function(ThresholdCase::retarded_conducting_vertical, x),
                      threshold_function(ThresholdCase::nonretarded_permeable_vertical, x)});
    t.status.push_back("ok");
  }
  return t;
}

void write(std::ostream &os, const Table &t, const ScenarioConfig &cfg) {
  if (cfg.format == Format::json) {
    json rows = json::array();
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      json row = json::object();
      for (std::size_t c = 0; c < t.columns.size(); ++c) {
        const double v = t.rows[i][c];
        row[t.columns[c]] = std::isnan(v) ? json(nullptr) : json(v);
      }
      row["status"] = t.status[i];
      rows.push_back(row);
    }
    const json doc = {{"kind", t.kind},
                      {"format_version", 1},
                      {"units", "hbar = c = eps0 = mu0 = 1; lengths in c/omega_ref, energies in hbar omega_ref"},
                      {"rel_tol", cfg.rel_tol},
                      {"notes", t.notes},
                      {"config", json::parse(effective_config(cfg))},
                      {"columns", t.columns},
                      {"rows", rows}};
    os << std::setw(2) << doc << '\n';
    return;
  }
  os << "# vdwcalc " << t.kind << " table, format version 1\n";
  os << "# units: hbar = c = eps0 = mu0 = 1; lengths in c/omega_ref, energies in hbar omega_ref\n";
  os << "# rel_tol: " << number_text(cfg.rel_tol) << '\n';
  for (const auto &n : t.notes) os << "# " << n << '\n';
  os << "# config: " << effective_config(cfg) << '\n';
  for (const auto &c : t.columns) os << c << ',';
  os << "status\n";
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    for (double v : t.rows[i]) os << number_text(v) << ',';
    std::string s = t.status[i];
    for (char &ch : s)
      if (ch == ',' || ch == '\n') ch = ';';
    os << s << '\n';
  }
}

} // namespace vdw::scenario
