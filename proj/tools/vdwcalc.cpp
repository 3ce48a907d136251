// vdwcalc: two-atom van der Waals potentials and forces in free space and
// near a half space.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure,
// 3 validation failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "vdw/error.hpp"
#include "vdw/potentials.hpp"
#include "vdw/quadrature.hpp"
#include "vdw/scenario.hpp"
#include "vdw/validation.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 1, kNumerical = 2, kValidation = 3 };

struct Common {
  std::string config_path;
  std::optional<double> rel_tol;
  std::optional<int> points;
  bool log = false, linear = false;
  std::optional<std::string> output;
  std::optional<std::string> format;
  std::optional<int> threads;
  bool print_config = false;
};

void add_common(CLI::App *cmd, Common &c) {
  cmd->add_option("--config", c.config_path, "JSON scenario file")->check(CLI::ExistingFile);
  cmd->add_option("--rel-tol", c.rel_tol, "relative quadrature tolerance");
  cmd->add_option("--points", c.points, "number of sweep points");
  auto *lg = cmd->add_flag("--log", c.log, "logarithmic sweep spacing");
  auto *ln = cmd->add_flag("--linear", c.linear, "linear sweep spacing");
  lg->excludes(ln);
  cmd->add_option("--output", c.output, "output file ('-' for stdout)");
  cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", c.threads, "worker threads (0: all cores)");
  cmd->add_flag("--print-config", c.print_config, "print the effective configuration and exit");
}

vdw::scenario::ScenarioConfig resolve(const Common &c) {
  using namespace vdw::scenario;
  ScenarioConfig cfg = c.config_path.empty() ? default_config() : load_config(c.config_path);
  if (c.rel_tol) cfg.rel_tol = *c.rel_tol;
  if (c.points) cfg.sweep.points = *c.points;
  if (c.log) cfg.sweep.log = true;
  if (c.linear) cfg.sweep.log = false;
  if (c.output) cfg.output = *c.output;
  if (c.format) cfg.format = *c.format == "json" ? Format::json : Format::csv;
  if (c.threads) cfg.threads = *c.threads;
  check(cfg);
  return cfg;
}

int emit(const vdw::scenario::Table &t, const vdw::scenario::ScenarioConfig &cfg) {
  if (cfg.output == "-") {
    vdw::scenario::write(std::cout, t, cfg);
  } else {
    std::ofstream out(cfg.output);
    if (!out) throw vdw::scenario::ConfigError("cannot write output file '" + cfg.output + "'");
    vdw::scenario::write(out, t, cfg);
  }
  if (!t.all_ok()) {
    std::size_t bad = 0;
    for (const auto &s : t.status) bad += s != "ok";
    std::cerr << "vdwcalc: " << bad << " of " << t.rows.size() << " rows failed (see status column)\n";
    return kNumerical;
  }
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Two-atom van der Waals potentials in free space and near a magneto-electric half space"};
  app.require_subcommand(1);

  Common c_free, c_half, c_lim, c_thr;
  auto *free_cmd = app.add_subcommand("free-space", "free-space potential, asymptotes and force along a sweep in l");
  add_common(free_cmd, c_free);
  auto *half_cmd = app.add_subcommand("half-space", "bulk, cross and scattering terms near the half space");
  add_common(half_cmd, c_half);
  auto *lim_cmd = app.add_subcommand("limits", "closed-form limits and thresholds");
  add_common(lim_cmd, c_lim);
  std::string limit_case = "all", plate = "conducting";
  lim_cmd->add_option("--case", limit_case, "limit case")->check(CLI::IsMember(vdw::scenario::limit_case_names()));
  lim_cmd->add_option("--plate", plate, "ideal reflector for the nonretarded on-surface cases")
      ->check(CLI::IsMember({"conducting", "permeable"}));
  auto *thr_cmd = app.add_subcommand("thresholds", "height ratios where u1 + u2 changes sign");
  add_common(thr_cmd, c_thr);

  auto *val_cmd = app.add_subcommand("validate", "run the acceptance and invariant checks");
  std::vector<std::string> only;
  double val_tol = 1e-6;
  std::string fault = "none";
  val_cmd->add_option("--only", only, "check ids to run (default: all)");
  val_cmd->add_option("--rel-tol", val_tol, "tolerance of the full-quadrature checks");
  val_cmd->add_option("--inject-fault", fault, "deliberate defect, for testing the checks")
      ->check(CLI::IsMember({"none", "flip-u2-sign"}));
  bool list = false;
  val_cmd->add_flag("--list", list, "list check ids and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*val_cmd) {
      namespace v = vdw::validation;
      if (list) {
        for (const auto &ch : v::registry()) std::cout << ch.id << "  " << ch.title << '\n';
        return kOk;
      }
      if (!(val_tol > 0.0 && val_tol < 1.0)) throw vdw::scenario::ConfigError("--rel-tol must lie in (0, 1)");
      for (const auto &id : only) {
        bool known = false;
        for (const auto &ch : v::registry()) known = known || ch.id == id;
        if (!known) throw vdw::scenario::ConfigError("unknown check id '" + id + "'");
      }
      vdw::ScopedFault injected(fault == "flip-u2-sign" ? vdw::Fault::flip_u2_integrand_sign : vdw::Fault::none);
      v::Settings s;
      s.rel_tol = val_tol;
      std::vector<v::Result> results;
      for (const auto &ch : v::registry()) {
        if (!only.empty() && std::find(only.begin(), only.end(), ch.id) == only.end()) continue;
        auto r = v::run({ch.id}, s);
        std::cout << v::format(r.front()) << std::endl;
        results.push_back(std::move(r.front()));
      }
      std::size_t passed = 0;
      for (const auto &r : results) passed += r.passed;
      std::cout << passed << "/" << results.size() << " checks passed\n";
      return v::all_passed(results) ? kOk : kValidation;
    }

    struct Dispatch {
      CLI::App *cmd;
      Common *common;
    };
    for (const Dispatch d : {Dispatch{free_cmd, &c_free}, Dispatch{half_cmd, &c_half}, Dispatch{lim_cmd, &c_lim},
                             Dispatch{thr_cmd, &c_thr}}) {
      if (!*d.cmd) continue;
      const auto cfg = resolve(*d.common);
      if (d.common->print_config) {
        std::cout << vdw::scenario::effective_config(cfg, true) << '\n';
        return kOk;
      }
      if (d.cmd == free_cmd) return emit(vdw::scenario::free_space(cfg), cfg);
      if (d.cmd == half_cmd) return emit(vdw::scenario::half_space(cfg), cfg);
      if (d.cmd == lim_cmd)
        return emit(vdw::scenario::limits(vdw::scenario::parse_limit_case(limit_case), cfg,
                                          plate == "permeable" ? vdw::PerfectPlate::permeable
                                                               : vdw::PerfectPlate::conducting),
                    cfg);
      return emit(vdw::scenario::thresholds(cfg), cfg);
    }
  } catch (const vdw::scenario::ConfigError &e) {
    std::cerr << "vdwcalc: configuration error: " << e.what() << '\n';
    return kConfig;
  } catch (const vdw::quad::ConvergenceError &e) {
    std::cerr << "vdwcalc: numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const vdw::RegimeError &e) {
    std::cerr << "vdwcalc: " << e.what() << '\n';
    return kNumerical;
  } catch (const vdw::DomainError &e) {
    std::cerr << "vdwcalc: invalid input: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception &e) {
    std::cerr << "vdwcalc: numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}
