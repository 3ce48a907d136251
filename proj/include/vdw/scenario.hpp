#pragma once

// Scenario configuration and batch evaluation behind the vdwcalc tool:
// sweeps over the atom separation (optionally at several heights), tabular
// results, and CSV/JSON emission.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "vdw/greens.hpp"
#include "vdw/materials.hpp"
#include "vdw/potentials.hpp"

namespace vdw::scenario {

// Malformed or inconsistent configuration; the message names the field.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class MediumChoice { vacuum, dielectric, magnetic, magnetodielectric, conducting, permeable };
enum class Family { parallel, vertical, general };
enum class Format { csv, json };

struct Sweep {
  double from = 1e-3;
  double to = 10.0;
  int points = 25;
  bool log = true;
};

struct ScenarioConfig {
  AtomPair atoms;
  MediumChoice medium = MediumChoice::dielectric;
  LorentzMedium eps = LorentzMedium::electric(3.0, 1.0, 0.001);
  LorentzMedium mu = LorentzMedium::magnetic(3.0, 1.0, 0.001);

  Family family = Family::parallel;
  // Atom height (parallel) or height of A (vertical); one table block each.
  std::vector<double> heights = {0.01, 0.2, 1.0};
  // Reference configuration of the general family; the sweep rescales
  // r_B - r_A to the requested separation.
  double x_A = 0.0, z_A = 0.1, x_B = 0.1, z_B = 0.2;

  Sweep sweep;
  double rel_tol = 1e-6;
  bool forces = false;
  int threads = 0; // 0: one per hardware thread

  std::string output = "-";
  Format format = Format::csv;
};

// Defaults: Fig. 5 parameters (wP = 3, wT = 1, gamma = 0.001 in units of
// the atomic resonance; heights 0.01, 0.2, 1).
ScenarioConfig default_config();

// JSON text, possibly partial; absent keys keep `base` values. Unknown keys
// and invalid values raise ConfigError.
ScenarioConfig parse_config(const std::string &json_text, const ScenarioConfig &base = default_config());
ScenarioConfig load_config(const std::string &path, const ScenarioConfig &base = default_config());

// Complete configuration as JSON; feeding it back reproduces `cfg`.
std::string effective_config(const ScenarioConfig &cfg, bool pretty = false);

// Throws ConfigError if the configuration is unusable.
void check(const ScenarioConfig &cfg);

HalfSpaceMedium make_medium(const ScenarioConfig &cfg);
std::vector<double> sweep_points(const Sweep &s);

struct Table {
  std::string kind;                      // "free-space", "half-space", ...
  std::vector<std::string> columns;      // numeric columns
  std::vector<std::vector<double>> rows; // NaN where a row failed
  std::vector<std::string> status;       // "ok" or the error message, per row
  std::vector<std::string> notes;        // extra header lines

  bool all_ok() const;
};

// Rows l, U, U_ret, U_nonret, force_on_B, power. power = -dln|U|/dln l.
Table free_space(const ScenarioConfig &cfg);

// Rows per (height, l): geometry, U0, U1, U2, U, ratio, error estimate and,
// with cfg.forces, both forces and their ratios to the free-space force.
Table half_space(const ScenarioConfig &cfg);

enum class LimitCase {
  all,
  retarded_conducting,
  retarded_permeable,
  nonretarded_parallel,
  nonretarded_vertical,
  threshold_vertical_conducting,
  threshold_vertical_permeable,
  nonretarded_medium, // closed forms for the configured medium along the sweep
};
LimitCase parse_limit_case(const std::string &name);
const std::vector<std::string> &limit_case_names();

// `plate` selects the reflector for the nonretarded on-surface cases.
Table limits(LimitCase which, const ScenarioConfig &cfg, PerfectPlate plate = PerfectPlate::conducting);

// Both threshold ratios plus the sign function along a t grid.
Table thresholds(const ScenarioConfig &cfg);

void write(std::ostream &os, const Table &t, const ScenarioConfig &cfg);

// Evaluate f(i) for i in [0, n) on `threads` workers; results keep index order.
template <class R, class F> std::vector<R> parallel_map(std::size_t n, int threads, F f);

} // namespace vdw::scenario

#include "vdw/detail/parallel_map.hpp"
