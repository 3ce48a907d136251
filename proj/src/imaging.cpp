#include "vdw/imaging.hpp"

#include <cmath>
#include <random>

#include "vdw/potentials.hpp"

namespace vdw {

const char *to_string(PerfectPlate p) { return p == PerfectPlate::conducting ? "conducting" : "permeable"; }
const char *to_string(Alignment a) { return a == Alignment::parallel ? "parallel" : "vertical"; }

SignPrediction predict_u1_sign(const ImageCase &c) {
  const bool conducting = c.plate == PerfectPlate::conducting;
  if (c.alignment == Alignment::parallel) {
    if (conducting)
      return {+1, "parallel dipoles above a conductor: each image dipole is antiparallel to its source, so the "
                  "image of A anti-correlates with B and weakens the attraction (u1 > 0)"};
    return {-1, "parallel dipoles above a permeable plate: the image keeps the source orientation and adds to "
                "the correlation with B (u1 < 0)"};
  }
  if (conducting)
    return {-1, "dipoles on a common normal above a conductor: the image of a normal dipole is parallel to it, "
                "reinforcing the head-to-tail alignment with B (u1 < 0)"};
  return {+1, "dipoles on a common normal above a permeable plate: the image of a normal dipole is reversed and "
              "opposes the alignment with B (u1 > 0)"};
}

bool ImageReport::all_agree() const {
  for (const auto &c : checks)
    if (!c.agrees) return false;
  return !checks.empty();
}

ImageReport verify_against_closed_forms(int per_case, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Log-uniform lengths well inside the nonretarded regime.
  std::uniform_real_distribution<double> logdist(-5.0, -3.0);
  auto draw = [&] { return std::pow(10.0, logdist(rng)); };

  RegimeGuard guard;
  const AtomPair atoms = AtomPair::unit_electric();
  ImageReport report;
  for (PerfectPlate plate : {PerfectPlate::conducting, PerfectPlate::permeable}) {
    for (Alignment al : {Alignment::parallel, Alignment::vertical}) {
      const ImageCase c{plate, al};
      const int predicted = predict_u1_sign(c).sign;
      for (int i = 0; i < per_case; ++i) {
        const double l = draw(), z = draw();
        const PlanarGeometry g = al == Alignment::parallel ? PlanarGeometry::parallel(l, z)
                                                           : PlanarGeometry::vertical(z, l);
        const double u1 = perfect_nonretarded_closed(g, atoms, plate, guard).u1;
        const int got = u1 > 0.0 ? 1 : (u1 < 0.0 ? -1 : 0);
        report.checks.push_back({c, g, predicted, u1, got == predicted});
      }
    }
  }
  return report;
}

} // namespace vdw
