#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vdw/greens.hpp"

namespace vdw {

enum class Alignment { parallel, vertical };

struct ImageCase {
  PerfectPlate plate;
  Alignment alignment;
};

struct SignPrediction {
  int sign; // +1 or -1
  std::string explanation;
};

// Sign of the cross term u1 for an ideal plate from the image-dipole picture.
SignPrediction predict_u1_sign(const ImageCase &c);

struct ImageCheck {
  ImageCase c;
  PlanarGeometry geom;
  int predicted;
  double u1_closed; // nonretarded closed-form cross term
  bool agrees;
};

struct ImageReport {
  std::vector<ImageCheck> checks;
  bool all_agree() const;
};

// Evaluate the nonretarded closed-form u1 at `per_case` random geometries for
// each of the four (plate, alignment) cases and compare signs with the
// predictor.
ImageReport verify_against_closed_forms(int per_case = 10, std::uint64_t seed = 20240607);

const char *to_string(PerfectPlate p);
const char *to_string(Alignment a);

} // namespace vdw
