#pragma once

#include "vdw/potentials.hpp"
#include "vdw/tensor.hpp"

namespace vdw {

enum class PairKind { electric_electric, electric_magnetic };

// Radial force in free space. `on_B` is the component along e = (r_B - r_A)/l:
// negative means B is pulled toward A. The force on A is its mirror image.
struct FreeSpaceForce {
  double on_B = 0.0;
  double magnitude() const { return on_B < 0.0 ? -on_B : on_B; }
};

FreeSpaceForce free_space_force(double l, const AtomPair &atoms, PairKind kind, double rel_tol = 1e-10);

struct ForcePair {
  Vec3 f_on_A;
  Vec3 f_on_B;
};

struct ForceOptions {
  double step = 1e-3;       // h = step * min(l, z_A, z_B)
  double rel_tol = 1e-9;    // quadrature tolerance of each potential evaluation
  bool richardson = true;   // combine steps h and h/2
};

// F_A = -grad_A U and F_B = -grad_B U by central differences of u_total.
// Near a body these are not opposite to each other.
ForcePair halfspace_forces(const PlanarGeometry &geom, const AtomPair &atoms, const HalfSpaceMedium &medium,
                           const ForceOptions &opt = {});

} // namespace vdw
