#include "vdw/forces.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "vdw/error.hpp"
#include "vdw/quadrature.hpp"
#include "vdw/specfun.hpp"

namespace vdw {

namespace {

constexpr double kPi3 = 3.14159265358979323846 * 3.14159265358979323846 * 3.14159265358979323846;

} // namespace

FreeSpaceForce free_space_force(double l, const AtomPair &atoms, PairKind kind, double rel_tol) {
  if (!(l > 0.0)) throw DomainError("free_space_force: separation must be > 0");
  validate(atoms.a);
  validate(atoms.b);
  const bool em = kind == PairKind::electric_magnetic;
  if (atoms.a.kind != AtomKind::electric || atoms.b.kind != (em ? AtomKind::magnetic : AtomKind::electric))
    throw DomainError("free_space_force: atom kinds do not match the pair kind");

  quad::QuadSpec s;
  s.rel_tol = rel_tol;
  s.abs_tol = 0.0;
  s.scale = std::min({atoms.a.omega10, atoms.b.omega10, 1.0 / l});
  s.transform = quad::Transform::algebraic;
  s.max_subdivisions = 2000;
  auto w = [&](double u) { return response_iu(atoms.a, u) * response_iu(atoms.b, u); };

  FreeSpaceForce f;
  if (!em) {
    const double v =
        quad::integrate_semiinf([&](double u) { return w(u) * specfun::ee_force_bracket(u * l); }, s, "u").value;
    f.on_B = -v / (8.0 * kPi3 * std::pow(l, 7));
  } else {
    const double v = quad::integrate_semiinf(
                         [&](double u) { return u * u * w(u) * specfun::em_force_bracket(u * l); }, s, "u")
                         .value;
    f.on_B = v / (8.0 * kPi3 * std::pow(l, 5));
  }
  return f;
}

ForcePair halfspace_forces(const PlanarGeometry &geom, const AtomPair &atoms, const HalfSpaceMedium &medium,
                           const ForceOptions &opt) {
  if (!(opt.step > 0.0)) throw DomainError("halfspace_forces: step must be > 0");
  const double h = opt.step * std::min({geom.l(), geom.z_A(), geom.z_B()});
  if (!(h < geom.z_A()) || !(h < geom.z_B()))
    throw DomainError("halfspace_forces: finite-difference step reaches the surface");

  auto energy = [&](double dxa, double dza, double dxb, double dzb) {
    return u_total(geom.moved(dxa, dza, dxb, dzb), atoms, medium, opt.rel_tol).total;
  };
  // Central difference along one coordinate; index 0..3 = x_A, z_A, x_B, z_B.
  auto central = [&](int which, double step) {
    double d[4] = {0.0, 0.0, 0.0, 0.0};
    d[which] = step;
    const double up = energy(d[0], d[1], d[2], d[3]);
    d[which] = -step;
    const double dn = energy(d[0], d[1], d[2], d[3]);
    return (up - dn) / (2.0 * step);
  };
  auto derivative = [&](int which) {
    const double d1 = central(which, h);
    if (!opt.richardson) return d1;
    const double d2 = central(which, 0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
  };

  ForcePair fp;
  fp.f_on_A = {-derivative(0), 0.0, -derivative(1)};
  fp.f_on_B = {-derivative(2), 0.0, -derivative(3)};
  return fp;
}

} // namespace vdw
