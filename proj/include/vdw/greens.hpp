#pragma once

// Green tensors on the imaginary frequency axis: the free-space (bulk) part
// and the scattering part of a planar half space occupying z < 0.
//
// Conventions: both atoms lie in the xz plane above the surface,
// X = x_B - x_A, Z = z_B - z_A, Z+ = z_A + z_B. Scattering components are
// those of G1(r_A, r_B, iu); reciprocity gives G1(r_B, r_A) = G1(r_A, r_B)^T.

#include <array>
#include <variant>

#include "vdw/materials.hpp"
#include "vdw/quadrature.hpp"
#include "vdw/tensor.hpp"

namespace vdw {

class PlanarGeometry {
public:
  // Throws DomainError unless z_A, z_B > 0 and the atoms are distinct.
  static PlanarGeometry make(double x_A, double z_A, double x_B, double z_B);
  // Both atoms at height z, separated by l along x.
  static PlanarGeometry parallel(double l, double z);
  // Atom A at height z_A, atom B straight above it at z_A + l.
  static PlanarGeometry vertical(double z_A, double l);

  double x_A() const { return xa_; }
  double z_A() const { return za_; }
  double x_B() const { return xb_; }
  double z_B() const { return zb_; }

  double X() const { return xb_ - xa_; }
  double Z() const { return zb_ - za_; }
  double Zp() const { return za_ + zb_; }
  double l() const;
  double lp() const;

  Vec3 r_A() const { return {xa_, 0.0, za_}; }
  Vec3 r_B() const { return {xb_, 0.0, zb_}; }

  // Same configuration with the roles of A and B exchanged.
  PlanarGeometry swapped() const { return make(xb_, zb_, xa_, za_); }
  PlanarGeometry moved(double dx_A, double dz_A, double dx_B, double dz_B) const {
    return make(xa_ + dx_A, za_ + dz_A, xb_ + dx_B, zb_ + dz_B);
  }

private:
  PlanarGeometry(double xa, double za, double xb, double zb) : xa_(xa), za_(za), xb_(xb), zb_(zb) {}
  double xa_, za_, xb_, zb_;
};

enum class PerfectPlate { conducting, permeable };

// Half space z < 0: either a Lorentz magneto-electric medium or an ideal
// reflector.
class HalfSpaceMedium {
public:
  static HalfSpaceMedium lorentz(const LorentzMedium &eps, const LorentzMedium &mu);
  static HalfSpaceMedium dielectric(const LorentzMedium &eps) { return lorentz(eps, LorentzMedium::vacuum()); }
  static HalfSpaceMedium magnetic(const LorentzMedium &mu) { return lorentz(LorentzMedium::vacuum(), mu); }
  static HalfSpaceMedium vacuum() { return lorentz(LorentzMedium::vacuum(), LorentzMedium::vacuum()); }
  static HalfSpaceMedium perfect(PerfectPlate plate);

  bool is_perfect() const { return std::holds_alternative<PerfectPlate>(state_); }
  PerfectPlate plate() const; // throws unless is_perfect()
  bool is_vacuum() const;
  bool has_electric_response() const;
  bool has_magnetic_response() const;

  // Response functions of a finite medium; throw for an ideal reflector.
  double eps_iu(double u) const;
  double mu_iu(double u) const;
  double eps_static() const { return eps_iu(0.0); }
  double mu_static() const { return mu_iu(0.0); }
  // Extreme transverse resonance frequencies among the active responses
  // (0 for an ideal reflector or vacuum).
  double max_frequency() const;
  double min_frequency() const;

private:
  struct Finite {
    LorentzMedium eps, mu;
  };
  explicit HalfSpaceMedium(std::variant<Finite, PerfectPlate> s) : state_(s) {}
  std::variant<Finite, PerfectPlate> state_;
};

struct Reflection {
  double rs, rp;
};

// Fresnel coefficients at imaginary frequency, b = sqrt(u^2 + q^2).
Reflection reflection(double q, double u, const HalfSpaceMedium &medium);

// Retarded, dispersionless coefficients as functions of v = b/u >= 1.
Reflection static_reflection(double v, double eps0, double mu0);

// Small-u/(b c) expansion of reflection() to second order.
Reflection reflection_expansion(double q, double u, const HalfSpaceMedium &medium);

// Free-space Green tensor G0(r, r', iu) for rho = r - r'.
Mat3 free_space_green(const Vec3 &rho, double u);

struct FreeSpaceCurls {
  Mat3 left;  // curl acting on the first argument: curl G0(r, r')
  Mat3 right; // G0(r, r') x <-curl'
};
FreeSpaceCurls free_space_curls(const Vec3 &rho, double u);

struct GreenComponents {
  double gxx = 0.0, gyy = 0.0, gxz = 0.0, gzx = 0.0, gzz = 0.0;

  Mat3 tensor() const;
};

// The four q-integrals from which every scattering component (and the
// two-atom potentials built on them) follows:
//   f[0] = int dq q e^{-bZ+} J0(qX) (rs/b - b rp/k^2)
//   f[1] = int dq q e^{-bZ+} J2(qX) (rs/b + b rp/k^2)
//   f[2] = int dq q^3 e^{-bZ+} J0(qX) rp / (b k^2)
//   f[3] = int dq q^2 e^{-bZ+} J1(qX) rp / k^2
// with k = u.
struct ScatteringFactors {
  std::array<double, 4> f{};
  std::array<double, 4> abs_error{};
  long evaluations = 0;
};

// Quadrature settings for q-integrals: scale 1/Z+ (wider at large u) and a
// subdivision budget that grows with the number of J(qX) oscillations
// inside the e^{-bZ+} envelope.
quad::QuadSpec q_integration_spec(const PlanarGeometry &geom, double u, double rel_tol);

ScatteringFactors scattering_factors(const PlanarGeometry &geom, double u, const HalfSpaceMedium &medium,
                                     double rel_tol = 1e-10);

GreenComponents components_from_factors(const ScatteringFactors &sf);

// G1(r_A, r_B, iu) by q-quadrature.
GreenComponents halfspace_scattering(const PlanarGeometry &geom, double u, const HalfSpaceMedium &medium,
                                     double rel_tol = 1e-10);

// Nonretarded closed forms for an ideal reflector, a purely electric, or a
// purely magnetic half space. Valid for u l+ / c << 1; a medium with both
// electric and magnetic response is rejected.
GreenComponents nonretarded_scattering(const PlanarGeometry &geom, double u, const HalfSpaceMedium &medium);

// Retarded ideal-reflector forms for X << Z+ (J_nu(qX) -> delta_nu0).
GreenComponents retarded_perfect_scattering(const PlanarGeometry &geom, double u, PerfectPlate plate);

} // namespace vdw
