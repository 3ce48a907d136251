#pragma once

// Two-atom van der Waals potentials: free space (electric-electric and
// electric-magnetic pairs), the bulk/cross/scattering decomposition near a
// half space by quadrature, and the asymptotic closed forms.
//
// Reduced units (hbar = c = eps0 = mu0 = 1); energies in hbar w_ref.

#include "vdw/greens.hpp"
#include "vdw/materials.hpp"

namespace vdw {

struct AtomPair {
  ResonanceAtom a = ResonanceAtom::electric();
  ResonanceAtom b = ResonanceAtom::electric();

  static AtomPair unit_electric() { return {}; }
  static AtomPair unit_mixed() { return {ResonanceAtom::electric(), ResonanceAtom::magnetic()}; }
};

struct PotentialBreakdown {
  double u0 = 0.0, u1 = 0.0, u2 = 0.0;
  double total = 0.0;
  double ratio = 0.0; // total / u0
  double abs_error = 0.0;
  long evaluations = 0;

  static PotentialBreakdown assemble(double u0, double u1, double u2, double abs_error = 0.0, long evals = 0);
};

struct AsymptoticCoefficients {
  double c6 = 0.0;    // -C6/l^6, nonretarded ee
  double c7_ee = 0.0; // -C7/l^7, retarded ee
  double c7_em = 0.0; // +C7/l^7, retarded em
  double c4 = 0.0;    // +C4/l^4, nonretarded em
};

// Closed forms are only accepted where they are asymptotically valid:
// retarded forms need w_min l >= retarded_min, nonretarded ones need
// w_max l sqrt(eps(0) mu(0)) <= nonretarded_max.
struct RegimeGuard {
  double retarded_min = 50.0;
  double nonretarded_max = 0.02;
  bool enforce = true;
};

// ---- free space

double u0_ee(double l, const AtomPair &atoms, double rel_tol = 1e-10);
double u0_em(double l, const AtomPair &atoms, double rel_tol = 1e-10);
// Dispatches on the kind of atom B.
double u0_free(double l, const AtomPair &atoms, double rel_tol = 1e-10);

AsymptoticCoefficients asymptotic_coefficients(const AtomPair &atoms);

// ---- half space, by quadrature (both atoms electric)

// Cross term from the explicit (u, q) double integral.
double u1_halfspace(const PlanarGeometry &geom, const AtomPair &atoms, const HalfSpaceMedium &medium,
                    double rel_tol = 1e-6);

// Scattering term. The (q, q') integrand is a sum of products, so at each u
// it is evaluated as products of one-dimensional q-integrals.
double u2_halfspace(const PlanarGeometry &geom, const AtomPair &atoms, const HalfSpaceMedium &medium,
                    double rel_tol = 1e-6);

// Scattering term as a literal iterated (u, q, q') integral; slow, used to
// cross-check u2_halfspace.
double u2_halfspace_nested(const PlanarGeometry &geom, const AtomPair &atoms, const HalfSpaceMedium &medium,
                           double rel_tol = 1e-4);

// All three parts, sharing one set of q-integrals per frequency.
PotentialBreakdown u_total(const PlanarGeometry &geom, const AtomPair &atoms, const HalfSpaceMedium &medium,
                           double rel_tol = 1e-6);

// Frequency integrands (the quantity under int du) of the cross and
// scattering terms, two ways: from the explicit q-integrals and from
// traces of Green tensors.
double u1_integrand_explicit(const PlanarGeometry &geom, double u, const AtomPair &atoms,
                             const HalfSpaceMedium &medium, double rel_tol = 1e-11);
double u1_integrand_trace(const PlanarGeometry &geom, double u, const AtomPair &atoms,
                          const HalfSpaceMedium &medium, double rel_tol = 1e-11);
double u2_integrand_explicit(const PlanarGeometry &geom, double u, const AtomPair &atoms,
                             const HalfSpaceMedium &medium, double rel_tol = 1e-11);
double u2_integrand_trace(const PlanarGeometry &geom, double u, const AtomPair &atoms,
                          const HalfSpaceMedium &medium, double rel_tol = 1e-11);

// ---- closed forms

// Retarded ideal reflector, X << Z+.
PotentialBreakdown perfect_retarded_closed(const PlanarGeometry &geom, const AtomPair &atoms, PerfectPlate plate,
                                           const RegimeGuard &guard = {});

// Nonretarded ideal reflector, any in-plane geometry.
PotentialBreakdown perfect_nonretarded_closed(const PlanarGeometry &geom, const AtomPair &atoms,
                                              PerfectPlate plate, const RegimeGuard &guard = {});

struct RetardedParts {
  double u1 = 0.0, u2 = 0.0;
};

// Retarded magneto-electric half space with static eps0, mu0: u1 as a single
// integral over v = b/u of the weighted Bessel integrals, u2 as a double
// integral over (v, v') of M_nu.
RetardedParts retarded_halfspace_closed(const PlanarGeometry &geom, const AtomPair &atoms, double eps0,
                                        double mu0, const RegimeGuard &guard = {}, double rel_tol = 1e-8);

// Nonretarded purely electric half space.
PotentialBreakdown nonretarded_electric_closed(const PlanarGeometry &geom, const AtomPair &atoms,
                                               const HalfSpaceMedium &medium, const RegimeGuard &guard = {});

// Nonretarded purely magnetic half space (no u2 contribution at this order).
// Rejects mu(0) > 1e3.
PotentialBreakdown nonretarded_magnetic_closed(const PlanarGeometry &geom, const AtomPair &atoms,
                                               const HalfSpaceMedium &medium, const RegimeGuard &guard = {});

// Frequency integrals entering the nonretarded half-space forms.
struct NonretardedCoefficients {
  double D = 0.0; // electric, linear in (eps-1)/(eps+1)
  double E = 0.0; // electric, quadratic
  double F = 0.0; // magnetic
};
NonretardedCoefficients nonretarded_coefficients(const AtomPair &atoms, const HalfSpaceMedium &medium);

enum class ThresholdCase { retarded_conducting_vertical, nonretarded_permeable_vertical };

// Height ratio z_B/z_A along the vertical family at which u1 + u2 changes
// sign. Throws InternalError if no sign change lies in [t_lo, t_hi].
double threshold(ThresholdCase which, double tol = 1e-4, double t_lo = 1.001, double t_hi = 100.0);

// u1 + u2 from the closed forms along the vertical family at ratio t.
double threshold_function(ThresholdCase which, double t);

// Deliberate defects for mutation testing of the validation suite. Never
// active unless injected; process-wide.
enum class Fault { none, flip_u2_integrand_sign };
void inject_fault(Fault f);
Fault active_fault();

class ScopedFault {
public:
  explicit ScopedFault(Fault f) : prev_(active_fault()) { inject_fault(f); }
  ~ScopedFault() { inject_fault(prev_); }
  ScopedFault(const ScopedFault &) = delete;
  ScopedFault &operator=(const ScopedFault &) = delete;

private:
  Fault prev_;
};

} // namespace vdw
