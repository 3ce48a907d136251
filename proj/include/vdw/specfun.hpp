#pragma once

#include "vdw/quadrature.hpp"

namespace vdw::specfun {

// Bessel function of the first kind for orders 0, 1, 2 and x >= 0.
double bessel_j(int nu, double x);

struct BesselJ012 {
  double j0, j1, j2;
};
// All three orders at once (shares the J0/J1 evaluation).
BesselJ012 bessel_j012(double x);

// Free-space auxiliary functions. a and b are evaluated at c/(u rho), g and h
// at u l / c.
struct FreeSpacePolys {
  double a, b, g, h;
};
FreeSpacePolys free_space_polys(double x);

double poly_a(double x); // 1 + x + x^2
double poly_b(double x); // 1 + 3x + 3x^2
double poly_g(double x); // 2 e^{-2x} (3 + 6x + 5x^2 + 2x^3 + x^4)
double poly_h(double x); // 2 e^{-2x} (1 + 2x + x^2)

// Radial-derivative brackets: d/dr[g(ur)/r^6] = -4 ee_force_bracket(ur) / r^7
// and d/dr[h(ur)/r^4] = -4 em_force_bracket(ur) / r^5.
double ee_force_bracket(double x); // e^{-2x}(9 + 18x + 16x^2 + 8x^3 + 3x^4 + x^5)
double em_force_bracket(double x); // e^{-2x}(2 + 4x + 3x^2 + x^3)

enum class WeightedFamily { A_plus, A_minus, B, M };

struct WeightedIntegralKey {
  WeightedFamily family;
  int order; // k in {3,4,5} for A and B, nu in {0,1,2} for M
};

// Closed forms of
//   A_{k+-}(lambda, zeta) = int_0^inf x^k e^{-lambda x} [J0(zeta x) +- J2(zeta x)] dx
//   B_k(lambda, zeta)     = int_0^inf x^k e^{-lambda x} J0(zeta x) dx
double weighted_AB(WeightedIntegralKey key, double lambda, double zeta);

// M_nu = int_0^inf x^6 e^{-s x} J_nu(zeta x) J_nu(zeta' x) dx, by adaptive
// quadrature on [0, 40/s]. The discarded tail is below
// e^{-40} sum_{k<=6} 40^k/k! ~ 3e-11 relative to 720/s^7.
double m_nu(int nu, double zeta, double zeta_p, double s, const quad::QuadSpec &spec = {1e-10, 0.0, 2000});

} // namespace vdw::specfun
