#include "vdw/specfun.hpp"

#include <cmath>
#include <string>

#include <boost/math/special_functions/bessel.hpp>

#include "vdw/error.hpp"

namespace vdw::specfun {

namespace {

using NoPromote = boost::math::policies::policy<boost::math::policies::promote_double<false>>;

// J2 for small x from its power series; upward recurrence loses the leading
// digits there.
double j2_series(double x) {
  const double y = 0.25 * x * x;
  double term = y / 2.0; // (x/2)^2 / 2!
  double sum = term;
  for (int k = 1; k < 30; ++k) {
    term *= -y / (k * (k + 2.0));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

} // namespace

BesselJ012 bessel_j012(double x) {
  if (!(x >= 0.0)) throw DomainError("bessel_j: argument must be >= 0");
  const double j0 = boost::math::cyl_bessel_j(0, x, NoPromote());
  const double j1 = boost::math::cyl_bessel_j(1, x, NoPromote());
  const double j2 = x < 1.0 ? j2_series(x) : 2.0 * j1 / x - j0;
  return {j0, j1, j2};
}

double bessel_j(int nu, double x) {
  if (nu < 0 || nu > 2) throw DomainError("bessel_j: order must be 0, 1 or 2, got " + std::to_string(nu));
  if (!(x >= 0.0)) throw DomainError("bessel_j: argument must be >= 0");
  switch (nu) {
  case 0:
    return boost::math::cyl_bessel_j(0, x, NoPromote());
  case 1:
    return boost::math::cyl_bessel_j(1, x, NoPromote());
  default:
    return bessel_j012(x).j2;
  }
}

double poly_a(double x) { return 1.0 + x + x * x; }
double poly_b(double x) { return 1.0 + 3.0 * x + 3.0 * x * x; }
namespace {

// e^{-2x} p(x), returning 0 once the exponential underflows (the polynomial
// alone may overflow there).
template <class P> double damped(double x, P poly) {
  const double e = std::exp(-2.0 * x);
  return e == 0.0 ? 0.0 : e * poly(x);
}

} // namespace

double poly_g(double x) {
  return damped(x, [](double t) { return 2.0 * (3.0 + t * (6.0 + t * (5.0 + t * (2.0 + t)))); });
}
double poly_h(double x) {
  return damped(x, [](double t) { return 2.0 * (1.0 + t * (2.0 + t)); });
}

double ee_force_bracket(double x) {
  return damped(x, [](double t) { return 9.0 + t * (18.0 + t * (16.0 + t * (8.0 + t * (3.0 + t)))); });
}

double em_force_bracket(double x) {
  return damped(x, [](double t) { return 2.0 + t * (4.0 + t * (3.0 + t)); });
}

FreeSpacePolys free_space_polys(double x) {
  if (!(x >= 0.0)) throw DomainError("free_space_polys: argument must be >= 0");
  return {poly_a(x), poly_b(x), poly_g(x), poly_h(x)};
}

double weighted_AB(WeightedIntegralKey key, double lambda, double zeta) {
  if (!(lambda > 0.0)) throw DomainError("weighted_AB: lambda must be > 0 (integral diverges)");
  if (!(zeta >= 0.0)) throw DomainError("weighted_AB: zeta must be >= 0");
  if (key.order < 3 || key.order > 5 || key.family == WeightedFamily::M)
    throw DomainError("weighted_AB: closed forms exist for A+-, B with k = 3, 4, 5");

  const double l = lambda, z2 = zeta * zeta, l2 = l * l;
  const double r2 = l2 + z2;
  const double r = std::sqrt(r2);
  const double r5 = r2 * r2 * r, r7 = r5 * r2, r9 = r7 * r2, r11 = r9 * r2;

  switch (key.family) {
  case WeightedFamily::A_plus:
    switch (key.order) {
    case 3: return 6.0 * l / r5;
    case 4: return 6.0 * (4.0 * l2 - z2) / r7;
    default: return 30.0 * (4.0 * l2 * l - 3.0 * l * z2) / r9;
    }
  case WeightedFamily::A_minus:
    switch (key.order) {
    case 3: return 6.0 * (l2 * l - 4.0 * l * z2) / r7;
    case 4: return 6.0 * (4.0 * l2 * l2 - 27.0 * l2 * z2 + 4.0 * z2 * z2) / r9;
    default: return 30.0 * (4.0 * l2 * l2 * l - 41.0 * l2 * l * z2 + 18.0 * l * z2 * z2) / r11;
    }
  case WeightedFamily::B:
    switch (key.order) {
    case 3: return 3.0 * l * (2.0 * l2 - 3.0 * z2) / r7;
    case 4: return 3.0 * (8.0 * l2 * l2 - 24.0 * l2 * z2 + 3.0 * z2 * z2) / r9;
    default: return 15.0 * l * (8.0 * l2 * l2 - 40.0 * l2 * z2 + 15.0 * z2 * z2) / r11;
    }
  default:
    break;
  }
  throw DomainError("weighted_AB: unsupported family");
}

double m_nu(int nu, double zeta, double zeta_p, double s, const quad::QuadSpec &spec) {
  if (nu < 0 || nu > 2) throw DomainError("m_nu: order must be 0, 1 or 2");
  if (!(s > 0.0)) throw DomainError("m_nu: decay rate s must be > 0");
  if (!(zeta >= 0.0) || !(zeta_p >= 0.0)) throw DomainError("m_nu: zeta must be >= 0");
  if (zeta == 0.0 && zeta_p == 0.0) {
    if (nu != 0) return 0.0;
    const double s2 = s * s, s7 = s2 * s2 * s2 * s;
    return 720.0 / s7;
  }
  if (nu > 0 && (zeta == 0.0 || zeta_p == 0.0)) return 0.0;

  const double xmax = 40.0 / s;
  // Leave room for the Bessel oscillations inside [0, xmax].
  quad::QuadSpec sp = spec;
  const double cycles = xmax * std::max(zeta, zeta_p) / (2.0 * M_PI);
  sp.max_subdivisions = std::max(sp.max_subdivisions, static_cast<int>(200 + 20 * cycles));
  auto f = [&](double x) {
    const double x2 = x * x;
    return x2 * x2 * x2 * std::exp(-s * x) * bessel_j(nu, zeta * x) * bessel_j(nu, zeta_p * x);
  };
  return quad::integrate_interval(f, 0.0, xmax, sp, "x").value;
}

} // namespace vdw::specfun
