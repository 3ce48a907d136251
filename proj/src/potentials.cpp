#include "vdw/potentials.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

#include "vdw/error.hpp"
#include "vdw/quadrature.hpp"
#include "vdw/specfun.hpp"

namespace vdw {

namespace {

std::atomic<Fault> g_fault{Fault::none};

constexpr double kPi = 3.14159265358979323846;
constexpr double kPi3 = kPi * kPi * kPi;

void require_electric_pair(const AtomPair &atoms, const char *who) {
  validate(atoms.a);
  validate(atoms.b);
  if (atoms.a.kind != AtomKind::electric || atoms.b.kind != AtomKind::electric)
    throw DomainError(std::string(who) + ": both atoms must be electric (polarizable)");
}

double alpha_product(const AtomPair &atoms, double u) { return response_iu(atoms.a, u) * response_iu(atoms.b, u); }

double min_atom_frequency(const AtomPair &atoms) { return std::min(atoms.a.omega10, atoms.b.omega10); }
double max_atom_frequency(const AtomPair &atoms) { return std::max(atoms.a.omega10, atoms.b.omega10); }

// Frequency integral of alpha_A alpha_B times a weight; `length` is the
// distance whose e^{-u length} factors cut the integrand off, if any.
double atom_integral(const AtomPair &atoms, auto &&weight, double rel_tol = 1e-12, double length = 0.0) {
  quad::QuadSpec s;
  s.rel_tol = rel_tol;
  s.abs_tol = 0.0;
  s.scale = length > 0.0 ? std::min(min_atom_frequency(atoms), 1.0 / length) : min_atom_frequency(atoms);
  s.transform = quad::Transform::algebraic;
  s.max_subdivisions = 2000;
  return quad::integrate_semiinf([&](double u) { return alpha_product(atoms, u) * weight(u); }, s, "u").value;
}

quad::QuadSpec frequency_spec(const PlanarGeometry &geom, const AtomPair &atoms, double rel_tol) {
  quad::QuadSpec s;
  s.rel_tol = rel_tol;
  s.abs_tol = 0.0;
  s.scale = std::min(min_atom_frequency(atoms), 1.0 / (geom.l() + geom.Zp()));
  s.max_subdivisions = 2000;
  return s;
}

double u_scale_q(const PlanarGeometry &geom, double u) { return q_integration_spec(geom, u, 1.0).scale; }

void check_guard_retarded(const RegimeGuard &g, double w_min, double l, const char *who) {
  if (!g.enforce) return;
  if (w_min * l < g.retarded_min)
    throw RegimeError(std::string(who) + ": retarded form needs w_min l >= " + std::to_string(g.retarded_min) +
                      ", got " + std::to_string(w_min * l));
}

void check_guard_nonretarded(const RegimeGuard &g, double w_max, double l, double index, const char *who) {
  if (!g.enforce) return;
  const double p = w_max * l * index;
  if (p > g.nonretarded_max)
    throw RegimeError(std::string(who) + ": nonretarded form needs w_max l sqrt(eps mu) <= " +
                      std::to_string(g.nonretarded_max) + ", got " + std::to_string(p));
}

// Geometry weights of the cross term, from the free-space tensor at
// xi = 1/(u l): W = c0 F0 + c1 F1 + c2 F2.
struct CrossWeights {
  double c0, c1, c2;
};

CrossWeights cross_weights(const PlanarGeometry &geom, double u) {
  const double l = geom.l();
  const double xi = 1.0 / (u * l);
  const double a = specfun::poly_a(xi), b = specfun::poly_b(xi);
  const double x2 = geom.X() * geom.X() / (l * l), z2 = geom.Z() * geom.Z() / (l * l);
  return {2.0 * a - b * x2, -b * x2, -2.0 * (a - b * z2)};
}

double explicit_cross_q(const PlanarGeometry &geom, double u, const HalfSpaceMedium &medium, double q) {
  const double l = geom.l(), X = std::abs(geom.X()), Z = geom.Z(), zp = geom.Zp();
  const double xi = 1.0 / (u * l);
  const double fa = specfun::poly_a(xi), fb = specfun::poly_b(xi);
  const double k2 = u * u;
  const double b = std::sqrt(k2 + q * q);
  const double damp = std::exp(-b * zp);
  if (damp == 0.0) return 0.0;
  const Reflection r = reflection(q, u, medium);
  const auto j = specfun::bessel_j012(q * X);
  const double x2 = X * X / (l * l), z2 = Z * Z / (l * l);
  const double first = ((2.0 * fa - fb * x2) * (r.rs / b - b * r.rp / k2) -
                        2.0 * (fa - fb * z2) * q * q * r.rp / (b * k2)) *
                       j.j0;
  const double second = -fb * x2 * (r.rs / b + b * r.rp / k2) * j.j2;
  return q * damp * (first + second);
}

double explicit_scattering_qq(const PlanarGeometry &geom, double u, const HalfSpaceMedium &medium, double q,
                              double qp) {
  const double X = std::abs(geom.X()), zp = geom.Zp();
  const double k2 = u * u, k4 = k2 * k2;
  const double b = std::sqrt(k2 + q * q), bp = std::sqrt(k2 + qp * qp);
  const double damp = std::exp(-(b + bp) * zp);
  if (damp == 0.0) return 0.0;
  const Reflection r = reflection(q, u, medium), rp = reflection(qp, u, medium);
  const auto j = specfun::bessel_j012(q * X), jp = specfun::bessel_j012(qp * X);
  const double t0 = r.rs * rp.rs / (b * bp) + r.rp * rp.rp / k4 * (b * bp + 2.0 * q * q * qp * qp / (b * bp)) -
                    bp * r.rs * rp.rp / (b * k2) - b * r.rp * rp.rs / (bp * k2);
  const double t1 = 4.0 * q * qp * r.rp * rp.rp / k4;
  const double t2 = r.rs * rp.rs / (b * bp) + b * bp * r.rp * rp.rp / k4 + bp * r.rs * rp.rp / (b * k2) +
                    b * r.rp * rp.rs / (bp * k2);
  return q * qp * damp * (t0 * j.j0 * jp.j0 + t1 * j.j1 * jp.j1 + t2 * j.j2 * jp.j2);
}

} // namespace

void inject_fault(Fault f) { g_fault.store(f); }
Fault active_fault() { return g_fault.load(); }

PotentialBreakdown PotentialBreakdown::assemble(double u0, double u1, double u2, double abs_error, long evals) {
  PotentialBreakdown p;
  p.u0 = u0;
  p.u1 = u1;
  p.u2 = u2;
  p.total = u0 + u1 + u2;
  p.ratio = p.total / u0;
  p.abs_error = abs_error;
  p.evaluations = evals;
  return p;
}

// ------------------------------------------------------------- free space

double u0_ee(double l, const AtomPair &atoms, double rel_tol) {
  if (!(l > 0.0)) throw DomainError("u0_ee: separation must be > 0");
  require_electric_pair(atoms, "u0_ee");
  const double v = atom_integral(atoms, [&](double u) { return specfun::poly_g(u * l); }, rel_tol, l);
  const double l2 = l * l;
  return -v / (32.0 * kPi3 * l2 * l2 * l2);
}

double u0_em(double l, const AtomPair &atoms, double rel_tol) {
  if (!(l > 0.0)) throw DomainError("u0_em: separation must be > 0");
  validate(atoms.a);
  validate(atoms.b);
  if (atoms.a.kind != AtomKind::electric || atoms.b.kind != AtomKind::magnetic)
    throw DomainError("u0_em: atom A must be electric and atom B magnetic");
  const double v = atom_integral(atoms, [&](double u) { return u * u * specfun::poly_h(u * l); }, rel_tol, l);
  const double l2 = l * l;
  return v / (32.0 * kPi3 * l2 * l2);
}

double u0_free(double l, const AtomPair &atoms, double rel_tol) {
  return atoms.b.kind == AtomKind::magnetic ? u0_em(l, atoms, rel_tol) : u0_ee(l, atoms, rel_tol);
}

AsymptoticCoefficients asymptotic_coefficients(const AtomPair &atoms) {
  validate(atoms.a);
  validate(atoms.b);
  AsymptoticCoefficients c;
  const double s = atoms.a.alpha0 * atoms.b.alpha0;
  c.c6 = 3.0 / (16.0 * kPi3) * atom_integral(atoms, [](double) { return 1.0; });
  c.c4 = 1.0 / (16.0 * kPi3) * atom_integral(atoms, [](double u) { return u * u; });
  c.c7_ee = 23.0 * s / (64.0 * kPi3);
  c.c7_em = 7.0 * s / (64.0 * kPi3);
  return c;
}

// ---------------------------------------------------- frequency integrands

double u1_integrand_explicit(const PlanarGeometry &geom, double u, const AtomPair &atoms,
                             const HalfSpaceMedium &medium, double rel_tol) {
  if (!(u > 0.0)) throw DomainError("u1_integrand: u must be > 0");
  const double l = geom.l();
  const auto w = quad::integrate_semiinf([&](double q) { return explicit_cross_q(geom, u, medium, q); },
                                         q_integration_spec(geom, u, rel_tol), "q");
  const double u2 = u * u;
  return -u2 * u2 * alpha_product(atoms, u) * std::exp(-u * l) * w.value / (32.0 * kPi3 * l);
}

double u1_integrand_trace(const PlanarGeometry &geom, double u, const AtomPair &atoms,
                          const HalfSpaceMedium &medium, double rel_tol) {
  const Mat3 g0 = free_space_green(geom.r_A() - geom.r_B(), u);
  const Mat3 g1_ba = halfspace_scattering(geom, u, medium, rel_tol).tensor().transpose();
  const double u2 = u * u;
  return -u2 * u2 * alpha_product(atoms, u) * (g0 * g1_ba).trace() / kPi;
}

double u2_integrand_explicit(const PlanarGeometry &geom, double u, const AtomPair &atoms,
                             const HalfSpaceMedium &medium, double rel_tol) {
  if (!(u > 0.0)) throw DomainError("u2_integrand: u must be > 0");
  const double s = u_scale_q(geom, u);
  quad::QuadSpec inner = q_integration_spec(geom, u, rel_tol);
  inner.scale = 1.0;
  // Absolute floor from the size of the one-dimensional factors; the
  // integrand changes sign, so a pure relative target can stall near zeros.
  const auto sf = scattering_factors(geom, u, medium, std::max(rel_tol, 1e-8));
  double mag = 0.0;
  for (double f : sf.f) mag += f * f;
  inner.abs_tol = 1e-2 * rel_tol * mag;
  quad::QuadSpec outer = inner;
  outer.rel_tol = rel_tol;
  inner = quad::tightened(inner);
  const auto r = quad::integrate_2d(
      [&](double y, double yp) { return s * s * explicit_scattering_qq(geom, u, medium, s * y, s * yp); }, outer,
      inner);
  const double u2 = u * u;
  return -u2 * u2 * alpha_product(atoms, u) * r.value / (64.0 * kPi3);
}

double u2_integrand_trace(const PlanarGeometry &geom, double u, const AtomPair &atoms,
                          const HalfSpaceMedium &medium, double rel_tol) {
  const Mat3 g = halfspace_scattering(geom, u, medium, rel_tol).tensor();
  const double u2 = u * u;
  return -u2 * u2 * alpha_product(atoms, u) * (g * g.transpose()).trace() / (2.0 * kPi);
}

// ------------------------------------------------------ half-space totals

double u1_halfspace(const PlanarGeometry &geom, const AtomPair &atoms, const HalfSpaceMedium &medium,
                    double rel_tol) {
  require_electric_pair(atoms, "u1_halfspace");
  if (medium.is_vacuum()) return 0.0;
  const double l = geom.l();
  quad::QuadSpec outer = frequency_spec(geom, atoms, rel_tol);
  quad::QuadSpec inner = q_integration_spec(geom, 1.0, rel_tol / 10.0);
  inner.scale = 1.0;
  auto f = [&](double u, double y) {
    if (u <= 0.0) return 0.0;
    const double s = u_scale_q(geom, u);
    const double u2 = u * u;
    return -s * u2 * u2 * alpha_product(atoms, u) * std::exp(-u * l) * explicit_cross_q(geom, u, medium, s * y) /
           (32.0 * kPi3 * l);
  };
  return quad::integrate_2d(f, outer, inner).value;
}

double u2_halfspace_nested(const PlanarGeometry &geom, const AtomPair &atoms, const HalfSpaceMedium &medium,
                           double rel_tol) {
  require_electric_pair(atoms, "u2_halfspace_nested");
  if (medium.is_vacuum()) return 0.0;
  quad::QuadSpec outer = frequency_spec(geom, atoms, rel_tol);
  quad::QuadSpec middle = q_integration_spec(geom, 1.0, rel_tol / 10.0);
  middle.scale = 1.0;
  const quad::QuadSpec inner = quad::tightened(middle);
  auto f = [&](double u, double y, double yp) {
    if (u <= 0.0) return 0.0;
    const double s = u_scale_q(geom, u);
    const double u2 = u * u;
    return -s * s * u2 * u2 * alpha_product(atoms, u) * explicit_scattering_qq(geom, u, medium, s * y, s * yp) /
           (64.0 * kPi3);
  };
  return quad::integrate_3d(f, outer, middle, inner).value;
}

namespace {

// Per-frequency cross and scattering integrands, plus bounds on the error
// inherited from the q-integrals.
struct FusedPoint {
  double i1, i2, e1, e2;
  long evals;
};

FusedPoint fused_point(const PlanarGeometry &geom, const AtomPair &atoms, const HalfSpaceMedium &medium, double u,
                       double q_tol) {
  const double l = geom.l();
  const ScatteringFactors sf = scattering_factors(geom, u, medium, q_tol);
  const auto &F = sf.f;
  const auto &E = sf.abs_error;
  const CrossWeights w = cross_weights(geom, u);
  const double u2 = u * u;
  const double pre = u2 * u2 * alpha_product(atoms, u);
  const double p1 = pre * std::exp(-u * l) / (32.0 * kPi3 * l);
  const double p2 = pre / (64.0 * kPi3);
  FusedPoint fp;
  fp.i1 = -p1 * (w.c0 * F[0] + w.c1 * F[1] + w.c2 * F[2]);
  fp.i2 = -p2 * (F[0] * F[0] + F[1] * F[1] + 2.0 * F[2] * F[2] + 4.0 * F[3] * F[3]);
  if (g_fault.load(std::memory_order_relaxed) == Fault::flip_u2_integrand_sign) fp.i2 = -fp.i2;
  fp.e1 = p1 * (std::abs(w.c0) * E[0] + std::abs(w.c1) * E[1] + std::abs(w.c2) * E[2]);
  fp.e2 = p2 * (2.0 * std::abs(F[0]) * E[0] + 2.0 * std::abs(F[1]) * E[1] + 4.0 * std::abs(F[2]) * E[2] +
                8.0 * std::abs(F[3]) * E[3]);
  fp.evals = sf.evaluations;
  return fp;
}

} // namespace

PotentialBreakdown u_total(const PlanarGeometry &geom, const AtomPair &atoms, const HalfSpaceMedium &medium,
                           double rel_tol) {
  require_electric_pair(atoms, "u_total");
  const double l = geom.l();
  const double u0 = u0_ee(l, atoms, std::min(1e-10, rel_tol * 1e-2));
  if (medium.is_vacuum()) return PotentialBreakdown::assemble(u0, 0.0, 0.0);

  quad::QuadSpec outer = frequency_spec(geom, atoms, rel_tol);
  outer.abs_tol = 1e-3 * rel_tol * std::abs(u0);
  const double q_tol = rel_tol / 10.0;
  const double u_floor = 1e-30 / geom.lp();
  long evals = 0;
  auto f = [&](double u) {
    std::array<double, 4> out{};
    if (u <= u_floor) return out;
    const FusedPoint p = fused_point(geom, atoms, medium, u, q_tol);
    evals += p.evals;
    out = {p.i1, p.i2, p.e1, p.e2};
    return out;
  };
  auto mapped = quad::detail::map_semiinf<4>(f, outer);
  const auto r = quad::detail::adaptive<4>(mapped, 0.0, 1.0, outer, 2, "u");
  const double err = r.abs_error_estimate[0] + r.abs_error_estimate[1] + std::abs(r.value[2]) + std::abs(r.value[3]);
  return PotentialBreakdown::assemble(u0, r.value[0], r.value[1], err, evals);
}

double u2_halfspace(const PlanarGeometry &geom, const AtomPair &atoms, const HalfSpaceMedium &medium,
                    double rel_tol) {
  require_electric_pair(atoms, "u2_halfspace");
  if (medium.is_vacuum()) return 0.0;
  quad::QuadSpec outer = frequency_spec(geom, atoms, rel_tol);
  const double q_tol = rel_tol / 10.0;
  const double u_floor = 1e-30 / geom.lp();
  auto f = [&](double u) {
    std::array<double, 2> out{};
    if (u <= u_floor) return out;
    const FusedPoint p = fused_point(geom, atoms, medium, u, q_tol);
    out = {p.i2, p.e2};
    return out;
  };
  auto mapped = quad::detail::map_semiinf<2>(f, outer);
  return quad::detail::adaptive<2>(mapped, 0.0, 1.0, outer, 1, "u").value[0];
}

// ----------------------------------------------------------- closed forms

PotentialBreakdown perfect_retarded_closed(const PlanarGeometry &geom, const AtomPair &atoms, PerfectPlate plate,
                                           const RegimeGuard &guard) {
  require_electric_pair(atoms, "perfect_retarded_closed");
  const double l = geom.l(), X = geom.X(), zp = geom.Zp();
  check_guard_retarded(guard, min_atom_frequency(atoms), l, "perfect_retarded_closed");
  const double c7 = asymptotic_coefficients(atoms).c7_ee;
  const double sgn = plate == PerfectPlate::conducting ? 1.0 : -1.0;
  const double l3 = l * l * l, l7 = l3 * l3 * l;
  const double lz = l + zp, lz5 = lz * lz * lz * lz * lz;
  const double zp7 = std::pow(zp, 7);
  const double u0 = -c7 / l7;
  const double u1 = sgn * 32.0 / 23.0 * (X * X + 6.0 * l * l) * c7 / (l3 * zp * lz5);
  const double u2 = -c7 / zp7;
  return PotentialBreakdown::assemble(u0, u1, u2);
}

PotentialBreakdown perfect_nonretarded_closed(const PlanarGeometry &geom, const AtomPair &atoms,
                                              PerfectPlate plate, const RegimeGuard &guard) {
  require_electric_pair(atoms, "perfect_nonretarded_closed");
  const double l = geom.l(), lp = geom.lp(), X = geom.X(), Z = geom.Z(), zp = geom.Zp();
  check_guard_nonretarded(guard, max_atom_frequency(atoms), l, 1.0, "perfect_nonretarded_closed");
  const double c6 = asymptotic_coefficients(atoms).c6;
  const double sgn = plate == PerfectPlate::conducting ? 1.0 : -1.0;
  const double X2 = X * X, Z2 = Z * Z, zp2 = zp * zp;
  const double l5 = std::pow(l, 5), lp5 = std::pow(lp, 5);
  const double u0 = -c6 / std::pow(l, 6);
  const double u1 = sgn * (4.0 * X2 * X2 - 2.0 * Z2 * zp2 + X2 * (zp2 + Z2)) * c6 / (3.0 * l5 * lp5);
  const double u2 = -c6 / std::pow(lp, 6);
  return PotentialBreakdown::assemble(u0, u1, u2);
}

RetardedParts retarded_halfspace_closed(const PlanarGeometry &geom, const AtomPair &atoms, double eps0,
                                        double mu0, const RegimeGuard &guard, double rel_tol) {
  require_electric_pair(atoms, "retarded_halfspace_closed");
  if (!(eps0 >= 1.0) || !(mu0 >= 1.0)) throw DomainError("retarded_halfspace_closed: eps0, mu0 must be >= 1");
  const double l = geom.l(), X = std::abs(geom.X()), Z = geom.Z(), zp = geom.Zp();
  check_guard_retarded(guard, min_atom_frequency(atoms), l, "retarded_halfspace_closed");
  RetardedParts out;
  if (eps0 == 1.0 && mu0 == 1.0) return out;

  const double a00 = atoms.a.alpha0 * atoms.b.alpha0;
  const double X2 = X * X, Z2 = Z * Z, l2 = l * l;
  using specfun::WeightedFamily;
  auto W = [](WeightedFamily f, int k, double lam, double zeta) { return specfun::weighted_AB({f, k}, lam, zeta); };

  // Cross term: single integral over v in [1, inf), v = 1 + w.
  auto cross = [&](double w) {
    const double v = 1.0 + w, v2 = v * v;
    if (!std::isfinite(v2 * v2)) return 0.0; // integrand ~ v^-4 has long vanished
    const double lam = l + v * zp;
    const double zeta = X * std::sqrt(w * (2.0 + w));
    const double a3p = W(WeightedFamily::A_plus, 3, lam, zeta), a4p = W(WeightedFamily::A_plus, 4, lam, zeta),
                 a5p = W(WeightedFamily::A_plus, 5, lam, zeta);
    const double a3m = W(WeightedFamily::A_minus, 3, lam, zeta), a4m = W(WeightedFamily::A_minus, 4, lam, zeta),
                 a5m = W(WeightedFamily::A_minus, 5, lam, zeta);
    const double b3 = W(WeightedFamily::B, 3, lam, zeta), b4 = W(WeightedFamily::B, 4, lam, zeta),
                 b5 = W(WeightedFamily::B, 5, lam, zeta);
    const double p = v2 * (Z2 * a5m + (Z2 - 2.0 * X2) * (a4m / l + a3m / l2) + l2 * a5p + l * a4p + a3p) +
                     2.0 * (v2 - 1.0) * (X2 * b5 + (X2 - 2.0 * Z2) * (b4 / l + b3 / l2));
    const double s = Z2 * a5p + (Z2 - 2.0 * X2) * (a4p / l + a3p / l2) + l2 * a5m + l * a4m + a3m;
    const Reflection r = static_reflection(v, eps0, mu0);
    return p * r.rp - s * r.rs;
  };
  quad::QuadSpec sv;
  sv.rel_tol = rel_tol;
  sv.abs_tol = 0.0;
  sv.transform = quad::Transform::algebraic;
  sv.scale = std::max(1.0, l / zp);
  sv.max_subdivisions = 4000;
  out.u1 = a00 / (32.0 * kPi3 * l2 * l) * quad::integrate_semiinf(cross, sv, "v").value;

  // Scattering term: double integral over (v, v').
  const bool axial = X / zp < 0.05;
  auto scat = [&](double w, double wp) {
    const double v = 1.0 + w, vp = 1.0 + wp;
    const double v2 = v * v, vp2 = vp * vp;
    if (!std::isfinite(v2 * vp2 * std::pow(v + vp, 7) * std::pow(zp, 7))) return 0.0;
    const Reflection r = static_reflection(v, eps0, mu0), rq = static_reflection(vp, eps0, mu0);
    const double s = (v + vp) * zp;
    double m0, m1 = 0.0, m2 = 0.0;
    const double sw = std::sqrt(w * (2.0 + w)), swp = std::sqrt(wp * (2.0 + wp));
    if (axial) {
      const double s2 = s * s;
      m0 = 720.0 / (s2 * s2 * s2 * s);
      if (m0 == 0.0) return 0.0;
    } else {
      const double z = X * sw, zq = X * swp;
      m0 = specfun::m_nu(0, z, zq, s);
      m1 = specfun::m_nu(1, z, zq, s);
      m2 = specfun::m_nu(2, z, zq, s);
    }
    const double c0 = r.rp * rq.rp * (3.0 * v2 * vp2 - 2.0 * (v2 + vp2) + 2.0) + r.rs * rq.rs - r.rs * rq.rp * vp2 -
                      r.rp * rq.rs * v2;
    const double c1 = 4.0 * v * vp * sw * swp * r.rp * rq.rp;
    const double c2 = r.rs * rq.rs + r.rp * rq.rp * v2 * vp2 + r.rs * rq.rp * vp2 + r.rp * rq.rs * v2;
    return c0 * m0 + c1 * m1 + c2 * m2;
  };
  quad::QuadSpec so = sv;
  so.scale = 1.0;
  so.max_subdivisions = 4000;
  if (!axial) so.rel_tol = std::max(rel_tol, 1e-6);
  // The integrand is of order 720/(2 Z+)^7 near v = v' = 1.
  so.abs_tol = 1e-3 * so.rel_tol * 720.0 / std::pow(2.0 * zp, 7);
  out.u2 = -a00 / (64.0 * kPi3) * quad::integrate_2d(scat, so, quad::tightened(so)).value;
  return out;
}

NonretardedCoefficients nonretarded_coefficients(const AtomPair &atoms, const HalfSpaceMedium &medium) {
  NonretardedCoefficients c;
  if (medium.is_perfect()) {
    const double c6 = asymptotic_coefficients(atoms).c6;
    c.D = c6 / 3.0;
    c.E = c6;
    return c;
  }
  if (medium.has_electric_response()) {
    auto ratio = [&](double u) {
      const double e = medium.eps_iu(u);
      return (e - 1.0) / (e + 1.0);
    };
    c.D = atom_integral(atoms, ratio) / (16.0 * kPi3);
    c.E = 3.0 * atom_integral(atoms, [&](double u) { return ratio(u) * ratio(u); }) / (16.0 * kPi3);
  }
  if (medium.has_magnetic_response()) {
    c.F = atom_integral(atoms, [&](double u) {
            const double m = medium.mu_iu(u);
            return u * u * (m - 1.0) * (m - 3.0) / (m + 1.0);
          }) /
          (64.0 * kPi3);
  }
  return c;
}

PotentialBreakdown nonretarded_electric_closed(const PlanarGeometry &geom, const AtomPair &atoms,
                                               const HalfSpaceMedium &medium, const RegimeGuard &guard) {
  require_electric_pair(atoms, "nonretarded_electric_closed");
  if (medium.is_perfect() || medium.has_magnetic_response())
    throw DomainError("nonretarded_electric_closed: medium must be purely electric (mu = 1)");
  const double l = geom.l(), lp = geom.lp(), X = geom.X(), Z = geom.Z(), zp = geom.Zp();
  const double w_max = std::max(max_atom_frequency(atoms), medium.max_frequency());
  check_guard_nonretarded(guard, w_max, l, std::sqrt(medium.eps_static()), "nonretarded_electric_closed");
  const double c6 = asymptotic_coefficients(atoms).c6;
  const auto k = nonretarded_coefficients(atoms, medium);
  const double X2 = X * X, Z2 = Z * Z, zp2 = zp * zp;
  const double u0 = -c6 / std::pow(l, 6);
  const double u1 = (4.0 * X2 * X2 - 2.0 * Z2 * zp2 + X2 * (Z2 + zp2)) * k.D / (std::pow(l, 5) * std::pow(lp, 5));
  const double u2 = -k.E / std::pow(lp, 6);
  return PotentialBreakdown::assemble(u0, u1, u2);
}

PotentialBreakdown nonretarded_magnetic_closed(const PlanarGeometry &geom, const AtomPair &atoms,
                                               const HalfSpaceMedium &medium, const RegimeGuard &guard) {
  require_electric_pair(atoms, "nonretarded_magnetic_closed");
  if (medium.is_perfect() || medium.has_electric_response())
    throw DomainError("nonretarded_magnetic_closed: medium must be purely magnetic (eps = 1)");
  const double mu0 = medium.mu_static();
  if (mu0 > 1e3)
    throw DomainError("nonretarded_magnetic_closed: mu(0) = " + std::to_string(mu0) +
                      " > 1e3; the magnetic nonretarded forms do not extend to perfect reflectivity");
  const double l = geom.l(), lp = geom.lp(), X = geom.X(), Z = geom.Z(), zp = geom.Zp();
  const double w_max = std::max(max_atom_frequency(atoms), medium.max_frequency());
  check_guard_nonretarded(guard, w_max, l, std::sqrt(mu0), "nonretarded_magnetic_closed");
  const double c6 = asymptotic_coefficients(atoms).c6;
  const auto k = nonretarded_coefficients(atoms, medium);
  const double u0 = -c6 / std::pow(l, 6);
  // l+ - Z+ = X^2 / (l+ + Z+)
  const double u1 = (Z * Z - 2.0 * X * X + 3.0 * zp * X * X / (lp + zp)) * k.F / (std::pow(l, 5) * lp);
  return PotentialBreakdown::assemble(u0, u1, 0.0);
}

double threshold_function(ThresholdCase which, double t) {
  if (!(t > 1.0)) throw DomainError("threshold: height ratio must exceed 1");
  const AtomPair atoms = AtomPair::unit_electric();
  if (which == ThresholdCase::retarded_conducting_vertical) {
    const double z_A = 1e6;
    const auto p = perfect_retarded_closed(PlanarGeometry::vertical(z_A, (t - 1.0) * z_A), atoms,
                                           PerfectPlate::conducting);
    return p.u1 + p.u2;
  }
  const double z_A = 1e-6;
  const auto p =
      perfect_nonretarded_closed(PlanarGeometry::vertical(z_A, (t - 1.0) * z_A), atoms, PerfectPlate::permeable);
  return p.u1 + p.u2;
}

double threshold(ThresholdCase which, double tol, double t_lo, double t_hi) {
  double f_lo = threshold_function(which, t_lo);
  const double f_hi = threshold_function(which, t_hi);
  if (!(f_lo * f_hi < 0.0))
    throw InternalError("threshold: no sign change of u1 + u2 in [" + std::to_string(t_lo) + ", " +
                        std::to_string(t_hi) + "]");
  while (t_hi - t_lo > tol) {
    const double mid = 0.5 * (t_lo + t_hi);
    const double fm = threshold_function(which, mid);
    if ((fm < 0.0) == (f_lo < 0.0)) {
      t_lo = mid;
      f_lo = fm;
    } else {
      t_hi = mid;
    }
  }
  return 0.5 * (t_lo + t_hi);
}

} // namespace vdw
