#include "vdw/greens.hpp"

#include <algorithm>
#include <cmath>

#include "vdw/error.hpp"
#include "vdw/specfun.hpp"

namespace vdw {

namespace {

constexpr double kPi = 3.14159265358979323846;

} // namespace

// ---------------------------------------------------------------- geometry

PlanarGeometry PlanarGeometry::make(double x_A, double z_A, double x_B, double z_B) {
  if (!std::isfinite(x_A) || !std::isfinite(x_B) || !std::isfinite(z_A) || !std::isfinite(z_B))
    throw DomainError("geometry: coordinates must be finite");
  if (!(z_A > 0.0) || !(z_B > 0.0))
    throw DomainError("geometry: both atoms must lie above the surface (z_A, z_B > 0)");
  if (x_A == x_B && z_A == z_B) throw DomainError("geometry: atoms coincide (l = 0)");
  return PlanarGeometry(x_A, z_A, x_B, z_B);
}

PlanarGeometry PlanarGeometry::parallel(double l, double z) {
  if (!(l > 0.0)) throw DomainError("geometry: separation l must be > 0");
  return make(0.0, z, l, z);
}

PlanarGeometry PlanarGeometry::vertical(double z_A, double l) {
  if (!(l > 0.0)) throw DomainError("geometry: separation l must be > 0");
  return make(0.0, z_A, 0.0, z_A + l);
}

double PlanarGeometry::l() const { return std::hypot(X(), Z()); }
double PlanarGeometry::lp() const { return std::hypot(X(), Zp()); }

// ------------------------------------------------------------------ medium

HalfSpaceMedium HalfSpaceMedium::lorentz(const LorentzMedium &eps, const LorentzMedium &mu) {
  validate(eps);
  validate(mu);
  if (eps.kind == MediumKind::magnetic) throw DomainError("half space: permittivity model must be electric or vacuum");
  if (mu.kind == MediumKind::electric) throw DomainError("half space: permeability model must be magnetic or vacuum");
  return HalfSpaceMedium(Finite{eps, mu});
}

HalfSpaceMedium HalfSpaceMedium::perfect(PerfectPlate plate) { return HalfSpaceMedium(plate); }

PerfectPlate HalfSpaceMedium::plate() const {
  if (!is_perfect()) throw DomainError("half space: medium is not an ideal reflector");
  return std::get<PerfectPlate>(state_);
}

bool HalfSpaceMedium::has_electric_response() const {
  if (is_perfect()) return plate() == PerfectPlate::conducting;
  const auto &f = std::get<Finite>(state_);
  return f.eps.kind == MediumKind::electric && f.eps.omega_p > 0.0;
}

bool HalfSpaceMedium::has_magnetic_response() const {
  if (is_perfect()) return plate() == PerfectPlate::permeable;
  const auto &f = std::get<Finite>(state_);
  return f.mu.kind == MediumKind::magnetic && f.mu.omega_p > 0.0;
}

bool HalfSpaceMedium::is_vacuum() const { return !is_perfect() && !has_electric_response() && !has_magnetic_response(); }

double HalfSpaceMedium::eps_iu(double u) const {
  if (is_perfect()) throw DomainError("half space: an ideal reflector has no finite permittivity");
  return permittivity_iu(std::get<Finite>(state_).eps, u);
}

double HalfSpaceMedium::mu_iu(double u) const {
  if (is_perfect()) throw DomainError("half space: an ideal reflector has no finite permeability");
  return permeability_iu(std::get<Finite>(state_).mu, u);
}

double HalfSpaceMedium::max_frequency() const {
  if (is_perfect()) return 0.0;
  const auto &f = std::get<Finite>(state_);
  double w = 0.0;
  if (has_electric_response()) w = std::max(w, f.eps.omega_t);
  if (has_magnetic_response()) w = std::max(w, f.mu.omega_t);
  return w;
}

double HalfSpaceMedium::min_frequency() const {
  if (is_perfect()) return 0.0;
  const auto &f = std::get<Finite>(state_);
  double w = 0.0;
  if (has_electric_response()) w = f.eps.omega_t;
  if (has_magnetic_response()) w = w > 0.0 ? std::min(w, f.mu.omega_t) : f.mu.omega_t;
  return w;
}

// -------------------------------------------------------------- reflection

Reflection reflection(double q, double u, const HalfSpaceMedium &medium) {
  if (!(q >= 0.0)) throw DomainError("reflection: q must be >= 0");
  if (!(u >= 0.0)) throw DomainError("reflection: u must be >= 0");
  if (medium.is_perfect())
    return medium.plate() == PerfectPlate::conducting ? Reflection{-1.0, 1.0} : Reflection{1.0, -1.0};

  const double eps = medium.eps_iu(u), mu = medium.mu_iu(u);
  // Homogeneous of degree zero in (q, u); normalizing avoids underflow.
  const double scale = std::max(q, u);
  if (!(scale > 0.0)) throw DomainError("reflection: q = u = 0");
  const double un = u / scale, qn = q / scale;
  const double u2 = un * un, q2 = qn * qn;
  const double b = std::sqrt(u2 + q2);
  const double bm = std::sqrt(eps * mu * u2 + q2);
  // Numerators written without the b^2 - b_M^2 cancellation.
  const double dp = eps * b + bm, ds = mu * b + bm;
  const double rp = ((eps * eps - 1.0) * q2 + eps * (eps - mu) * u2) / (dp * dp);
  const double rs = ((mu * mu - 1.0) * q2 + mu * (mu - eps) * u2) / (ds * ds);
  return {rs, rp};
}

Reflection static_reflection(double v, double eps0, double mu0) {
  if (!(v >= 1.0)) throw DomainError("static_reflection: v must be >= 1");
  if (!(eps0 > 0.0) || !(mu0 > 0.0)) throw DomainError("static_reflection: eps0 and mu0 must be > 0");
  const double rad = eps0 * mu0 - 1.0 + v * v;
  if (rad < 0.0) throw DomainError("static_reflection: negative radicand eps0 mu0 - 1 + v^2");
  const double R = std::sqrt(rad);
  const double v2 = v * v;
  const double dp = eps0 * v + R, ds = mu0 * v + R;
  const double rp = ((eps0 * eps0 - 1.0) * v2 + 1.0 - eps0 * mu0) / (dp * dp);
  const double rs = ((mu0 * mu0 - 1.0) * v2 + 1.0 - eps0 * mu0) / (ds * ds);
  return {rs, rp};
}

Reflection reflection_expansion(double q, double u, const HalfSpaceMedium &medium) {
  if (!(q >= 0.0) || !(u >= 0.0)) throw DomainError("reflection_expansion: q, u must be >= 0");
  if (medium.is_perfect()) return reflection(q, u, medium);
  const double eps = medium.eps_iu(u), mu = medium.mu_iu(u);
  const double b2 = u * u + q * q;
  if (!(b2 > 0.0)) throw DomainError("reflection_expansion: b = 0");
  const double y = u * u / b2;
  const double em1 = eps * mu - 1.0;
  const double rs = (mu - 1.0) / (mu + 1.0) - mu * em1 / ((mu + 1.0) * (mu + 1.0)) * y;
  const double rp = (eps - 1.0) / (eps + 1.0) - eps * em1 / ((eps + 1.0) * (eps + 1.0)) * y;
  return {rs, rp};
}

// -------------------------------------------------------------- free space

Mat3 free_space_green(const Vec3 &rho, double u) {
  const double r = rho.norm();
  if (!(r > 0.0)) throw DomainError("free_space_green: singular at rho = 0");
  if (!(u > 0.0)) throw DomainError("free_space_green: u must be > 0");
  const double x = 1.0 / (u * r);
  const Vec3 e = (1.0 / r) * rho;
  const double pref = std::exp(-u * r) / (4.0 * kPi * r);
  return pref * (specfun::poly_a(x) * Mat3::identity() - specfun::poly_b(x) * Mat3::outer(e, e));
}

FreeSpaceCurls free_space_curls(const Vec3 &rho, double u) {
  const double r = rho.norm();
  if (!(r > 0.0)) throw DomainError("free_space_curls: singular at rho = 0");
  if (!(u > 0.0)) throw DomainError("free_space_curls: u must be > 0");
  const Vec3 e = (1.0 / r) * rho;
  const double pref = std::exp(-u * r) * (1.0 + u * r) / (4.0 * kPi * r * r);
  const Mat3 ex = Mat3::cross(e);
  return {-pref * ex, pref * ex};
}

// ---------------------------------------------------------- scattering part

Mat3 GreenComponents::tensor() const {
  Mat3 g;
  g(0, 0) = gxx;
  g(1, 1) = gyy;
  g(2, 2) = gzz;
  g(0, 2) = gxz;
  g(2, 0) = gzx;
  return g;
}

quad::QuadSpec q_integration_spec(const PlanarGeometry &geom, double u, double rel_tol) {
  const double zp = geom.Zp();
  const double ratio = std::abs(geom.X()) / zp;
  quad::QuadSpec s;
  s.rel_tol = rel_tol;
  s.abs_tol = 0.0;
  s.scale = std::max(1.0 / zp, std::sqrt(u / zp));
  s.max_subdivisions = static_cast<int>(std::min(2.0e5, 200.0 + 26.0 * ratio));
  return s;
}

namespace {

// Reflection data at one frequency, shared by every q node.
struct ReflectionAtU {
  bool perfect = false;
  double eps = 1.0, mu = 1.0;
  double rs_inf = 0.0, rp_inf = 0.0; // q -> infinity limits

  ReflectionAtU(double u, const HalfSpaceMedium &medium) {
    if (medium.is_perfect()) {
      perfect = true;
      rp_inf = medium.plate() == PerfectPlate::conducting ? 1.0 : -1.0;
      rs_inf = -rp_inf;
    } else {
      eps = medium.eps_iu(u);
      mu = medium.mu_iu(u);
      rs_inf = (mu - 1.0) / (mu + 1.0);
      rp_inf = (eps - 1.0) / (eps + 1.0);
    }
  }

  struct At {
    double rs, rp;
    double drs_k2, drp_k2; // (r - r_inf) / k^2
  };

  At operator()(double q, double b, double k2) const {
    if (perfect) return {rs_inf, rp_inf, 0.0, 0.0};
    const double q2 = q * q;
    const double bm = std::sqrt(eps * mu * k2 + q2);
    const double dp = eps * b + bm, ds = mu * b + bm;
    At r;
    r.rp = ((eps * eps - 1.0) * q2 + eps * (eps - mu) * k2) / (dp * dp);
    r.rs = ((mu * mu - 1.0) * q2 + mu * (mu - eps) * k2) / (ds * ds);
    const double c = 2.0 * (1.0 - eps * mu) / (b + bm);
    r.drp_k2 = c * eps / (dp * (eps + 1.0));
    r.drs_k2 = c * mu / (ds * (mu + 1.0));
    return r;
  }
};

} // namespace

ScatteringFactors scattering_factors(const PlanarGeometry &geom, double u, const HalfSpaceMedium &medium,
                                     double rel_tol) {
  if (!(u > 0.0)) throw DomainError("scattering_factors: u must be > 0");
  const double X = std::abs(geom.X()), zp = geom.Zp(), lp = geom.lp();
  const double k2 = u * u;
  const ReflectionAtU refl(u, medium);
  quad::QuadSpec spec = q_integration_spec(geom, u, rel_tol);

  ScatteringFactors sf;
  std::array<double, 4> analytic{};
  quad::VecQuadResult<4> res;

  if (u * lp > 1.0) {
    auto f = [&](double q) {
      std::array<double, 4> out{};
      const double b = std::sqrt(k2 + q * q);
      const double damp = std::exp(-b * zp);
      if (damp == 0.0) return out;
      const auto r = refl(q, b, k2);
      const auto j = specfun::bessel_j012(q * X);
      const double pb = b * r.rp / k2;
      out[0] = q * damp * j.j0 * (r.rs / b - pb);
      out[1] = q * damp * j.j2 * (r.rs / b + pb);
      out[2] = q * q * q * damp * j.j0 * r.rp / (b * k2);
      out[3] = q * q * damp * j.j1 * r.rp / k2;
      return out;
    };
    res = quad::integrate_semiinf_vec<4>(f, spec, "q");
  } else {
    // Subtract the quasi-static tail (e^{-bZ+} -> e^{-qZ+}, r -> r_inf), whose
    // integrals are elementary, and integrate the remainder.
    const double lp2 = lp * lp, lp5 = lp2 * lp2 * lp;
    const double s0 = (2.0 * zp * zp - X * X) / lp5; // int q^2 e^{-qZ+} J0
    const double s1 = 3.0 * X * zp / lp5;             // int q^2 e^{-qZ+} J1
    const double s2 = 3.0 * X * X / lp5;              // int q^2 e^{-qZ+} J2
    const double t0 = 1.0 / lp;                       // int e^{-qZ+} J0
    const double t2 = X * X / ((lp + zp) * (lp + zp) * lp); // int e^{-qZ+} J2
    analytic[0] = refl.rs_inf * t0 - refl.rp_inf * s0 / k2;
    analytic[1] = refl.rs_inf * t2 + refl.rp_inf * s2 / k2;
    analytic[2] = refl.rp_inf * s0 / k2;
    analytic[3] = refl.rp_inf * s1 / k2;

    auto f = [&](double q) {
      std::array<double, 4> out{};
      const double eq = std::exp(-q * zp);
      if (eq == 0.0) return out;
      const double b = std::sqrt(k2 + q * q);
      const double d = k2 / (b + q); // b - q
      const double dz = d * zp;
      const double E = std::exp(-dz);
      const double em1 = std::expm1(-dz);
      const double em1_k2 = dz > 0.0 ? em1 / dz * zp / (b + q) : -zp / (b + q);
      const auto r = refl(q, b, k2);
      const auto j = specfun::bessel_j012(q * X);

      const double tp = q * eq * (E * (r.rp / (b + q) + q * r.drp_k2) + q * refl.rp_inf * em1_k2);
      const double ts = eq * (E * (q * r.drs_k2 * k2 / b - refl.rs_inf * d / b) + refl.rs_inf * em1);
      const double tz =
          q * q * eq * (E * (q * r.drp_k2 / b - refl.rp_inf / (b * (b + q))) + refl.rp_inf * em1_k2);
      const double tx = q * q * eq * (E * r.drp_k2 + refl.rp_inf * em1_k2);
      out[0] = j.j0 * (ts - tp);
      out[1] = j.j2 * (ts + tp);
      out[2] = j.j0 * tz;
      out[3] = j.j1 * tx;
      return out;
    };
    double scale = 0.0;
    for (double a : analytic) scale = std::max(scale, std::abs(a));
    spec.abs_tol = rel_tol * scale;
    res = quad::integrate_semiinf_vec<4>(f, spec, "q");
  }

  for (int c = 0; c < 4; ++c) sf.f[c] = analytic[c] + res.value[c];
  sf.abs_error = res.abs_error_estimate;
  sf.evaluations = res.evaluations;
  // Odd in X through J1.
  if (geom.X() < 0.0) sf.f[3] = -sf.f[3];
  return sf;
}

GreenComponents components_from_factors(const ScatteringFactors &sf) {
  const auto &f = sf.f;
  GreenComponents g;
  g.gxx = (f[0] + f[1]) / (8.0 * kPi);
  g.gyy = (f[0] - f[1]) / (8.0 * kPi);
  g.gzz = -f[2] / (4.0 * kPi);
  g.gxz = f[3] / (4.0 * kPi);
  g.gzx = -g.gxz;
  return g;
}

GreenComponents halfspace_scattering(const PlanarGeometry &geom, double u, const HalfSpaceMedium &medium,
                                     double rel_tol) {
  if (medium.is_vacuum()) return {};
  return components_from_factors(scattering_factors(geom, u, medium, rel_tol));
}

GreenComponents nonretarded_scattering(const PlanarGeometry &geom, double u, const HalfSpaceMedium &medium) {
  if (!(u > 0.0)) throw DomainError("nonretarded_scattering: u must be > 0");
  const double X = geom.X(), zp = geom.Zp(), lp = geom.lp();
  const double lp2 = lp * lp, lp5 = lp2 * lp2 * lp;

  auto electric = [&](double rp) {
    const double c = rp / (4.0 * kPi * u * u);
    GreenComponents g;
    g.gxx = c * (2.0 * X * X - zp * zp) / lp5;
    g.gyy = -c / (lp2 * lp);
    g.gzz = c * (X * X - 2.0 * zp * zp) / lp5;
    g.gxz = c * 3.0 * X * zp / lp5;
    g.gzx = -g.gxz;
    return g;
  };

  if (medium.is_perfect()) return electric(medium.plate() == PerfectPlate::conducting ? 1.0 : -1.0);
  if (medium.has_electric_response() && medium.has_magnetic_response())
    throw DomainError("nonretarded_scattering: closed forms cover purely electric or purely magnetic media only");
  if (medium.has_electric_response()) {
    const double eps = medium.eps_iu(u);
    return electric((eps - 1.0) / (eps + 1.0));
  }
  if (!medium.has_magnetic_response()) return {};

  const double m = medium.mu_iu(u) - 1.0;
  const double p = m / (m + 2.0);
  const double s = lp + zp; // (l+ - Z+)/X^2 = 1/(l+ + Z+)
  GreenComponents g;
  g.gxx = p / (4.0 * kPi * s) + m * zp / (16.0 * kPi * lp * s);
  g.gyy = m / (16.0 * kPi * s) + p * zp / (4.0 * kPi * lp * s);
  g.gzz = m / (16.0 * kPi * lp);
  g.gxz = -m * X / (16.0 * kPi * lp * s);
  g.gzx = -g.gxz;
  return g;
}

GreenComponents retarded_perfect_scattering(const PlanarGeometry &geom, double u, PerfectPlate plate) {
  if (!(u > 0.0)) throw DomainError("retarded_perfect_scattering: u must be > 0");
  const double zp = geom.Zp();
  const double rs = plate == PerfectPlate::conducting ? -1.0 : 1.0;
  const double rp = -rs;
  const double y = 1.0 / (u * zp);
  const double damp = std::exp(-u * zp);
  GreenComponents g;
  g.gxx = g.gyy = (rs - (1.0 + 2.0 * y + 2.0 * y * y) * rp) * damp / (8.0 * kPi * zp);
  g.gzz = -(y + y * y) * rp * damp / (2.0 * kPi * zp);
  return g;
}

} // namespace vdw
