#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "vdw/error.hpp"
#include "vdw/greens.hpp"

using namespace vdw;

namespace {

constexpr double kPi = 3.14159265358979323846;

HalfSpaceMedium glass() { return HalfSpaceMedium::dielectric(LorentzMedium::electric(3.0, 1.0, 0.001)); }
HalfSpaceMedium ferrite() { return HalfSpaceMedium::magnetic(LorentzMedium::magnetic(3.0, 1.0, 0.001)); }

// Textbook Fresnel coefficients, written in the difference form.
Reflection fresnel(double q, double u, double eps, double mu) {
  const double b = std::hypot(u, q), bm = std::sqrt(eps * mu * u * u + q * q);
  return {(mu * b - bm) / (mu * b + bm), (eps * b - bm) / (eps * b + bm)};
}

double scalar_green(const Vec3 &r, double u) {
  const double d = r.norm();
  return std::exp(-u * d) / (4.0 * kPi * d);
}

// G0 = (I - grad grad / u^2) e^{-u r}/(4 pi r), Hessian by central differences.
Mat3 green_by_differences(const Vec3 &r, double u) {
  const double h = 1e-4 * r.norm();
  Mat3 hess;
  auto shifted = [&](int i, double si, int j, double sj) {
    Vec3 p = r;
    double *c[3] = {&p.x, &p.y, &p.z};
    *c[i] += si;
    *c[j] += sj;
    return scalar_green(p, u);
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      hess(i, j) = (shifted(i, h, j, h) - shifted(i, h, j, -h) - shifted(i, -h, j, h) + shifted(i, -h, j, -h)) /
                   (4.0 * h * h);
  return scalar_green(r, u) * Mat3::identity() - (1.0 / (u * u)) * hess;
}

// Direct q-integrals with textbook coefficients for a finite medium.
std::array<double, 4> direct_factors(const PlanarGeometry &g, double u, const HalfSpaceMedium &m) {
  const double eps = m.eps_iu(u), mu = m.mu_iu(u), X = std::abs(g.X()), zp = g.Zp();
  boost::math::quadrature::exp_sinh<double> integ;
  std::array<double, 4> out{};
  for (int c = 0; c < 4; ++c) {
    auto f = [&](double q) {
      const double b = std::hypot(u, q), damp = std::exp(-b * zp);
      if (damp == 0.0) return 0.0;
      const auto r = fresnel(q, u, eps, mu);
      switch (c) {
      case 0: return q * damp * std::cyl_bessel_j(0.0, q * X) * (r.rs / b - b * r.rp / (u * u));
      case 1: return q * damp * std::cyl_bessel_j(2.0, q * X) * (r.rs / b + b * r.rp / (u * u));
      case 2: return q * q * q * damp * std::cyl_bessel_j(0.0, q * X) * r.rp / (b * u * u);
      default: return q * q * damp * std::cyl_bessel_j(1.0, q * X) * r.rp / (u * u);
      }
    };
    out[c] = integ.integrate(f, 1e-12);
  }
  if (g.X() < 0.0) out[3] = -out[3];
  return out;
}

double max_abs(const GreenComponents &g) {
  return std::max({std::abs(g.gxx), std::abs(g.gyy), std::abs(g.gzz), std::abs(g.gxz), std::abs(g.gzx)});
}

void check_close(const GreenComponents &a, const GreenComponents &b, double tol) {
  const double s = std::max(max_abs(a), max_abs(b));
  CHECK(std::abs(a.gxx - b.gxx) <= tol * s);
  CHECK(std::abs(a.gyy - b.gyy) <= tol * s);
  CHECK(std::abs(a.gzz - b.gzz) <= tol * s);
  CHECK(std::abs(a.gxz - b.gxz) <= tol * s);
  CHECK(std::abs(a.gzx - b.gzx) <= tol * s);
}

} // namespace

TEST_CASE("geometry accessors and domain") {
  const auto g = PlanarGeometry::make(0.1, 0.3, 0.5, 0.6);
  CHECK(g.X() == doctest::Approx(0.4));
  CHECK(g.Z() == doctest::Approx(0.3));
  CHECK(g.Zp() == doctest::Approx(0.9));
  CHECK(g.l() == doctest::Approx(0.5));
  CHECK(g.lp() == doctest::Approx(std::hypot(0.4, 0.9)));
  const auto v = PlanarGeometry::vertical(0.2, 1.0);
  CHECK(v.z_B() == doctest::Approx(1.2));
  CHECK(v.X() == 0.0);
  const auto p = PlanarGeometry::parallel(2.0, 0.5);
  CHECK(p.Z() == 0.0);
  CHECK(p.l() == doctest::Approx(2.0));
  CHECK_THROWS_AS(PlanarGeometry::make(0, -0.1, 1, 1), DomainError);
  CHECK_THROWS_AS(PlanarGeometry::make(0, 0.5, 0, 0.5), DomainError);
}

TEST_CASE("Fresnel coefficients: ideal reflectors, vacuum and normal incidence") {
  const auto pc = reflection(0.7, 1.3, HalfSpaceMedium::perfect(PerfectPlate::conducting));
  CHECK(pc.rs == -1.0);
  CHECK(pc.rp == 1.0);
  const auto pm = reflection(0.7, 1.3, HalfSpaceMedium::perfect(PerfectPlate::permeable));
  CHECK(pm.rs == 1.0);
  CHECK(pm.rp == -1.0);
  const auto vac = reflection(0.7, 1.3, HalfSpaceMedium::vacuum());
  CHECK(vac.rs == 0.0);
  CHECK(vac.rp == 0.0);

  const auto m = glass();
  const double u = 0.4, eps = m.eps_iu(u), n = std::sqrt(eps);
  const auto r0 = reflection(0.0, u, m);
  CHECK(r0.rp == doctest::Approx((n - 1.0) / (n + 1.0)).epsilon(1e-14));
  CHECK(r0.rs == doctest::Approx(-(n - 1.0) / (n + 1.0)).epsilon(1e-14));
  // eps = 10 exactly at u = 0.
  const auto rs = reflection(0.0, 0.0 + 1e-300, m);
  CHECK(rs.rp == doctest::Approx(0.5194938532959596).epsilon(1e-12));
}

TEST_CASE("Fresnel coefficients agree with the textbook difference form") {
  for (const auto &m : {glass(), ferrite(), HalfSpaceMedium::lorentz(LorentzMedium::electric(2, 0.5, 0.1),
                                                                      LorentzMedium::magnetic(1.5, 2.0, 0.0))})
    for (double u : {1e-3, 0.1, 1.0, 30.0})
      for (double q : {0.0, 0.01, 0.5, 4.0, 1e3}) {
        const auto a = reflection(q, u, m);
        const auto b = fresnel(q, u, m.eps_iu(u), m.mu_iu(u));
        CHECK(a.rs == doctest::Approx(b.rs).epsilon(1e-12));
        CHECK(a.rp == doctest::Approx(b.rp).epsilon(1e-12));
        CHECK(std::abs(a.rs) <= 1.0);
        CHECK(std::abs(a.rp) <= 1.0);
      }
}

TEST_CASE("dispersionless coefficients in terms of v") {
  const auto r = static_reflection(1.0, 2.0, 1.0);
  CHECK(r.rp == doctest::Approx(0.1715728752538099).epsilon(1e-12));
  for (double v : {1.0, 1.5, 10.0})
    for (double e : {1.0, 3.0, 40.0})
      for (double mu : {1.0, 2.5}) {
        const double bm = std::sqrt(e * mu - 1.0 + v * v);
        const auto s = static_reflection(v, e, mu);
        CHECK(s.rp == doctest::Approx((e * v - bm) / (e * v + bm)).epsilon(1e-12));
        CHECK(s.rs == doctest::Approx((mu * v - bm) / (mu * v + bm)).epsilon(1e-12));
      }
  CHECK_THROWS_AS(static_reflection(0.5, 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(static_reflection(1.0, 0.0, 1.0), DomainError);
}

TEST_CASE("second-order expansion in u/b") {
  for (const auto &m : {glass(), ferrite()})
    for (double y : {1e-2, 3e-3, 1e-3}) {
      const double u = 0.5, b = u / std::sqrt(y), q = std::sqrt(b * b - u * u);
      const auto ex = reflection(q, u, m), ap = reflection_expansion(q, u, m);
      CHECK(std::abs(ex.rs - ap.rs) < 20.0 * y * y);
      CHECK(std::abs(ex.rp - ap.rp) < 20.0 * y * y);
    }
}

TEST_CASE("free-space Green tensor against the scalar Green function") {
  for (const Vec3 r : {Vec3{0.3, 0.0, 0.4}, Vec3{1.0, -0.5, 2.0}, Vec3{0.0, 0.0, 0.05}})
    for (double u : {0.1, 1.0, 7.0}) {
      const Mat3 g = free_space_green(r, u), d = green_by_differences(r, u);
      double s = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s = std::max(s, std::abs(g(i, j)));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(std::abs(g(i, j) - d(i, j)) < 1e-6 * s);
      CHECK(std::abs(g(0, 1) - g(1, 0)) < 1e-15 * s);
    }
  // Trace (3a - b) e^{-x}/(4 pi r) at u r = 1, where a = 3 and b = 7.
  const Vec3 r{0.0, 0.0, 2.0};
  const double pref = std::exp(-1.0) / (8.0 * kPi);
  CHECK(free_space_green(r, 0.5).trace() == doctest::Approx(2.0 * pref).epsilon(1e-13));
  // Transverse, far-field component tends to the scalar prefactor.
  const Vec3 far{0.0, 0.0, 50.0};
  CHECK(free_space_green(far, 1.0)(1, 1) == doctest::Approx(scalar_green(far, 1.0)).epsilon(0.03));
  CHECK_THROWS_AS(free_space_green(Vec3{}, 1.0), DomainError);
  CHECK_THROWS_AS(free_space_green(r, 0.0), DomainError);
}

TEST_CASE("free-space curls against finite differences") {
  for (const Vec3 r : {Vec3{0.3, 0.1, 0.4}, Vec3{-1.0, 0.0, 0.2}})
    for (double u : {0.3, 2.0}) {
      const auto c = free_space_curls(r, u);
      const double h = 1e-5 * r.norm();
      Mat3 num;
      auto dG = [&](int k) {
        Vec3 p = r, m = r;
        double *pc[3] = {&p.x, &p.y, &p.z}, *mc[3] = {&m.x, &m.y, &m.z};
        *pc[k] += h;
        *mc[k] -= h;
        return (1.0 / (2.0 * h)) * (free_space_green(p, u) - free_space_green(m, u));
      };
      const Mat3 d[3] = {dG(0), dG(1), dG(2)};
      // (curl G)_ij = eps_ikl d_k G_lj
      for (int j = 0; j < 3; ++j) {
        num(0, j) = d[1](2, j) - d[2](1, j);
        num(1, j) = d[2](0, j) - d[0](2, j);
        num(2, j) = d[0](1, j) - d[1](0, j);
      }
      const double s = std::exp(-u * r.norm()) * (1.0 + u * r.norm()) / (4.0 * kPi * r.norm() * r.norm());
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          CHECK(std::abs(c.left(i, j) - num(i, j)) < 1e-7 * s);
          CHECK(c.right(i, j) == doctest::Approx(c.left(j, i)));
          CHECK(c.left(i, j) == doctest::Approx(-c.left(j, i)));
        }
      CHECK(c.left.trace() == 0.0);
    }
}

TEST_CASE("scattering factors against direct textbook q-integrals") {
  const PlanarGeometry geoms[] = {PlanarGeometry::make(0.0, 0.3, 0.7, 0.5), PlanarGeometry::parallel(0.4, 0.2),
                                  PlanarGeometry::vertical(0.2, 0.5), PlanarGeometry::make(0.0, 1.0, -0.3, 1.2)};
  for (const auto &m : {glass(), ferrite()})
    for (const auto &g : geoms)
      for (double u : {0.05, 1.0, 10.0}) {
        const auto sf = scattering_factors(g, u, m, 1e-10);
        const auto ref = direct_factors(g, u, m);
        double s = 0.0;
        for (double v : ref) s = std::max(s, std::abs(v));
        for (int c = 0; c < 4; ++c) {
          CAPTURE(c);
          CAPTURE(u);
          CHECK(std::abs(sf.f[c] - ref[c]) <= 1e-8 * s);
        }
      }
}

TEST_CASE("scattering tensor symmetry and trivial cases") {
  const auto g = PlanarGeometry::make(0.1, 0.3, 0.8, 0.5);
  const auto a = halfspace_scattering(g, 0.7, glass());
  const auto b = halfspace_scattering(g.swapped(), 0.7, glass());
  const Mat3 ta = a.tensor(), tb = b.tensor().transpose();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(ta(i, j) == doctest::Approx(tb(i, j)).epsilon(1e-9));
  CHECK(a.tensor()(0, 1) == 0.0);
  CHECK(a.tensor()(1, 2) == 0.0);

  const auto v = halfspace_scattering(PlanarGeometry::vertical(0.3, 0.4), 0.7, glass());
  CHECK(v.gxz == 0.0);
  CHECK(v.gzx == 0.0);
  const auto z = halfspace_scattering(g, 0.7, HalfSpaceMedium::vacuum());
  CHECK(max_abs(z) == 0.0);
}

TEST_CASE("nonretarded closed forms match quadrature at small u l+") {
  const auto g = PlanarGeometry::make(0.0, 0.3, 0.4, 0.5);
  const double u = 1e-4;
  check_close(nonretarded_scattering(g, u, glass()), halfspace_scattering(g, u, glass()), 1e-3);
  check_close(nonretarded_scattering(g, u, HalfSpaceMedium::perfect(PerfectPlate::conducting)),
              halfspace_scattering(g, u, HalfSpaceMedium::perfect(PerfectPlate::conducting)), 1e-3);
  check_close(nonretarded_scattering(g, u, ferrite()), halfspace_scattering(g, u, ferrite()), 1e-3);

  const auto strong = HalfSpaceMedium::dielectric(LorentzMedium::electric(1e3, 1.0, 0.0));
  check_close(nonretarded_scattering(g, u, strong),
              nonretarded_scattering(g, u, HalfSpaceMedium::perfect(PerfectPlate::conducting)), 1e-3);

  const auto mixed = HalfSpaceMedium::lorentz(LorentzMedium::electric(3, 1, 0), LorentzMedium::magnetic(3, 1, 0));
  CHECK_THROWS_AS(nonretarded_scattering(g, u, mixed), DomainError);
  CHECK(max_abs(nonretarded_scattering(g, u, HalfSpaceMedium::vacuum())) == 0.0);
}

TEST_CASE("retarded ideal-reflector forms match quadrature far from the surface") {
  const auto g = PlanarGeometry::vertical(1.0, 0.5);
  for (auto plate : {PerfectPlate::conducting, PerfectPlate::permeable}) {
    const double u = 20.0 / g.Zp();
    check_close(retarded_perfect_scattering(g, u, plate), halfspace_scattering(g, u, HalfSpaceMedium::perfect(plate)),
                1e-9);
  }
}
