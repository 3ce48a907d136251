#include <doctest.h>

#include <cmath>

#include "vdw/quadrature.hpp"

using namespace vdw;

namespace {

quad::QuadSpec spec(double rel, double abs = 0.0) {
  quad::QuadSpec s;
  s.rel_tol = rel;
  s.abs_tol = abs;
  return s;
}

} // namespace

TEST_CASE("semi-infinite integrals of the trivial suite, with honest error estimates") {
  struct Case {
    double (*f)(double);
    double exact;
  } cases[] = {
      {[](double x) { return std::exp(-x); }, 1.0},
      {[](double x) { return x * x * x * std::exp(-x); }, 6.0},
      // g(x) = 2 e^{-2x}(3 + 6x + 5x^2 + 2x^3 + x^4); term by term
      // 2 (3/2 + 6/4 + 10/8 + 12/16 + 24/32) = 23/2.
      {[](double x) { return 2.0 * std::exp(-2.0 * x) * (3 + 6 * x + 5 * x * x + 2 * x * x * x + x * x * x * x); },
       11.5},
      {[](double x) { return std::exp(-2.0 * x) * (3 + 6 * x + 5 * x * x + 2 * x * x * x + x * x * x * x); }, 5.75},
  };
  for (const auto &c : cases) {
    const auto r = quad::integrate_semiinf(c.f, spec(1e-10));
    CHECK(r.value == doctest::Approx(c.exact).epsilon(1e-10));
    CHECK(r.abs_error_estimate >= 0.0);
    CHECK(r.evaluations >= 1);
    CHECK(std::abs(r.value - c.exact) <= r.abs_error_estimate + 1e-15);
  }
}

TEST_CASE("finite interval and algebraic map") {
  const auto r = quad::integrate_interval([](double x) { return std::sin(x); }, 0.0, 3.14159265358979323846, spec(1e-12));
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
  quad::QuadSpec s = spec(1e-10);
  s.transform = quad::Transform::algebraic;
  const auto t = quad::integrate_semiinf([](double x) { return 1.0 / std::pow(1.0 + x, 3); }, s);
  CHECK(t.value == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("doubling the subdivision budget does not worsen the error") {
  auto f = [](double x) { return std::exp(-x) * std::cos(5.0 * x); }; // exact 1/26
  quad::QuadSpec s = spec(1e-13);
  double prev = INFINITY;
  for (int budget : {50, 100, 200, 400}) {
    s.max_subdivisions = budget;
    double err;
    try {
      err = std::abs(quad::integrate_semiinf(f, s).value - 1.0 / 26.0);
    } catch (const quad::ConvergenceError &e) {
      err = std::abs(e.best().value - 1.0 / 26.0);
    }
    CHECK(err <= prev * 1.0000001 + 1e-16);
    prev = err;
  }
}

TEST_CASE("non-convergence reports the axis and the best estimate") {
  quad::QuadSpec s = spec(1e-14);
  s.max_subdivisions = 3;
  auto f = [](double x) { return std::exp(-0.01 * x) * std::cos(x * x); };
  try {
    quad::integrate_semiinf(f, s, "q");
    FAIL("expected a convergence failure");
  } catch (const quad::ConvergenceError &e) {
    CHECK(e.axis() == "q");
    CHECK(std::isfinite(e.best().value));
  }
}

TEST_CASE("2-D and 3-D iterated integrals") {
  const quad::QuadSpec s = spec(1e-9);
  const auto a = quad::integrate_2d([](double x, double y) { return std::exp(-x - y); }, s);
  CHECK(a.value == doctest::Approx(1.0).epsilon(1e-9));
  const auto b = quad::integrate_2d([](double x, double y) { return std::exp(std::log(x * y) - x - y); }, s);
  CHECK(b.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(b.value - 1.0) <= b.abs_error_estimate + 1e-15);
  const auto c = quad::integrate_3d(
      [](double x, double y, double z) { return std::exp(2.0 * std::log(x * y * z) - x - y - z); }, spec(1e-8));
  CHECK(c.value == doctest::Approx(8.0).epsilon(1e-8));
  CHECK(std::abs(c.value - 8.0) <= c.abs_error_estimate + 1e-14);
}

TEST_CASE("swapping integration order of a separable integrand") {
  auto f = [](double x, double y) { return std::exp(-2.0 * x) * y * std::exp(-0.5 * y); };
  auto g = [&](double x, double y) { return f(y, x); };
  const quad::QuadSpec s = spec(1e-9);
  const double a = quad::integrate_2d(f, s).value, b = quad::integrate_2d(g, s).value;
  CHECK(std::abs(a - b) <= 2e-9 * std::abs(a));
  CHECK(a == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("tightened spec divides both tolerances") {
  quad::QuadSpec s = spec(1e-6, 1e-10);
  const auto t = quad::tightened(s);
  CHECK(t.rel_tol == doctest::Approx(1e-7));
  CHECK(t.abs_tol == doctest::Approx(1e-11));
}

TEST_CASE("failing inner axis is named in 3-D") {
  quad::QuadSpec outer = spec(1e-8), mid = spec(1e-8), inner = spec(1e-15);
  inner.max_subdivisions = 2;
  auto f = [](double x, double y, double z) { return std::exp(-x - y - 0.01 * z) * std::cos(z * z); };
  try {
    quad::integrate_3d(f, outer, mid, inner);
    FAIL("expected a convergence failure");
  } catch (const quad::ConvergenceError &e) {
    CHECK(e.axis() == "z");
  }
}
