#pragma once

// Globally adaptive Gauss-Kronrod (7/15) integration on finite and
// semi-infinite intervals, with iterated nesting for 2-D and 3-D integrals.
//
// The semi-infinite interval [0, inf) is mapped onto [0, 1) before
// subdivision; the map carries a length scale so that callers can place
// the bulk of the integrand near t = 1/2.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace vdw::quad {

enum class Transform {
  exp_decay, // x = s t/(1-t)
  algebraic, // x = s (t/(1-t))^2, for integrands with slow power-law tails
};

struct QuadSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-14;
  int max_subdivisions = 200;
  Transform transform = Transform::exp_decay;
  double scale = 1.0; // characteristic length of the integrand in x
};

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long evaluations = 0;
};

template <std::size_t N> struct VecQuadResult {
  std::array<double, N> value{};
  std::array<double, N> abs_error_estimate{};
  long evaluations = 0;
};

class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string &axis, QuadResult best)
      : std::runtime_error("quadrature did not converge on axis '" + axis +
                           "' (best estimate " + std::to_string(best.value) +
                           " +/- " + std::to_string(best.abs_error_estimate) +
                           ")"),
        axis_(axis), best_(best) {}

  const std::string &axis() const noexcept { return axis_; }
  const QuadResult &best() const noexcept { return best_; }

private:
  std::string axis_;
  QuadResult best_;
};

namespace detail {

// Kronrod abscissae (descending, x[7] = 0) and weights for the 15-point rule;
// Gauss weights for the embedded 7-point rule (on odd Kronrod nodes).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t N> struct Panel {
  double a = 0.0, b = 0.0;
  std::array<double, N> value{};
  std::array<double, N> error{};
  std::array<double, N> roundoff{};
  double priority = 0.0;
  bool operator<(const Panel &o) const { return priority < o.priority; }
};

template <std::size_t N, class F>
Panel<N> gk15(const F &f, double a, double b, std::size_t controlled) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<std::array<double, N>, 15> fv;
  fv[7] = f(centre);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv[j] = f(centre - dx);
    fv[14 - j] = f(centre + dx);
  }

  Panel<N> p;
  p.a = a;
  p.b = b;
  for (std::size_t c = 0; c < N; ++c) {
    double resk = kWgk[7] * fv[7][c];
    double resg = kWg[3] * fv[7][c];
    double resabs = std::abs(resk);
    for (int j = 0; j < 7; ++j) {
      const double s = fv[j][c] + fv[14 - j][c];
      resk += kWgk[j] * s;
      resabs += kWgk[j] * (std::abs(fv[j][c]) + std::abs(fv[14 - j][c]));
      if (j % 2 == 1) resg += kWg[j / 2] * s;
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fv[7][c] - mean);
    for (int j = 0; j < 7; ++j)
      resasc += kWgk[j] * (std::abs(fv[j][c] - mean) + std::abs(fv[14 - j][c] - mean));

    resk *= half;
    resg *= half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);

    double err = std::abs(resk - resg);
    if (resasc != 0.0 && err != 0.0)
      err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double floor = 50.0 * eps * resabs;
    err = std::max(err, floor);

    p.value[c] = resk;
    p.error[c] = err;
    p.roundoff[c] = floor;
  }
  double pr = 0.0;
  for (std::size_t c = 0; c < controlled; ++c) pr = std::max(pr, p.error[c]);
  p.priority = pr;
  return p;
}

// Adaptive integration of a vector-valued integrand over [a, b]. Error control
// uses the max-norm over the first `controlled` components; the remaining
// components (e.g. propagated inner-integral errors) ride along on the same
// panels.
template <std::size_t N, class F>
VecQuadResult<N> adaptive(const F &f, double a, double b, const QuadSpec &spec,
                          std::size_t controlled, const std::string &axis) {
  std::priority_queue<Panel<N>> heap;
  long evals = 0;
  auto counted = [&](double x) {
    ++evals;
    return f(x);
  };

  std::array<double, N> total{}, err{}, floor{};
  auto push = [&](Panel<N> p) {
    for (std::size_t c = 0; c < N; ++c) {
      total[c] += p.value[c];
      err[c] += p.error[c];
      floor[c] += p.roundoff[c];
    }
    heap.push(std::move(p));
  };
  auto pop = [&]() {
    Panel<N> p = heap.top();
    heap.pop();
    for (std::size_t c = 0; c < N; ++c) {
      total[c] -= p.value[c];
      err[c] -= p.error[c];
      floor[c] -= p.roundoff[c];
    }
    return p;
  };
  auto converged = [&]() {
    double vnorm = 0.0, enorm = 0.0, fnorm = 0.0;
    for (std::size_t c = 0; c < controlled; ++c) {
      vnorm = std::max(vnorm, std::abs(total[c]));
      enorm = std::max(enorm, err[c]);
      fnorm = std::max(fnorm, floor[c]);
    }
    if (enorm <= std::max(spec.abs_tol, spec.rel_tol * vnorm)) return true;
    // Only the rounding floor is left: further bisection cannot help.
    return enorm <= 2.0 * fnorm;
  };
  auto result = [&]() {
    VecQuadResult<N> r;
    // Re-sum from the heap to avoid drift from repeated add/subtract.
    std::array<double, N> v{}, e{};
    auto copy = heap;
    while (!copy.empty()) {
      const auto &p = copy.top();
      for (std::size_t c = 0; c < N; ++c) {
        v[c] += p.value[c];
        e[c] += p.error[c];
      }
      copy.pop();
    }
    r.value = v;
    r.abs_error_estimate = e;
    r.evaluations = evals;
    return r;
  };

  push(gk15<N>(counted, a, b, controlled));
  int splits = 0;
  while (!converged()) {
    if (splits >= spec.max_subdivisions) {
      const auto r = result();
      throw ConvergenceError(axis, QuadResult{r.value[0], r.abs_error_estimate[0], r.evaluations});
    }
    Panel<N> worst = pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel collapsed to machine resolution; keep it and stop refining.
      push(std::move(worst));
      break;
    }
    push(gk15<N>(counted, worst.a, mid, controlled));
    push(gk15<N>(counted, mid, worst.b, controlled));
    ++splits;
  }
  return result();
}

template <class F> auto as_array(const F &f) {
  return [&f](double x) { return std::array<double, 1>{f(x)}; };
}

template <std::size_t N, class F> auto map_semiinf(const F &f, const QuadSpec &spec) {
  const double s = spec.scale;
  const Transform tr = spec.transform;
  return [&f, s, tr](double t) {
    std::array<double, N> out{};
    const double om = 1.0 - t;
    if (om <= 0.0) return out;
    double x, jac;
    if (tr == Transform::exp_decay) {
      x = s * t / om;
      jac = s / (om * om);
    } else {
      const double r = t / om;
      x = s * r * r;
      jac = 2.0 * s * t / (om * om * om);
    }
    if (!std::isfinite(x)) return out;
    out = f(x);
    for (auto &v : out) v *= jac;
    return out;
  };
}

} // namespace detail

// Integrate f over [a, b].
template <class F>
QuadResult integrate_interval(const F &f, double a, double b, const QuadSpec &spec = {},
                              const std::string &axis = "x") {
  auto g = detail::as_array(f);
  const auto r = detail::adaptive<1>(g, a, b, spec, 1, axis);
  return {r.value[0], r.abs_error_estimate[0], r.evaluations};
}

// Integrate f over [0, inf).
template <class F>
QuadResult integrate_semiinf(const F &f, const QuadSpec &spec = {}, const std::string &axis = "x") {
  auto g = detail::as_array(f);
  auto h = detail::map_semiinf<1>(g, spec);
  const auto r = detail::adaptive<1>(h, 0.0, 1.0, spec, 1, axis);
  return {r.value[0], r.abs_error_estimate[0], r.evaluations};
}

// Vector-valued integrand over [0, inf), f: double -> std::array<double, N>.
template <std::size_t N, class F>
VecQuadResult<N> integrate_semiinf_vec(const F &f, const QuadSpec &spec = {},
                                       const std::string &axis = "x") {
  auto h = detail::map_semiinf<N>(f, spec);
  return detail::adaptive<N>(h, 0.0, 1.0, spec, N, axis);
}

// Iterated integral over [0, inf)^2 of f(x, y); y is the inner axis. Inner
// integration errors are integrated alongside the value and added to the
// outer error estimate.
template <class F>
QuadResult integrate_2d(const F &f, const QuadSpec &outer, const QuadSpec &inner) {
  long evals = 0;
  auto g = [&](double x) {
    const QuadResult in = integrate_semiinf([&](double y) { return f(x, y); }, inner, "y");
    evals += in.evaluations;
    return std::array<double, 2>{in.value, in.abs_error_estimate};
  };
  auto h = detail::map_semiinf<2>(g, outer);
  const auto r = detail::adaptive<2>(h, 0.0, 1.0, outer, 1, "x");
  return {r.value[0], r.abs_error_estimate[0] + std::abs(r.value[1]), evals};
}

// Default nesting: the inner axis runs 10x tighter than the requested
// (outer) tolerance.
inline QuadSpec tightened(QuadSpec s, double factor = 10.0) {
  s.rel_tol /= factor;
  s.abs_tol /= factor;
  return s;
}

template <class F> QuadResult integrate_2d(const F &f, const QuadSpec &spec = {}) {
  return integrate_2d(f, spec, tightened(spec));
}

template <class F>
QuadResult integrate_3d(const F &f, const QuadSpec &outer, const QuadSpec &middle,
                        const QuadSpec &inner) {
  long evals = 0;
  auto g = [&](double x) {
    QuadResult in;
    try {
      in = integrate_2d([&](double y, double z) { return f(x, y, z); }, middle, inner);
    } catch (const ConvergenceError &e) {
      // integrate_2d names its axes x/y; shift them to y/z.
      throw ConvergenceError(e.axis() == "x" ? "y" : "z", e.best());
    }
    evals += in.evaluations;
    return std::array<double, 2>{in.value, in.abs_error_estimate};
  };
  auto h = detail::map_semiinf<2>(g, outer);
  const auto r = detail::adaptive<2>(h, 0.0, 1.0, outer, 1, "x");
  return {r.value[0], r.abs_error_estimate[0] + std::abs(r.value[1]), evals};
}

template <class F> QuadResult integrate_3d(const F &f, const QuadSpec &spec = {}) {
  const QuadSpec mid = tightened(spec);
  return integrate_3d(f, spec, mid, tightened(mid));
}

} // namespace vdw::quad
