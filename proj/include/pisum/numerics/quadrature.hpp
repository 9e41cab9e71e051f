#pragma once

// Globally adaptive Gauss-Kronrod quadrature (7-point Gauss embedded in the
// 15-point Kronrod rule). The panel with the largest |K15 - G7| is bisected
// until the summed estimate meets the tolerance or the roundoff floor.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

#include "pisum/error.hpp"

namespace pisum {

struct quad_result {
  double value = 0.0;
  double err_estimate = 0.0;
  std::size_t subdivisions = 0;
};

inline constexpr std::size_t max_quad_panels = 10000;

namespace detail {

inline constexpr std::array<double, 8> gk15_nodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> gk15_weights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the nodes gk15_nodes[1], [3], [5], [7].
inline constexpr std::array<double, 4> g7_weights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct panel {
  double a, b, value, err, abs_value;
  bool operator<(const panel& o) const { return err < o.err; }
};

template <class F>
panel gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = fc * gk15_weights[7];
  double gauss = fc * g7_weights[3];
  double absval = std::abs(kronrod);
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = h * gk15_nodes[i];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    kronrod += gk15_weights[i] * (f1 + f2);
    absval += gk15_weights[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) gauss += g7_weights[i / 2] * (f1 + f2);
  }
  const double value = kronrod * h;
  const double err = std::abs((kronrod - gauss) * h);
  if (!std::isfinite(value)) throw domain_error("integrand is not finite on the panel");
  return panel{a, b, value, err, absval * std::abs(h)};
}

}  // namespace detail

/// Adaptive quadrature of f over [a, b] to absolute tolerance tol.
/// Throws convergence_error (carrying the best estimate) past the panel cap.
template <class F>
quad_result integrate(const F& f, double a, double b, double tol) {
  if (!(a < b)) {
    if (a == b) return {};
    quad_result r = integrate(f, b, a, tol);
    r.value = -r.value;
    return r;
  }
  std::priority_queue<detail::panel> heap;
  heap.push(detail::gk15(f, a, b));
  double total = heap.top().value;
  double total_err = heap.top().err;
  double total_abs = heap.top().abs_value;
  std::size_t panels = 1;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (;;) {
    const double floor = 50.0 * eps * total_abs;
    if (total_err <= std::max(tol, floor)) break;
    if (panels >= max_quad_panels) {
      throw convergence_error("integrate: panel cap reached", total, total_err);
    }
    const detail::panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      // Interval can no longer be split in double precision.
      throw convergence_error("integrate: interval underflow", total, total_err);
    }
    const detail::panel left = detail::gk15(f, worst.a, mid);
    const detail::panel right = detail::gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    total_abs += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  // Re-sum to shed drift from the running updates.
  double value = 0.0, err = 0.0;
  std::vector<detail::panel> all;
  all.reserve(heap.size());
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
  for (const auto& p : all) {
    value += p.value;
    err += p.err;
  }
  return {value, err, panels};
}

enum class singular_end { lower, upper, both };

/// Quadrature for integrands with an integrable (e.g. logarithmic) endpoint
/// singularity: t = a + u^2 near the lower end, t = b - u^2 near the upper.
template <class F>
quad_result integrate_singular(const F& f, double a, double b, double tol, singular_end end) {
  if (!(a < b)) throw error("integrate_singular: requires a < b");
  auto lower = [&](double lo, double hi) {
    auto h = [&](double u) { return u == 0.0 ? 0.0 : 2.0 * u * f(lo + u * u); };
    return integrate(h, 0.0, std::sqrt(hi - lo), tol);
  };
  auto upper = [&](double lo, double hi) {
    auto h = [&](double u) { return u == 0.0 ? 0.0 : 2.0 * u * f(hi - u * u); };
    return integrate(h, 0.0, std::sqrt(hi - lo), tol);
  };
  switch (end) {
    case singular_end::lower: return lower(a, b);
    case singular_end::upper: return upper(a, b);
    case singular_end::both: {
      const double m = 0.5 * (a + b);
      quad_result l = lower(a, m), r = upper(m, b);
      return {l.value + r.value, l.err_estimate + r.err_estimate, l.subdivisions + r.subdivisions};
    }
  }
  return {};
}

}  // namespace pisum
