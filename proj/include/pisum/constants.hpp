#pragma once

// Asymptotic constant sigma[g] = int_1^2 Sigma g and generalized Euler
// constant gamma[g], with independent cross-check routes.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pisum/error.hpp"
#include "pisum/gfunction.hpp"
#include "pisum/named_constants.hpp"
#include "pisum/numerics.hpp"
#include "pisum/shape.hpp"
#include "pisum/sigma.hpp"

namespace pisum {

struct constants_report {
  int p = 0;
  convexity shape = convexity::convex;
  double sigma = 0.0;
  double gamma_gen = 0.0;
  double err = 0.0;
  std::string method;
};

/// sigma[g] by quadrature of the Eulerian-series Sigma g over [1, 2].
/// The value is stored in g's cache slot; later calls return the cache.
inline double asymptotic_constant(const gfunction& g, double tol = 1e-11, double* err_out = nullptr) {
  if (tol < 1e-11) throw error("asymptotic_constant: tol must be >= 1e-11");
  if (const auto c = g.cached_sigma()) {
    if (err_out) *err_out = 0.0;
    return *c;
  }
  const int p = g.p();
  auto f = [&](double t) { return sigma_eulerian(g, p, t, 1e-13).value; };
  const quad_result q = integrate(f, 1.0, 2.0, tol);
  if (err_out) *err_out = q.err_estimate;
  return g.cache_sigma(q.value);
}

/// sigma[g] for an explicit p (a fresh cache when p differs from g.p()).
inline double asymptotic_constant(const gfunction& g, int p, double tol) {
  return asymptotic_constant(p == g.p() ? g : g.with_class(p, g.shape()), tol);
}

/// True when Delta^{p-1} g(n) does not decay, i.e. p is the smallest
/// admissible order.
inline bool is_minimal_p(const gfunction& g, int p, const shape_options& opt = {}) {
  if (p == 0) return true;
  try {
    return !detail::decay_at(g, p - 1, opt.n_max, opt.eta).decays;
  } catch (const domain_error&) {
    return true;
  }
}

/// gamma[g] = sigma[g] - sum_{j=1}^p G_j Delta^{j-1} g(1). The definition
/// needs the minimal p; `unsafe` skips that check.
inline double euler_constant_gen(const gfunction& g, bool unsafe = false) {
  const int p = g.p();
  if (!unsafe && !is_minimal_p(g, p)) {
    throw error("euler_constant_gen: p = " + std::to_string(p) + " is not minimal for '" + g.name() +
                "' (pass unsafe to override)");
  }
  const double s = asymptotic_constant(g);
  if (p == 0) return s;
  const auto d = forward_diffs(g, 1.0, p - 1);
  compensated_sum acc;
  acc += s;
  for (int j = 1; j <= p; ++j) acc -= gregory_coeff(j) * d[static_cast<std::size_t>(j - 1)];
  return acc.value();
}

inline constants_report compute_constants(const gfunction& g, bool unsafe = false) {
  constants_report r;
  r.p = g.p();
  r.shape = g.shape();
  const bool cached = g.cached_sigma().has_value();
  double err = 0.0;
  r.sigma = asymptotic_constant(g, 1e-11, &err);
  r.gamma_gen = euler_constant_gen(g, unsafe);
  r.err = err;
  r.method = cached ? "cached" : "quadrature of eulerian sigma over [1,2]";
  return r;
}

namespace detail {

// int_k^{k+1} (P_p[g](k..k+p; t) - g(t)) dt
inline double piecewise_gap(const gfunction& g, int p, double k) {
  const auto d = forward_diffs(g, k, p);
  auto f = [&](double t) {
    const double u = t - k;
    compensated_sum s;
    for (int j = 0; j <= p; ++j) s += gen_binomial(u, j) * d[static_cast<std::size_t>(j)];
    s -= g(t);
    return s.value();
  };
  return integrate(f, k, k + 1.0, 1e-15 * std::max(1.0, std::abs(d[0]))).value;
}

}  // namespace detail

/// gamma[g] as the area between g and its piecewise interpolant on [1, inf):
/// unit-interval quadrature up to N, Richardson over N/4, N/2, N.
inline double gamma_piecewise_interp(const gfunction& g, int p, std::int64_t N) {
  if (N < 10) throw error("gamma_piecewise_interp: N must be >= 10");
  const std::int64_t n1 = N / 4, n2 = N / 2;
  compensated_sum s;
  richardson table;
  for (std::int64_t k = 1; k < N; ++k) {
    s += detail::piecewise_gap(g, p, static_cast<double>(k));
    if (k + 1 == n1 || k + 1 == n2 || k + 1 == N) table.push(s.value());
  }
  return table.estimate();
}

/// int_0^1 B_2(u) / (k + u) du with B_2(u) = u^2 - u + 1/6.
inline double bernoulli2_unit_integral(double k) {
  auto f = [k](double u) { return (u * u - u + 1.0 / 6.0) / (k + u); };
  return integrate(f, 0.0, 1.0, 1e-17).value;
}

/// Partial values (1/2) g(1) - (1/2) int_1^N B_2({t}) / t dt at N = 2^k,
/// k = 1..levels, for g the psi_{-2} generator.
inline std::vector<double> sigma_integral_rep_psi2_partials(int levels = 14) {
  const double g1 = 0.5 * ln_2pi - 1.0;
  std::vector<double> out;
  compensated_sum s;
  std::int64_t k = 1;
  for (int l = 1; l <= levels; ++l) {
    const std::int64_t N = std::int64_t{1} << l;
    for (; k < N; ++k) s += bernoulli2_unit_integral(static_cast<double>(k));
    out.push_back(0.5 * g1 - 0.5 * s.value());
  }
  return out;
}

/// sigma[psi2g] from its Bernoulli-polynomial integral representation,
/// the partial values extrapolated in N.
inline double sigma_integral_rep_psi2() {
  const auto parts = sigma_integral_rep_psi2_partials(14);
  richardson table;
  for (std::size_t i = 6; i < parts.size(); ++i) table.push(parts[i]);
  return table.estimate();
}

/// Running sums S_n = sum_{k<=n} G_k Delta^{k-1} g(x), n = 1..N.
inline std::vector<double> fontana_partial(const gfunction& g, double x, int N) {
  if (N < 1 || N > max_difference_order) throw error("fontana_partial: N out of range [1, 12]");
  const auto d = forward_diffs(g, x, N - 1);
  std::vector<double> out;
  compensated_sum s;
  for (int n = 1; n <= N; ++n) {
    s += gregory_coeff(n) * d[static_cast<std::size_t>(n - 1)];
    out.push_back(s.value());
  }
  return out;
}

/// Euler's constant from H_n - ln n, n = 2^k, extrapolated.
inline double euler_gamma_from_harmonic(int levels = 16) {
  richardson table;
  compensated_sum h;
  std::int64_t k = 1;
  for (int l = 4; l < 4 + levels; ++l) {
    const std::int64_t n = std::int64_t{1} << l;
    for (; k <= n; ++k) h += 1.0 / static_cast<double>(k);
    table.push(h.value() - std::log(static_cast<double>(n)));
    if (table.levels() >= 3 && table.delta() < 1e-15) break;
  }
  return table.estimate();
}

/// ln A recovered from sigma[psi2g] = ln A + (1/4) ln(2 pi) - 3/4.
inline double ln_glaisher_from_sigma(double sigma_psi2g) { return sigma_psi2g + 0.75 - 0.25 * ln_2pi; }

}  // namespace pisum
