#pragma once

// Interpolation error rho, generalized Binet function, Stirling residual,
// Bernoulli asymptotic expansions and the Liu representation of psi_{-2}.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pisum/catalog.hpp"
#include "pisum/constants.hpp"
#include "pisum/error.hpp"
#include "pisum/gfunction.hpp"
#include "pisum/named_constants.hpp"
#include "pisum/numerics.hpp"
#include "pisum/sigma.hpp"

namespace pisum {

/// rho^p_a[f](x) = f(x+a) - sum_{j<p} C(x,j) Delta^j f(a).
template <class F>
double rho(const F& f, int p, double a, double x) {
  if (p < 1 || p > max_difference_order + 1) throw error("rho: p out of range [1, 13]");
  const auto d = forward_diffs(f, a, p - 1);
  compensated_sum s;
  s += f(x + a);
  for (int j = 0; j < p; ++j) s -= gen_binomial(x, j) * d[static_cast<std::size_t>(j)];
  return s.value();
}

/// Sigma g(x+a) - Sigma g(x) - sum_{j=1}^p C(a,j) Delta^{j-1} g(x).
inline double wendel_residual(const gfunction& g, int p, double a, double x) {
  if (a < 0.0) throw error("wendel_residual: a must be >= 0");
  const gfunction h = p == g.p() ? g : g.with_class(p, g.shape());
  compensated_sum s;
  s += sigma(h, x + a).value;
  s -= sigma(h, x).value;
  if (p > 0) {
    const auto d = forward_diffs(g, x, p - 1);
    for (int j = 1; j <= p; ++j) s -= gen_binomial(a, j) * d[static_cast<std::size_t>(j - 1)];
  }
  return s.value();
}

/// sum_{j=1}^p G_j Delta^{j-1} g(x).
inline double gregory_head(const gfunction& g, int p, double x) {
  if (p == 0) return 0.0;
  const auto d = forward_diffs(g, x, p - 1);
  compensated_sum s;
  for (int j = 1; j <= p; ++j) s += gregory_coeff(j) * d[static_cast<std::size_t>(j - 1)];
  return s.value();
}

/// J^{p+1}[Sigma g](x) = Sigma g(x) - sigma[g] - int_1^x g + sum_{j<=p} G_j Delta^{j-1} g(x).
inline double binet(const gfunction& g, int p, double x) {
  const gfunction h = p == g.p() ? g : g.with_class(p, g.shape());
  const double s = asymptotic_constant(h);
  compensated_sum acc;
  acc += sigma(h, x).value;
  acc -= s;
  acc -= g.integral(1.0, x);
  acc += gregory_head(g, p, x);
  return acc.value();
}

/// Integral form -int_0^1 rho_x^{p+1}[Sigma g](t) dt
///   = -int_0^1 Sigma g(x+t) dt + Sigma g(x) + sum_{j<=p} G_j Delta^{j-1} g(x).
inline double binet_integral(const gfunction& g, int p, double x) {
  const gfunction h = p == g.p() ? g : g.with_class(p, g.shape());
  asymptotic_constant(h);
  const double avg = integrate_sigma(h, x, x + 1.0).value;
  compensated_sum acc;
  acc -= avg;
  acc += sigma(h, x).value;
  acc += gregory_head(g, p, x);
  return acc.value();
}

struct stirling_report {
  std::vector<double> xs;
  std::vector<double> values;  // J^{p+1}[Sigma g](x)
  bool magnitudes_decreasing = true;
};

/// Generalized Binet function at x (it vanishes at infinity).
inline double stirling_residual(const gfunction& g, int p, double x) { return binet(g, p, x); }

/// J^{p+1}[Sigma g] along x = x0 2^k, k < count, with a decay diagnostic.
inline stirling_report stirling_decay(const gfunction& g, int p, double x0 = 1.0, int count = 10) {
  stirling_report r;
  double x = x0;
  for (int k = 0; k < count; ++k, x *= 2.0) {
    r.xs.push_back(x);
    r.values.push_back(binet(g, p, x));
    if (k > 0 && !(std::abs(r.values[k]) < std::abs(r.values[k - 1]))) r.magnitudes_decreasing = false;
  }
  return r;
}

struct expansion_term {
  int k = 0;
  double coefficient = 0.0;  // B_k / (m^k k!)
  double value = 0.0;        // coefficient * g^(k-1)(x)
};

struct expansion_result {
  double main_part = 0.0;  // sigma[g] + int_1^x g
  std::vector<expansion_term> terms;
  double total = 0.0;
};

/// Expansion of (1/m) sum_{j<m} Sigma g(x + j/m) as x -> inf:
/// sigma[g] + int_1^x g + sum_{k=1}^q B_k / (m^k k!) g^(k-1)(x).
inline expansion_result asym_expansion(const gfunction& g, double x, int q, int m = 1) {
  if (q < 0 || q > 8) throw error("asym_expansion: q out of range [0, 8]");
  if (m < 1) throw error("asym_expansion: m must be >= 1");
  if (q > 1 && !g.has_jet()) throw error("asym_expansion: '" + g.name() + "' has no Taylor jets");
  expansion_result r;
  r.main_part = asymptotic_constant(g) + g.integral(1.0, x);
  compensated_sum total;
  total += r.main_part;
  double mk = 1.0, fact = 1.0;
  for (int k = 1; k <= q; ++k) {
    mk *= m;
    fact *= k;
    expansion_term t;
    t.k = k;
    t.coefficient = bernoulli_number(k) / (mk * fact);
    t.value = t.coefficient == 0.0 ? 0.0 : t.coefficient * g.derivative(x, k - 1);
    total += t.value;
    r.terms.push_back(t);
  }
  r.total = total.value();
  return r;
}

/// (1/m) sum_{j<m} Sigma g(x + j/m), the quantity asym_expansion approximates.
inline double multisection_average(const gfunction& g, double x, int m) {
  if (m < 1) throw error("multisection_average: m must be >= 1");
  compensated_sum s;
  for (int j = 0; j < m; ++j) s += sigma(g, x + static_cast<double>(j) / m).value;
  return s.value() / m;
}

/// Closed main part shared by the Liu formula and the psi_{-2} expansion:
/// (1/12)(6x^2-6x+1) ln x - (1/4)(3x-2)x + (1/2) x ln(2 pi) + ln A.
inline double psi2_main_part(double x) {
  return (6.0 * x * x - 6.0 * x + 1.0) * std::log(x) / 12.0 - 0.25 * (3.0 * x - 2.0) * x + 0.5 * x * ln_2pi +
         ln_glaisher;
}

/// Partial values of (1/2) int_0^N B_2({t}) / (x + t) dt at N = 2^l.
inline std::vector<double> liu_partials(double x, int levels = 13) {
  std::vector<double> out;
  compensated_sum s;
  std::int64_t k = 0;
  for (int l = 0; l <= levels; ++l) {
    const std::int64_t N = std::int64_t{1} << l;
    for (; k < N; ++k) s += bernoulli2_unit_integral(x + static_cast<double>(k));
    out.push_back(0.5 * s.value());
  }
  return out;
}

/// psi_{-2}(x) by the Liu representation, the improper integral summed over
/// unit intervals and extrapolated in N.
inline double liu_formula_psi2(double x) {
  if (!(x > 0.0)) throw error("liu_formula_psi2: x must be positive");
  const auto parts = liu_partials(x, 13);
  richardson table;
  for (std::size_t i = 5; i < parts.size(); ++i) table.push(parts[i]);
  return psi2_main_part(x) + table.estimate();
}

/// Closed form of J^3[Sigma psi2g] in terms of psi_{-2}(x).
inline double binet_psi2_closed(double x, double psi2_x) {
  return psi2_x - (x + 1.0) * std::log(x + 1.0) / 12.0 + (3.0 * x - 1.0) * (3.0 * x - 1.0) / 12.0 -
         x * (6.0 * x - 7.0) * std::log(x) / 12.0 - 0.5 * x * ln_2pi - ln_glaisher;
}

}  // namespace pisum
