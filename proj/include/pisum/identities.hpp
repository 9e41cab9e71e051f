#pragma once

// Residual evaluators for the identities and inequalities satisfied by
// Sigma g, most of them specific to psi_{-2}.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pisum/asymptotics.hpp"
#include "pisum/catalog.hpp"
#include "pisum/constants.hpp"
#include "pisum/error.hpp"
#include "pisum/named_constants.hpp"
#include "pisum/numerics.hpp"
#include "pisum/sigma.hpp"

namespace pisum {

struct residual_report {
  std::string identity;
  std::vector<std::vector<double>> points;  // evaluation inputs per residual
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> residuals;
  double max_abs = 0.0;

  void add(std::vector<double> point, double l, double r) {
    points.push_back(std::move(point));
    lhs.push_back(l);
    rhs.push_back(r);
    residuals.push_back(l - r);
    max_abs = std::max(max_abs, std::abs(l - r));
  }
};

/// Both sides of an identity; the residual is lhs - rhs.
struct sides {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual() const { return lhs - rhs; }
};

/// Engine value of the named function of a catalog entry: Sigma g + offset.
inline double engine_named(const catalog_entry& e, double x) {
  asymptotic_constant(e.g);
  return sigma(e.g, x).value + e.named_offset(x);
}

inline double engine_psi2(double x) { return engine_named(builtin("psi2g"), x); }
inline double engine_lgamma(double x) { return engine_named(builtin("ln"), x); }

/// int_x^{x+1} Sigma g against sigma[g] + int_1^x g.
inline sides raabe_sides(const gfunction& g, double x) {
  const double s = asymptotic_constant(g);
  return {integrate_sigma(g, x, x + 1.0).value, s + g.integral(1.0, x)};
}

inline double raabe_residual(const gfunction& g, double x) { return raabe_sides(g, x).residual(); }

/// int_x^{x+1} psi_{-2} in closed form.
inline double raabe_closed_psi2(double x) {
  return 0.5 * x * x * std::log(x) - 0.75 * x * x + 0.25 * (2.0 * x + 1.0) * ln_2pi + ln_glaisher;
}

/// sum_{j<m} Sigma g((x+j)/m) against Sigma g_m(x) + m sigma[g] - sigma[g_m] - int_1^m g_m
/// at each x, with g_m(x) = g(x/m).
inline std::vector<sides> mult_sides(const gfunction& g, int m, const std::vector<double>& xs) {
  if (m < 1) throw error("mult_residual: m must be >= 1");
  const double s = asymptotic_constant(g);
  const gfunction gm = g.scaled(m);
  const double sm = asymptotic_constant(gm);
  const double im = gm.integral(1.0, m);
  std::vector<sides> out;
  for (double x : xs) {
    compensated_sum lhs;
    for (int j = 0; j < m; ++j) lhs += sigma(g, (x + j) / m).value;
    compensated_sum rhs;
    rhs += sigma(gm, x).value;
    rhs += m * s;
    rhs -= sm;
    rhs -= im;
    out.push_back({lhs.value(), rhs.value()});
  }
  return out;
}

inline std::vector<double> mult_residuals(const gfunction& g, int m, const std::vector<double>& xs) {
  std::vector<double> out;
  for (const auto& sd : mult_sides(g, m, xs)) out.push_back(sd.residual());
  return out;
}

inline double mult_residual(const gfunction& g, int m, double x) { return mult_residuals(g, m, {x}).front(); }

/// sum_{j=1}^{m-1} psi_{-2}(j/m) in closed form.
inline double psi2_fractional_sum_closed(int m) {
  const double md = m;
  return -std::log(md) / (12.0 * md) + 0.25 * (md - 1.0) * ln_2pi + (md - 1.0 / md) * ln_glaisher;
}

/// psi_{-2}(mx)/m^2 - (1/2) x^2 ln m for each m.
inline std::vector<double> mult_scaling_limit_psi2(double x, const std::vector<int>& ms) {
  std::vector<double> out;
  for (int m : ms) {
    const double md = m;
    out.push_back(engine_psi2(md * x) / (md * md) - 0.5 * x * x * std::log(md));
  }
  return out;
}

/// sum_{j<m} f(x + j/m) against g(x), f(t) = psi_{-2}(t + 1/m) - psi_{-2}(t).
inline sides webster_sides(int m, double x) {
  if (m < 1) throw error("webster_check: m must be >= 1");
  compensated_sum s;
  for (int j = 0; j < m; ++j) {
    const double t = x + static_cast<double>(j) / m;
    s += engine_psi2(t + 1.0 / m);
    s -= engine_psi2(t);
  }
  return {s.value(), builtin("psi2g").g(x)};
}

inline double webster_check(int m, double x) { return webster_sides(m, x).residual(); }

/// (h_1(n) + sum_{k<=2n} (-1)^{k-1} g(k), h_2(n) + sum_{k<=2n} (-1)^{k-1} psi_{-2}(k)).
inline std::pair<double, double> wallis_partial_psi2(std::int64_t n) {
  if (n < 2) throw error("wallis_partial_psi2: n must be >= 2");
  const auto& e = builtin("psi2g");
  const double nd = static_cast<double>(n);
  compensated_sum s1, s2;
  s1 += (nd + 0.25) * std::log(nd) - nd * (1.0 - ln_2);
  s2 += nd * nd * std::log(2.0 * nd) - 1.5 * nd * nd + 0.5 * nd * ln_2pi - std::log(nd) / 12.0;
  for (std::int64_t k = 1; k <= 2 * n; k += 2) {
    const double a = static_cast<double>(k), b = a + 1.0;
    s1 += e.g(a) - e.g(b);
    s2 += engine_psi2(a) - engine_psi2(b);
  }
  return {s1.value(), s2.value()};
}

/// Wallis limits extrapolated from n = n_max / 2^j, j = levels-1..0.
inline std::pair<double, double> wallis_extrapolated_psi2(std::int64_t n_max, int levels = 4) {
  richardson r1, r2;
  for (int j = levels - 1; j >= 0; --j) {
    const auto v = wallis_partial_psi2(n_max >> j);
    r1.push(v.first);
    r2.push(v.second);
  }
  return {r1.estimate(), r2.estimate()};
}

inline double wallis_limit1_closed() { return ln_2 / 12.0 - 3.0 * ln_glaisher; }
inline double wallis_limit2_closed() { return ln_glaisher - ln_2 / 12.0; }

/// int_0^x ln sin(pi t) dt with the logarithmic singularity at 0 regularized.
inline double log_sine_integral(double x) {
  if (!(x > 0.0 && x < 1.0)) throw error("log_sine_integral: x must lie in (0, 1)");
  auto f = [](double t) { return std::log(std::sin(pi * t)); };
  return integrate_singular(f, 0.0, x, 1e-14, singular_end::lower).value;
}

/// psi_{-2}(x) - psi_{-2}(1-x) against x ln pi - (1/2) ln(2 pi) - int_0^x ln sin(pi t) dt.
inline sides reflection_sides_psi2(double x) {
  if (!(x > 0.0 && x < 1.0)) throw error("reflection_residual_psi2: x must lie in (0, 1)");
  return {engine_psi2(x) - engine_psi2(1.0 - x), x * ln_pi - 0.5 * ln_2pi - log_sine_integral(x)};
}

inline double reflection_residual_psi2(double x) { return reflection_sides_psi2(x).residual(); }

namespace detail {

inline double zeta_any(int s) {
  if (s <= 60) return zeta_int(s);
  return 1.0 + std::pow(2.0, -s) + std::pow(3.0, -s);
}

}  // namespace detail

/// Taylor partial sum of psi_{-2}(x+1) about 0 through x^N.
inline double taylor_psi2(double x, int N) {
  if (std::abs(x) >= 1.0) throw error("taylor_psi2: |x| must be < 1");
  if (N < 0 || N > 200) throw error("taylor_psi2: N out of range [0, 200]");
  compensated_sum s;
  s += 0.5 * ln_2pi;
  if (N >= 2) s -= euler_gamma * x * x / 2.0;
  double xn = x * x;
  for (int n = 3; n <= N; ++n) {
    xn *= x;
    const double sign = (n % 2 == 1) ? 1.0 : -1.0;
    s += sign * detail::zeta_any(n - 1) / (n * (n - 1.0)) * xn;
  }
  return s.value();
}

/// Geometric bound on the omitted Taylor terms, using zeta(n-1) <= zeta(N).
inline double taylor_psi2_tail_bound(double x, int N) {
  const double ax = std::abs(x);
  const int n = std::max(N + 1, 3);
  return detail::zeta_any(std::max(n - 1, 2)) / (n * (n - 1.0)) * std::pow(ax, n) / (1.0 - ax);
}

/// sum_{n=2}^N (-1)^n zeta(n) / (n (n+1) (n+2)).
inline double euler_series_analogue(int N) {
  if (N < 2 || N > 60) throw error("euler_series_analogue: N out of range [2, 60]");
  compensated_sum s;
  for (int n = 2; n <= N; ++n) {
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    s += sign * zeta_int(n) / (n * (n + 1.0) * (n + 2.0));
  }
  return s.value();
}

/// The same series with its alternating partial sums S_{N-K}..S_N averaged
/// pairwise K times (Euler-van Wijngaarden style acceleration).
inline double euler_series_accelerated(int N = 60, int K = 12) {
  if (K < 1 || N - K < 2) throw error("euler_series_accelerated: need N - K >= 2");
  std::vector<double> s;
  for (int n = N - K; n <= N; ++n) s.push_back(euler_series_analogue(n));
  while (s.size() > 1) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i) s[i] = 0.5 * (s[i] + s[i + 1]);
    s.pop_back();
  }
  return s.front();
}

inline double euler_series_closed() { return euler_gamma / 6.0 - 0.75 + 0.25 * ln_2pi + ln_glaisher; }

struct inequality_chain {
  std::string name;
  bool applicable = true;
  std::vector<double> members;  // claimed to be nondecreasing
  double worst_violation = 0.0;  // max over consecutive pairs of (left - right), clipped at 0
  bool holds = true;
};

struct inequality_report {
  double x = 0.0;
  double a = 0.0;
  std::vector<inequality_chain> chains;
  bool all_hold() const {
    return std::all_of(chains.begin(), chains.end(), [](const auto& c) { return c.holds; });
  }
};

namespace detail {

inline inequality_chain make_chain(std::string name, std::vector<double> members, double rel_tol) {
  inequality_chain c;
  c.name = std::move(name);
  c.members = std::move(members);
  double scale = 1.0;
  for (double v : c.members) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 1; i < c.members.size(); ++i) {
    c.worst_violation = std::max(c.worst_violation, c.members[i - 1] - c.members[i]);
  }
  c.holds = c.worst_violation <= rel_tol * scale;
  return c;
}

inline double sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace detail

/// The four inequality families for psi_{-2} at (x, a).
inline inequality_report inequality_report_psi2(double x, double a, double rel_tol = 1e-9) {
  if (!(x > 0.0) || a < 0.0) throw error("inequality_report_psi2: need x > 0 and a >= 0");
  const gfunction& g = builtin("psi2g").g;
  auto dg = [&](double t) { return forward_diff(g, t, 1); };
  inequality_report r;
  r.x = x;
  r.a = a;

  const double fa = std::floor(a), ca = std::ceil(a), fr = a - fa;
  const double psi_x = engine_psi2(x);

  {
    const double s = detail::sign_of(a * (a - 1.0) * (a - 2.0));
    const double w = engine_psi2(x + a) - psi_x - a * g(x) - gen_binomial(a, 2) * dg(x);
    const double c = std::abs(gen_binomial(a - 1.0, 2));
    r.chains.push_back(detail::make_chain(
        "wendel", {0.0, s * w, c * (dg(x + a) - dg(x)), ca * c * forward_diff(g, x, 2)}, rel_tol));
  }
  {
    const double y = x + fa + 1.0;
    const double mid = engine_psi2(x + a + 1.0) - engine_psi2(y) - fr * g(y) - gen_binomial(fr, 2) * dg(y);
    const double up = 0.5 * fr * (g(x + a) - g(y) - (fr - 1.0) * dg(y));
    r.chains.push_back(detail::make_chain("webster", {0.0, mid, up}, rel_tol));
  }
  if (x + fa >= digamma_root) {
    const double lo = (a - ca) * engine_lgamma(x + ca);
    const double mid = engine_psi2(x + a) - engine_psi2(x + ca);
    const double up = (a - ca) * g(x + fa);
    r.chains.push_back(detail::make_chain("gautschi", {lo, mid, up}, rel_tol));
  } else {
    inequality_chain c;
    c.name = "gautschi";
    c.applicable = false;
    r.chains.push_back(c);
  }
  {
    const double j3 = binet(g, 2, x);
    auto f = [&](double t) { return gen_binomial(t - 1.0, 2) * (dg(x + t) - dg(x)); };
    const double d2 = forward_diff(g, x, 2);
    const double mid = integrate(f, 0.0, 1.0, 1e-12 * std::abs(d2)).value;
    r.chains.push_back(
        detail::make_chain("stirling", {0.0, -j3, mid, 5.0 / 12.0 * d2}, rel_tol));
  }
  return r;
}

/// Closed-form bracket alpha(x) <= psi_{-2}(x) <= beta(x).
inline std::pair<double, double> bounds_alpha_beta(double x) {
  if (!(x > 0.0)) throw error("bounds_alpha_beta: x must be positive");
  const double lx = std::log(x), lx1 = std::log(x + 1.0), lx2 = std::log(x + 2.0);
  const double alpha = ln_glaisher - 5.0 / 18.0 + x / 24.0 - 5.0 / 6.0 * x * x + 0.5 * x * ln_2pi -
                       x * (x * x + 12.0) * lx / 12.0 + (x + 1.0) * (x * x + 5.0 * x + 1.0) * lx1 / 12.0;
  const double beta = ln_glaisher - 1.0 / 3.0 - 0.75 * x * x + 0.5 * x * ln_2pi - x * lx +
                      (x + 1.0) * (6.0 * x - 1.0) * lx1 / 12.0 + (x + 2.0) * lx2 / 12.0;
  return {alpha, beta};
}

inline double alpha_beta_sup_gap_closed() { return (3.0 * ln_2 - 1.0) / 18.0; }

/// f(x+n) - f(n) - x ln Gamma(n) - (x^2/2) ln n with f = psi_{-2}.
inline double characterization_limit_psi2(double x, double n) {
  if (x < 0.0 || n < 2.0) throw error("characterization_limit_psi2: need x >= 0 and n >= 2");
  if (x == 0.0) return 0.0;
  return engine_psi2(x + n) - engine_psi2(n) - x * engine_lgamma(n) - 0.5 * x * x * std::log(n);
}

}  // namespace pisum
