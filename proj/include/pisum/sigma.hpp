#pragma once

// Principal indefinite sum Sigma g and its derivatives. Three evaluation
// routes:
//   direct    the defining limit of f^p_n[g](x), n -> inf, extrapolated
//   eulerian  the Eulerian series, partial sums extrapolated
//   gregory   shift x by N, then sigma[g] + int_1^{x+N} g minus a truncated
//             Gregory series, minus the N shifted values of g
// Sigma g(1) = 0 for every route.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "pisum/error.hpp"
#include "pisum/gfunction.hpp"
#include "pisum/jet.hpp"
#include "pisum/numerics.hpp"

namespace pisum {

enum class strategy { direct, eulerian, gregory };

inline const char* to_string(strategy s) {
  switch (s) {
    case strategy::direct: return "direct";
    case strategy::eulerian: return "eulerian";
    case strategy::gregory: return "gregory";
  }
  return "?";
}

struct sigma_result {
  double value = 0.0;
  double err_estimate = 0.0;
  strategy used = strategy::direct;
  std::int64_t terms_used = 0;
};

struct sigma_options {
  double tol = 1e-12;
  std::int64_t n_max = std::int64_t{1} << 24;
  int gregory_order = 8;           // J
  double gregory_threshold = 30.0;  // shift until x + N >= this
};

namespace detail {

inline void check_x(double x, const char* who) {
  if (!(x > 0.0) || !std::isfinite(x)) throw error(std::string(who) + ": x must be positive and finite");
}

// Smallest power of two n0 >= 16 with n0 >= 4 x.
inline std::int64_t initial_n(double x) {
  std::int64_t n = 16;
  while (n < 4.0 * x) n *= 2;
  return n;
}

// C(x, j) for j = 0..p.
inline std::vector<double> binomials(double x, int p) {
  std::vector<double> c(static_cast<std::size_t>(p) + 1);
  for (int j = 0; j <= p; ++j) c[static_cast<std::size_t>(j)] = gen_binomial(x, j);
  return c;
}

// Value of the p-dependent head sum_{j=1}^p c[j] * Delta^{j-1} g(n).
template <class G>
double binomial_head(const G& g, const std::vector<double>& c, double n, int p) {
  if (p == 0) return 0.0;
  const auto d = forward_diffs(g, n, p - 1);
  compensated_sum s;
  for (int j = 1; j <= p; ++j) s += c[static_cast<std::size_t>(j)] * d[static_cast<std::size_t>(j - 1)];
  return s.value();
}

inline void check_p(int p) {
  if (p < 0 || p > max_difference_order - 1) throw error("p out of range");
}

}  // namespace detail

/// f^p_n[g](x) = sum_{k=1}^{n-1} g(k) - sum_{k=0}^{n-1} g(x+k) + sum_{j=1}^p C(x,j) Delta^{j-1} g(n).
inline double f_pn(const gfunction& g, int p, std::int64_t n, double x) {
  detail::check_x(x, "f_pn");
  detail::check_p(p);
  if (n < 1) throw error("f_pn: n must be >= 1");
  compensated_sum s;
  s -= g(x);
  for (std::int64_t k = 1; k < n; ++k) {
    const double kd = static_cast<double>(k);
    s += g(kd) - g(x + kd);
  }
  s += detail::binomial_head(g, detail::binomials(x, p), static_cast<double>(n), p);
  return s.value();
}

namespace detail {

// Sigma g(x) = Sigma g(y) + sum_{i<m} g(y+i) with y = x - m in [1, 2).
template <class Core>
sigma_result reduced(const gfunction& g, double x, bool reduce, Core&& core) {
  if (!reduce || x < 2.0) return core(x);
  const double m = std::floor(x) - 1.0;
  const double y = x - m;
  sigma_result r = core(y);
  compensated_sum s;
  s += r.value;
  for (double i = m - 1.0; i >= 0.0; i -= 1.0) s += g(y + i);
  r.value = s.value();
  r.terms_used += static_cast<std::int64_t>(m);
  return r;
}

inline sigma_result sigma_direct_core(const gfunction& g, int p, double x, double tol, std::int64_t n_max) {
  detail::check_p(p);
  if (x == 1.0) return {0.0, 0.0, strategy::direct, 0};
  const auto c = detail::binomials(x, p);
  compensated_sum acc;  // -g(x) + sum_{k=1}^{n-1} (g(k) - g(x+k))
  acc -= g(x);
  std::int64_t k = 1;
  auto seq = [&](std::int64_t n) {
    for (; k < n; ++k) {
      const double kd = static_cast<double>(k);
      acc += g(kd) - g(x + kd);
    }
    compensated_sum s = acc;
    s += detail::binomial_head(g, c, static_cast<double>(n), p);
    return s.value();
  };
  const limit_result r = extrapolate_limit(seq, detail::initial_n(x), tol, n_max);
  return {r.value, r.err_estimate, strategy::direct, r.n_used};
}

}  // namespace detail

/// Defining limit of f^p_n[g](x), sampled at n = n0 2^k and extrapolated.
/// With `reduce`, x >= 2 is first brought into [1, 2) by the difference
/// equation; raw mode applies the limit at x itself.
inline sigma_result sigma_direct(const gfunction& g, int p, double x, double tol = 1e-12,
                                 std::int64_t n_max = std::int64_t{1} << 24, bool reduce = true) {
  detail::check_x(x, "sigma_direct");
  detail::check_p(p);
  return detail::reduced(g, x, reduce, [&](double y) { return detail::sigma_direct_core(g, p, y, tol, n_max); });
}

namespace detail {

/// Eulerian series
///   -g(x) + sum_{j=1}^p C(x,j) Delta^{j-1} g(1)
///         - sum_{n>=1} (g(x+n) - sum_{j=0}^p C(x,j) Delta^j g(n)),
/// partial sums taken at N = N0 2^k and extrapolated.
inline sigma_result sigma_eulerian_core(const gfunction& g, int p, double x, double tol, std::int64_t n_max) {
  if (x == 1.0) return {0.0, 0.0, strategy::eulerian, 0};
  const auto c = detail::binomials(x, p);

  compensated_sum head;
  head -= g(x);
  head += detail::binomial_head(g, c, 1.0, p);

  // Sliding window g(n), ..., g(n+p) shared between consecutive terms.
  std::deque<double> window;
  for (int i = 0; i <= p; ++i) window.push_back(g(1.0 + i));
  std::vector<double> vals(static_cast<std::size_t>(p) + 1);

  compensated_sum tail;
  std::int64_t n = 1;
  auto seq = [&](std::int64_t upto) {
    for (; n <= upto; ++n) {
      std::copy(window.begin(), window.end(), vals.begin());
      // sum_{j=0}^p C(x,j) Delta^j g(n)
      compensated_sum interp;
      for (int j = 0; j <= p; ++j) {
        double d = 0.0;
        for (int i = 0; i <= j; ++i) {
          const double w = binomial_int(j, i);
          d += ((j - i) % 2 == 0 ? w : -w) * vals[static_cast<std::size_t>(i)];
        }
        interp += c[static_cast<std::size_t>(j)] * d;
      }
      tail += g(x + static_cast<double>(n)) - interp.value();
      window.pop_front();
      window.push_back(g(static_cast<double>(n + p + 1)));
    }
    compensated_sum s = head;
    s -= tail.value();
    return s.value();
  };
  const limit_result r = extrapolate_limit(seq, detail::initial_n(x), tol, n_max);
  return {r.value, r.err_estimate, strategy::eulerian, r.n_used};
}

}  // namespace detail

inline sigma_result sigma_eulerian(const gfunction& g, int p, double x, double tol = 1e-12,
                                   std::int64_t n_max = std::int64_t{1} << 24, bool reduce = true) {
  detail::check_x(x, "sigma_eulerian");
  detail::check_p(p);
  return detail::reduced(g, x, reduce, [&](double y) { return detail::sigma_eulerian_core(g, p, y, tol, n_max); });
}

/// Shift count used by the dispatcher so that x + N reaches the threshold.
inline int gregory_shift(double x, double threshold = 30.0) {
  return x >= threshold ? 0 : static_cast<int>(std::ceil(threshold - x));
}

/// Gregory route. Requires sigma[g] (cached on g or passed explicitly).
inline sigma_result sigma_gregory(const gfunction& g, int p, double x, int shift, int order,
                                  std::optional<double> sigma_g = std::nullopt) {
  detail::check_x(x, "sigma_gregory");
  detail::check_p(p);
  if (order < 1 || order > max_difference_order) throw error("sigma_gregory: order J out of range [1, 12]");
  if (shift < 0) throw error("sigma_gregory: negative shift");
  const std::optional<double> s = sigma_g ? sigma_g : g.cached_sigma();
  if (!s) throw error("sigma_gregory: sigma[g] is not available for '" + g.name() + "'");
  const double y = x + shift;
  const auto d = forward_diffs(g, y, order - 1);
  compensated_sum acc;
  acc += *s;
  acc += g.integral(1.0, y);
  for (int n = 1; n <= order; ++n) acc -= gregory_coeff(n) * d[static_cast<std::size_t>(n - 1)];
  for (int k = shift - 1; k >= 0; --k) acc -= g(x + k);
  const double err = std::abs(gregory_coeff(order) * d[static_cast<std::size_t>(order - 1)]);
  return {acc.value(), err, strategy::gregory, shift + order};
}

/// Dispatcher: gregory when sigma[g] is cached and jets exist, else
/// eulerian, else direct.
inline sigma_result sigma(const gfunction& g, double x, const sigma_options& opt = {}) {
  detail::check_x(x, "sigma");
  if (x == 1.0) return {0.0, 0.0, g.cached_sigma() && g.has_jet() ? strategy::gregory : strategy::eulerian, 0};
  std::string failures;
  if (g.cached_sigma() && g.has_jet()) {
    try {
      return sigma_gregory(g, g.p(), x, gregory_shift(x, opt.gregory_threshold), opt.gregory_order);
    } catch (const error& e) {
      failures += std::string("gregory: ") + e.what() + "; ";
    }
  }
  sigma_result best;
  bool have = false;
  try {
    best = sigma_eulerian(g, g.p(), x, opt.tol, opt.n_max);
    have = true;
    if (best.err_estimate <= 1e3 * opt.tol) return best;
  } catch (const error& e) {
    failures += std::string("eulerian: ") + e.what() + "; ";
  }
  try {
    sigma_result d = sigma_direct(g, g.p(), x, opt.tol, opt.n_max);
    if (!have || d.err_estimate < best.err_estimate) best = d;
    have = true;
  } catch (const error& e) {
    failures += std::string("direct: ") + e.what() + "; ";
  }
  if (!have) throw error("sigma: all strategies failed (" + failures + ")");
  return best;
}

/// Integral of Sigma g over [a, b]. The Gregory route switches its shift at
/// integers, so the range is split there.
inline quad_result integrate_sigma(const gfunction& g, double a, double b, double rel_tol = 1e-12,
                                   const sigma_options& opt = {}) {
  auto f = [&](double t) { return sigma(g, t, opt).value; };
  quad_result total;
  double lo = a;
  while (lo < b) {
    const double hi = std::min(b, std::floor(lo) + 1.0);
    const double scale = std::max(1.0, std::abs(f(0.5 * (lo + hi))));
    const quad_result q = integrate(f, lo, hi, rel_tol * scale * (hi - lo));
    total.value += q.value;
    total.err_estimate += q.err_estimate;
    total.subdivisions += q.subdivisions;
    lo = hi;
  }
  return total;
}

namespace detail {

// r-th derivative in x of C(x, j) for j = 0..p.
inline std::vector<double> binomial_derivatives(double x, int p, int r) {
  std::vector<double> out(static_cast<std::size_t>(p) + 1);
  series c(1.0, r);
  const series t = series::variable(x, r);
  double fact = 1.0;
  for (int i = 2; i <= r; ++i) fact *= i;
  for (int j = 0; j <= p; ++j) {
    out[static_cast<std::size_t>(j)] = fact * c[static_cast<std::size_t>(r)];
    c = c * (t - series(j, r)) / series(j + 1.0, r);
  }
  return out;
}

}  // namespace detail

/// D^r Sigma g(x), 0 <= r <= 4, by termwise differentiation of the Gregory
/// route (sigma[g] drops out for r >= 1):
///   g^(r-1)(x+N) - sum_n G_n Delta^{n-1} g^(r)(x+N) - sum_{k<N} g^(r)(x+k).
inline sigma_result sigma_deriv(const gfunction& g, int p, double x, int r, const sigma_options& opt = {}) {
  detail::check_x(x, "sigma_deriv");
  if (r < 0 || r > 4) throw error("sigma_deriv: r out of range [0, 4]");
  if (r == 0) return sigma(g.with_class(p, g.shape()), x, opt);
  if (!g.has_jet()) throw error("sigma_deriv: '" + g.name() + "' has no Taylor jets");
  const int shift = gregory_shift(x, opt.gregory_threshold);
  const int order = opt.gregory_order;
  const double y = x + shift;
  auto dr = [&](double t) { return g.derivative(t, r); };
  const auto d = forward_diffs(dr, y, order - 1);
  compensated_sum acc;
  acc += g.derivative(y, r - 1);
  for (int n = 1; n <= order; ++n) acc -= gregory_coeff(n) * d[static_cast<std::size_t>(n - 1)];
  for (int k = shift - 1; k >= 0; --k) acc -= dr(x + k);
  const double err = std::abs(gregory_coeff(order) * d[static_cast<std::size_t>(order - 1)]);
  return {acc.value(), err, strategy::gregory, shift + order};
}

/// D^r Sigma g(x) from the Eulerian series differentiated term by term; the
/// x-dependence of C(x, j) is differentiated with series arithmetic.
inline sigma_result sigma_deriv_eulerian(const gfunction& g, int p, double x, int r, double tol = 1e-12,
                                         std::int64_t n_max = std::int64_t{1} << 24) {
  detail::check_x(x, "sigma_deriv_eulerian");
  detail::check_p(p);
  if (r < 1 || r > 4) throw error("sigma_deriv_eulerian: r out of range [1, 4]");
  const auto dc = detail::binomial_derivatives(x, p, r);
  compensated_sum head;
  head -= g.derivative(x, r);
  head += detail::binomial_head(g, dc, 1.0, p);
  compensated_sum tail;
  std::int64_t n = 1;
  auto seq = [&](std::int64_t upto) {
    for (; n <= upto; ++n) {
      const double nd = static_cast<double>(n);
      const auto d = forward_diffs(g, nd, p);
      compensated_sum interp;
      for (int j = 0; j <= p; ++j) interp += dc[static_cast<std::size_t>(j)] * d[static_cast<std::size_t>(j)];
      tail += g.derivative(x + nd, r) - interp.value();
    }
    compensated_sum s = head;
    s -= tail.value();
    return s.value();
  };
  const limit_result res = extrapolate_limit(seq, detail::initial_n(x), tol, n_max);
  return {res.value, res.err_estimate, strategy::eulerian, res.n_used};
}

}  // namespace pisum
