#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "pisum/error.hpp"
#include "pisum/numerics/summation.hpp"

namespace pisum {

inline constexpr int max_difference_order = 12;

/// Generalized binomial coefficient C(x, j) = x(x-1)...(x-j+1)/j!.
inline double gen_binomial(double x, int j) {
  if (j < 0) throw error("gen_binomial: negative order");
  double r = 1.0;
  for (int i = 0; i < j; ++i) r = r * (x - i) / (i + 1);
  return r;
}

/// Binomial coefficient C(j, i) for small nonnegative integers.
inline double binomial_int(int j, int i) {
  if (i < 0 || i > j) return 0.0;
  double r = 1.0;
  for (int k = 1; k <= i; ++k) r = r * (j - i + k) / k;
  return std::round(r);
}

/// Forward difference Delta^j g(x) by direct binomial-weighted summation.
template <class F>
double forward_diff(const F& g, double x, int j) {
  if (j < 0 || j > max_difference_order) throw error("forward_diff: order out of range [0, 12]");
  compensated_sum s;
  for (int i = 0; i <= j; ++i) {
    const double w = binomial_int(j, i);
    s += ((j - i) % 2 == 0 ? w : -w) * g(x + i);
  }
  return s.value();
}

/// All differences Delta^0 g(x) .. Delta^m g(x) from m+1 shared evaluations.
template <class F>
std::vector<double> forward_diffs(const F& g, double x, int m) {
  if (m < 0 || m > max_difference_order) throw error("forward_diffs: order out of range [0, 12]");
  std::vector<double> v(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) v[static_cast<std::size_t>(i)] = g(x + i);
  std::vector<double> d(v.size());
  for (int j = 0; j <= m; ++j) {
    compensated_sum s;
    for (int i = 0; i <= j; ++i) {
      const double w = binomial_int(j, i);
      s += ((j - i) % 2 == 0 ? w : -w) * v[static_cast<std::size_t>(i)];
    }
    d[static_cast<std::size_t>(j)] = s.value();
  }
  return d;
}

/// Divided difference f[x_0, ..., x_k] via the recursive Newton table.
template <class F>
double divided_difference(const F& f, std::span<const double> nodes) {
  if (nodes.empty()) throw error("divided_difference: no nodes");
  std::vector<double> t(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (nodes[i] == nodes[j]) throw error("divided_difference: duplicate nodes");
    }
    t[i] = f(nodes[i]);
  }
  for (std::size_t level = 1; level < nodes.size(); ++level) {
    for (std::size_t i = nodes.size() - 1; i >= level; --i) {
      t[i] = (t[i] - t[i - 1]) / (nodes[i] - nodes[i - level]);
    }
  }
  return t.back();
}

/// Value at x of the polynomial interpolating g at a, a+1, ..., a+p-1 (Newton form).
template <class F>
double interp_poly_eval(const F& g, double a, int p, double x) {
  if (p < 1) throw error("interp_poly_eval: p must be >= 1");
  std::vector<double> nodes(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) nodes[static_cast<std::size_t>(i)] = a + i;
  // Newton coefficients g[a], g[a, a+1], ...
  std::vector<double> t(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) t[i] = g(nodes[i]);
  std::vector<double> coef(nodes.size());
  coef[0] = t[0];
  for (std::size_t level = 1; level < nodes.size(); ++level) {
    for (std::size_t i = nodes.size() - 1; i >= level; --i) {
      t[i] = (t[i] - t[i - 1]) / (nodes[i] - nodes[i - level]);
    }
    coef[level] = t[level];
  }
  // Horner on the nested Newton form.
  double v = coef.back();
  for (std::size_t k = coef.size() - 1; k-- > 0;) v = v * (x - nodes[k]) + coef[k];
  return v;
}

}  // namespace pisum
