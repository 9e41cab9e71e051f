#pragma once

// Numerical certification of g in D^p (Delta^p g(n) -> 0) and K^p
// (eventual p-convexity or p-concavity).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "pisum/error.hpp"
#include "pisum/gfunction.hpp"
#include "pisum/numerics/differences.hpp"

namespace pisum {

inline constexpr int max_shape_p = 6;

struct shape_options {
  std::int64_t n_max = std::int64_t{1} << 20;
  double eta = 1e-3;        // decay threshold on the last sample
  int samples = 200;        // node sets per window
  double eps_rel = 1e-10;
  double window_width = 64.0;
  std::uint64_t seed = 0;
};

struct shape_report {
  int p = 0;
  double dp_margin = 0.0;
  convexity shape = convexity::convex;
  double x_lo = 1.0;
  double x_hi = 65.0;
  bool minimal_p = true;
};

namespace detail {

struct decay_sample {
  std::array<double, 3> values{};
  bool decays = false;
};

// |Delta^p g(n)| at n_max/4, n_max/2, n_max. Values at the roundoff level of
// the difference count as zero.
inline decay_sample decay_at(const gfunction& g, int p, std::int64_t n_max, double eta) {
  decay_sample s;
  const std::array<double, 3> ns{static_cast<double>(n_max / 4), static_cast<double>(n_max / 2),
                                 static_cast<double>(n_max)};
  for (std::size_t i = 0; i < 3; ++i) {
    const double d = std::abs(forward_diff(g, ns[i], p));
    double mag = 0.0;
    for (int k = 0; k <= p; ++k) mag = std::max(mag, std::abs(g(ns[i] + k)));
    const double noise = 16.0 * std::ldexp(1.0, p) * std::numeric_limits<double>::epsilon() * mag;
    s.values[i] = d <= noise ? 0.0 : d;
    if (!std::isfinite(d)) return s;
  }
  const auto& v = s.values;
  if (v[2] == 0.0) {
    s.decays = true;
  } else {
    s.decays = v[2] < eta && v[1] > 0.0 && v[2] <= v[1] && v[1] <= v[0] && v[2] / v[1] < 1.0;
  }
  return s;
}

}  // namespace detail

/// Smallest p <= 6 for which |Delta^p g(n)| visibly decays to zero.
inline int dp_degree(const gfunction& g, std::int64_t n_max = std::int64_t{1} << 20, double eta = 1e-3) {
  if (n_max < 64) throw error("dp_degree: n_max must be >= 64");
  for (int p = 0; p <= max_shape_p; ++p) {
    try {
      if (detail::decay_at(g, p, n_max, eta).decays) return p;
    } catch (const domain_error&) {
      break;
    }
  }
  throw classification_error("dp_degree: no p <= 6 with Delta^p g(n) -> 0 for '" + g.name() + "'");
}

/// Sign test on order-(p+1) divided differences over random node sets in
/// [lo, hi]. A value is treated as zero when it is below eps_rel times the
/// larger of the biggest magnitude seen and the roundoff scale
/// sum |g(x_i)| / |w'(x_i)| of its own formula. Exact ties classify as convex.
template <class Rng>
convexity kp_check(const gfunction& g, int p, double lo, double hi, Rng& rng, int samples = 200,
                   double eps_rel = 1e-10) {
  if (!(lo > 0.0) || !(hi - lo >= p + 2.0)) throw error("kp_check: window must lie in (0, inf) with width >= p + 2");
  std::uniform_real_distribution<double> u(lo, hi);
  const std::size_t k = static_cast<std::size_t>(p) + 2;
  std::vector<double> nodes(k), dd(static_cast<std::size_t>(samples)), scale(dd.size());
  double biggest = 0.0;
  for (int s = 0; s < samples; ++s) {
    for (;;) {
      for (auto& t : nodes) t = u(rng);
      std::sort(nodes.begin(), nodes.end());
      if (std::adjacent_find(nodes.begin(), nodes.end()) == nodes.end()) break;
    }
    double value = 0.0, sc = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      double w = 1.0;
      for (std::size_t j = 0; j < k; ++j) {
        if (j != i) w *= nodes[i] - nodes[j];
      }
      const double gi = g(nodes[i]);
      value += gi / w;
      sc += std::abs(gi / w);
    }
    dd[static_cast<std::size_t>(s)] = value;
    scale[static_cast<std::size_t>(s)] = sc;
    biggest = std::max(biggest, std::abs(value));
  }
  bool nonneg = true, nonpos = true;
  for (std::size_t s = 0; s < dd.size(); ++s) {
    const double eps = eps_rel * std::max(biggest, scale[s]);
    if (dd[s] < -eps) nonneg = false;
    if (dd[s] > eps) nonpos = false;
  }
  if (nonneg) return convexity::convex;
  if (nonpos) return convexity::concave;
  return convexity::neither;
}

template <class Rng>
convexity kp_check(const gfunction& g, int p, double lo, double hi, Rng&& rng) {
  return kp_check(g, p, lo, hi, rng);
}

/// Full classification: p from dp_degree, shape certified on the first
/// window [x0, x0 + 64] with x0 in {1, 2, 4, ..., 1024} that passes.
inline shape_report classify(const gfunction& g, const shape_options& opt = {}) {
  shape_report r;
  r.p = dp_degree(g, opt.n_max, opt.eta);
  const auto tail = detail::decay_at(g, r.p, opt.n_max, opt.eta);
  r.dp_margin = *std::max_element(tail.values.begin(), tail.values.end());
  r.minimal_p = r.p == 0 || !detail::decay_at(g, r.p - 1, opt.n_max, opt.eta).decays;
  std::mt19937_64 rng(opt.seed);
  for (double x0 = 1.0; x0 <= 1024.0; x0 *= 2.0) {
    const convexity c = kp_check(g, r.p, x0, x0 + opt.window_width, rng, opt.samples, opt.eps_rel);
    if (c != convexity::neither) {
      r.shape = c;
      r.x_lo = x0;
      r.x_hi = x0 + opt.window_width;
      return r;
    }
  }
  throw classification_error("classify: no window in [1, 1088] certifies " + std::to_string(r.p) +
                             "-convexity or concavity for '" + g.name() + "'");
}

}  // namespace pisum
