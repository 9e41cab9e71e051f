#pragma once

// Gregory coefficients, Bernoulli numbers and zeta at integers. The first two
// are computed once in exact rational arithmetic and cached as doubles.

#include <array>
#include <cmath>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pisum/error.hpp"

namespace pisum {

using rational = boost::multiprecision::cpp_rational;

inline constexpr int max_coefficient_index = 30;

namespace detail {

// Coefficients of t(t-1)...(t-j+1) in powers of t (signed Stirling numbers
// of the first kind), built by multiplying in one factor at a time.
inline std::vector<boost::multiprecision::cpp_int> falling_factorial_poly(int j) {
  using boost::multiprecision::cpp_int;
  std::vector<cpp_int> c{1};
  for (int i = 0; i < j; ++i) {
    std::vector<cpp_int> next(c.size() + 1);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= c[k] * i;
    }
    c = std::move(next);
  }
  return c;
}

struct coefficient_tables {
  std::array<rational, max_coefficient_index + 1> gregory;
  std::array<rational, max_coefficient_index + 1> bernoulli;
  std::array<double, max_coefficient_index + 1> gregory_d{};
  std::array<double, max_coefficient_index + 1> bernoulli_d{};

  coefficient_tables() {
    using boost::multiprecision::cpp_int;
    gregory[0] = 1;  // integral of C(t,0) over [0,1]
    cpp_int factorial = 1;
    for (int j = 1; j <= max_coefficient_index; ++j) {
      factorial *= j;
      const auto poly = falling_factorial_poly(j);
      rational integral = 0;
      for (std::size_t k = 0; k < poly.size(); ++k) integral += rational(poly[k], cpp_int(k + 1));
      gregory[j] = integral / rational(factorial);
    }

    // sum_{j=0}^{m} C(m+1, j) B_j = 0, which yields B_1 = -1/2.
    bernoulli[0] = 1;
    for (int m = 1; m <= max_coefficient_index; ++m) {
      rational s = 0;
      cpp_int binom = 1;  // C(m+1, j)
      for (int j = 0; j < m; ++j) {
        s += rational(binom) * bernoulli[j];
        binom = binom * (m + 1 - j) / (j + 1);
      }
      bernoulli[m] = -s / rational(m + 1);
    }

    for (int j = 0; j <= max_coefficient_index; ++j) {
      gregory_d[j] = static_cast<double>(gregory[j]);
      bernoulli_d[j] = static_cast<double>(bernoulli[j]);
    }
  }
};

inline const coefficient_tables& tables() {
  static const coefficient_tables t;
  return t;
}

inline void check_index(int j, int lo, const char* who) {
  if (j < lo || j > max_coefficient_index) throw error(std::string(who) + ": index out of range");
}

}  // namespace detail

/// G_j = integral over [0,1] of C(t, j), exact.
inline const rational& gregory_coeff_exact(int j) {
  detail::check_index(j, 0, "gregory_coeff");
  return detail::tables().gregory[j];
}

/// G_j as a double, 1 <= j <= 30.
inline double gregory_coeff(int j) {
  detail::check_index(j, 1, "gregory_coeff");
  return detail::tables().gregory_d[j];
}

/// B_k with the B_1 = -1/2 convention, exact.
inline const rational& bernoulli_exact(int k) {
  detail::check_index(k, 0, "bernoulli_number");
  return detail::tables().bernoulli[k];
}

inline double bernoulli_number(int k) {
  detail::check_index(k, 0, "bernoulli_number");
  return detail::tables().bernoulli_d[k];
}

/// Riemann zeta at an integer n in [2, 60]: a direct head plus an
/// Euler-Maclaurin tail through B_12.
inline double zeta_int(int n) {
  if (n < 2 || n > 60) throw error("zeta_int: n out of range [2, 60]");
  static const auto table = [] {
    std::array<double, 61> z{};
    constexpr int K = 40;
    for (int s = 2; s <= 60; ++s) {
      const double Kd = K;
      double tail = std::pow(Kd, 1 - s) / (s - 1) + 0.5 * std::pow(Kd, -s);
      double rising = s;  // s (s+1) ... (s + 2m - 2)
      double fact = 2.0;  // (2m)!
      for (int m = 1; m <= 6; ++m) {
        tail += bernoulli_number(2 * m) / fact * rising * std::pow(Kd, -s - 2 * m + 1);
        rising *= (s + 2 * m - 1) * (s + 2 * m);
        fact *= (2 * m + 1) * (2 * m + 2);
      }
      double head = 0.0;
      for (int k = K - 1; k >= 1; --k) head += std::pow(static_cast<double>(k), -s);
      z[static_cast<std::size_t>(s)] = head + tail;
    }
    return z;
  }();
  return table[static_cast<std::size_t>(n)];
}

}  // namespace pisum
