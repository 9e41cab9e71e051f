#pragma once

// Truncated Taylor series arithmetic. A `series` holds c_0..c_r where
// c_k = f^(k)(x0) / k!; every operation truncates at the common order r.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "pisum/error.hpp"

namespace pisum {

inline constexpr int max_jet_order = 8;

class series {
 public:
  series() = default;

  /// Constant of the given order.
  series(double value, int order) : c_(static_cast<std::size_t>(order) + 1, 0.0) { c_[0] = value; }

  /// The independent variable t expanded at x0.
  static series variable(double x0, int order) {
    series s(x0, order);
    if (order >= 1) s.c_[1] = 1.0;
    return s;
  }

  int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
  double operator[](std::size_t k) const { return c_[k]; }
  double& operator[](std::size_t k) { return c_[k]; }
  const std::vector<double>& coeffs() const noexcept { return c_; }

  series operator-() const {
    series r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  friend series operator+(const series& a, const series& b) {
    series r = a;
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] += b.c_[k];
    return r;
  }

  friend series operator-(const series& a, const series& b) {
    series r = a;
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] -= b.c_[k];
    return r;
  }

  friend series operator*(const series& a, const series& b) {
    series r(0.0, a.order());
    for (std::size_t k = 0; k < r.c_.size(); ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i <= k; ++i) s += a.c_[i] * b.c_[k - i];
      r.c_[k] = s;
    }
    return r;
  }

  friend series operator/(const series& a, const series& b) {
    if (b.c_[0] == 0.0) throw domain_error("division by zero");
    series q(0.0, a.order());
    for (std::size_t k = 0; k < q.c_.size(); ++k) {
      double s = a.c_[k];
      for (std::size_t i = 1; i <= k; ++i) s -= b.c_[i] * q.c_[k - i];
      q.c_[k] = s / b.c_[0];
    }
    return q;
  }

 private:
  std::vector<double> c_{0.0};
};

inline series exp(const series& a) {
  series e(std::exp(a[0]), a.order());
  for (int k = 1; k <= a.order(); ++k) {
    double s = 0.0;
    for (int i = 1; i <= k; ++i) s += i * a[i] * e[k - i];
    e[k] = s / k;
  }
  return e;
}

inline series log(const series& a) {
  if (!(a[0] > 0.0)) throw domain_error("ln of nonpositive value");
  series l(std::log(a[0]), a.order());
  for (int k = 1; k <= a.order(); ++k) {
    double s = a[k];
    for (int i = 1; i < k; ++i) s -= (static_cast<double>(i) / k) * l[i] * a[k - i];
    l[k] = s / a[0];
  }
  return l;
}

inline void sincos(const series& a, series& s, series& c) {
  s = series(std::sin(a[0]), a.order());
  c = series(std::cos(a[0]), a.order());
  for (int k = 1; k <= a.order(); ++k) {
    double ss = 0.0, cc = 0.0;
    for (int i = 1; i <= k; ++i) {
      ss += i * a[i] * c[k - i];
      cc -= i * a[i] * s[k - i];
    }
    s[k] = ss / k;
    c[k] = cc / k;
  }
}

inline series sin(const series& a) {
  series s, c;
  sincos(a, s, c);
  return s;
}

inline series cos(const series& a) {
  series s, c;
  sincos(a, s, c);
  return c;
}

inline series sqrt(const series& a) {
  if (a[0] < 0.0 || (a[0] == 0.0 && a.order() > 0)) throw domain_error("sqrt of nonpositive value");
  series r(std::sqrt(a[0]), a.order());
  for (int k = 1; k <= a.order(); ++k) {
    double s = a[k];
    for (int i = 1; i < k; ++i) s -= r[i] * r[k - i];
    r[k] = s / (2.0 * r[0]);
  }
  return r;
}

/// a^b for a constant exponent b.
inline series pow(const series& a, double b) {
  const bool integral = std::floor(b) == b && std::abs(b) < 1024;
  if (a[0] == 0.0) {
    if (integral && b >= 0) {
      series r(1.0, a.order()), base = a;
      for (auto n = static_cast<long>(b); n > 0; n >>= 1) {
        if (n & 1) r = r * base;
        base = base * base;
      }
      return r;
    }
    if (a.order() == 0 && b > 0) return series(0.0, 0);
    throw domain_error("pow with zero base and non-integral or negative exponent");
  }
  if (a[0] < 0.0 && !integral) throw domain_error("pow of negative base with non-integral exponent");
  series p(std::pow(a[0], b), a.order());
  for (int k = 1; k <= a.order(); ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += (j * (b + 1.0) - k) * a[j] * p[k - j];
    p[k] = s / (k * a[0]);
  }
  return p;
}

/// Taylor jet of a function at `center`: coeffs[k] = f^(k)(center) / k!.
struct jet {
  double center = 0.0;
  std::vector<double> coeffs;

  int order() const noexcept { return static_cast<int>(coeffs.size()) - 1; }

  /// k-th derivative, i.e. k! * coeffs[k].
  double derivative(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f * coeffs.at(static_cast<std::size_t>(k));
  }
};

}  // namespace pisum
