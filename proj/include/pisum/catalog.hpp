#pragma once

// Built-in g functions with closed-form metadata and independent oracles.
// The oracles use classical shift-plus-Stirling series and quadrature only;
// none of them touch the Sigma machinery.

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pisum/error.hpp"
#include "pisum/expr.hpp"
#include "pisum/gfunction.hpp"
#include "pisum/named_constants.hpp"
#include "pisum/numerics/coefficients.hpp"
#include "pisum/numerics/quadrature.hpp"

namespace pisum {

namespace detail {

inline void check_positive(double x, const char* who) {
  if (!(x > 0.0) || !std::isfinite(x)) throw domain_error(std::string(who) + ": x must be positive and finite");
}

}  // namespace detail

/// ln Gamma(x): shift to x >= 10, then Stirling's series through B_10.
inline double reference_lgamma(double x) {
  detail::check_positive(x, "reference_lgamma");
  double shift = 0.0;
  while (x < 10.0) {
    shift += std::log(x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double corr = 0.0;
  double pw = inv;
  for (int k = 1; k <= 5; ++k) {
    corr += bernoulli_number(2 * k) / (2.0 * k * (2.0 * k - 1.0)) * pw;
    pw *= inv2;
  }
  return (x - 0.5) * std::log(x) - x + 0.5 * ln_2pi + corr - shift;
}

/// Digamma psi(x): shift to x >= 10, then the asymptotic series through B_10.
inline double reference_digamma(double x) {
  detail::check_positive(x, "reference_digamma");
  double shift = 0.0;
  while (x < 10.0) {
    shift += 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  double corr = 0.0;
  double pw = inv2;
  for (int k = 1; k <= 5; ++k) {
    corr += bernoulli_number(2 * k) / (2.0 * k) * pw;
    pw *= inv2;
  }
  return std::log(x) - 0.5 / x - corr - shift;
}

/// psi_{-2}(x) = integral of ln Gamma over [0, x], written as
/// integral of ln Gamma(t+1) over [0, x] minus (x ln x - x).
inline double reference_psi2(double x) {
  detail::check_positive(x, "reference_psi2");
  auto f = [](double t) { return reference_lgamma(t + 1.0); };
  double tol = 1e-13 * std::max(1.0, x * x * std::log(x + 1.0));
  double s = 0.0;
  // Unit panels keep the adaptive rule well inside its cap for large x.
  const double whole = std::floor(x);
  for (double a = 0.0; a < whole; a += 1.0) s += integrate(f, a, a + 1.0, tol / std::max(1.0, whole)).value;
  if (x > whole) s += integrate(f, whole, x, tol / std::max(1.0, whole)).value;
  return s - (x * std::log(x) - x);
}

/// ln K(x), K the hyperfactorial interpolant: C(x,2) + psi_{-2}(x) - x psi_{-2}(1).
inline double reference_lnk(double x) {
  return 0.5 * x * (x - 1.0) + reference_psi2(x) - 0.5 * ln_2pi * x;
}

struct catalog_entry {
  std::string name;
  gfunction g;
  std::optional<double> sigma_closed;
  std::optional<double> gamma_closed;
  double offset = 0.0;          // named function = Sigma g + offset (for xlnx see offset_fn)
  std::string named_function;   // what Sigma g + offset is called
  double (*reference)(double);  // oracle for the named function
  double (*offset_fn)(double);  // x-dependent shift, nullptr when the offset is constant

  double named_offset(double x) const { return offset_fn ? offset_fn(x) : offset; }
};

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"ln", "psi2g", "xlnx", "recip"};
  return names;
}

namespace detail {

inline gfunction make_g(const char* name, const char* src, double (*f)(double), double (*antideriv)(double), int p,
                        convexity shape) {
  const expr e = parse(src);
  return gfunction(
      name, f, [e](double x, int r) { return e.eval_jet(x, r); }, antideriv, p, shape);
}

inline std::map<std::string, catalog_entry, std::less<>> build_catalog() {
  std::map<std::string, catalog_entry, std::less<>> m;
  constexpr double h = 0.5 * ln_2pi;

  m.emplace("ln", catalog_entry{"ln",
                                make_g(
                                    "ln", "ln(x)", [](double x) { return std::log(x); },
                                    [](double x) { return x * std::log(x) - x + 1.0; }, 1, convexity::concave),
                                -1.0 + h, -1.0 + h, 0.0, "lngamma", reference_lgamma, nullptr});

  m.emplace("psi2g",
            catalog_entry{"psi2g",
                          make_g(
                              "psi2g", "x*ln(x) - x + ln(2*pi)/2",
                              [](double x) { return x * std::log(x) - x + 0.5 * ln_2pi; },
                              [](double x) {
                                return 0.5 * x * x * std::log(x) - 0.75 * x * x + 0.5 * ln_2pi * (x - 1.0) + 0.75;
                              },
                              2, convexity::concave),
                          ln_glaisher + 0.25 * ln_2pi - 0.75, ln_glaisher + ln_2 / 6.0 - 1.0 / 3.0, h, "psi_-2",
                          reference_psi2, nullptr});

  m.emplace("xlnx", catalog_entry{"xlnx",
                                  make_g(
                                      "xlnx", "x*ln(x)", [](double x) { return x * std::log(x); },
                                      [](double x) { return 0.5 * x * x * std::log(x) - 0.25 * x * x + 0.25; }, 2,
                                      convexity::concave),
                                  ln_glaisher - 1.0 / 3.0, ln_glaisher - 1.0 / 3.0 + ln_2 / 6.0, 0.0, "lnK",
                                  reference_lnk, nullptr});

  m.emplace("recip", catalog_entry{"recip",
                                   make_g(
                                       "recip", "1/x", [](double x) { return 1.0 / x; },
                                       [](double x) { return std::log(x); }, 0, convexity::concave),
                                   euler_gamma, euler_gamma, -euler_gamma, "digamma", reference_digamma, nullptr});
  return m;
}

}  // namespace detail

/// Catalog lookup. Entries are process-wide, so the sigma[g] cache filled
/// through one copy is visible to every other copy.
inline const catalog_entry& builtin(std::string_view name) {
  static const auto table = detail::build_catalog();
  const auto it = table.find(name);
  if (it == table.end()) throw error("unknown catalog function '" + std::string(name) + "'");
  return it->second;
}

}  // namespace pisum
