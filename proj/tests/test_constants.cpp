#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pisum/pisum.hpp"

using namespace pisum;
using Catch::Matchers::WithinAbs;

namespace {
const double sigma_psi2_closed = ln_glaisher + 0.25 * ln_2pi - 0.75;
const double gamma_psi2_closed = ln_glaisher + ln_2 / 6.0 - 1.0 / 3.0;
}  // namespace

TEST_CASE("asymptotic constants of the catalog", "[sigma]") {
  CHECK_THAT(asymptotic_constant(builtin("ln").g), WithinAbs(-1.0 + 0.5 * ln_2pi, 1e-10));
  CHECK_THAT(asymptotic_constant(builtin("psi2g").g), WithinAbs(sigma_psi2_closed, 1e-9));
  CHECK_THAT(asymptotic_constant(builtin("recip").g), WithinAbs(euler_gamma, 1e-10));
  const gfunction zero = gfunction::from_expr(parse("0")).with_class(0, convexity::convex);
  CHECK(asymptotic_constant(zero) == 0.0);
  CHECK_THROWS(asymptotic_constant(builtin("ln").g, 1e-12));
}

TEST_CASE("sigma is cached per function", "[sigma]") {
  const gfunction g = gfunction::from_expr(parse("ln(x)")).with_class(1, convexity::concave);
  CHECK_FALSE(g.cached_sigma().has_value());
  const double s = asymptotic_constant(g);
  REQUIRE(g.cached_sigma().has_value());
  CHECK(*g.cached_sigma() == s);
  CHECK(asymptotic_constant(g) == s);
}

TEST_CASE("generalized Euler constants", "[gamma]") {
  CHECK_THAT(euler_constant_gen(builtin("ln").g), WithinAbs(asymptotic_constant(builtin("ln").g), 1e-15));
  CHECK_THAT(euler_constant_gen(builtin("psi2g").g), WithinAbs(gamma_psi2_closed, 1e-9));
  CHECK_THAT(euler_constant_gen(builtin("recip").g), WithinAbs(euler_gamma, 1e-10));
  CHECK_THAT(euler_constant_gen(builtin("recip").g),
             WithinAbs(integrate([](double t) { return reference_digamma(t) + euler_gamma; }, 1.0, 2.0, 1e-14).value,
                       1e-10));
}

TEST_CASE("gamma needs the minimal p", "[gamma]") {
  const gfunction over = builtin("ln").g.with_class(2, convexity::convex);
  CHECK_FALSE(is_minimal_p(over, 2));
  CHECK_THROWS(euler_constant_gen(over));
  CHECK_NOTHROW(euler_constant_gen(over, true));
  CHECK(is_minimal_p(builtin("psi2g").g, 2));
}

TEST_CASE("constants report", "[gamma][property]") {
  for (const auto& name : catalog_names()) {
    const auto& g = builtin(name).g;
    const constants_report r = compute_constants(g);
    CHECK(r.p == g.p());
    double head = 0.0;
    for (int j = 1; j <= r.p; ++j) head += gregory_coeff(j) * forward_diff(g, 1.0, j - 1);
    CHECK_THAT(r.gamma_gen, WithinAbs(r.sigma - head, 1e-12));
    CHECK(r.err >= 0.0);
  }
}

TEST_CASE("gamma sign follows the interpolation geometry", "[gamma][property]") {
  CHECK(euler_constant_gen(builtin("ln").g) < 0.0);
  CHECK(euler_constant_gen(builtin("psi2g").g) > 0.0);
}

TEST_CASE("piecewise interpolant route to gamma", "[gamma]") {
  CHECK_THAT(gamma_piecewise_interp(builtin("ln").g, 1, 10000), WithinAbs(-1.0 + 0.5 * ln_2pi, 1e-5));
  CHECK_THAT(gamma_piecewise_interp(builtin("psi2g").g, 2, 10000), WithinAbs(gamma_psi2_closed, 1e-4));
  const gfunction quad = gfunction::from_expr(parse("x^2 - 3*x"));
  CHECK_THAT(gamma_piecewise_interp(quad, 2, 100), WithinAbs(0.0, 1e-10));
  CHECK_THROWS(gamma_piecewise_interp(builtin("ln").g, 1, 5));
}

TEST_CASE("two routes to gamma agree", "[gamma][property]") {
  for (const auto& name : {"ln", "psi2g", "xlnx"}) {
    const auto& g = builtin(name).g;
    CHECK_THAT(gamma_piecewise_interp(g, g.p(), 10000), WithinAbs(euler_constant_gen(g), 1e-4));
  }
}

TEST_CASE("Bernoulli-polynomial integral representation of sigma", "[integral_rep]") {
  CHECK_THAT(sigma_integral_rep_psi2(), WithinAbs(sigma_psi2_closed, 1e-6));
  const double first = integrate(
      [](double t) {
        const double u = t - 1.0;
        return (u * u - u + 1.0 / 6.0) / t;
      },
      1.0, 2.0, 1e-16).value;
  CHECK_THAT(bernoulli2_unit_integral(1.0), WithinAbs(first, 1e-15));
  const auto parts = sigma_integral_rep_psi2_partials(14);
  double prev = INFINITY;
  for (double v : parts) {
    const double e = std::abs(v - sigma_psi2_closed);
    CHECK(e < prev);
    prev = e;
  }
}

TEST_CASE("Fontana-type partial sums", "[fontana]") {
  const auto s = fontana_partial(builtin("psi2g").g, 1.0, 10);
  REQUIRE(s.size() == 10);
  // The tenth partial sum misses sigma by about 5.4e-4.
  CHECK_THAT(s.back() - sigma_psi2_closed, WithinAbs(-5.357e-4, 2e-6));
  const auto z = fontana_partial(gfunction::from_expr(parse("0")), 1.0, 5);
  for (double v : z) CHECK(v == 0.0);
  const auto l = fontana_partial(builtin("ln").g, 1.0, 10);
  CHECK(std::abs(l.back() - (-1.0 + 0.5 * ln_2pi)) < std::abs(l.front() - (-1.0 + 0.5 * ln_2pi)));
  CHECK_THROWS(fontana_partial(builtin("ln").g, 1.0, 13));
}

TEST_CASE("Raabe-type consistency of sigma", "[sigma][property]") {
  for (const auto& name : catalog_names()) {
    const auto& g = builtin(name).g;
    const double s = asymptotic_constant(g);
    for (double x : {0.5, 1.0, 2.0, 5.0}) {
      const double v = integrate_sigma(g, x, x + 1.0).value - g.integral(1.0, x);
      CHECK_THAT(v, WithinAbs(s, 1e-7));
    }
  }
}

TEST_CASE("stored constants re-derived", "[derivation]") {
  CHECK_THAT(euler_gamma_from_harmonic(), WithinAbs(euler_gamma, 1e-10));
  CHECK_THAT(ln_glaisher_from_sigma(asymptotic_constant(builtin("psi2g").g)), WithinAbs(ln_glaisher, 1e-8));
}
