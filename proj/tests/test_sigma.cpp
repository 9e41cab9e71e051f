#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "pisum/pisum.hpp"

using namespace pisum;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const gfunction& ln_g() { return builtin("ln").g; }
const gfunction& psi2_g() { return builtin("psi2g").g; }
const gfunction& recip_g() { return builtin("recip").g; }
void prime(const gfunction& g) { asymptotic_constant(g); }
}  // namespace

TEST_CASE("f_pn finite sums", "[f_pn]") {
  for (std::int64_t n : {1, 2, 7, 100}) CHECK_THAT(f_pn(ln_g(), 1, n, 1.0), WithinAbs(0.0, 1e-12));
  CHECK_THAT(f_pn(ln_g(), 1, 10000, 0.5), WithinAbs(0.5 * ln_pi, 1e-4));
  CHECK_THAT(f_pn(psi2_g(), 2, 1000, 2.0), WithinAbs(0.5 * ln_2pi - 1.0, 1e-4));
  CHECK_THROWS(f_pn(ln_g(), 1, 0, 1.0));
}

TEST_CASE("direct strategy", "[direct]") {
  CHECK_THAT(sigma_direct(ln_g(), 1, 1.0, 1e-10).value, WithinAbs(0.0, 1e-12));
  const auto r = sigma_direct(ln_g(), 1, 0.5, 1e-12);
  CHECK(r.used == strategy::direct);
  CHECK_THAT(r.value, WithinAbs(0.5 * ln_pi, 1e-10));
  CHECK_THAT(sigma_direct(recip_g(), 0, 2.0).value, WithinAbs(1.0, 1e-10));
  CHECK_THROWS(sigma_direct(ln_g(), 1, 0.0));
  CHECK_THROWS(sigma_direct(ln_g(), 1, -1.0));
}

TEST_CASE("direct strategy raw mode (no reduction)", "[direct]") {
  const auto r = sigma_direct(ln_g(), 1, 3.5, 1e-12, std::int64_t{1} << 24, false);
  CHECK_THAT(r.value, WithinAbs(reference_lgamma(3.5), 1e-8));
}

TEST_CASE("Eulerian strategy", "[eulerian]") {
  CHECK_THAT(sigma_eulerian(ln_g(), 1, 2.0).value, WithinAbs(0.0, 1e-11));
  const double psi2_half = 5.0 / 24.0 * ln_2 + 0.25 * ln_pi + 1.5 * ln_glaisher;
  CHECK_THAT(sigma_eulerian(psi2_g(), 2, 0.5).value, WithinAbs(psi2_half - 0.5 * ln_2pi, 1e-9));
  for (const auto& name : catalog_names()) CHECK(sigma_eulerian(builtin(name).g, builtin(name).g.p(), 1.0).value == 0.0);
  CHECK(sigma_eulerian(ln_g(), 1, 0.7).used == strategy::eulerian);
}

TEST_CASE("Gregory strategy", "[gregory]") {
  prime(ln_g());
  prime(psi2_g());
  CHECK_THAT(sigma_gregory(ln_g(), 1, 0.5, 32, 8).value, WithinAbs(0.5 * ln_pi, 1e-10));
  CHECK_THAT(sigma_gregory(psi2_g(), 2, 1.0, 32, 8).value, WithinAbs(0.0, 1e-9));
  CHECK_THAT(sigma_gregory(ln_g(), 1, 1.0, 32, 8).value, WithinAbs(0.0, 1e-10));
  const gfunction fresh = gfunction::from_expr(parse("ln(x)")).with_class(1, convexity::concave);
  CHECK_THROWS(sigma_gregory(fresh, 1, 2.0, 32, 8));
  CHECK_NOTHROW(sigma_gregory(fresh, 1, 2.0, 32, 8, ln_2pi / 2 - 1));
  CHECK_THROWS(sigma_gregory(ln_g(), 1, 2.0, 32, 13));
  CHECK(gregory_shift(0.5) == 30);
  CHECK(gregory_shift(31.0) == 0);
}

TEST_CASE("dispatcher", "[sigma]") {
  prime(ln_g());
  prime(psi2_g());
  const auto a = sigma(ln_g(), 7.0);
  CHECK(a.used == strategy::gregory);
  CHECK_THAT(a.value, WithinAbs(std::log(720.0), 1e-9));
  CHECK(sigma(ln_g(), 1.0).value == 0.0);
  CHECK_THAT(sigma(psi2_g(), 3.0).value, WithinAbs(reference_psi2(3.0) - 0.5 * ln_2pi, 1e-9));
  const gfunction fresh = gfunction::from_expr(parse("sqrt(x)")).with_class(1, convexity::concave);
  CHECK(sigma(fresh, 2.5).used != strategy::gregory);
  CHECK_THAT(sigma(fresh, 2.0).value, WithinAbs(1.0, 1e-10));
}

TEST_CASE("derivatives of Sigma g", "[deriv]") {
  prime(ln_g());
  prime(psi2_g());
  prime(recip_g());
  CHECK_THAT(sigma_deriv(ln_g(), 1, 1.0, 1).value, WithinAbs(-euler_gamma, 1e-9));
  CHECK_THAT(sigma_deriv(ln_g(), 1, 2.5, 1).value, WithinAbs(reference_digamma(2.5), 1e-9));
  CHECK_THAT(sigma_deriv(recip_g(), 0, 2.5, 0).value, WithinAbs(sigma(recip_g(), 2.5).value, 1e-12));
  CHECK_THAT(sigma_deriv(psi2_g(), 2, 2.0, 1).value, WithinAbs(0.0, 1e-9));
  CHECK_THAT(sigma_deriv(psi2_g(), 2, 3.5, 1).value, WithinAbs(reference_lgamma(3.5), 1e-9));
  CHECK_THROWS(sigma_deriv(ln_g(), 1, 2.0, 5));
  CHECK_THAT(sigma_deriv_eulerian(ln_g(), 1, 2.5, 1).value, WithinAbs(reference_digamma(2.5), 1e-9));
  CHECK_THAT(sigma_deriv_eulerian(ln_g(), 1, 2.5, 2).value, WithinAbs(sigma_deriv(ln_g(), 1, 2.5, 2).value, 1e-8));
}

TEST_CASE("derivative matches finite differences of sigma", "[deriv][property]") {
  for (const auto& name : catalog_names()) {
    const auto& g = builtin(name).g;
    prime(g);
    for (double x : {0.7, 1.9, 4.2, 12.5}) {
      const double h = 1e-3;
      const double fd = (sigma(g, x - 2 * h).value - 8 * sigma(g, x - h).value + 8 * sigma(g, x + h).value -
                         sigma(g, x + 2 * h).value) /
                        (12 * h);
      const double d = sigma_deriv(g, g.p(), x, 1).value;
      CHECK_THAT(d, WithinAbs(fd, 1e-6 * std::max(1.0, std::abs(d))));
    }
  }
}

TEST_CASE("difference equation", "[sigma][property]") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.05, 25.0);
  for (const auto& name : catalog_names()) {
    const auto& g = builtin(name).g;
    prime(g);
    for (int t = 0; t < 40; ++t) {
      const double x = u(rng);
      const auto a = sigma(g, x + 1.0), b = sigma(g, x);
      const double res = a.value - b.value - g(x);
      CHECK(std::abs(res) <= std::max(10.0 * (a.err_estimate + b.err_estimate), 1e-12 * std::abs(g(x))));
    }
  }
}

TEST_CASE("normalization at 1", "[sigma][property]") {
  for (const auto& name : catalog_names()) {
    const auto& g = builtin(name).g;
    prime(g);
    CHECK(sigma(g, 1.0).value == 0.0);
    CHECK_THAT(sigma_direct(g, g.p(), 1.0).value, WithinAbs(0.0, 1e-12));
  }
}

TEST_CASE("strategy agreement", "[sigma][property]") {
  for (const auto& name : catalog_names()) {
    const auto& g = builtin(name).g;
    prime(g);
    for (double x : {0.25, 0.5, 1.5, 3.7, 10.0}) {
      const auto d = sigma_direct(g, g.p(), x, 1e-12);
      const auto e = sigma_eulerian(g, g.p(), x, 1e-12);
      const auto r = sigma_gregory(g, g.p(), x, gregory_shift(x), 8);
      INFO(name << " at " << x);
      CHECK(std::abs(d.value - e.value) <= std::max(d.err_estimate + e.err_estimate, 1e-10));
      CHECK(std::abs(e.value - r.value) <= std::max(e.err_estimate + r.err_estimate, 1e-10));
    }
  }
}

TEST_CASE("uniform convergence proxy along n = 2^k", "[f_pn][property]") {
  for (const auto& name : {"ln", "psi2g"}) {
    const auto& g = builtin(name).g;
    prime(g);
    double previous = INFINITY;
    for (int k = 4; k <= 12; ++k) {
      const std::int64_t n = std::int64_t{1} << k;
      double worst = 0.0;
      for (int i = 1; i <= 50; ++i) {
        const double x = 0.1 * i;
        worst = std::max(worst, std::abs(f_pn(g, g.p(), n, x) - sigma(g, x).value));
      }
      CHECK(worst < previous);
      previous = worst;
    }
  }
}

TEST_CASE("integration of Sigma g across integers", "[sigma]") {
  prime(ln_g());
  const auto q = integrate_sigma(ln_g(), 1.0, 2.0);
  CHECK_THAT(q.value, WithinAbs(ln_2pi / 2 - 1.0, 1e-10));
  const auto w = integrate_sigma(ln_g(), 0.5, 3.25);
  const double piece = integrate_sigma(ln_g(), 0.5, 1.0).value + integrate_sigma(ln_g(), 1.0, 3.25).value;
  CHECK_THAT(w.value, WithinAbs(piece, 1e-11));
}
