#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "pisum/catalog.hpp"
#include "pisum/numerics.hpp"

using namespace pisum;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const auto ln = [](double x) { return std::log(x); };
const auto sq = [](double x) { return x * x; };
double psi2g(double x) { return x * std::log(x) - x + 0.5 * ln_2pi; }
}  // namespace

TEST_CASE("generalized binomials", "[binomial]") {
  CHECK(gen_binomial(1.0, 1) == 1.0);
  CHECK(gen_binomial(0.5, 2) == -0.125);
  CHECK(gen_binomial(3.0, 5) == 0.0);
  CHECK(gen_binomial(-2.7, 0) == 1.0);
  CHECK_THAT(gen_binomial(10.0, 3), WithinRel(120.0, 1e-15));
  CHECK_THAT(gen_binomial(-1.0, 4), WithinRel(1.0, 1e-15));
  for (int j = 0; j <= 8; ++j) CHECK(gen_binomial(8.0, j) == binomial_int(8, j));
}

TEST_CASE("forward differences", "[differences]") {
  CHECK(forward_diff(ln, 1.0, 0) == 0.0);
  CHECK_THAT(forward_diff(ln, 1.0, 1), WithinAbs(ln_2, 1e-16));
  CHECK_THAT(forward_diff(ln, 2.0, 2), WithinAbs(std::log(8.0 / 9.0), 1e-15));
  const double n = 1e6;
  CHECK(std::abs(forward_diff(psi2g, n, 1) - std::log(n)) < 1e-5);
  const auto d = forward_diffs(ln, 3.0, 4);
  REQUIRE(d.size() == 5);
  for (int j = 0; j <= 4; ++j) CHECK_THAT(d[static_cast<std::size_t>(j)], WithinAbs(forward_diff(ln, 3.0, j), 1e-15));
  CHECK_THROWS(forward_diff(ln, 1.0, 13));
}

TEST_CASE("divided differences", "[differences]") {
  const std::array<double, 2> n2{1.0, 2.0};
  CHECK_THAT(divided_difference(ln, n2), WithinAbs(ln_2, 1e-15));
  const std::array<double, 3> n3{0.3, 2.0, 7.5};
  CHECK_THAT(divided_difference(sq, n3), WithinAbs(1.0, 1e-13));
  const std::array<double, 4> n4{1.0, 2.0, 3.0, 4.0};
  CHECK_THAT(divided_difference(sq, n4), WithinAbs(0.0, 1e-14));
  const std::array<double, 3> dup{1.0, 2.0, 1.0};
  CHECK_THROWS(divided_difference(sq, dup));
}

TEST_CASE("divided differences are symmetric in the nodes", "[differences][property]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.5, 20.0);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> nodes(5);
    for (auto& v : nodes) v = u(rng);
    const double ref = divided_difference(ln, nodes);
    std::shuffle(nodes.begin(), nodes.end(), rng);
    CHECK_THAT(divided_difference(ln, nodes), WithinAbs(ref, 1e-9 * std::max(1e-3, std::abs(ref))));
  }
}

TEST_CASE("Newton identity: Delta^j = j! times divided difference", "[differences][property]") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.5, 30.0);
  for (const auto& name : catalog_names()) {
    const auto& g = builtin(name).g;
    for (int t = 0; t < 5; ++t) {
      const double x = u(rng);
      double fact = 1.0;
      for (int j = 1; j <= 6; ++j) {
        fact *= j;
        std::vector<double> nodes;
        for (int i = 0; i <= j; ++i) nodes.push_back(x + i);
        const double lhs = forward_diff(g, x, j);
        const double rhs = fact * divided_difference(g, nodes);
        CHECK_THAT(lhs, WithinAbs(rhs, 1e-10 * std::max(1.0, std::abs(g(x)))));
      }
    }
  }
}

TEST_CASE("Gregory coefficients", "[coefficients]") {
  CHECK(gregory_coeff(1) == 0.5);
  CHECK_THAT(gregory_coeff(2), WithinRel(-1.0 / 12.0, 1e-15));
  CHECK_THAT(gregory_coeff(3), WithinRel(1.0 / 24.0, 1e-15));
  CHECK_THAT(gregory_coeff(4), WithinRel(-19.0 / 720.0, 1e-15));
  CHECK(gregory_coeff_exact(4) == rational(-19, 720));
  // Independent route: quadrature of C(t, j) over [0, 1].
  for (int j = 1; j <= 12; ++j) {
    const double q = integrate([j](double t) { return gen_binomial(t, j); }, 0.0, 1.0, 1e-17).value;
    CHECK_THAT(gregory_coeff(j), WithinAbs(q, 1e-15));
  }
  CHECK_THROWS(gregory_coeff(0));
  CHECK_THROWS(gregory_coeff(31));
}

TEST_CASE("Gregory coefficients alternate and decrease", "[coefficients][property]") {
  for (int j = 1; j <= 30; ++j) {
    CHECK((gregory_coeff(j) > 0) == (j % 2 == 1));
    if (j >= 2 && j < 30) CHECK(std::abs(gregory_coeff(j + 1)) < std::abs(gregory_coeff(j)));
  }
}

TEST_CASE("Bernoulli numbers", "[coefficients]") {
  CHECK(bernoulli_number(0) == 1.0);
  CHECK(bernoulli_number(1) == -0.5);
  CHECK_THAT(bernoulli_number(2), WithinRel(1.0 / 6.0, 1e-15));
  CHECK_THAT(bernoulli_number(4), WithinRel(-1.0 / 30.0, 1e-15));
  CHECK_THAT(bernoulli_number(12), WithinRel(-691.0 / 2730.0, 1e-15));
  CHECK(bernoulli_exact(30) == rational(8615841276005LL, 14322));
  for (int k = 3; k <= 29; k += 2) CHECK(bernoulli_number(k) == 0.0);
  CHECK_THROWS(bernoulli_number(31));
}

TEST_CASE("zeta at integers", "[coefficients]") {
  CHECK_THAT(zeta_int(2), WithinAbs(pi * pi / 6.0, 1e-15));
  CHECK_THAT(zeta_int(3), WithinAbs(1.2020569031595943, 1e-15));
  CHECK_THAT(zeta_int(4), WithinAbs(std::pow(pi, 4) / 90.0, 1e-15));
  CHECK_THAT(zeta_int(50), WithinAbs(1.0 + std::ldexp(1.0, -50), 1e-16));
  CHECK_THROWS(zeta_int(1));
  CHECK_THROWS(zeta_int(61));
}

TEST_CASE("adaptive quadrature", "[quadrature]") {
  const auto one = integrate([](double) { return 1.0; }, 0.0, 1.0, 1e-12);
  CHECK_THAT(one.value, WithinAbs(1.0, 1e-15));
  CHECK(one.err_estimate >= 0.0);
  CHECK_THAT(integrate(ln, 1.0, 2.0, 1e-14).value, WithinAbs(2.0 * ln_2 - 1.0, 1e-15));
  const auto ls = [](double t) { return std::log(std::sin(pi * t)); };
  CHECK_THAT(integrate_singular(ls, 0.0, 1.0, 1e-13, singular_end::both).value, WithinAbs(-ln_2, 1e-12));
  CHECK_THAT(integrate_singular(ls, 0.0, 0.5, 1e-13, singular_end::lower).value, WithinAbs(-0.5 * ln_2, 1e-12));
  CHECK_THAT(integrate(ln, 2.0, 1.0, 1e-14).value, WithinAbs(1.0 - 2.0 * ln_2, 1e-15));
  CHECK(integrate(ln, 1.5, 1.5, 1e-12).value == 0.0);
}

TEST_CASE("quadrature reaches the panel cap on an unresolvable oscillation", "[quadrature]") {
  const auto wild = [](double t) { return std::sin(1.0 / t); };
  CHECK_THROWS_AS(integrate(wild, 0.0, 1.0, 1e-14), convergence_error);
  CHECK_THROWS(integrate([](double t) { return std::pow(t, -1.5); }, 0.0, 1.0, 1e-14));
}

TEST_CASE("quadrature is exact on polynomials and additive", "[quadrature][property]") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uc(-3.0, 3.0), ub(-2.0, 4.0);
  for (int t = 0; t < 30; ++t) {
    std::array<double, 8> c{};
    for (auto& v : c) v = uc(rng);
    const auto poly = [&](double x) {
      double s = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
      return s;
    };
    const auto anti = [&](double x) {
      double s = 0.0;
      for (std::size_t k = c.size(); k-- > 0;) s = s * x + c[k] / static_cast<double>(k + 1);
      return s * x;
    };
    double a = ub(rng), b = ub(rng), m = ub(rng);
    if (a > b) std::swap(a, b);
    if (b - a < 1e-3) continue;
    m = a + (b - a) * std::abs(std::sin(m));
    const double tol = 1e-10;
    const auto whole = integrate(poly, a, b, tol);
    CHECK_THAT(whole.value, WithinAbs(anti(b) - anti(a), std::max(tol, whole.err_estimate) * 10.0));
    if (m > a && m < b) {
      const double split = integrate(poly, a, m, tol).value + integrate(poly, m, b, tol).value;
      CHECK_THAT(split, WithinAbs(whole.value, 2.0 * tol + 1e-12 * std::abs(whole.value)));
    }
  }
}

TEST_CASE("interpolation polynomial", "[interp]") {
  CHECK(interp_poly_eval(ln, 1.0, 1, 5.0) == 0.0);
  CHECK_THAT(interp_poly_eval(sq, 1.0, 3, 7.3), WithinAbs(7.3 * 7.3, 1e-12));
  CHECK_THAT(interp_poly_eval(ln, 1.0, 2, 3.0), WithinAbs(2.0 * ln_2, 1e-15));
}

TEST_CASE("interpolation reproduces the nodes", "[interp][property]") {
  for (double a : {0.5, 1.0, 3.7}) {
    for (int p = 1; p <= 6; ++p) {
      for (int i = 0; i < p; ++i) CHECK_THAT(interp_poly_eval(ln, a, p, a + i), WithinAbs(std::log(a + i), 1e-12));
    }
  }
}

TEST_CASE("Richardson extrapolation and limits", "[extrapolation]") {
  // s(n) = 1 + 1/n + 1/n^2 has limit 1.
  const auto s = [](std::int64_t n) { return 1.0 + 1.0 / n + 1.0 / (double(n) * n); };
  richardson r;
  for (std::int64_t n = 8; n <= 64; n *= 2) r.push(s(n));
  CHECK_THAT(r.estimate(), WithinAbs(1.0, 1e-13));
  const limit_result lim = extrapolate_limit(s, 4, 1e-13, 1 << 20);
  CHECK(lim.converged);
  CHECK_THAT(lim.value, WithinAbs(1.0, 1e-13));
}

TEST_CASE("compensated summation", "[summation]") {
  compensated_sum s;
  s += 1.0;
  for (int i = 0; i < 1000; ++i) s += 1e-16;
  CHECK_THAT(s.value(), WithinAbs(1.0 + 1e-13, 1e-18));
}
