// Evaluate a few principal indefinite sums and their constants.

#include <cstdio>

#include "pisum/pisum.hpp"

int main() {
  using namespace pisum;

  const auto& lg = builtin("ln");
  asymptotic_constant(lg.g);
  for (double x : {0.5, 1.0, 7.0}) {
    std::printf("ln Gamma(%g) = %.15g (reference %.15g)\n", x, sigma(lg.g, x).value, std::lgamma(x));
  }

  // x*ln(x) from an expression: classified as p = 2, concave.
  const gfunction g = gfunction::from_expr(parse("x*ln(x)"));
  const shape_report r = classify(g);
  const gfunction h = g.with_class(r.p, r.shape);
  const constants_report c = compute_constants(h);
  std::printf("p = %d, shape = %s, sigma = %.12f, gamma = %.12f\n", r.p, to_string(r.shape), c.sigma, c.gamma_gen);

  const auto e = asym_expansion(builtin("psi2g").g, 10.0, 6);
  std::printf("psi_{-2}(10) ~ %.12f (engine %.12f)\n", e.total, engine_psi2(10.0));
  return 0;
}
