#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>

#include "pisum/error.hpp"
#include "pisum/expr.hpp"
#include "pisum/jet.hpp"
#include "pisum/numerics/quadrature.hpp"

namespace pisum {

enum class convexity { convex, concave, neither };

inline const char* to_string(convexity c) {
  switch (c) {
    case convexity::convex: return "convex";
    case convexity::concave: return "concave";
    case convexity::neither: return "neither";
  }
  return "?";
}

/// Initialize-once slot for sigma[g]. Concurrent writers must agree, so the
/// first stored value wins and later stores are ignored.
class constant_slot {
 public:
  std::optional<double> get() const {
    std::lock_guard lock(mutex_);
    return value_;
  }

  double set(double v) {
    std::lock_guard lock(mutex_);
    if (!value_) value_ = v;
    return *value_;
  }

 private:
  mutable std::mutex mutex_;
  std::optional<double> value_;
};

/// A function g on (0, inf) together with its classification (p, shape).
class gfunction {
 public:
  using scalar_fn = std::function<double(double)>;
  using jet_fn = std::function<jet(double, int)>;

  gfunction(std::string name, scalar_fn eval, jet_fn jets, scalar_fn antideriv, int p, convexity shape)
      : name_(std::move(name)),
        eval_(std::move(eval)),
        jet_(std::move(jets)),
        antideriv_(std::move(antideriv)),
        p_(p),
        shape_(shape),
        sigma_(std::make_shared<constant_slot>()) {}

  /// g defined by an expression; p and shape are placeholders until classified.
  static gfunction from_expr(const expr& e, int p = 0, convexity shape = convexity::convex) {
    return gfunction(
        e.to_string(), [e](double x) { return e.eval(x); },
        [e](double x, int r) { return e.eval_jet(x, r); }, nullptr, p, shape);
  }

  double operator()(double x) const { return eval_(x); }

  const std::string& name() const noexcept { return name_; }
  int p() const noexcept { return p_; }
  convexity shape() const noexcept { return shape_; }
  bool has_jet() const noexcept { return static_cast<bool>(jet_); }
  bool has_antideriv() const noexcept { return static_cast<bool>(antideriv_); }

  jet jet_at(double x, int r) const {
    if (!jet_) throw error("function '" + name_ + "' has no Taylor jets");
    return jet_(x, r);
  }

  /// r-th derivative of g at x.
  double derivative(double x, int r) const { return r == 0 ? eval_(x) : jet_at(x, r).derivative(r); }

  /// Integral of g over [a, b] (closed form when available).
  double integral(double a, double b) const {
    if (antideriv_) return antideriv_(b) - antideriv_(a);
    return integrate(eval_, a, b, 1e-13).value;
  }

  /// Same function with a different classification; shares the sigma cache
  /// only if p is unchanged.
  gfunction with_class(int p, convexity shape) const {
    gfunction g = *this;
    if (p != p_) g.sigma_ = std::make_shared<constant_slot>();
    g.p_ = p;
    g.shape_ = shape;
    return g;
  }

  /// g_m(x) = g(x/m), with a fresh sigma cache.
  gfunction scaled(int m) const {
    if (m < 1) throw error("scaled: m must be >= 1");
    if (m == 1) return *this;
    const double md = m;
    scalar_fn ev = [f = eval_, md](double x) { return f(x / md); };
    jet_fn jt;
    if (jet_) {
      jt = [f = jet_, md](double x, int r) {
        jet j = f(x / md, r);
        double s = 1.0;
        for (auto& c : j.coeffs) {
          c *= s;
          s /= md;
        }
        j.center = x;
        return j;
      };
    }
    scalar_fn ad;
    if (antideriv_) {
      ad = [a = antideriv_, md](double x) { return md * (a(x / md) - a(1.0 / md)); };
    }
    return gfunction(name_ + "[x/" + std::to_string(m) + "]", std::move(ev), std::move(jt), std::move(ad), p_,
                     shape_);
  }

  std::optional<double> cached_sigma() const { return sigma_->get(); }
  double cache_sigma(double v) const { return sigma_->set(v); }

 private:
  std::string name_;
  scalar_fn eval_;
  jet_fn jet_;
  scalar_fn antideriv_;  // x -> integral of g over [1, x]
  int p_;
  convexity shape_;
  std::shared_ptr<constant_slot> sigma_;
};

}  // namespace pisum
