#pragma once

// Expression language for user-defined g(x).
//
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := ("-")? power
//   power  := atom ("^" factor)?
//   atom   := NUMBER | IDENT | IDENT "(" expr ")" | "(" expr ")"
//
// Identifiers: x, pi, e, euler_gamma, ln_glaisher, ln, exp, sin, cos, sqrt.
// The exponent of "^" may not depend on x.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <system_error>

#include "pisum/error.hpp"
#include "pisum/jet.hpp"
#include "pisum/named_constants.hpp"

namespace pisum {

enum class node_kind { literal, constant, variable, unary, binary };
enum class unary_op { neg, ln, exp, sin, cos, sqrt };
enum class binary_op { add, sub, mul, div, pow };
enum class named_value { pi, e, euler_gamma, ln_glaisher };

struct expr_node {
  node_kind kind = node_kind::literal;
  double value = 0.0;  // literal
  named_value constant = named_value::pi;
  unary_op uop = unary_op::neg;
  binary_op bop = binary_op::add;
  std::shared_ptr<const expr_node> lhs;  // operand of unary, left of binary
  std::shared_ptr<const expr_node> rhs;
};

namespace detail {

inline double named_value_of(named_value c) {
  switch (c) {
    case named_value::pi: return pi;
    case named_value::e: return 2.7182818284590452354;
    case named_value::euler_gamma: return euler_gamma;
    case named_value::ln_glaisher: return ln_glaisher;
  }
  return 0.0;
}

inline const char* named_value_name(named_value c) {
  switch (c) {
    case named_value::pi: return "pi";
    case named_value::e: return "e";
    case named_value::euler_gamma: return "euler_gamma";
    case named_value::ln_glaisher: return "ln_glaisher";
  }
  return "?";
}

inline const char* unary_name(unary_op op) {
  switch (op) {
    case unary_op::neg: return "-";
    case unary_op::ln: return "ln";
    case unary_op::exp: return "exp";
    case unary_op::sin: return "sin";
    case unary_op::cos: return "cos";
    case unary_op::sqrt: return "sqrt";
  }
  return "?";
}

inline bool depends_on_x(const expr_node& n) {
  switch (n.kind) {
    case node_kind::variable: return true;
    case node_kind::unary: return depends_on_x(*n.lhs);
    case node_kind::binary: return depends_on_x(*n.lhs) || depends_on_x(*n.rhs);
    default: return false;
  }
}

inline double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw domain_error(std::string("non-finite result in ") + what);
  return v;
}

inline double apply(unary_op op, double a) {
  switch (op) {
    case unary_op::neg: return -a;
    case unary_op::ln:
      if (!(a > 0.0)) throw domain_error("ln of nonpositive value");
      return std::log(a);
    case unary_op::exp: return checked(std::exp(a), "exp");
    case unary_op::sin: return std::sin(a);
    case unary_op::cos: return std::cos(a);
    case unary_op::sqrt:
      if (a < 0.0) throw domain_error("sqrt of negative value");
      return std::sqrt(a);
  }
  return a;
}

inline series apply(unary_op op, const series& a) {
  switch (op) {
    case unary_op::neg: return -a;
    case unary_op::ln: return log(a);
    case unary_op::exp: return exp(a);
    case unary_op::sin: return sin(a);
    case unary_op::cos: return cos(a);
    case unary_op::sqrt: return sqrt(a);
  }
  return a;
}

inline double power(double a, double b) {
  if (a < 0.0 && std::floor(b) != b) throw domain_error("pow of negative base with non-integral exponent");
  if (a == 0.0 && b < 0.0) throw domain_error("division by zero in pow");
  return checked(std::pow(a, b), "pow");
}

inline series power(const series& a, double b) { return pow(a, b); }

inline double divide(double a, double b) {
  if (b == 0.0) throw domain_error("division by zero");
  return a / b;
}

inline series divide(const series& a, const series& b) { return a / b; }

inline double lift(double v, double) { return v; }
inline series lift(double v, const series& like) { return series(v, like.order()); }

inline double value_of(double v) { return v; }
inline double value_of(const series& s) { return s[0]; }

template <class T>
T evaluate(const expr_node& n, const T& x) {
  switch (n.kind) {
    case node_kind::literal: return lift(n.value, x);
    case node_kind::constant: return lift(named_value_of(n.constant), x);
    case node_kind::variable: return x;
    case node_kind::unary: return apply(n.uop, evaluate(*n.lhs, x));
    case node_kind::binary: {
      if (n.bop == binary_op::pow) {
        const double b = evaluate(*n.rhs, 0.0);
        return power(evaluate(*n.lhs, x), b);
      }
      T a = evaluate(*n.lhs, x);
      T b = evaluate(*n.rhs, x);
      T r = a;
      switch (n.bop) {
        case binary_op::add: r = a + b; break;
        case binary_op::sub: r = a - b; break;
        case binary_op::mul: r = a * b; break;
        case binary_op::div: r = divide(a, b); break;
        case binary_op::pow: break;
      }
      checked(value_of(r), "arithmetic");
      return r;
    }
  }
  return x;
}

// Printing precedence: 1 add/sub, 2 mul/div, 3 unary minus, 4 pow, 5 atom.
inline int precedence(const expr_node& n) {
  if (n.kind == node_kind::binary) {
    switch (n.bop) {
      case binary_op::add:
      case binary_op::sub: return 1;
      case binary_op::mul:
      case binary_op::div: return 2;
      case binary_op::pow: return 4;
    }
  }
  if (n.kind == node_kind::unary && n.uop == unary_op::neg) return 3;
  return 5;
}

inline void print(const expr_node& n, std::string& out);

inline void print_child(const expr_node& child, int min_prec, std::string& out) {
  if (precedence(child) < min_prec) {
    out += '(';
    print(child, out);
    out += ')';
  } else {
    print(child, out);
  }
}

inline void print(const expr_node& n, std::string& out) {
  switch (n.kind) {
    case node_kind::literal: {
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof buf, n.value);
      if (n.value < 0) out += '(';
      out.append(buf, res.ptr);
      if (n.value < 0) out += ')';
      return;
    }
    case node_kind::constant: out += named_value_name(n.constant); return;
    case node_kind::variable: out += 'x'; return;
    case node_kind::unary:
      if (n.uop == unary_op::neg) {
        out += '-';
        print_child(*n.lhs, 4, out);
      } else {
        out += unary_name(n.uop);
        out += '(';
        print(*n.lhs, out);
        out += ')';
      }
      return;
    case node_kind::binary:
      switch (n.bop) {
        case binary_op::add:
        case binary_op::sub:
          print_child(*n.lhs, 1, out);
          out += n.bop == binary_op::add ? " + " : " - ";
          print_child(*n.rhs, 2, out);
          return;
        case binary_op::mul:
        case binary_op::div:
          print_child(*n.lhs, 2, out);
          out += n.bop == binary_op::mul ? "*" : "/";
          print_child(*n.rhs, 3, out);
          return;
        case binary_op::pow:
          print_child(*n.lhs, 5, out);
          out += '^';
          print_child(*n.rhs, 3, out);
          return;
      }
  }
}

inline bool same_tree(const expr_node& a, const expr_node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case node_kind::literal: return a.value == b.value;
    case node_kind::constant: return a.constant == b.constant;
    case node_kind::variable: return true;
    case node_kind::unary: return a.uop == b.uop && same_tree(*a.lhs, *b.lhs);
    case node_kind::binary:
      return a.bop == b.bop && same_tree(*a.lhs, *b.lhs) && same_tree(*a.rhs, *b.rhs);
  }
  return false;
}

inline std::size_t count_binary(const expr_node& n) {
  switch (n.kind) {
    case node_kind::unary: return count_binary(*n.lhs);
    case node_kind::binary: return 1 + count_binary(*n.lhs) + count_binary(*n.rhs);
    default: return 0;
  }
}

class parser {
 public:
  explicit parser(std::string_view src) : src_(src) {}

  std::shared_ptr<const expr_node> run() {
    skip_ws();
    if (pos_ == src_.size()) fail("empty expression");
    auto e = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  using node_ptr = std::shared_ptr<const expr_node>;

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw parse_error(parse_error::kind::syntax, at, "syntax error: " + msg);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static node_ptr make_binary(binary_op op, node_ptr l, node_ptr r) {
    auto n = std::make_shared<expr_node>();
    n->kind = node_kind::binary;
    n->bop = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }

  static node_ptr make_unary(unary_op op, node_ptr a) {
    auto n = std::make_shared<expr_node>();
    n->kind = node_kind::unary;
    n->uop = op;
    n->lhs = std::move(a);
    return n;
  }

  node_ptr parse_expr() {
    node_ptr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = make_binary(binary_op::add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = make_binary(binary_op::sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  node_ptr parse_term() {
    node_ptr lhs = parse_factor();
    for (;;) {
      if (accept('*')) {
        lhs = make_binary(binary_op::mul, lhs, parse_factor());
      } else if (accept('/')) {
        lhs = make_binary(binary_op::div, lhs, parse_factor());
      } else {
        return lhs;
      }
    }
  }

  node_ptr parse_factor() {
    if (accept('-')) return make_unary(unary_op::neg, parse_power());
    return parse_power();
  }

  node_ptr parse_power() {
    node_ptr base = parse_atom();
    skip_ws();
    const std::size_t caret = pos_;
    if (accept('^')) {
      node_ptr exponent = parse_factor();
      if (depends_on_x(*exponent)) {
        throw parse_error(parse_error::kind::non_constant_exponent, caret,
                          "exponent depends on x (write exp(b*ln(a)) instead)");
      }
      return make_binary(binary_op::pow, base, exponent);
    }
    return base;
  }

  node_ptr parse_atom() {
    skip_ws();
    if (pos_ == src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      node_ptr inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  node_ptr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t n = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) fail("malformed number", start);
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      const std::size_t save = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;  // "2e" is 2 followed by the constant e
    }
    double v = 0.0;
    auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (res.ec != std::errc() || res.ptr != src_.data() + pos_ || !std::isfinite(v))
      fail("malformed number", start);
    auto node = std::make_shared<expr_node>();
    node->kind = node_kind::literal;
    node->value = v;
    return node;
  }

  node_ptr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    const std::string_view id = src_.substr(start, pos_ - start);

    struct fn {
      std::string_view name;
      unary_op op;
    };
    static constexpr fn functions[] = {{"ln", unary_op::ln},   {"exp", unary_op::exp},
                                       {"sin", unary_op::sin}, {"cos", unary_op::cos},
                                       {"sqrt", unary_op::sqrt}};
    for (const auto& f : functions) {
      if (f.name != id) continue;
      skip_ws();
      if (pos_ == src_.size() || src_[pos_] != '(') {
        throw parse_error(parse_error::kind::arity, start,
                          "function '" + std::string(id) + "' expects one argument");
      }
      ++pos_;
      skip_ws();
      if (pos_ < src_.size() && src_[pos_] == ')') {
        throw parse_error(parse_error::kind::arity, start,
                          "function '" + std::string(id) + "' expects one argument, got none");
      }
      node_ptr arg = parse_expr();
      skip_ws();
      if (pos_ < src_.size() && src_[pos_] == ',') {
        throw parse_error(parse_error::kind::arity, pos_,
                          "function '" + std::string(id) + "' expects one argument");
      }
      if (!accept(')')) fail("expected ')'");
      return make_unary(f.op, std::move(arg));
    }

    auto leaf = std::make_shared<expr_node>();
    if (id == "x") {
      leaf->kind = node_kind::variable;
    } else if (id == "pi" || id == "e" || id == "euler_gamma" || id == "ln_glaisher") {
      leaf->kind = node_kind::constant;
      leaf->constant = id == "pi"            ? named_value::pi
                       : id == "e"           ? named_value::e
                       : id == "euler_gamma" ? named_value::euler_gamma
                                             : named_value::ln_glaisher;
    } else {
      throw parse_error(parse_error::kind::unknown_identifier, start,
                        "unknown identifier '" + std::string(id) + "'");
    }
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '(') {
      throw parse_error(parse_error::kind::arity, start,
                        "'" + std::string(id) + "' is not a function");
    }
    return leaf;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Immutable parsed expression; cheap to copy (shared tree).
class expr {
 public:
  explicit expr(std::shared_ptr<const expr_node> root) : root_(std::move(root)) {}

  const expr_node& root() const noexcept { return *root_; }

  double eval(double x) const { return detail::evaluate(*root_, x); }

  /// Taylor jet of order r at x (r <= 8).
  jet eval_jet(double x, int r) const {
    if (r < 0 || r > max_jet_order) throw error("jet order out of range [0, 8]");
    series s = detail::evaluate(*root_, series::variable(x, r));
    return jet{x, s.coeffs()};
  }

  bool depends_on_x() const { return detail::depends_on_x(*root_); }
  std::size_t binary_count() const { return detail::count_binary(*root_); }

  std::string to_string() const {
    std::string out;
    detail::print(*root_, out);
    return out;
  }

  friend bool operator==(const expr& a, const expr& b) { return detail::same_tree(*a.root_, *b.root_); }

 private:
  std::shared_ptr<const expr_node> root_;
};

inline expr parse(std::string_view src) { return expr(detail::parser(src).run()); }

}  // namespace pisum
