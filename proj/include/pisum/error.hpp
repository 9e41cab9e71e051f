#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pisum {

/// Base class of every exception thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset()` is the byte offset of the problem.
class parse_error : public error {
 public:
  enum class kind { syntax, unknown_identifier, arity, non_constant_exponent };

  parse_error(kind k, std::size_t offset, const std::string& what)
      : error(what + " at offset " + std::to_string(offset)), kind_(k), offset_(offset) {}

  kind code() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  kind kind_;
  std::size_t offset_;
};

/// Evaluation outside the domain of a function (ln of a nonpositive value,
/// division by zero, overflow to a non-finite value).
class domain_error : public error {
 public:
  using error::error;
};

/// An iterative or adaptive procedure ran out of budget. The best estimate
/// reached so far is kept so callers can still report it.
class convergence_error : public error {
 public:
  convergence_error(const std::string& what, double best, double err_estimate)
      : error(what), best_(best), err_(err_estimate) {}

  double best_estimate() const noexcept { return best_; }
  double err_estimate() const noexcept { return err_; }

 private:
  double best_;
  double err_;
};

/// No admissible (p, shape) pair could be certified for a function.
class classification_error : public error {
 public:
  using error::error;
};

}  // namespace pisum
