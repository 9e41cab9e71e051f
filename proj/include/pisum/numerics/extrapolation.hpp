#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace pisum {

/// Richardson extrapolation of S(n) -> S along n_k = n_0 * 2^k, assuming
/// S(n) - S has an expansion in integer powers of 1/n.
class richardson {
 public:
  void push(double s) {
    std::vector<double> row;
    row.reserve(rows_.size() + 1);
    row.push_back(s);
    if (!rows_.empty()) {
      const auto& prev = rows_.back();
      double factor = 1.0;
      for (std::size_t m = 1; m <= prev.size(); ++m) {
        factor *= 2.0;
        row.push_back(row[m - 1] + (row[m - 1] - prev[m - 1]) / (factor - 1.0));
      }
    }
    rows_.push_back(std::move(row));
  }

  std::size_t levels() const noexcept { return rows_.size(); }
  double estimate() const { return rows_.back().back(); }
  double raw() const { return rows_.back().front(); }

  /// Difference between the last two diagonal entries.
  double delta() const {
    if (rows_.size() < 2) return std::numeric_limits<double>::infinity();
    return std::abs(rows_.back().back() - rows_[rows_.size() - 2].back());
  }

 private:
  std::vector<std::vector<double>> rows_;
};

struct limit_result {
  double value = 0.0;
  double err_estimate = std::numeric_limits<double>::infinity();
  std::int64_t n_used = 0;
  bool converged = false;
};

/// Drives `seq(n)` along n = n0, 2 n0, 4 n0, ... (n <= n_max) with Richardson
/// extrapolation. Stops when successive extrapolants differ by < tol, or once
/// the differences grow for two consecutive levels (roundoff floor), returning
/// the estimate with the smallest difference seen.
template <class Seq>
limit_result extrapolate_limit(Seq&& seq, std::int64_t n0, double tol, std::int64_t n_max) {
  richardson table;
  limit_result best;
  double last_delta = std::numeric_limits<double>::infinity();
  int growing = 0;
  for (std::int64_t n = n0; n <= n_max; n *= 2) {
    table.push(seq(n));
    best.n_used = n;
    if (table.levels() < 3) continue;
    const double d = table.delta();
    if (d < best.err_estimate) {
      best.value = table.estimate();
      best.err_estimate = d;
    }
    if (d < tol) {
      best.converged = true;
      return best;
    }
    growing = d > last_delta ? growing + 1 : 0;
    last_delta = d;
    if (growing >= 2 && table.levels() >= 6) break;
  }
  if (table.levels() < 3) {
    best.value = table.estimate();
    best.err_estimate = table.delta();
  }
  return best;
}

}  // namespace pisum
