#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "gtwed/error.hpp"
#include "gtwed/metric.hpp"
#include "gtwed/sequence.hpp"

namespace gtwed {

/// Gap penalty lambda >= 0 and stiffness gamma > 0.
struct GtwedParams {
  double lambda = 1.0;
  double gamma = 1.0;

  void validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
      throw ConfigError("lambda must be finite and >= 0");
    }
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("gamma must be finite and > 0");
  }
};

template <typename Cost, typename Item>
concept LocalMetric = requires(const Cost& cost, const Item& a, const Item& b) {
  { cost(a, b) } -> std::convertible_to<double>;
};

enum class EditOp { delete_a, match, delete_b };

struct LocalCosts {
  double delete_a = 0.0;
  double match = 0.0;
  double delete_b = 0.0;
};

/// Gamma_A = D(a_i, a_{i-1}) + lambda.
template <typename Item, LocalMetric<Item> Cost>
double delete_cost(const SentinelView<Item>& seq, std::size_t i, const Cost& cost, double lambda) {
  return static_cast<double>(cost(seq[i], seq[i - 1])) + lambda;
}

/// Gamma_AB = D(a_i, b_j) + D(a_{i-1}, b_{j-1}).
template <typename Item, LocalMetric<Item> Cost>
double match_cost(const SentinelView<Item>& a, const SentinelView<Item>& b, std::size_t i,
                  std::size_t j, const Cost& cost) {
  return static_cast<double>(cost(a[i], b[j])) + static_cast<double>(cost(a[i - 1], b[j - 1]));
}

/// The three local operation costs at cell (i, j), 1 <= i <= p, 1 <= j <= q.
template <typename Item, LocalMetric<Item> Cost>
LocalCosts local_costs(const SentinelView<Item>& a, const SentinelView<Item>& b, std::size_t i,
                       std::size_t j, const Cost& cost, double lambda) {
  if (i < 1 || i > a.size() || j < 1 || j > b.size()) throw DataError("local_costs: index out of range");
  return {delete_cost(a, i, cost, lambda), match_cost(a, b, i, j, cost),
          delete_cost(b, j, cost, lambda)};
}

/// (p+1) x (q+1) cumulative cost table; cell(i, j) is the minimal cost of
/// transforming the length-i prefix of A into the length-j prefix of B.
class DpTable {
 public:
  DpTable(std::size_t p, std::size_t q) : rows_(p + 1), cols_(q + 1), cells_(rows_ * cols_, 0.0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return cells_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return cells_[i * cols_ + j]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> cells_;
};

namespace detail {

// One interior cell. Every variant of the recurrence goes through here so
// the additions happen in the same order everywhere.
template <typename Item, typename Cost>
inline double relax(double up, double diag, double left, const SentinelView<Item>& a,
                    const SentinelView<Item>& b, std::size_t i, std::size_t j, double gap_a,
                    const Cost& cost, double lambda) {
  const double by_delete_a = up + gap_a;
  const double by_match = diag + match_cost(a, b, i, j, cost);
  const double by_delete_b = left + delete_cost(b, j, cost, lambda);
  return std::min({by_delete_a, by_match, by_delete_b});
}

}  // namespace detail

/// Fills the full table, row-major.
template <typename Item, LocalMetric<Item> Cost>
DpTable gtwed_table(std::span<const Item> a_items, std::span<const Item> b_items, double lambda,
                    const Cost& cost) {
  const SentinelView<Item> a(a_items);
  const SentinelView<Item> b(b_items);
  const std::size_t p = a.size();
  const std::size_t q = b.size();
  DpTable dp(p, q);
  for (std::size_t j = 1; j <= q; ++j) dp(0, j) = dp(0, j - 1) + delete_cost(b, j, cost, lambda);
  for (std::size_t i = 1; i <= p; ++i) {
    const double gap_a = delete_cost(a, i, cost, lambda);
    dp(i, 0) = dp(i - 1, 0) + gap_a;
    for (std::size_t j = 1; j <= q; ++j) {
      dp(i, j) = detail::relax(dp(i - 1, j), dp(i - 1, j - 1), dp(i, j - 1), a, b, i, j, gap_a,
                               cost, lambda);
    }
  }
  return dp;
}

template <typename Item, LocalMetric<Item> Cost>
double gtwed_distance(std::span<const Item> a, std::span<const Item> b, double lambda,
                      const Cost& cost) {
  return gtwed_table(a, b, lambda, cost)(a.size(), b.size());
}

/// Storage actually held by a rolling evaluation, in table cells.
struct RollingStats {
  std::size_t auxiliary_cells = 0;
};

/// Same recurrence with two rolling buffers laid along the shorter sequence.
/// Each cell is computed from the same predecessors with the same additions
/// as gtwed_table, so the result is bit-identical.
template <typename Item, LocalMetric<Item> Cost>
double gtwed_distance_rolling(std::span<const Item> a_items, std::span<const Item> b_items,
                              double lambda, const Cost& cost, RollingStats* stats = nullptr) {
  const SentinelView<Item> a(a_items);
  const SentinelView<Item> b(b_items);
  const std::size_t p = a.size();
  const std::size_t q = b.size();

  if (q <= p) {
    // Buffers are rows indexed by j; sweep i.
    std::vector<double> prev(q + 1);
    std::vector<double> curr(q + 1);
    if (stats != nullptr) stats->auxiliary_cells = prev.capacity() + curr.capacity();
    prev[0] = 0.0;
    for (std::size_t j = 1; j <= q; ++j) prev[j] = prev[j - 1] + delete_cost(b, j, cost, lambda);
    for (std::size_t i = 1; i <= p; ++i) {
      const double gap_a = delete_cost(a, i, cost, lambda);
      curr[0] = prev[0] + gap_a;
      for (std::size_t j = 1; j <= q; ++j) {
        curr[j] = detail::relax(prev[j], prev[j - 1], curr[j - 1], a, b, i, j, gap_a, cost, lambda);
      }
      std::swap(prev, curr);
    }
    return prev[q];
  }

  // Buffers are columns indexed by i; sweep j.
  std::vector<double> prev(p + 1);
  std::vector<double> curr(p + 1);
  if (stats != nullptr) stats->auxiliary_cells = prev.capacity() + curr.capacity();
  prev[0] = 0.0;
  for (std::size_t i = 1; i <= p; ++i) prev[i] = prev[i - 1] + delete_cost(a, i, cost, lambda);
  for (std::size_t j = 1; j <= q; ++j) {
    curr[0] = prev[0] + delete_cost(b, j, cost, lambda);
    for (std::size_t i = 1; i <= p; ++i) {
      const double gap_a = delete_cost(a, i, cost, lambda);
      curr[i] = detail::relax(curr[i - 1], prev[i - 1], prev[i], a, b, i, j, gap_a, cost, lambda);
    }
    std::swap(prev, curr);
  }
  return prev[p];
}

struct AlignmentStep {
  EditOp op;
  std::size_t i;
  std::size_t j;
  double cost;

  friend bool operator==(const AlignmentStep&, const AlignmentStep&) = default;
};

/// Monotone lattice path from (0,0) to (p,q). Step (op, i, j) ends at cell
/// (i, j).
struct AlignmentPath {
  std::vector<AlignmentStep> steps;

  double total_cost() const {
    double sum = 0.0;
    for (const auto& s : steps) sum += s.cost;
    return sum;
  }
};

struct Alignment {
  double distance = 0.0;
  AlignmentPath path;
};

/// Backtrace through the full table. Ties resolve DeleteA, then Match, then
/// DeleteB.
template <typename Item, LocalMetric<Item> Cost>
Alignment gtwed_align(std::span<const Item> a_items, std::span<const Item> b_items, double lambda,
                      const Cost& cost) {
  const DpTable dp = gtwed_table(a_items, b_items, lambda, cost);
  const SentinelView<Item> a(a_items);
  const SentinelView<Item> b(b_items);
  std::size_t i = a.size();
  std::size_t j = b.size();

  Alignment out;
  out.distance = dp(i, j);
  while (i > 0 || j > 0) {
    if (j == 0) {
      out.path.steps.push_back({EditOp::delete_a, i, j, delete_cost(a, i, cost, lambda)});
      --i;
      continue;
    }
    if (i == 0) {
      out.path.steps.push_back({EditOp::delete_b, i, j, delete_cost(b, j, cost, lambda)});
      --j;
      continue;
    }
    const double gap_a = delete_cost(a, i, cost, lambda);
    const double here = dp(i, j);
    if (dp(i - 1, j) + gap_a == here) {
      out.path.steps.push_back({EditOp::delete_a, i, j, gap_a});
      --i;
    } else if (const double m = match_cost(a, b, i, j, cost); dp(i - 1, j - 1) + m == here) {
      out.path.steps.push_back({EditOp::match, i, j, m});
      --i;
      --j;
    } else {
      out.path.steps.push_back({EditOp::delete_b, i, j, delete_cost(b, j, cost, lambda)});
      --j;
    }
  }
  std::reverse(out.path.steps.begin(), out.path.steps.end());
  return out;
}

// Overloads on validated sequences with the runtime cost model.

namespace detail {

inline void check_compatible(const TimedSequence& a, const TimedSequence& b,
                             const GtwedParams& params, const LocalCostModel& model) {
  params.validate();
  if (params.gamma != model.gamma()) {
    throw ConfigError("stiffness mismatch between parameters and local cost model");
  }
  const auto sa = a.shape();
  const auto sb = b.shape();
  if (sa && sb && *sa != *sb) {
    throw DataError("sequences '" + a.id() + "' and '" + b.id() +
                    "' come from different observation spaces");
  }
}

}  // namespace detail

inline double gtwed_distance(const TimedSequence& a, const TimedSequence& b,
                             const GtwedParams& params, const LocalCostModel& model) {
  detail::check_compatible(a, b, params, model);
  return gtwed_distance(a.items(), b.items(), params.lambda, model);
}

inline double gtwed_distance_rolling(const TimedSequence& a, const TimedSequence& b,
                                     const GtwedParams& params, const LocalCostModel& model,
                                     RollingStats* stats = nullptr) {
  detail::check_compatible(a, b, params, model);
  return gtwed_distance_rolling(a.items(), b.items(), params.lambda, model, stats);
}

inline Alignment gtwed_align(const TimedSequence& a, const TimedSequence& b,
                             const GtwedParams& params, const LocalCostModel& model) {
  detail::check_compatible(a, b, params, model);
  return gtwed_align(a.items(), b.items(), params.lambda, model);
}

/// Marteau's TWED on real-vector series: Euclidean d, |t - s|, no
/// transform. Written out directly rather than through LocalCostModel.
inline double twed_classic(const TimedSequence& a, const TimedSequence& b, double lambda,
                           double gamma) {
  GtwedParams{lambda, gamma}.validate();
  const auto vec = [](const TimedSequence& s, std::size_t k) -> const RealVector& {
    const auto* v = std::get_if<RealVector>(&s[k].value);
    if (v == nullptr) throw DataError("twed_classic requires real-vector observations");
    return *v;
  };
  const auto dist = [](const RealVector& x, const RealVector& y) {
    if (x.size() != y.size()) throw DataError("dimension mismatch");
    double sum = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) sum += (x[k] - y[k]) * (x[k] - y[k]);
    return std::sqrt(sum);
  };

  const std::size_t p = a.size();
  const std::size_t q = b.size();
  // Unpack to 1-based arrays with the sentinel at 0.
  std::vector<const RealVector*> av(p + 1), bv(q + 1);
  std::vector<double> at(p + 1), bt(q + 1);
  for (std::size_t i = 1; i <= p; ++i) {
    av[i] = &vec(a, i - 1);
    at[i] = a[i - 1].time;
  }
  for (std::size_t j = 1; j <= q; ++j) {
    bv[j] = &vec(b, j - 1);
    bt[j] = b[j - 1].time;
  }
  if (p > 0) {
    av[0] = av[1];
    at[0] = at[1];
  }
  if (q > 0) {
    bv[0] = bv[1];
    bt[0] = bt[1];
  }

  std::vector<std::vector<double>> dp(p + 1, std::vector<double>(q + 1, 0.0));
  for (std::size_t i = 1; i <= p; ++i) {
    dp[i][0] = dp[i - 1][0] + (dist(*av[i], *av[i - 1]) + gamma * std::abs(at[i] - at[i - 1]) + lambda);
  }
  for (std::size_t j = 1; j <= q; ++j) {
    dp[0][j] = dp[0][j - 1] + (dist(*bv[j], *bv[j - 1]) + gamma * std::abs(bt[j] - bt[j - 1]) + lambda);
  }
  for (std::size_t i = 1; i <= p; ++i) {
    for (std::size_t j = 1; j <= q; ++j) {
      const double del_a =
          dp[i - 1][j] + dist(*av[i], *av[i - 1]) + gamma * std::abs(at[i] - at[i - 1]) + lambda;
      const double match = dp[i - 1][j - 1] + dist(*av[i], *bv[j]) + dist(*av[i - 1], *bv[j - 1]) +
                           gamma * (std::abs(at[i] - bt[j]) + std::abs(at[i - 1] - bt[j - 1]));
      const double del_b =
          dp[i][j - 1] + dist(*bv[j], *bv[j - 1]) + gamma * std::abs(bt[j] - bt[j - 1]) + lambda;
      dp[i][j] = std::min({del_a, match, del_b});
    }
  }
  return dp[p][q];
}

}  // namespace gtwed
