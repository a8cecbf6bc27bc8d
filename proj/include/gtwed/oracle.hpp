#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "gtwed/engine.hpp"
#include "gtwed/error.hpp"
#include "gtwed/metric.hpp"
#include "gtwed/sequence.hpp"

// Brute-force reference for the DP engine. Enumerates every alignment path
// and sums local costs with its own loop; shares no recurrence code with
// engine.hpp, only the EditOp vocabulary and the metric-core evaluations.
namespace gtwed::oracle {

inline constexpr std::size_t kMaxLength = 8;

using LatticePath = std::vector<EditOp>;

/// D(p, q) via D(i, j) = D(i-1, j) + D(i-1, j-1) + D(i, j-1).
inline std::uint64_t delannoy(std::size_t p, std::size_t q) {
  std::vector<std::vector<std::uint64_t>> table(p + 1, std::vector<std::uint64_t>(q + 1, 1));
  for (std::size_t i = 1; i <= p; ++i) {
    for (std::size_t j = 1; j <= q; ++j) {
      table[i][j] = table[i - 1][j] + table[i - 1][j - 1] + table[i][j - 1];
    }
  }
  return table[p][q];
}

namespace detail {

inline void extend(std::size_t i, std::size_t j, std::size_t p, std::size_t q, LatticePath& prefix,
                   std::vector<LatticePath>& out) {
  if (i == p && j == q) {
    out.push_back(prefix);
    return;
  }
  if (i < p) {
    prefix.push_back(EditOp::delete_a);
    extend(i + 1, j, p, q, prefix, out);
    prefix.pop_back();
  }
  if (i < p && j < q) {
    prefix.push_back(EditOp::match);
    extend(i + 1, j + 1, p, q, prefix, out);
    prefix.pop_back();
  }
  if (j < q) {
    prefix.push_back(EditOp::delete_b);
    extend(i, j + 1, p, q, prefix, out);
    prefix.pop_back();
  }
}

inline void check_size(std::size_t p, std::size_t q) {
  if (p > kMaxLength || q > kMaxLength) {
    throw ConfigError("oracle size guard: lengths must be <= " + std::to_string(kMaxLength));
  }
}

// 1-based access with index 0 mapped onto the first element.
inline const TimedItem& at(const TimedSequence& s, std::size_t k) { return s[k == 0 ? 0 : k - 1]; }

}  // namespace detail

inline std::vector<LatticePath> enumerate_paths(std::size_t p, std::size_t q) {
  detail::check_size(p, q);
  std::vector<LatticePath> out;
  LatticePath prefix;
  detail::extend(0, 0, p, q, prefix, out);
  return out;
}

/// Sum of local costs along one path.
inline double path_cost(const LatticePath& path, const TimedSequence& a, const TimedSequence& b,
                        double lambda, const LocalCostModel& model) {
  double total = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  for (EditOp op : path) {
    switch (op) {
      case EditOp::delete_a:
        ++i;
        total += regularized_local_cost(model, detail::at(a, i), detail::at(a, i - 1)) + lambda;
        break;
      case EditOp::match:
        ++i;
        ++j;
        total += regularized_local_cost(model, detail::at(a, i), detail::at(b, j)) +
                 regularized_local_cost(model, detail::at(a, i - 1), detail::at(b, j - 1));
        break;
      case EditOp::delete_b:
        ++j;
        total += regularized_local_cost(model, detail::at(b, j), detail::at(b, j - 1)) + lambda;
        break;
    }
  }
  return total;
}

/// Minimum path cost over all enumerated paths.
inline double brute_force_distance(const TimedSequence& a, const TimedSequence& b,
                                   const GtwedParams& params, const LocalCostModel& model) {
  detail::check_size(a.size(), b.size());
  params.validate();
  if (params.gamma != model.gamma()) throw ConfigError("stiffness mismatch");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& path : enumerate_paths(a.size(), b.size())) {
    const double c = path_cost(path, a, b, params.lambda, model);
    if (c < best) best = c;
  }
  return best;
}

}  // namespace gtwed::oracle
