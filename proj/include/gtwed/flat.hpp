#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gtwed/engine.hpp"
#include "gtwed/metric.hpp"
#include "gtwed/sequence.hpp"

// Flat-array entry points for host-language bindings: univariate values
// plus timestamps in, plain doubles out. Delegates to the engine.
namespace gtwed::flat {

struct Config {
  std::string metric = "euclidean";
  std::string time_metric = "absolute-difference";
  std::string transform = "identity";
  double lambda = 1.0;
  double gamma = 1.0;
  bool rolling = false;

  LocalCostModel model() const {
    return {ObservationMetric::parse(metric), TimeMetric::parse(time_metric), gamma,
            Transform::parse(transform)};
  }
};

struct Series {
  std::vector<double> values;
  std::vector<double> times;
};

inline double distance(std::span<const double> a_values, std::span<const double> a_times,
                       std::span<const double> b_values, std::span<const double> b_times,
                       const Config& cfg) {
  const auto a = make_sequence(a_values, a_times);
  const auto b = make_sequence(b_values, b_times);
  const GtwedParams params{cfg.lambda, cfg.gamma};
  const auto model = cfg.model();
  return cfg.rolling ? gtwed_distance_rolling(a, b, params, model) : gtwed_distance(a, b, params, model);
}

/// Row-major n x n matrix, symmetric with zero diagonal.
inline std::vector<double> matrix(std::span<const Series> dataset, const Config& cfg) {
  std::vector<TimedSequence> seqs;
  seqs.reserve(dataset.size());
  for (const auto& s : dataset) seqs.push_back(make_sequence(s.values, s.times));
  const GtwedParams params{cfg.lambda, cfg.gamma};
  const auto model = cfg.model();
  const std::size_t n = seqs.size();
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = cfg.rolling ? gtwed_distance_rolling(seqs[i], seqs[j], params, model)
                                   : gtwed_distance(seqs[i], seqs[j], params, model);
      out[i * n + j] = d;
      out[j * n + i] = d;
    }
  }
  return out;
}

}  // namespace gtwed::flat
