#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>

#include "gtwed/metric.hpp"
#include "gtwed/sequence.hpp"

// Seeded generators for audits and property tests.
namespace gtwed::random {

using Rng = std::mt19937_64;

enum class ObservationKind { real_vector, symbol };

struct SequenceShape {
  ObservationKind kind = ObservationKind::real_vector;
  std::size_t dimension = 1;      // real vectors
  std::size_t symbol_length = 3;  // symbols
  std::string alphabet = "abc";
  std::size_t min_length = 0;
  std::size_t max_length = 8;
  double value_range = 2.0;   // components uniform in [-range, range]
  double max_time_step = 2.0;  // increments uniform in (0, max_time_step]
  double value_grid = 0.0;     // > 0 snaps components to multiples of it
};

/// Shape suited to a metric: symbols for hamming and discrete, vectors
/// otherwise.
inline SequenceShape shape_for(const ObservationMetric& d) {
  SequenceShape shape;
  if (d.kind() == ObservationMetric::Kind::hamming || d.kind() == ObservationMetric::Kind::discrete) {
    shape.kind = ObservationKind::symbol;
  } else {
    shape.dimension = 2;
  }
  return shape;
}

inline Observation random_observation(Rng& rng, const SequenceShape& shape) {
  if (shape.kind == ObservationKind::symbol) {
    std::uniform_int_distribution<std::size_t> pick(0, shape.alphabet.size() - 1);
    std::string s(shape.symbol_length, ' ');
    for (auto& c : s) c = shape.alphabet[pick(rng)];
    return s;
  }
  std::uniform_real_distribution<double> value(-shape.value_range, shape.value_range);
  RealVector v(shape.dimension);
  for (auto& c : v) {
    c = value(rng);
    if (shape.value_grid > 0.0) c = std::round(c / shape.value_grid) * shape.value_grid;
  }
  return v;
}

inline TimedSequence random_sequence(Rng& rng, const SequenceShape& shape, std::string id = {}) {
  std::uniform_int_distribution<std::size_t> length(shape.min_length, shape.max_length);
  // Strictly positive increments: nextafter keeps the lower bound open.
  std::uniform_real_distribution<double> step(std::nextafter(0.0, 1.0), shape.max_time_step);
  RawSequence raw{std::move(id), std::nullopt, {}};
  const std::size_t n = length(rng);
  double t = step(rng);
  for (std::size_t k = 0; k < n; ++k) {
    raw.items.push_back({random_observation(rng, shape), t});
    t += step(rng);
  }
  return validate_sequence(std::move(raw));
}

}  // namespace gtwed::random
