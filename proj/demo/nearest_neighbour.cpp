// Nearest-neighbour lookup over symbol sequences with a custom time metric.
#include <cmath>
#include <iostream>
#include <vector>

#include "gtwed/gtwed.hpp"

int main() {
  using namespace gtwed;

  const auto make = [](std::string id, std::vector<std::pair<std::string, double>> events) {
    RawSequence raw{std::move(id), std::nullopt, {}};
    for (auto& [symbol, t] : events) raw.items.push_back({symbol, t});
    return validate_sequence(std::move(raw));
  };

  const std::vector<TimedSequence> library{
      make("login-browse-logout", {{"login", 0.0}, {"browse", 1.0}, {"logout", 5.0}}),
      make("login-buy", {{"login", 0.0}, {"buy", 2.0}}),
      make("browse-only", {{"browse", 0.5}, {"browse", 1.5}, {"browse", 2.5}}),
  };
  const auto query = make("query", {{"login", 0.2}, {"browse", 1.1}, {"logout", 4.0}});

  // Time differences saturate: sqrt is increasing, subadditive and zero at 0,
  // so it keeps the time term a metric.
  const LocalCostModel model(ObservationMetric::discrete(),
                             TimeMetric::custom([](double t, double s) { return std::sqrt(std::abs(t - s)); },
                                                "sqrt-abs"),
                             0.5, Transform::satexp(1.0, 2.0));
  const GtwedParams params{1.0, 0.5};

  for (const auto& seq : library) {
    const auto aligned = gtwed_align(query, seq, params, model);
    std::cout << seq.id() << ": " << aligned.distance << " (" << aligned.path.steps.size()
              << " edit steps)\n";
  }
}
