#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <utility>

#include "gtwed/metric.hpp"
#include "gtwed/sequence.hpp"

namespace gtwed::testing {

/// Univariate real sequence from (value, time) pairs.
inline TimedSequence seq(std::initializer_list<std::pair<double, double>> items, std::string id = "s") {
  RawSequence raw{std::move(id), std::nullopt, {}};
  for (const auto& [v, t] : items) raw.items.push_back({RealVector{v}, t});
  return validate_sequence(std::move(raw));
}

inline TimedSequence empty_seq(std::string id = "omega") {
  return validate_sequence(RawSequence{std::move(id), std::nullopt, {}});
}

/// d = |x - y|, Delta = |t - s|, identity transform.
inline LocalCostModel abs_model(double gamma, Transform g = Transform::identity()) {
  return {ObservationMetric::euclidean(), TimeMetric::absolute_difference(), gamma, std::move(g)};
}

class TempDir {
 public:
  TempDir() {
    char pattern[] = "/tmp/gtwed-test-XXXXXX";
    path_ = mkdtemp(pattern);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name, const std::string& contents = {}) const {
    const auto p = (path_ / name).string();
    std::ofstream(p) << contents;
    return p;
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace gtwed::testing
