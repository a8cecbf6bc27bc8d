#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "gtwed/error.hpp"

namespace gtwed {

using RealVector = std::vector<double>;
using Symbol = std::string;

/// A single observation: either a point of R^n or a symbol string.
using Observation = std::variant<RealVector, Symbol>;

/// One time-indexed observation, kept as a (value, timestamp) pair so the
/// local metric can be called directly on tuples.
struct TimedItem {
  Observation value;
  double time = 0.0;

  friend bool operator==(const TimedItem&, const TimedItem&) = default;
};

namespace detail {

inline double parse_real(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw ConfigError("invalid number '" + std::string(text) + "' in " + std::string(what));
  }
  return value;
}

inline std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

inline double require_finite_result(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw DataError(std::string(what) + ": non-finite component or result");
  }
  return value;
}

}  // namespace detail

/// Metric d on observations.
///
/// Built-in kinds are true metrics. A custom metric is accepted under the
/// caller's contract (nonnegative, symmetric, zero iff equal, triangle
/// inequality) and is never checked at construction; use
/// audit_metric_axioms for an empirical check.
class ObservationMetric {
 public:
  enum class Kind { euclidean, minkowski, hamming, discrete, custom };
  using Function = std::function<double(const Observation&, const Observation&)>;

  static ObservationMetric euclidean() { return ObservationMetric(Kind::euclidean, 2.0); }

  static ObservationMetric minkowski(double order) {
    if (!(order >= 1.0) || !std::isfinite(order)) {
      throw ConfigError("minkowski order must be finite and >= 1");
    }
    return ObservationMetric(Kind::minkowski, order);
  }

  static ObservationMetric manhattan() { return minkowski(1.0); }
  static ObservationMetric hamming() { return ObservationMetric(Kind::hamming, 0.0); }
  static ObservationMetric discrete() { return ObservationMetric(Kind::discrete, 0.0); }

  static ObservationMetric custom(Function fn, std::string name = "custom") {
    if (!fn) throw ConfigError("custom observation metric is empty");
    ObservationMetric m(Kind::custom, 0.0);
    m.fn_ = std::move(fn);
    m.name_ = std::move(name);
    return m;
  }

  /// Accepts "euclidean", "manhattan", "minkowski:<p>", "hamming", "discrete".
  static ObservationMetric parse(std::string_view id) {
    if (id == "euclidean") return euclidean();
    if (id == "manhattan") return manhattan();
    if (id == "hamming") return hamming();
    if (id == "discrete") return discrete();
    if (id.starts_with("minkowski:")) {
      return minkowski(detail::parse_real(id.substr(10), "minkowski order"));
    }
    throw ConfigError("unknown observation metric '" + std::string(id) + "'");
  }

  Kind kind() const noexcept { return kind_; }
  double order() const noexcept { return order_; }

  std::string id() const {
    switch (kind_) {
      case Kind::euclidean: return "euclidean";
      case Kind::minkowski: {
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, order_);
        return "minkowski:" + std::string(buf, res.ptr);
      }
      case Kind::hamming: return "hamming";
      case Kind::discrete: return "discrete";
      case Kind::custom: return name_;
    }
    return name_;
  }

  double operator()(const Observation& x, const Observation& y) const {
    switch (kind_) {
      case Kind::euclidean: return lp(x, y, 2.0);
      case Kind::minkowski: return lp(x, y, order_);
      case Kind::hamming: return hamming_count(x, y);
      case Kind::discrete: return x == y ? 0.0 : 1.0;
      case Kind::custom: return detail::require_finite_result(fn_(x, y), "custom observation metric");
    }
    return 0.0;
  }

 private:
  ObservationMetric(Kind kind, double order) : kind_(kind), order_(order) {}

  static const RealVector& as_vector(const Observation& x) {
    const auto* v = std::get_if<RealVector>(&x);
    if (v == nullptr) throw DataError("metric requires real-vector observations");
    return *v;
  }

  static double lp(const Observation& x, const Observation& y, double order) {
    const auto& a = as_vector(x);
    const auto& b = as_vector(y);
    if (a.size() != b.size()) {
      throw DataError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                      std::to_string(b.size()));
    }
    double sum = 0.0;
    if (order == 2.0) {
      for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        sum += diff * diff;
      }
      return detail::require_finite_result(std::sqrt(sum), "euclidean metric");
    }
    if (order == 1.0) {
      for (std::size_t k = 0; k < a.size(); ++k) sum += std::abs(a[k] - b[k]);
      return detail::require_finite_result(sum, "manhattan metric");
    }
    for (std::size_t k = 0; k < a.size(); ++k) sum += std::pow(std::abs(a[k] - b[k]), order);
    return detail::require_finite_result(std::pow(sum, 1.0 / order), "minkowski metric");
  }

  static double hamming_count(const Observation& x, const Observation& y) {
    if (x.index() != y.index()) throw DataError("hamming: observations of different kinds");
    std::size_t count = 0;
    if (const auto* sx = std::get_if<Symbol>(&x)) {
      const auto& sy = std::get<Symbol>(y);
      if (sx->size() != sy.size()) throw DataError("hamming: length mismatch");
      for (std::size_t k = 0; k < sx->size(); ++k) count += (*sx)[k] != sy[k];
    } else {
      const auto& vx = std::get<RealVector>(x);
      const auto& vy = std::get<RealVector>(y);
      if (vx.size() != vy.size()) throw DataError("hamming: length mismatch");
      for (std::size_t k = 0; k < vx.size(); ++k) {
        if (!std::isfinite(vx[k]) || !std::isfinite(vy[k])) {
          throw DataError("hamming: non-finite component");
        }
        count += vx[k] != vy[k];
      }
    }
    return static_cast<double>(count);
  }

  Kind kind_;
  double order_;
  Function fn_;
  std::string name_;
};

/// Metric on timestamps. Timestamps are reals.
class TimeMetric {
 public:
  enum class Kind { absolute_difference, custom };
  using Function = std::function<double(double, double)>;

  static TimeMetric absolute_difference() { return TimeMetric(); }

  static TimeMetric custom(Function fn, std::string name = "custom") {
    if (!fn) throw ConfigError("custom time metric is empty");
    TimeMetric m;
    m.kind_ = Kind::custom;
    m.fn_ = std::move(fn);
    m.name_ = std::move(name);
    return m;
  }

  /// Accepts "absolute" and "absolute-difference".
  static TimeMetric parse(std::string_view id) {
    if (id == "absolute" || id == "absolute-difference") return absolute_difference();
    throw ConfigError("unknown time metric '" + std::string(id) + "'");
  }

  Kind kind() const noexcept { return kind_; }
  std::string id() const { return kind_ == Kind::custom ? name_ : "absolute-difference"; }

  double operator()(double t, double s) const {
    if (kind_ == Kind::absolute_difference) {
      return detail::require_finite_result(std::abs(t - s), "time metric");
    }
    return detail::require_finite_result(fn_(t, s), "custom time metric");
  }

 private:
  Kind kind_ = Kind::absolute_difference;
  Function fn_;
  std::string name_;
};

/// Increasing, subadditive g with g(0) = 0 and g(x) > 0 for x > 0.
///
/// capped:  g(x) = x + alpha * min(x, tau)
/// satexp:  g(x) = x + alpha * (1 - exp(-x / tau))
class Transform {
 public:
  enum class Kind { identity, capped, satexp, custom };
  using Function = std::function<double(double)>;

  static Transform identity() { return Transform(Kind::identity, 0.0, 0.0); }
  static Transform capped(double alpha, double tau) { return Transform(Kind::capped, alpha, tau); }
  static Transform satexp(double alpha, double tau) { return Transform(Kind::satexp, alpha, tau); }

  /// Unchecked: the caller guarantees the transform contract.
  static Transform custom(Function fn, std::string name = "custom") {
    if (!fn) throw ConfigError("custom transform is empty");
    Transform t(Kind::identity, 0.0, 0.0);
    t.kind_ = Kind::custom;
    t.fn_ = std::move(fn);
    t.name_ = std::move(name);
    return t;
  }

  /// Accepts "identity", "capped:<alpha>:<tau>", "satexp:<alpha>:<tau>".
  static Transform parse(std::string_view id) {
    if (id == "identity") return identity();
    const auto parts = detail::split(id, ':');
    if (parts.size() == 3 && (parts[0] == "capped" || parts[0] == "satexp")) {
      const double alpha = detail::parse_real(parts[1], "transform alpha");
      const double tau = detail::parse_real(parts[2], "transform tau");
      return parts[0] == "capped" ? capped(alpha, tau) : satexp(alpha, tau);
    }
    throw ConfigError("unknown transform '" + std::string(id) + "'");
  }

  Kind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  double tau() const noexcept { return tau_; }

  std::string id() const {
    auto num = [](double v) {
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof buf, v);
      return std::string(buf, res.ptr);
    };
    switch (kind_) {
      case Kind::identity: return "identity";
      case Kind::capped: return "capped:" + num(alpha_) + ":" + num(tau_);
      case Kind::satexp: return "satexp:" + num(alpha_) + ":" + num(tau_);
      case Kind::custom: return name_;
    }
    return name_;
  }

  double operator()(double x) const {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw DataError("transform argument must be finite and nonnegative");
    }
    switch (kind_) {
      case Kind::identity: return x;
      case Kind::capped: return x + alpha_ * std::min(x, tau_);
      case Kind::satexp: return x - alpha_ * std::expm1(-x / tau_);
      case Kind::custom: return detail::require_finite_result(fn_(x), "custom transform");
    }
    return x;
  }

 private:
  Transform(Kind kind, double alpha, double tau) : kind_(kind), alpha_(alpha), tau_(tau) {
    if (kind != Kind::identity) {
      if (!(alpha > 0.0) || !std::isfinite(alpha) || !(tau > 0.0) || !std::isfinite(tau)) {
        throw ConfigError("transform parameters alpha and tau must be finite and > 0");
      }
    }
  }

  Kind kind_;
  double alpha_;
  double tau_;
  Function fn_;
  std::string name_;
};

inline double eval_observation_metric(const ObservationMetric& d, const Observation& x,
                                      const Observation& y) {
  return d(x, y);
}

inline double eval_time_metric(const TimeMetric& delta, double t, double s) {
  if (!std::isfinite(t) || !std::isfinite(s)) throw DataError("non-finite timestamp");
  return delta(t, s);
}

/// D = d + gamma * Delta.
inline double combine_product_cost(double dval, double tval, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("gamma must be finite and > 0");
  if (!std::isfinite(dval) || !std::isfinite(tval) || dval < 0.0 || tval < 0.0) {
    throw DataError("product cost inputs must be finite and nonnegative");
  }
  return dval + gamma * tval;
}

inline double apply_transform(const Transform& g, double x) { return g(x); }

/// Bundles d, Delta, gamma and g; evaluates the regularized local metric
/// g(d(x, y) + gamma * Delta(t, s)) on (observation, timestamp) pairs.
class LocalCostModel {
 public:
  LocalCostModel(ObservationMetric d, TimeMetric delta, double gamma, Transform g)
      : d_(std::move(d)), delta_(std::move(delta)), gamma_(gamma), g_(std::move(g)) {
    if (!(gamma_ > 0.0) || !std::isfinite(gamma_)) throw ConfigError("gamma must be finite and > 0");
  }

  /// Euclidean observations, absolute-difference time, identity transform.
  static LocalCostModel classic(double gamma) {
    return {ObservationMetric::euclidean(), TimeMetric::absolute_difference(), gamma,
            Transform::identity()};
  }

  const ObservationMetric& observation_metric() const noexcept { return d_; }
  const TimeMetric& time_metric() const noexcept { return delta_; }
  const Transform& transform() const noexcept { return g_; }
  double gamma() const noexcept { return gamma_; }

  LocalCostModel with_gamma(double gamma) const { return {d_, delta_, gamma, g_}; }

  double operator()(const TimedItem& a, const TimedItem& b) const {
    return g_(combine_product_cost(d_(a.value, b.value), delta_(a.time, b.time), gamma_));
  }

 private:
  ObservationMetric d_;
  TimeMetric delta_;
  double gamma_;
  Transform g_;
};

inline double regularized_local_cost(const LocalCostModel& model, const TimedItem& a,
                                     const TimedItem& b) {
  return model(a, b);
}

}  // namespace gtwed
