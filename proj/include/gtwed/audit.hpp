#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gtwed/engine.hpp"
#include "gtwed/error.hpp"
#include "gtwed/metric.hpp"
#include "gtwed/random.hpp"
#include "gtwed/sequence.hpp"

namespace gtwed {

inline constexpr double kAxiomTolerance = 1e-9;
inline constexpr double kSubadditivitySlack = 1e-12;

/// Outcome of an empirical axiom check. Only the first few witnesses are
/// kept; `violations` counts all of them.
struct AuditReport {
  std::string subject;
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::vector<std::string> witnesses;

  static constexpr std::size_t kMaxWitnesses = 5;

  bool passed() const noexcept { return violations == 0; }

  void record(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++violations;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(what);
  }

  void merge(const AuditReport& other) {
    checks += other.checks;
    violations += other.violations;
    for (const auto& w : other.witnesses) {
      if (witnesses.size() < kMaxWitnesses) witnesses.push_back(other.subject + ": " + w);
    }
  }
};

/// Relative-or-absolute slack, whichever is larger.
inline double slack(double magnitude, double tolerance) {
  return std::max(tolerance, tolerance * std::abs(magnitude));
}

namespace detail {

template <typename T>
std::string show(const T& v) {
  std::ostringstream os;
  os.precision(17);
  if constexpr (std::is_same_v<T, Observation>) {
    if (const auto* s = std::get_if<Symbol>(&v)) {
      os << '"' << *s << '"';
    } else {
      os << '(';
      const auto& r = std::get<RealVector>(v);
      for (std::size_t k = 0; k < r.size(); ++k) os << (k ? "," : "") << r[k];
      os << ')';
    }
  } else if constexpr (std::is_same_v<T, TimedItem>) {
    os << '[' << show(v.value) << " @ " << v.time << ']';
  } else if constexpr (std::is_same_v<T, TimedSequence>) {
    os << (v.id().empty() ? std::string("seq") : v.id()) << '{';
    for (std::size_t k = 0; k < v.size(); ++k) os << (k ? " " : "") << show(v[k]);
    os << '}';
  } else {
    os << v;
  }
  return os.str();
}

}  // namespace detail

/// Samples triples from `generate` and checks nonnegativity, identity
/// (d(x,x) = 0 exactly), exact symmetry and the triangle inequality within
/// `tolerance`.
template <typename Metric, typename Generator>
AuditReport audit_metric_axioms(const Metric& metric, Generator&& generate, std::size_t samples,
                                double tolerance, std::uint64_t seed,
                                std::string subject = "metric") {
  if (samples < 1) throw ConfigError("audit needs at least one sample");
  random::Rng rng(seed);
  AuditReport report;
  report.subject = std::move(subject);
  for (std::size_t n = 0; n < samples; ++n) {
    const auto x = generate(rng);
    const auto y = generate(rng);
    const auto z = generate(rng);
    const double xy = metric(x, y);
    const double yx = metric(y, x);
    const double yz = metric(y, z);
    const double xz = metric(x, z);
    const double xx = metric(x, x);
    using detail::show;
    report.record(xy >= 0.0 && yz >= 0.0 && xz >= 0.0,
                  "negative value among d(" + show(x) + "," + show(y) + "," + show(z) + ")");
    report.record(xx == 0.0, "d(x,x) = " + show(xx) + " for x = " + show(x));
    report.record(xy == yx, "d(x,y) != d(y,x) for x = " + show(x) + ", y = " + show(y));
    report.record(xz <= xy + yz + slack(xy + yz, tolerance),
                  "triangle: d(x,z) = " + show(xz) + " > d(x,y) + d(y,z) = " + show(xy + yz) +
                      " for x = " + show(x) + ", y = " + show(y) + ", z = " + show(z));
  }
  return report;
}

/// Checks g(0) = 0, monotonicity, subadditivity (with 1e-12 slack) and
/// positivity on sampled arguments.
template <typename G>
AuditReport audit_transform(const G& g, std::size_t samples, std::uint64_t seed,
                            std::string subject = "transform", double max_argument = 10.0) {
  if (samples < 1) throw ConfigError("audit needs at least one sample");
  random::Rng rng(seed);
  std::uniform_real_distribution<double> arg(0.0, max_argument);
  AuditReport report;
  report.subject = std::move(subject);
  using detail::show;
  report.record(g(0.0) == 0.0, "g(0) = " + show(g(0.0)));
  // Include the integer grid so the classic x = y = 1 witness is always tried.
  for (std::size_t n = 0; n < samples; ++n) {
    double x = n < 4 ? static_cast<double>(n) : arg(rng);
    double y = n < 4 ? static_cast<double>(n) : arg(rng);
    if (x > y) std::swap(x, y);
    const double gx = g(x);
    const double gy = g(y);
    report.record(gx <= gy, "not increasing: g(" + show(x) + ") = " + show(gx) + " > g(" + show(y) +
                                ") = " + show(gy));
    const double gxy = g(x + y);
    report.record(gxy <= gx + gy + kSubadditivitySlack,
                  "not subadditive: g(" + show(x) + " + " + show(y) + ") = " + show(gxy) + " > " +
                      show(gx + gy));
    if (x > 0.0) report.record(gx > 0.0, "g(" + show(x) + ") = " + show(gx) + " is not positive");
  }
  return report;
}

/// Empirical metric-axiom check of the sequence distance itself: identity
/// on every sampled sequence, symmetry on every pair, and the triangle
/// inequality in all three orientations of every sampled triple.
template <typename Distance, typename Generator>
AuditReport audit_distance_axioms(const Distance& distance, Generator&& generate,
                                  std::size_t triples, double tolerance, std::uint64_t seed,
                                  std::string subject = "distance") {
  if (triples < 1) throw ConfigError("audit needs at least one triple");
  random::Rng rng(seed);
  AuditReport report;
  report.subject = std::move(subject);
  using detail::show;
  for (std::size_t n = 0; n < triples; ++n) {
    const TimedSequence a = generate(rng);
    const TimedSequence b = generate(rng);
    const TimedSequence c = generate(rng);
    for (const auto* s : {&a, &b, &c}) {
      const double self = distance(*s, *s);
      report.record(self == 0.0, "delta(A,A) = " + show(self) + " for A = " + show(*s));
    }
    const double ab = distance(a, b);
    const double bc = distance(b, c);
    const double ac = distance(a, c);
    const double ba = distance(b, a);
    const double cb = distance(c, b);
    const double ca = distance(c, a);
    const auto symmetric = [&](double u, double v, const TimedSequence& s, const TimedSequence& t) {
      report.record(std::abs(u - v) <= slack(std::max(u, v), tolerance),
                    "asymmetric: " + show(u) + " vs " + show(v) + " for " + show(s) + ", " + show(t));
    };
    symmetric(ab, ba, a, b);
    symmetric(bc, cb, b, c);
    symmetric(ac, ca, a, c);
    report.record(ab >= 0.0 && bc >= 0.0 && ac >= 0.0, "negative distance");
    const auto triangle = [&](double direct, double leg1, double leg2) {
      report.record(direct <= leg1 + leg2 + slack(leg1 + leg2, tolerance),
                    "triangle: " + show(direct) + " > " + show(leg1) + " + " + show(leg2) + " for " +
                        show(a) + ", " + show(b) + ", " + show(c));
    };
    triangle(ac, ab, bc);
    triangle(ab, ac, bc);
    triangle(bc, ab, ac);
  }
  return report;
}

}  // namespace gtwed
