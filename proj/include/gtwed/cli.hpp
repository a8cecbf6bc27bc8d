#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gtwed/audit.hpp"
#include "gtwed/engine.hpp"
#include "gtwed/error.hpp"
#include "gtwed/io.hpp"
#include "gtwed/metric.hpp"
#include "gtwed/random.hpp"
#include "gtwed/sequence.hpp"

// Command implementations behind tools/gtwed.cpp.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error (and
// audit violations).
namespace gtwed::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

enum class Mode { pair, matrix, knn, audit };

struct RunConfig {
  Mode mode = Mode::pair;
  std::string input;
  std::string train;
  std::string test;
  std::string output;
  std::vector<std::string> ids;
  std::string metric = "euclidean";
  std::string time_metric = "absolute-difference";
  std::string transform = "identity";
  double lambda = 1.0;
  double gamma = 1.0;
  bool rolling = false;
  std::uint64_t seed = 0;
  std::size_t triples = 1000;
  std::size_t k = 1;
  std::size_t threads = 0;  // 0: hardware concurrency

  GtwedParams params() const { return {lambda, gamma}; }

  LocalCostModel model() const {
    return {ObservationMetric::parse(metric), TimeMetric::parse(time_metric), gamma,
            Transform::parse(transform)};
  }

  void validate() const {
    params().validate();
    const auto need = [](const std::string& v, const char* flag) {
      if (v.empty()) throw ConfigError(std::string("missing required flag ") + flag);
    };
    switch (mode) {
      case Mode::pair:
        need(input, "--input");
        if (ids.size() != 2) throw ConfigError("--ids needs exactly two sequence ids");
        break;
      case Mode::matrix:
        need(input, "--input");
        break;
      case Mode::knn:
        need(train, "--train");
        need(test, "--test");
        if (k < 1) throw ConfigError("--k must be >= 1");
        break;
      case Mode::audit:
        if (triples < 1) throw ConfigError("--triples must be >= 1");
        break;
    }
  }
};

/// Fixed-point, twelve digits after the decimal point.
inline std::string format_distance(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(12) << v;
  return os.str();
}

inline double evaluate(const TimedSequence& a, const TimedSequence& b, const RunConfig& cfg,
                       const LocalCostModel& model) {
  return cfg.rolling ? gtwed_distance_rolling(a, b, cfg.params(), model)
                     : gtwed_distance(a, b, cfg.params(), model);
}

inline std::size_t worker_count(const RunConfig& cfg, std::size_t jobs) {
  std::size_t n = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  return std::clamp<std::size_t>(n, 1, std::max<std::size_t>(jobs, 1));
}

/// Runs body(k) for k in [0, jobs) on a small pool. The first exception
/// is rethrown on the calling thread.
template <typename Body>
void parallel_for(std::size_t jobs, std::size_t workers, Body&& body) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::mutex failure_mutex;
  auto loop = [&] {
    for (std::size_t k = next++; k < jobs && !failed; k = next++) {
      try {
        body(k);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(loop);
  loop();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

class OutputSink {
 public:
  OutputSink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw DataError("cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

inline int run_pair(const RunConfig& cfg, std::ostream& out) {
  const auto data = io::load_dataset(cfg.input);
  const auto find = [&](const std::string& id) -> const TimedSequence& {
    for (const auto& s : data) {
      if (s.id() == id) return s;
    }
    throw DataError("unknown sequence id '" + id + "'");
  };
  const auto& a = find(cfg.ids[0]);
  const auto& b = find(cfg.ids[1]);
  out << format_distance(evaluate(a, b, cfg, cfg.model())) << '\n';
  return kExitOk;
}

/// Symmetric matrix with zero diagonal; each unordered pair is evaluated
/// once and mirrored.
inline std::vector<std::vector<double>> distance_matrix(const std::vector<TimedSequence>& data,
                                                        const RunConfig& cfg) {
  const auto model = cfg.model();
  const std::size_t n = data.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  parallel_for(n, worker_count(cfg, n), [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) m[i][j] = evaluate(data[i], data[j], cfg, model);
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) m[i][j] = m[j][i];
  }
  return m;
}

inline void write_matrix(std::ostream& out, const std::vector<TimedSequence>& data,
                         const std::vector<std::vector<double>>& m) {
  out << "id";
  for (const auto& s : data) out << ',' << s.id();
  out << '\n';
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << data[i].id();
    for (double v : m[i]) out << ',' << format_distance(v);
    out << '\n';
  }
}

inline int run_matrix(const RunConfig& cfg, std::ostream& out) {
  const auto data = io::load_dataset(cfg.input);
  if (data.empty()) throw DataError("dataset '" + cfg.input + "' is empty");
  const auto m = distance_matrix(data, cfg);
  OutputSink sink(cfg.output, out);
  write_matrix(sink.stream(), data, m);
  return kExitOk;
}

struct Prediction {
  std::string id;
  std::string predicted;
  std::string actual;
};

/// k-NN by majority vote over the k nearest training sequences, ordered by
/// (distance, id). A vote tie goes to the tied label whose best neighbour
/// ranks first.
inline std::vector<Prediction> classify(const std::vector<TimedSequence>& train,
                                        const std::vector<TimedSequence>& test,
                                        const RunConfig& cfg) {
  if (train.empty()) throw DataError("empty training set");
  for (const auto* set : {&train, &test}) {
    for (const auto& s : *set) {
      if (!s.label()) throw DataError("sequence '" + s.id() + "' has no label");
    }
  }
  const auto model = cfg.model();
  const std::size_t k = std::min(cfg.k, train.size());
  std::vector<Prediction> out(test.size());
  parallel_for(test.size(), worker_count(cfg, test.size()), [&](std::size_t t) {
    std::vector<std::pair<double, std::size_t>> ranked;
    ranked.reserve(train.size());
    for (std::size_t r = 0; r < train.size(); ++r) {
      ranked.emplace_back(evaluate(test[t], train[r], cfg, model), r);
    }
    std::sort(ranked.begin(), ranked.end(), [&](const auto& x, const auto& y) {
      if (x.first != y.first) return x.first < y.first;
      return train[x.second].id() < train[y.second].id();
    });
    std::map<std::string, std::size_t> votes;
    for (std::size_t r = 0; r < k; ++r) ++votes[*train[ranked[r].second].label()];
    std::size_t best = 0;
    for (const auto& [label, count] : votes) best = std::max(best, count);
    std::string winner;
    for (std::size_t r = 0; r < k; ++r) {
      const auto& label = *train[ranked[r].second].label();
      if (votes[label] == best) {
        winner = label;
        break;
      }
    }
    out[t] = {test[t].id(), winner, *test[t].label()};
  });
  return out;
}

inline int run_knn(const RunConfig& cfg, std::ostream& out) {
  const auto train = io::load_dataset(cfg.train);
  const auto test = io::load_dataset(cfg.test);
  const auto predictions = classify(train, test, cfg);
  OutputSink sink(cfg.output, out);
  std::size_t correct = 0;
  for (const auto& p : predictions) {
    sink.stream() << p.id << ',' << p.predicted << ',' << p.actual << '\n';
    correct += p.predicted == p.actual;
  }
  const double accuracy =
      predictions.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(predictions.size());
  sink.stream() << "accuracy," << format_distance(accuracy) << '\n';
  return kExitOk;
}

inline void print_report(std::ostream& out, const AuditReport& r) {
  out << r.subject << ": checks=" << r.checks << " violations=" << r.violations << '\n';
  for (const auto& w : r.witnesses) out << "  witness: " << w << '\n';
}

/// Audits with an explicit cost model; lets callers inject custom metrics
/// or transforms that have no text identifier.
inline int run_audit(const RunConfig& cfg, const LocalCostModel& model, std::ostream& out,
                     std::ostream& err) {
  if (cfg.lambda == 0.0) {
    err << "warning: lambda = 0 makes deleting a first element free at the sentinel boundary; "
           "identity of indiscernibles may fail\n";
  }
  const auto shape = random::shape_for(model.observation_metric());
  const auto params = cfg.params();
  const std::size_t samples = cfg.triples;

  std::vector<AuditReport> reports;
  reports.push_back(audit_metric_axioms(
      model.observation_metric(), [&](random::Rng& rng) { return random::random_observation(rng, shape); },
      samples, kAxiomTolerance, cfg.seed, "observation metric " + model.observation_metric().id()));
  reports.push_back(audit_metric_axioms(
      model.time_metric(),
      [](random::Rng& rng) { return std::uniform_real_distribution<double>(-100.0, 100.0)(rng); },
      samples, kAxiomTolerance, cfg.seed + 1, "time metric " + model.time_metric().id()));
  reports.push_back(audit_metric_axioms(
      model,
      [&](random::Rng& rng) {
        return TimedItem{random::random_observation(rng, shape),
                         std::uniform_real_distribution<double>(0.0, 10.0)(rng)};
      },
      samples, kAxiomTolerance, cfg.seed + 2, "local metric"));
  reports.push_back(audit_transform(model.transform(), samples, cfg.seed + 3,
                                    "transform " + model.transform().id()));
  reports.push_back(audit_distance_axioms(
      [&](const TimedSequence& a, const TimedSequence& b) {
        return cfg.rolling ? gtwed_distance_rolling(a, b, params, model)
                           : gtwed_distance(a, b, params, model);
      },
      [&](random::Rng& rng) { return random::random_sequence(rng, shape); }, cfg.triples,
      kAxiomTolerance, cfg.seed + 4, "sequence distance"));

  std::size_t violations = 0;
  for (const auto& r : reports) {
    print_report(out, r);
    violations += r.violations;
  }
  out << "result: " << (violations == 0 ? "PASS" : "FAIL") << " (" << violations << " violations)\n";
  return violations == 0 ? kExitOk : kExitData;
}

inline int run_audit(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return run_audit(cfg, cfg.model(), out, err);
}

/// Validates the config, runs the mode and maps errors onto exit codes.
inline int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    switch (cfg.mode) {
      case Mode::pair: return run_pair(cfg, out);
      case Mode::matrix: return run_matrix(cfg, out);
      case Mode::knn: return run_knn(cfg, out);
      case Mode::audit: return run_audit(cfg, out, err);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace gtwed::cli
