#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gtwed/error.hpp"
#include "gtwed/metric.hpp"

namespace gtwed {

/// Unvalidated input for validate_sequence.
struct RawSequence {
  std::string id;
  std::optional<std::string> label;
  std::vector<TimedItem> items;
};

/// Shape of an observation space: the variant alternative plus, for real
/// vectors, the dimension. Symbols of different lengths share one space.
struct ObservationShape {
  std::size_t kind = 0;
  std::size_t dimension = 0;

  friend bool operator==(const ObservationShape&, const ObservationShape&) = default;
};

inline ObservationShape shape_of(const Observation& x) {
  if (const auto* v = std::get_if<RealVector>(&x)) return {0, v->size()};
  return {1, 0};
}

/// A validated time-indexed sequence with strictly increasing timestamps.
/// The empty sequence is valid. Immutable once constructed.
class TimedSequence {
 public:
  TimedSequence() = default;

  const std::string& id() const noexcept { return id_; }
  const std::optional<std::string>& label() const noexcept { return label_; }
  std::span<const TimedItem> items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  const TimedItem& operator[](std::size_t k) const { return items_[k]; }

  /// Shape shared by every observation; nullopt for the empty sequence.
  std::optional<ObservationShape> shape() const {
    if (items_.empty()) return std::nullopt;
    return shape_of(items_.front().value);
  }

  friend bool operator==(const TimedSequence&, const TimedSequence&) = default;

 private:
  friend TimedSequence validate_sequence(RawSequence raw);

  std::string id_;
  std::optional<std::string> label_;
  std::vector<TimedItem> items_;
};

inline TimedSequence validate_sequence(RawSequence raw) {
  const auto where = [&](std::size_t k) {
    return "sequence '" + raw.id + "' item " + std::to_string(k + 1) + ": ";
  };
  for (std::size_t k = 0; k < raw.items.size(); ++k) {
    const auto& item = raw.items[k];
    if (!std::isfinite(item.time)) throw DataError(where(k) + "non-finite timestamp");
    if (const auto* v = std::get_if<RealVector>(&item.value)) {
      for (double c : *v) {
        if (!std::isfinite(c)) throw DataError(where(k) + "non-finite observation component");
      }
    }
    if (k > 0) {
      if (!(raw.items[k - 1].time < item.time)) {
        throw DataError(where(k) + "non-increasing timestamp");
      }
      if (shape_of(item.value) != shape_of(raw.items[0].value)) {
        throw DataError(where(k) + "mixed observation kinds or dimensions");
      }
    }
  }
  TimedSequence seq;
  seq.id_ = std::move(raw.id);
  seq.label_ = std::move(raw.label);
  seq.items_ = std::move(raw.items);
  return seq;
}

/// Convenience: univariate real observations with explicit timestamps.
inline TimedSequence make_sequence(std::span<const double> values, std::span<const double> times,
                                   std::string id = {}) {
  if (values.size() != times.size()) throw DataError("values and times differ in length");
  RawSequence raw{std::move(id), std::nullopt, {}};
  raw.items.reserve(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    raw.items.push_back({RealVector{values[k]}, times[k]});
  }
  return validate_sequence(std::move(raw));
}

/// 1-based view of a sequence extended with the index-0 sentinel
/// item(0) := item(1).
template <typename Item>
class SentinelView {
 public:
  SentinelView() = default;
  explicit SentinelView(std::span<const Item> items) : items_(items) {}

  /// Number of real elements p (the sentinel is not counted).
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }

  const Item& operator[](std::size_t i) const noexcept { return items_[i == 0 ? 0 : i - 1]; }

  const Item& item(std::size_t i) const {
    if (items_.empty()) throw DataError("empty sequence has no sentinel");
    if (i > items_.size()) throw DataError("sentinel view index out of range");
    return (*this)[i];
  }

 private:
  std::span<const Item> items_;
};

inline SentinelView<TimedItem> sentinel(const TimedSequence& seq) {
  if (seq.empty()) throw DataError("empty sequence has no sentinel");
  return SentinelView<TimedItem>(seq.items());
}

}  // namespace gtwed
