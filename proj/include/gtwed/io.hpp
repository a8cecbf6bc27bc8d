#pragma once

#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gtwed/error.hpp"
#include "gtwed/metric.hpp"
#include "gtwed/sequence.hpp"

// Dataset formats.
//
// JSONL, one record per line:
//   {"id":"s1","label":"a","t":[1,2],"values":[[0.0],[1.5]]}
// `label` is optional; each element of `values` is an array of numbers or a
// string symbol.
//
// CSV, one record per line, univariate reals with implicit timestamps 1..n:
//   id,label,v1,...,vn
// An empty label field means unlabeled. A first line starting with "id," is
// treated as a header.
namespace gtwed::io {

enum class Format { jsonl, csv };

inline Format format_for_path(std::string_view path) {
  return path.ends_with(".csv") ? Format::csv : Format::jsonl;
}

namespace detail {

inline std::string line_prefix(std::size_t line) { return "line " + std::to_string(line) + ": "; }

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline bool blank(std::string_view s) { return trim(s).empty(); }

inline double to_real(const nlohmann::json& j, std::size_t line, const char* what) {
  if (!j.is_number()) throw DataError(line_prefix(line) + what + " must be a number");
  return j.get<double>();
}

inline TimedSequence parse_json_record(const std::string& text, std::size_t line) {
  nlohmann::json rec;
  try {
    rec = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(line_prefix(line) + "malformed JSON: " + e.what());
  }
  if (!rec.is_object()) throw DataError(line_prefix(line) + "record must be a JSON object");

  RawSequence raw;
  const auto id = rec.find("id");
  if (id == rec.end() || !id->is_string()) throw DataError(line_prefix(line) + "missing text field 'id'");
  raw.id = id->get<std::string>();
  if (const auto label = rec.find("label"); label != rec.end() && !label->is_null()) {
    if (!label->is_string()) throw DataError(line_prefix(line) + "'label' must be text");
    raw.label = label->get<std::string>();
  }
  const auto t = rec.find("t");
  const auto values = rec.find("values");
  if (t == rec.end() || !t->is_array()) throw DataError(line_prefix(line) + "missing array field 't'");
  if (values == rec.end() || !values->is_array()) {
    throw DataError(line_prefix(line) + "missing array field 'values'");
  }
  if (t->size() != values->size()) {
    throw DataError(line_prefix(line) + "'t' and 'values' differ in length");
  }
  for (std::size_t k = 0; k < t->size(); ++k) {
    const auto& v = (*values)[k];
    Observation obs;
    if (v.is_string()) {
      obs = v.get<std::string>();
    } else if (v.is_array()) {
      RealVector r;
      r.reserve(v.size());
      for (const auto& c : v) r.push_back(to_real(c, line, "observation component"));
      obs = std::move(r);
    } else {
      throw DataError(line_prefix(line) + "each value must be an array of numbers or a string");
    }
    raw.items.push_back({std::move(obs), to_real((*t)[k], line, "timestamp")});
  }
  try {
    return validate_sequence(std::move(raw));
  } catch (const DataError& e) {
    throw DataError(line_prefix(line) + e.what());
  }
}

inline TimedSequence parse_csv_record(std::string_view text, std::size_t line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(',', start);
    fields.push_back(trim(text.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (fields.size() < 2 || fields[0].empty()) {
    throw DataError(line_prefix(line) + "expected id,label,v1,...,vn");
  }
  RawSequence raw;
  raw.id = std::string(fields[0]);
  if (!fields[1].empty()) raw.label = std::string(fields[1]);
  for (std::size_t k = 2; k < fields.size(); ++k) {
    double v = 0.0;
    const auto f = fields[k];
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (f.empty() || ec != std::errc{} || ptr != f.data() + f.size()) {
      throw DataError(line_prefix(line) + "invalid number '" + std::string(f) + "'");
    }
    raw.items.push_back({RealVector{v}, static_cast<double>(k - 1)});
  }
  try {
    return validate_sequence(std::move(raw));
  } catch (const DataError& e) {
    throw DataError(line_prefix(line) + e.what());
  }
}

inline std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

/// Parses and validates every record; ids must be unique.
inline std::vector<TimedSequence> parse_dataset(std::istream& in, Format format) {
  std::vector<TimedSequence> out;
  std::set<std::string> seen;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (detail::blank(text)) continue;
    if (format == Format::csv && out.empty() && seen.empty() && text.starts_with("id,")) continue;
    auto seq = format == Format::jsonl ? detail::parse_json_record(text, line)
                                       : detail::parse_csv_record(text, line);
    if (!seen.insert(seq.id()).second) {
      throw DataError(detail::line_prefix(line) + "duplicate id '" + seq.id() + "'");
    }
    out.push_back(std::move(seq));
  }
  return out;
}

inline std::vector<TimedSequence> load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  try {
    return parse_dataset(in, format_for_path(path));
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

/// Emits the canonical JSONL record: fields in the order id, label, t,
/// values; label omitted when absent.
inline std::string to_jsonl(const TimedSequence& seq) {
  nlohmann::ordered_json rec;
  rec["id"] = seq.id();
  if (seq.label()) rec["label"] = *seq.label();
  auto t = nlohmann::ordered_json::array();
  auto values = nlohmann::ordered_json::array();
  for (const auto& item : seq.items()) {
    t.push_back(item.time);
    if (const auto* s = std::get_if<Symbol>(&item.value)) {
      values.push_back(*s);
    } else {
      values.push_back(std::get<RealVector>(item.value));
    }
  }
  rec["t"] = std::move(t);
  rec["values"] = std::move(values);
  return rec.dump();
}

/// CSV row; only for univariate real sequences stamped 1..n.
inline std::string to_csv(const TimedSequence& seq) {
  std::string row = seq.id() + "," + seq.label().value_or("");
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const auto* v = std::get_if<RealVector>(&seq[k].value);
    if (v == nullptr || v->size() != 1 || seq[k].time != static_cast<double>(k + 1)) {
      throw DataError("sequence '" + seq.id() + "' is not representable as CSV");
    }
    row += "," + detail::shortest(v->front());
  }
  return row;
}

inline void write_dataset(std::ostream& out, const std::vector<TimedSequence>& data, Format format) {
  for (const auto& seq : data) out << (format == Format::jsonl ? to_jsonl(seq) : to_csv(seq)) << '\n';
}

}  // namespace gtwed::io
