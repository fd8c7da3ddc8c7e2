#include "wcs/trace.hpp"

#include <charconv>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "wcs/error.hpp"
#include "wcs/io.hpp"

namespace wcs {

nlohmann::ordered_json to_json(const AuditRecord& record) {
  nlohmann::ordered_json j;
  j["word"] = record.word;
  j["rank_in_band"] = record.rank_in_band;
  j["context_id"] = record.context_id;
  j["doc_id"] = record.doc_id;
  j["n_word_tokens"] = record.n_word_tokens();
  auto steps = nlohmann::ordered_json::array();
  for (const auto& s : record.steps) {
    nlohmann::ordered_json step;
    step["step_index"] = s.step_index;
    step["token_id"] = s.token_id;
    step["rank"] = s.stats.rank;
    nlohmann::ordered_json temps = nlohmann::ordered_json::object();
    for (const auto& [t, ts] : s.stats.per_temperature) {
      temps[format_temperature(t)] = {
          {"p_target", ts.p_target}, {"p_max", ts.p_max}, {"cum_excl", ts.cum_excl}};
    }
    step["temps"] = std::move(temps);
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  return j;
}

std::string to_jsonl(const AuditRecord& record) { return to_json(record).dump(); }

std::string serialize_trace(const std::vector<AuditRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += to_jsonl(r);
    out += '\n';
  }
  return out;
}

void write_trace(const std::filesystem::path& path, const std::vector<AuditRecord>& records) {
  write_file(path, serialize_trace(records));
}

std::optional<std::string> check_record(const AuditRecord& record) {
  if (record.steps.empty()) return "record has no steps";
  const auto& first_temps = record.steps.front().stats.per_temperature;
  if (first_temps.empty()) return "step 0 records no temperatures";
  int position = 0;
  for (const auto& s : record.steps) {
    // One step per word token, so indices are exactly 0..n-1.
    if (s.step_index != position) {
      return fmt::format("step_index {} at position {}", s.step_index, position);
    }
    ++position;
    if (s.stats.rank < 1) return fmt::format("step {}: rank {} < 1", s.step_index, s.stats.rank);
    const auto& temps = s.stats.per_temperature;
    if (temps.size() != first_temps.size()) {
      return fmt::format("step {}: temperature set differs from step 0", s.step_index);
    }
    for (std::size_t i = 0; i < temps.size(); ++i) {
      const auto& [t, ts] = temps[i];
      if (std::abs(t - first_temps[i].first) > kTemperatureTolerance) {
        return fmt::format("step {}: temperature set differs from step 0", s.step_index);
      }
      const auto where = fmt::format("step {} T={}", s.step_index, format_temperature(t));
      for (double v : {ts.p_target, ts.p_max, ts.cum_excl}) {
        if (!std::isfinite(v) || v < 0.0 || v > 1.0 + kMassEpsilon) {
          return fmt::format("{}: probability {} outside [0, 1]", where, v);
        }
      }
      if (ts.p_target > ts.p_max + kMassEpsilon) {
        return fmt::format("{}: p_target {} > p_max {}", where, ts.p_target, ts.p_max);
      }
      if (ts.cum_excl + ts.p_target > 1.0 + kMassEpsilon) {
        return fmt::format("{}: cum_excl + p_target = {} > 1", where, ts.cum_excl + ts.p_target);
      }
      if (s.stats.rank == 1 &&
          (ts.cum_excl > kMassEpsilon || std::abs(ts.p_target - ts.p_max) > kMassEpsilon)) {
        return fmt::format("{}: rank 1 requires cum_excl = 0 and p_target = p_max", where);
      }
    }
  }
  return std::nullopt;
}

namespace {

template <typename T>
T field(const nlohmann::json& obj, const char* name, std::size_t line) {
  if (!obj.contains(name)) throw ParseError(line, fmt::format("missing field '{}'", name));
  const auto& v = obj[name];
  if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) throw ParseError(line, fmt::format("field '{}' must be a string", name));
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) throw ParseError(line, fmt::format("field '{}' must be an integer", name));
  } else {
    if (!v.is_number()) throw ParseError(line, fmt::format("field '{}' must be a number", name));
  }
  return v.get<T>();
}

double parse_temperature_key(const std::string& key, std::size_t line) {
  double t = 0.0;
  const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), t);
  if (ec != std::errc{} || ptr != key.data() + key.size() || !(t > 0.0)) {
    throw ParseError(line, fmt::format("invalid temperature key '{}'", key));
  }
  return t;
}

AuditRecord record_from_json(const nlohmann::json& j, std::size_t line) {
  if (!j.is_object()) throw ParseError(line, "record must be a JSON object");
  AuditRecord r;
  r.word = field<std::string>(j, "word", line);
  r.rank_in_band = field<std::int64_t>(j, "rank_in_band", line);
  r.context_id = field<int>(j, "context_id", line);
  r.doc_id = field<std::string>(j, "doc_id", line);
  const auto n_tokens = field<std::int64_t>(j, "n_word_tokens", line);
  if (!j.contains("steps") || !j["steps"].is_array()) throw ParseError(line, "missing array 'steps'");
  for (const auto& sj : j["steps"]) {
    if (!sj.is_object()) throw ParseError(line, "step must be a JSON object");
    StepRecord s;
    s.step_index = field<int>(sj, "step_index", line);
    s.token_id = field<TokenId>(sj, "token_id", line);
    s.stats.rank = field<std::int64_t>(sj, "rank", line);
    if (!sj.contains("temps") || !sj["temps"].is_object()) {
      throw ParseError(line, fmt::format("step {}: missing object 'temps'", s.step_index));
    }
    for (const auto& [key, tj] : sj["temps"].items()) {
      if (!tj.is_object()) throw ParseError(line, fmt::format("temperature '{}' must map to an object", key));
      const double t = parse_temperature_key(key, line);
      TemperatureStats ts{field<double>(tj, "p_target", line), field<double>(tj, "p_max", line),
                          field<double>(tj, "cum_excl", line)};
      if (tj.contains("rank") && field<std::int64_t>(tj, "rank", line) != s.stats.rank) {
        throw ParseError(line, fmt::format("invariant violation: step {} rank differs across temperatures",
                                           s.step_index));
      }
      s.stats.per_temperature.emplace_back(t, ts);
    }
    std::sort(s.stats.per_temperature.begin(), s.stats.per_temperature.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < s.stats.per_temperature.size(); ++i) {
      if (std::abs(s.stats.per_temperature[i].first - s.stats.per_temperature[i - 1].first) <=
          kTemperatureTolerance) {
        throw ParseError(line, "duplicate temperature key");
      }
    }
    r.steps.push_back(std::move(s));
  }
  if (n_tokens < 1 || static_cast<std::size_t>(n_tokens) != r.steps.size()) {
    throw ParseError(line, fmt::format("n_word_tokens {} does not match {} steps", n_tokens,
                                       r.steps.size()));
  }
  if (auto problem = check_record(r)) throw ParseError(line, "invariant violation: " + *problem);
  return r;
}

}  // namespace

std::vector<AuditRecord> parse_trace(std::string_view text) {
  std::vector<AuditRecord> records;
  std::set<std::pair<std::string, int>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& ex) {
      throw ParseError(line_no, ex.what());
    }
    if (j.is_object() && j.contains("meta")) continue;
    try {
      auto r = record_from_json(j, line_no);
      if (!seen.emplace(r.word, r.context_id).second) {
        throw ParseError(line_no, fmt::format("duplicate record for ('{}', context {})", r.word,
                                              r.context_id));
      }
      records.push_back(std::move(r));
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(line_no, ex.what());
    }
  }
  return records;
}

std::vector<AuditRecord> read_trace(const std::filesystem::path& path) {
  try {
    return parse_trace(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(e.line(), fmt::format("{}: {}", path.string(), e.what()));
  }
}

TraceOracle::TraceOracle(std::vector<AuditRecord> records) : records_(std::move(records)) {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (auto problem = check_record(r)) {
      throw Error(ErrorKind::validation,
                  fmt::format("record ('{}', context {}): {}", r.word, r.context_id, *problem));
    }
    if (!by_trial_.emplace(std::pair{r.word, r.context_id}, i).second) {
      throw Error(ErrorKind::validation,
                  fmt::format("duplicate record for ('{}', context {})", r.word, r.context_id));
    }
    for (const auto& s : r.steps) index_.emplace(Key{r.word, r.context_id, s.step_index}, &s);
  }
}

StepStats TraceOracle::step(const StepQuery& query) const {
  const auto it = index_.find(Key{std::string(query.word), query.context_id, query.step_index});
  if (it == index_.end()) {
    throw Error(ErrorKind::replay_miss,
                fmt::format("no trace entry for ('{}', context {}, step {})", query.word,
                            query.context_id, query.step_index));
  }
  const auto& recorded = *it->second;
  if (recorded.token_id != query.target) {
    throw Error(ErrorKind::replay_miss,
                fmt::format("trace token {} differs from queried token {} at ('{}', context {}, step {})",
                            recorded.token_id, query.target, query.word, query.context_id,
                            query.step_index));
  }
  StepStats out;
  out.rank = recorded.stats.rank;
  for (double t : query.temperatures) out.per_temperature.emplace_back(t, recorded.stats.at(t));
  return out;
}

const AuditRecord* TraceOracle::find(std::string_view word, int context_id) const {
  const auto it = by_trial_.find(std::pair{std::string(word), context_id});
  return it == by_trial_.end() ? nullptr : &records_[it->second];
}

std::optional<TokenPath> TraceOracle::path_for(std::string_view word, int context_id) const {
  const auto* r = find(word, context_id);
  if (!r) return std::nullopt;
  TokenPath path;
  path.word = r->word;
  for (const auto& s : r->steps) path.word_tokens.push_back(s.token_id);
  return path;
}

TraceOracle build_trace_oracle(const std::filesystem::path& trace_path) {
  return TraceOracle(read_trace(trace_path));
}

}  // namespace wcs
