#include "wcs/csv.hpp"

#include <fmt/format.h>

#include "wcs/error.hpp"

namespace wcs {

namespace {

void append_field(std::string& out, std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    out += field;
    return;
  }
  out += '"';
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

}  // namespace

std::string format_csv(std::span<const CsvRow> rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      append_field(out, row[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<CsvRow> parse_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"' && field.empty() && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      field_started = false;
    } else if (c == '\n') {
      if (!field.empty() && field.back() == '\r') field.pop_back();
      row.push_back(std::move(field));
      rows.push_back(std::move(row));
      row.clear();
      field.clear();
      field_started = false;
      ++line;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) throw ParseError(line, "unterminated quoted field");
  if (field_started || !row.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_number(double value) { return fmt::format("{}", value); }

std::string results_csv(std::span<const SweepPoint> points) {
  std::vector<CsvRow> rows;
  rows.push_back({"sampler", "param", "temperature", "wcs", "words_reachable", "erased_fraction",
                  "n_trials"});
  for (const auto& pt : points) {
    rows.push_back({pt.cfg.sampler(), pt.cfg.param(), format_temperature(pt.cfg.temperature),
                    format_number(pt.wcs), format_number(pt.words_reachable),
                    format_number(pt.erased_fraction), std::to_string(pt.n_trials)});
  }
  return format_csv(rows);
}

std::string per_word_csv(std::span<const WordScore> scores) {
  std::vector<CsvRow> rows;
  rows.push_back({"word", "rank", "sampler", "param", "temperature", "wcs_w", "n_contexts"});
  for (const auto& s : scores) {
    rows.push_back({s.word, std::to_string(s.rank), s.cfg.sampler(), s.cfg.param(),
                    format_temperature(s.cfg.temperature), format_number(s.wcs_w),
                    std::to_string(s.n_contexts)});
  }
  return format_csv(rows);
}

}  // namespace wcs
