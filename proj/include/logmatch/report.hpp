#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "logmatch/scoring.hpp"
#include "logmatch/sequence_io.hpp"

namespace logmatch {

enum class OutputFormat { Text, Csv, Json };

inline std::optional<OutputFormat> parse_format(std::string_view name) noexcept {
  if (name == "text") return OutputFormat::Text;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  return std::nullopt;
}

/// Fixed-point rendering, always with '.' as the decimal separator.
inline std::string format_fixed(double value, int precision) {
  char buf[64];
  const auto [end, ec] =
      std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, precision);
  if (ec != std::errc{}) return "nan";
  std::string out(buf, end);
  // "-0.0000" -> "0.0000"
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

inline std::string format_fixed(const Rational& value, int precision) {
  return format_fixed(value.to_double(), precision);
}

/// The value format_fixed would print, as a double.
inline double round_to(const Rational& value, int precision) {
  const double scale = std::pow(10.0, precision);
  const double rounded = std::round(value.to_double() * scale) / scale;
  return rounded == 0.0 ? 0.0 : rounded;
}

/// Values printed alongside a record, taken from "reported_score=" and
/// "reported_match=" tokens in its FASTA description.
struct ReportedValues {
  std::optional<Rational> score;
  std::optional<Rational> match_percent;

  bool any() const noexcept { return score || match_percent; }
};

inline std::optional<Rational> parse_decimal(std::string_view text) {
  if (!text.empty() && text.back() == '%') text.remove_suffix(1);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty() || text.size() > 15) return std::nullopt;
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool seen_point = false;
  bool seen_digit = false;
  for (char c : text) {
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      num = num * 10 + (c - '0');
      if (seen_point) den *= 10;
      seen_digit = true;
    } else {
      return std::nullopt;
    }
  }
  if (!seen_digit) return std::nullopt;
  return Rational(static_cast<__int128>(negative ? -num : num), static_cast<__int128>(den));
}

inline ReportedValues parse_reported(std::string_view description) {
  ReportedValues out;
  std::istringstream in{std::string(description)};
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    const auto key = std::string_view(token).substr(0, eq);
    const auto value = parse_decimal(std::string_view(token).substr(eq + 1));
    if (!value) continue;
    if (key == "reported_score") out.score = value;
    if (key == "reported_match") out.match_percent = value;
  }
  return out;
}

struct MatrixRow {
  std::string locus;
  std::optional<ScoreReport> report;
  std::string error;  // set when report is empty
  ReportedValues reported;

  /// True when every reported value equals the recomputed one.
  bool agrees() const {
    if (!report) return false;
    if (reported.score && *reported.score != report->score) return false;
    if (reported.match_percent && *reported.match_percent != report->match_percent) return false;
    return true;
  }
};

struct MatrixReport {
  std::string text_locus;
  std::vector<MatrixRow> rows;

  bool has_reported() const {
    return std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.reported.any(); });
  }
  bool has_errors() const {
    return std::any_of(rows.begin(), rows.end(), [](const auto& r) { return !r.report; });
  }
};

/// Score-descending order, ties kept in input order. Failed rows go last.
inline void rank_rows(std::vector<MatrixRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const MatrixRow& a, const MatrixRow& b) {
    if (!a.report || !b.report) return a.report.has_value() && !b.report.has_value();
    return a.report->score > b.report->score;
  });
}

inline constexpr std::string_view kCsvHeader = "locus,score,mu_match,mu_mismatch,match_percent,r,m,n";

inline std::string csv_fields(const ScoreReport& rep, int precision) {
  std::string out = format_fixed(rep.score, precision);
  out += ',' + format_fixed(rep.mu_match, precision);
  out += ',' + format_fixed(rep.mu_mismatch, precision);
  out += ',' + format_fixed(rep.match_percent, precision);
  out += ',' + std::to_string(rep.counts.r);
  out += ',' + std::to_string(rep.counts.m);
  out += ',' + std::to_string(rep.counts.n);
  return out;
}

inline nlohmann::ordered_json to_json(const ScoreReport& rep, int precision) {
  nlohmann::ordered_json j;
  j["score"] = round_to(rep.score, precision);
  j["mu_match"] = round_to(rep.mu_match, precision);
  j["mu_mismatch"] = round_to(rep.mu_mismatch, precision);
  j["match_percent"] = round_to(rep.match_percent, precision);
  j["r"] = rep.counts.r;
  j["m"] = rep.counts.m;
  j["n"] = rep.counts.n;
  j["score_exact"] = rep.score.to_string();
  return j;
}

inline std::string render_score(const ScoreReport& rep, OutputFormat format, int precision,
                                std::string_view label = {}) {
  switch (format) {
    case OutputFormat::Json: return to_json(rep, precision).dump(2) + "\n";
    case OutputFormat::Csv:
      return std::string(kCsvHeader) + "\n" + std::string(label) + "," +
             csv_fields(rep, precision) + "\n";
    case OutputFormat::Text: break;
  }
  const auto& c = rep.counts;
  std::ostringstream out;
  if (!label.empty()) out << "pair          " << label << '\n';
  out << "matches       r=" << c.r << " (m=" << c.m << ", n=" << c.n << ")\n"
      << "mismatches    pattern=" << c.pattern_mismatches() << " text=" << c.text_mismatches()
      << '\n'
      << "mu_match      " << format_fixed(rep.mu_match, precision) << '\n'
      << "mu_mismatch   " << format_fixed(rep.mu_mismatch, precision) << '\n'
      << "score         " << format_fixed(rep.score, precision) << " (" << rep.score.to_string()
      << ")\n"
      << "match         " << format_fixed(rep.match_percent, precision) << "%\n";
  return out.str();
}

inline std::string render_matrix(const MatrixReport& report, OutputFormat format, int precision) {
  const bool reported = report.has_reported();
  switch (format) {
    case OutputFormat::Json: {
      nlohmann::ordered_json j;
      j["text"] = report.text_locus;
      auto rows = nlohmann::ordered_json::array();
      auto errors = nlohmann::ordered_json::array();
      for (const auto& row : report.rows) {
        if (!row.report) {
          errors.push_back({{"locus", row.locus}, {"error", row.error}});
          continue;
        }
        nlohmann::ordered_json r;
        r["locus"] = row.locus;
        r.update(to_json(*row.report, precision));
        if (row.reported.any()) {
          nlohmann::ordered_json rep;
          if (row.reported.score) rep["score"] = round_to(*row.reported.score, precision);
          if (row.reported.match_percent) {
            rep["match_percent"] = round_to(*row.reported.match_percent, precision);
          }
          rep["agrees"] = row.agrees();
          r["reported"] = rep;
        }
        rows.push_back(std::move(r));
      }
      j["rows"] = std::move(rows);
      if (!errors.empty()) j["errors"] = std::move(errors);
      return j.dump(2) + "\n";
    }
    case OutputFormat::Csv: {
      std::string out(kCsvHeader);
      if (reported) out += ",reported_score,reported_match_percent,agrees";
      out += '\n';
      for (const auto& row : report.rows) {
        if (!row.report) continue;
        out += row.locus + ',' + csv_fields(*row.report, precision);
        if (reported) {
          out += ',';
          if (row.reported.score) out += format_fixed(*row.reported.score, precision);
          out += ',';
          if (row.reported.match_percent) out += format_fixed(*row.reported.match_percent, precision);
          out += row.agrees() ? ",yes" : ",no";
        }
        out += '\n';
      }
      return out;
    }
    case OutputFormat::Text: break;
  }

  std::size_t locus_width = 5;
  for (const auto& row : report.rows) locus_width = std::max(locus_width, row.locus.size());
  const int w = precision + 6;

  std::ostringstream out;
  out << "text: " << report.text_locus << '\n';
  out << std::left << std::setw(static_cast<int>(locus_width)) << "locus" << std::right
      << std::setw(w) << "score" << std::setw(w) << "mu_match" << std::setw(w + 2) << "mu_mismatch"
      << std::setw(w + 2) << "match%" << std::setw(6) << "r" << std::setw(6) << "m"
      << std::setw(6) << "n";
  if (reported) out << std::setw(w + 4) << "rep_score" << std::setw(w + 4) << "rep_match%" << "  status";
  out << '\n';
  for (const auto& row : report.rows) {
    out << std::left << std::setw(static_cast<int>(locus_width)) << row.locus << std::right;
    if (!row.report) {
      out << "  error: " << row.error << '\n';
      continue;
    }
    const auto& rep = *row.report;
    out << std::setw(w) << format_fixed(rep.score, precision) << std::setw(w)
        << format_fixed(rep.mu_match, precision) << std::setw(w + 2)
        << format_fixed(rep.mu_mismatch, precision) << std::setw(w + 2)
        << format_fixed(rep.match_percent, precision) << std::setw(6) << rep.counts.r
        << std::setw(6) << rep.counts.m << std::setw(6) << rep.counts.n;
    if (reported) {
      out << std::setw(w + 4)
          << (row.reported.score ? format_fixed(*row.reported.score, precision) : "-")
          << std::setw(w + 4)
          << (row.reported.match_percent ? format_fixed(*row.reported.match_percent, precision)
                                         : "-")
          << "  " << (row.agrees() ? "agrees" : "DIFFERS");
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace logmatch
