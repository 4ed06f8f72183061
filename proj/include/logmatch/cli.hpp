#pragma once

// Command-line front end. Kept in a header so tests can drive it in-process;
// tools/logmatch.cpp only forwards argv.

#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "logmatch/bench.hpp"
#include "logmatch/comparator.hpp"
#include "logmatch/http_transport.hpp"
#include "logmatch/logical_index.hpp"
#include "logmatch/report.hpp"
#include "logmatch/scoring.hpp"
#include "logmatch/sequence_io.hpp"

namespace logmatch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitVerify = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EngineDisagreement: return kExitVerify;
    case ErrorKind::InvalidSchedule: return kExitUsage;
    default: return kExitData;
  }
}

/// A sequence given inline, or a FASTA file ("-" for stdin) plus an optional
/// locus selecting one of its records.
struct SourceSpec {
  std::string inline_seq;
  std::string file;
  std::string locus;
  bool has_inline = false;
};

struct CommonOptions {
  std::string alphabet = "ATGC";
  std::string engine = "bitplanes";
  std::string on_invalid = "error";
  std::string format = "text";
  std::string region;
  int precision = 4;
  bool verify = false;
};

struct NamedSequence {
  std::string label;
  std::string description;
  EncodedSequence sequence;
  std::size_t dropped = 0;
};

namespace detail {

inline ValidationPolicy policy_of(const CommonOptions& o) {
  return o.on_invalid == "skip" ? ValidationPolicy::Skip : ValidationPolicy::Strict;
}

inline Engine engine_of(const CommonOptions& o) {
  auto e = parse_engine(o.engine);
  if (!e) throw UsageError("unknown engine '" + o.engine + "'");
  return *e;
}

inline OutputFormat format_of(const CommonOptions& o) {
  auto f = parse_format(o.format);
  if (!f) throw UsageError("unknown format '" + o.format + "'");
  return *f;
}

inline std::optional<Region> region_of(const CommonOptions& o) {
  if (o.region.empty()) return std::nullopt;
  return parse_region(o.region);
}

inline std::vector<SequenceRecord> read_fasta_file(const std::string& path) {
  if (path == "-") return parse_fasta(std::cin);
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  return parse_fasta(in);
}

inline NamedSequence encode_record(const SequenceRecord& record, const std::optional<Region>& region,
                                   const AlphabetPtr& alphabet, ValidationPolicy policy) {
  std::string raw = region ? extract_region(record, *region) : record.residues;
  auto enc = encode(raw, alphabet, policy);
  std::string label = record.locus;
  if (region) label += ":" + std::to_string(region->start) + "-" + std::to_string(region->end);
  return {std::move(label), record.description, std::move(enc.sequence), enc.dropped};
}

inline SequenceRecord select_record(const SourceSpec& spec, const std::string& role) {
  if (spec.has_inline) {
    if (!spec.file.empty()) throw UsageError("give either an inline " + role + " or a file, not both");
    return {role, "", spec.inline_seq};
  }
  if (spec.file.empty()) throw UsageError("no " + role + " source given");
  auto records = read_fasta_file(spec.file);
  if (spec.locus.empty()) {
    if (records.size() != 1) {
      throw UsageError(spec.file + " holds " + std::to_string(records.size()) + " records; pick one with --" +
                       role + "-locus");
    }
    return std::move(records.front());
  }
  for (auto& rec : records) {
    if (rec.locus == spec.locus) return std::move(rec);
  }
  throw Error(ErrorKind::RecordNotFound, "locus '" + spec.locus + "' not in " + spec.file);
}

inline void warn_dropped(const NamedSequence& seq, std::ostream& err) {
  if (seq.dropped) {
    err << "warning: " << seq.label << ": skipped " << seq.dropped << " foreign character(s)\n";
  }
}

}  // namespace detail

inline int cmd_compare(const SourceSpec& text_src, const SourceSpec& pattern_src,
                       const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  const auto alphabet = build_alphabet(opts.alphabet);
  const auto policy = detail::policy_of(opts);
  const auto engine = detail::engine_of(opts);
  const auto format = detail::format_of(opts);
  const auto region = detail::region_of(opts);

  const auto text =
      detail::encode_record(detail::select_record(text_src, "text"), region, alphabet, policy);
  const auto pattern =
      detail::encode_record(detail::select_record(pattern_src, "pattern"), region, alphabet, policy);
  detail::warn_dropped(text, err);
  detail::warn_dropped(pattern, err);

  const auto counts = opts.verify ? count_verified(text.sequence, pattern.sequence)
                                  : count(engine, text.sequence, pattern.sequence);
  out << render_score(score(counts), format, opts.precision, text.label + " vs " + pattern.label);
  return kExitOk;
}

struct MatrixOptions {
  bool rank = false;
  bool keep_going = false;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// One row per pattern record. Rows are computed concurrently but always
/// emitted in input order (or ranked order under --rank).
inline MatrixReport build_matrix(const SourceSpec& text_src, const std::string& patterns_file,
                                 const CommonOptions& opts, const MatrixOptions& mopts,
                                 std::ostream& err) {
  const auto alphabet = build_alphabet(opts.alphabet);
  const auto policy = detail::policy_of(opts);
  const auto engine = detail::engine_of(opts);
  const auto region = detail::region_of(opts);

  const auto text =
      detail::encode_record(detail::select_record(text_src, "text"), region, alphabet, policy);
  detail::warn_dropped(text, err);
  const auto text_index = build_index(text.sequence);
  const auto records = detail::read_fasta_file(patterns_file);

  MatrixReport report;
  report.text_locus = text.label;
  report.rows.resize(records.size());
  std::vector<std::exception_ptr> failures(records.size());
  std::vector<std::size_t> dropped(records.size(), 0);

  auto compute = [&](std::size_t i) {
    auto& row = report.rows[i];
    row.locus = records[i].locus;
    row.reported = parse_reported(records[i].description);
    try {
      const auto pattern = detail::encode_record(records[i], region, alphabet, policy);
      dropped[i] = pattern.dropped;
      ComparisonCounts counts;
      if (opts.verify) {
        counts = count_verified(text.sequence, pattern.sequence);
      } else {
        const auto pattern_index =
            engine == Engine::Naive ? std::optional<PositionIndex>{} : build_index(pattern.sequence);
        counts = engine == Engine::Naive
                     ? count_naive(text.sequence, pattern.sequence)
                     : count(engine, text.sequence, text_index, pattern.sequence, *pattern_index);
      }
      row.report = score(counts);
    } catch (const Error& e) {
      if (mopts.keep_going && e.kind() != ErrorKind::EngineDisagreement) {
        row.error = e.what();
      } else {
        failures[i] = std::current_exception();
      }
    }
  };

  unsigned workers = mopts.threads ? mopts.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, records.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < records.size(); ++i) compute(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < records.size(); i = next++) compute(i);
      });
    }
  }

  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (dropped[i]) {
      err << "warning: " << records[i].locus << ": skipped " << dropped[i]
          << " foreign character(s)\n";
    }
  }
  if (mopts.rank) rank_rows(report.rows);
  return report;
}

inline int cmd_matrix(const SourceSpec& text_src, const std::string& patterns_file,
                      const CommonOptions& opts, const MatrixOptions& mopts, std::ostream& out,
                      std::ostream& err) {
  const auto format = detail::format_of(opts);
  const auto report = build_matrix(text_src, patterns_file, opts, mopts, err);
  out << render_matrix(report, format, opts.precision);
  if (report.has_errors()) {
    for (const auto& row : report.rows) {
      if (!row.report) err << "error: " << row.locus << ": " << row.error << '\n';
    }
    return kExitData;
  }
  return kExitOk;
}

inline int cmd_index(const SourceSpec& src, const CommonOptions& opts, std::ostream& out,
                     std::ostream& err) {
  const auto alphabet = build_alphabet(opts.alphabet);
  const auto seq = detail::encode_record(detail::select_record(src, "seq"), detail::region_of(opts),
                                         alphabet, detail::policy_of(opts));
  detail::warn_dropped(seq, err);
  const auto index = build_index(seq.sequence);
  out << seq.label << " (length " << index.length() << ")\n"
      << dump_table(index) << '\n'
      << format_postings(index);
  return kExitOk;
}

inline int cmd_bench(const BenchConfig& config, OutputFormat format, std::ostream& out) {
  const auto results = run_bench(config);
  out << render_bench(results, format);
  return kExitOk;
}

inline int cmd_fetch(const std::string& locus, const FetchOptions& fetch, const CommonOptions& opts,
                     Transport& transport, std::ostream& out) {
  auto record = fetch_record(locus, fetch, transport);
  if (const auto region = detail::region_of(opts)) {
    record.residues = extract_region(record, *region);
    record.description += " region=" + opts.region;
  }
  out << write_fasta({record});
  return kExitOk;
}

namespace detail {

inline void add_common(CLI::App& cmd, CommonOptions& o, bool engine_flags, bool output_flags) {
  cmd.add_option("--alphabet", o.alphabet, "Alphabet symbols in code order")->capture_default_str();
  cmd.add_option("--region", o.region, "1-based inclusive region START-END");
  cmd.add_option("--on-invalid", o.on_invalid, "Foreign characters: error or skip")
      ->check(CLI::IsMember({"error", "skip"}))
      ->capture_default_str();
  if (engine_flags) {
    cmd.add_option("--engine", o.engine, "Counting engine")
        ->check(CLI::IsMember({"postings", "bitplanes", "naive"}))
        ->capture_default_str();
    cmd.add_flag("--verify", o.verify, "Run all engines and fail on disagreement");
  }
  if (output_flags) {
    cmd.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    cmd.add_option("--precision", o.precision, "Decimal places")
        ->check(CLI::Range(0, 17))
        ->capture_default_str();
  }
}

inline void add_source(CLI::App& cmd, SourceSpec& s, const std::string& role,
                       const std::string& seq_flag, const std::string& file_flag) {
  auto* seq = cmd.add_option(seq_flag, s.inline_seq, "Inline " + role + " sequence");
  seq->each([&s](const std::string&) { s.has_inline = true; });
  cmd.add_option(file_flag, s.file, "FASTA file with the " + role + " ('-' for stdin)");
  cmd.add_option("--" + role + "-locus", s.locus, "Record to use from the " + role + " file");
}

}  // namespace detail

/// Parses argv and runs one subcommand. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
               Transport* transport = nullptr) {
  CLI::App app{"Alignment-free sequence comparison by logical match"};
  app.require_subcommand(1);

  CommonOptions common;
  SourceSpec text_src, pattern_src, seq_src;
  std::string patterns_file;
  MatrixOptions mopts;

  auto* compare = app.add_subcommand("compare", "Score one pattern against one text");
  detail::add_source(*compare, text_src, "text", "--text-seq", "--text");
  detail::add_source(*compare, pattern_src, "pattern", "--pattern-seq", "--pattern");
  detail::add_common(*compare, common, true, true);

  auto* matrix = app.add_subcommand("matrix", "Score every pattern in a FASTA file against a text");
  detail::add_source(*matrix, text_src, "text", "--text-seq", "--text");
  matrix->add_option("--patterns", patterns_file, "FASTA file of patterns")->required();
  matrix->add_flag("--rank", mopts.rank, "Sort rows by descending score");
  matrix->add_flag("--keep-going", mopts.keep_going, "Report per-row data errors and continue");
  matrix->add_option("--threads", mopts.threads, "Worker threads (0 = all cores)");
  detail::add_common(*matrix, common, true, true);

  auto* index = app.add_subcommand("index", "Print the positional index of one sequence");
  detail::add_source(*index, seq_src, "seq", "--seq", "--input");
  detail::add_common(*index, common, false, false);

  BenchConfig bench_config;
  std::vector<std::string> engine_names{"bitplanes"};
  std::string bench_format = "csv";
  auto* bench = app.add_subcommand("bench", "Time index build and counting on synthetic data");
  bench->add_option("--engines", engine_names, "Engines to time")
      ->delimiter(',')
      ->check(CLI::IsMember({"postings", "bitplanes", "naive"}))
      ->capture_default_str();
  bench->add_option("--sizes", bench_config.sizes, "Strictly increasing sequence lengths")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--repetitions", bench_config.repetitions, "Timed repetitions per size (>= 3)")
      ->capture_default_str();
  bench->add_option("--seed", bench_config.seed, "Data generator seed")->capture_default_str();
  bench->add_option("--rate", bench_config.substitution_rate, "Substitution rate of the pattern")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  bench->add_option("--format", bench_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  std::string locus;
  FetchOptions fetch_opts;
  auto* fetch = app.add_subcommand("fetch", "Download a FASTA record by locus");
  fetch->add_option("--locus", locus, "Accession to fetch")->required();
  fetch->add_flag("--allow-network", fetch_opts.allow_network, "Permit network access");
  fetch->add_option("--endpoint", fetch_opts.endpoint,
                    std::string("Efetch endpoint (env ") + kEndpointEnv + ")")
      ->capture_default_str();
  fetch->add_option("--region", common.region, "1-based inclusive region START-END");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*compare) return cmd_compare(text_src, pattern_src, common, out, err);
    if (*matrix) return cmd_matrix(text_src, patterns_file, common, mopts, out, err);
    if (*index) return cmd_index(seq_src, common, out, err);
    if (*bench) {
      bench_config.engines.clear();
      for (const auto& name : engine_names) bench_config.engines.push_back(*parse_engine(name));
      return cmd_bench(bench_config, *parse_format(bench_format), out);
    }
    if (*fetch) {
      HttpTransport http;
      return cmd_fetch(locus, fetch_opts, common, transport ? *transport : http, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return kExitUsage;
}

}  // namespace logmatch::cli
