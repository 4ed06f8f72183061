#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "logmatch/comparator.hpp"
#include "logmatch/logical_index.hpp"
#include "logmatch/report.hpp"
#include "logmatch/sequence_io.hpp"

namespace logmatch {

inline constexpr std::size_t kMinRepetitions = 3;

// Each timed repetition repeats the work until roughly this many positions
// have been processed, keeping small sizes above clock resolution.
inline constexpr std::size_t kPositionsPerSample = std::size_t{1} << 18;

struct BenchTiming {
  double build_ns = 0;  // median Phase-I time, text and pattern together
  double total_ns = 0;  // median build + count time
  double positions_per_second = 0;
  std::size_t matches = 0;
};

struct BenchResult {
  Engine engine = Engine::Bitplanes;
  std::vector<std::pair<std::size_t, std::size_t>> sizes;  // (n, m)
  std::vector<BenchTiming> timings;
  std::size_t repetitions = kMinRepetitions;
};

struct ScalingStep {
  std::size_t from_n = 0;
  std::size_t to_n = 0;
  double size_ratio = 0;
  double time_ratio = 0;
  bool linear = false;
};

struct BenchConfig {
  std::vector<Engine> engines{Engine::Bitplanes};
  std::vector<std::size_t> sizes{10'000, 20'000, 40'000};
  std::size_t repetitions = 5;
  std::uint64_t seed = 1;
  double substitution_rate = 0.25;
};

inline void validate(const BenchConfig& config) {
  if (config.repetitions < kMinRepetitions) {
    throw Error(ErrorKind::InvalidSchedule, "repetitions must be at least " +
                                                std::to_string(kMinRepetitions));
  }
  if (config.sizes.empty()) throw Error(ErrorKind::InvalidSchedule, "size schedule is empty");
  if (config.engines.empty()) throw Error(ErrorKind::InvalidSchedule, "no engines selected");
  for (std::size_t i = 0; i < config.sizes.size(); ++i) {
    if (config.sizes[i] == 0 || (i > 0 && config.sizes[i] <= config.sizes[i - 1])) {
      throw Error(ErrorKind::InvalidSchedule, "sizes must be positive and strictly increasing");
    }
  }
}

inline double median(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  const auto mid = samples.size() / 2;
  return samples.size() % 2 ? samples[mid] : (samples[mid - 1] + samples[mid]) / 2;
}

template <class Work>
double median_ns_per_call(std::size_t repetitions, std::size_t inner, Work&& work) {
  using Clock = std::chrono::steady_clock;
  std::vector<double> samples;
  samples.reserve(repetitions);
  work();  // warm-up
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    const auto start = Clock::now();
    for (std::size_t i = 0; i < inner; ++i) work();
    const std::chrono::duration<double, std::nano> elapsed = Clock::now() - start;
    samples.push_back(elapsed.count() / static_cast<double>(inner));
  }
  return median(std::move(samples));
}

inline void do_not_optimize(std::size_t value) {
  asm volatile("" : : "r"(value) : "memory");
}

inline std::size_t inner_iterations(std::size_t positions) {
  return std::max<std::size_t>(1, kPositionsPerSample / std::max<std::size_t>(positions, 1));
}

/// Median time to build the index of one sequence.
inline double measure_build_ns(const EncodedSequence& seq, std::size_t repetitions) {
  std::size_t sink = 0;
  const double ns = median_ns_per_call(repetitions, inner_iterations(seq.length()), [&] {
    const auto index = build_index(seq);
    sink += index.postings(0).size();
  });
  do_not_optimize(sink);
  return ns;
}

/// Input data depends only on (seed, size), so every engine sees the same pairs.
inline std::vector<BenchResult> run_bench(const BenchConfig& config) {
  validate(config);
  const auto alphabet = dna_alphabet();
  std::vector<BenchResult> results;
  for (Engine engine : config.engines) {
    BenchResult result;
    result.engine = engine;
    result.repetitions = config.repetitions;
    for (std::size_t n : config.sizes) {
      const auto pair = generate_mutated(config.seed + n, alphabet, n, config.substitution_rate);
      const auto& text = pair.original;
      const auto& pattern = pair.mutant;
      BenchTiming timing;
      timing.build_ns = measure_build_ns(text, config.repetitions) +
                        measure_build_ns(pattern, config.repetitions);
      std::size_t r = 0;
      timing.total_ns =
          median_ns_per_call(config.repetitions, inner_iterations(2 * n), [&] {
            r = count(engine, text, pattern).r;
          });
      timing.matches = r;
      timing.positions_per_second = static_cast<double>(2 * n) / (timing.total_ns * 1e-9);
      result.sizes.emplace_back(n, n);
      result.timings.push_back(timing);
    }
    results.push_back(std::move(result));
  }
  return results;
}

/// A step counts as linear when time grows by a factor within
/// [0.75, 1.5] x the size growth, i.e. [1.5, 3.0] for a doubling.
inline bool within_linear_band(double size_ratio, double time_ratio) {
  return time_ratio >= 0.75 * size_ratio && time_ratio <= 1.5 * size_ratio;
}

inline std::vector<ScalingStep> scaling_verdict(const std::vector<std::size_t>& sizes,
                                                const std::vector<double>& times) {
  std::vector<ScalingStep> steps;
  for (std::size_t i = 1; i < sizes.size() && i < times.size(); ++i) {
    ScalingStep step;
    step.from_n = sizes[i - 1];
    step.to_n = sizes[i];
    step.size_ratio = static_cast<double>(sizes[i]) / static_cast<double>(sizes[i - 1]);
    step.time_ratio = times[i] / times[i - 1];
    step.linear = within_linear_band(step.size_ratio, step.time_ratio);
    steps.push_back(step);
  }
  return steps;
}

inline std::vector<ScalingStep> build_scaling(const BenchResult& result) {
  std::vector<std::size_t> sizes;
  std::vector<double> times;
  for (std::size_t i = 0; i < result.sizes.size(); ++i) {
    sizes.push_back(result.sizes[i].first);
    times.push_back(result.timings[i].build_ns);
  }
  return scaling_verdict(sizes, times);
}

inline std::string render_bench(const std::vector<BenchResult>& results, OutputFormat format) {
  std::ostringstream out;
  if (format == OutputFormat::Json) {
    auto j = nlohmann::ordered_json::array();
    for (const auto& result : results) {
      nlohmann::ordered_json e;
      e["engine"] = std::string(to_string(result.engine));
      e["repetitions"] = result.repetitions;
      auto rows = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < result.sizes.size(); ++i) {
        const auto& t = result.timings[i];
        rows.push_back({{"n", result.sizes[i].first},
                        {"m", result.sizes[i].second},
                        {"build_median_ns", t.build_ns},
                        {"total_median_ns", t.total_ns},
                        {"positions_per_second", t.positions_per_second},
                        {"matches", t.matches}});
      }
      e["timings"] = std::move(rows);
      auto steps = nlohmann::ordered_json::array();
      for (const auto& s : build_scaling(result)) {
        steps.push_back({{"from_n", s.from_n},
                         {"to_n", s.to_n},
                         {"size_ratio", s.size_ratio},
                         {"time_ratio", s.time_ratio},
                         {"linear", s.linear}});
      }
      e["build_scaling"] = std::move(steps);
      j.push_back(std::move(e));
    }
    out << j.dump(2) << '\n';
    return out.str();
  }

  out << "engine,n,m,repetitions,build_median_ns,total_median_ns,positions_per_second,matches\n";
  for (const auto& result : results) {
    for (std::size_t i = 0; i < result.sizes.size(); ++i) {
      const auto& t = result.timings[i];
      out << to_string(result.engine) << ',' << result.sizes[i].first << ','
          << result.sizes[i].second << ',' << result.repetitions << ','
          << format_fixed(t.build_ns, 1) << ',' << format_fixed(t.total_ns, 1) << ','
          << format_fixed(t.positions_per_second, 0) << ',' << t.matches << '\n';
    }
  }
  for (const auto& result : results) {
    for (const auto& s : build_scaling(result)) {
      out << "# " << to_string(result.engine) << " build " << s.from_n << "->" << s.to_n
          << " size x" << format_fixed(s.size_ratio, 2) << " time x"
          << format_fixed(s.time_ratio, 2) << ' ' << (s.linear ? "linear" : "NOT-LINEAR") << '\n';
    }
  }
  return out.str();
}

}  // namespace logmatch
