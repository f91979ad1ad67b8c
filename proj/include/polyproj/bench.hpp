#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polyproj/instance.hpp"
#include "polyproj/methods.hpp"

namespace polyproj::bench {

inline constexpr std::string_view kCsvHeader = "method,m,n,seed,iterations,wall_seconds,violation,termination";
inline constexpr std::string_view kTraceHeader = "k,violation,max_set_distance,step_seconds";

/// One solver run. `iterations` counts completed steps (the starting point is
/// iteration 0 and not counted).
struct BenchRow {
  std::string method;
  std::size_t m = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  double wall_seconds = 0.0;
  double violation = 0.0;
  std::string termination;
};

/// Per-(size, method) means over the repeat seeds. Written with the same
/// header as raw rows: seed is the literal "mean" and termination "SUMMARY".
struct SummaryRow {
  std::string method;
  std::size_t m = 0;
  std::size_t n = 0;
  double mean_iterations = 0.0;
  double mean_wall_seconds = 0.0;
  double mean_violation = 0.0;
};

std::string to_csv(const BenchRow& row);
std::string to_csv(const SummaryRow& row);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

struct RunOptions {
  Method method = Method::TPM;
  double eps = 1e-8;
  double accuracy = 0.5;
  std::size_t max_iters = 100000;
  double max_seconds = 600.0;
  unsigned threads = 0;
};

SolverConfig make_config(const RunOptions& options);

/// Runs one method on an instance and summarizes the run as a CSV row.
/// `trace` receives the full trace when non-null.
BenchRow run_instance(const Instance& instance, const RunOptions& options, Trace* trace = nullptr);

/// One line per completed step: k, violation, max_set_distance, step_seconds.
void write_trace(std::ostream& os, const Trace& trace);

/// Writes the instance file and prints a one-line summary to `log`.
Instance cmd_generate(std::size_t m, std::size_t n, std::uint64_t seed, const std::filesystem::path& out,
                      std::ostream& log);

/// Loads the instance, runs it, writes the header and row to `out`, appends
/// the row to `csv_path` (header first when the file is new or empty), and
/// writes the per-iteration trace when `trace_path` is set.
BenchRow cmd_run(const std::filesystem::path& instance_path, const RunOptions& options,
                 const std::optional<std::filesystem::path>& trace_path,
                 const std::optional<std::filesystem::path>& csv_path, std::ostream& out);

struct BenchOptions {
  std::vector<std::pair<std::size_t, std::size_t>> sizes;  // (m, n)
  std::vector<Method> methods;
  std::size_t repeats = 1;
  std::uint64_t base_seed = 1;
  RunOptions run;  // method field is ignored
};

struct BenchResult {
  std::vector<BenchRow> raw;
  std::vector<SummaryRow> summary;
};

/// Every (size, method, seed) cell with seed = base_seed + r. Raw rows are
/// ordered by size, then method, then seed, in the order given; summary rows
/// follow in the same (size, method) order. Writes the CSV to `out_csv`.
BenchResult cmd_bench(const BenchOptions& options, const std::filesystem::path& out_csv, std::ostream& log);

/// Renders a 2-D instance and the method's iterate path as SVG. Throws
/// DimensionNot2D for n != 2.
Trace cmd_trace2d(const std::filesystem::path& instance_path, const RunOptions& options,
                  const std::filesystem::path& out_svg);

/// Parses "3x10" into (m, n).
std::optional<std::pair<std::size_t, std::size_t>> parse_size(std::string_view text);

}  // namespace polyproj::bench
