#include "polyproj/bench.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include "polyproj/svg.hpp"

namespace polyproj::bench {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string to_csv(const BenchRow& row) {
  std::ostringstream os;
  os << row.method << ',' << row.m << ',' << row.n << ',' << row.seed << ',' << row.iterations << ','
     << format_double(row.wall_seconds) << ',' << format_double(row.violation) << ',' << row.termination;
  return os.str();
}

std::string to_csv(const SummaryRow& row) {
  std::ostringstream os;
  os << row.method << ',' << row.m << ',' << row.n << ",mean," << format_double(row.mean_iterations) << ','
     << format_double(row.mean_wall_seconds) << ',' << format_double(row.mean_violation) << ",SUMMARY";
  return os.str();
}

SolverConfig make_config(const RunOptions& options) {
  SolverConfig config;
  config.method = options.method;
  config.eps_stop = options.eps;
  config.accuracy = AccuracySchedule::constant(options.accuracy);
  config.max_iters = options.max_iters;
  config.max_wall_seconds = options.max_seconds;
  config.threads = options.threads;
  return config;
}

BenchRow run_instance(const Instance& instance, const RunOptions& options, Trace* trace) {
  const SolverConfig config = make_config(options);
  const auto sets = instance.sets();
  const auto start = std::chrono::steady_clock::now();
  Trace result = run(sets, instance.x0, config);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  BenchRow row;
  row.method = std::string(to_string(options.method));
  row.m = instance.m;
  row.n = instance.n;
  row.seed = instance.seed;
  row.iterations = result.iterations();
  row.wall_seconds = wall;
  row.violation = violation(sets, result.final_point(), options.eps);
  row.termination = std::string(to_string(result.termination));
  if (trace) *trace = std::move(result);
  return row;
}

void write_trace(std::ostream& os, const Trace& trace) {
  os << kTraceHeader << '\n';
  for (std::size_t k = 0; k < trace.per_iter.size(); ++k) {
    const auto& r = trace.per_iter[k];
    os << (k + 1) << ',' << format_double(r.violation) << ',' << format_double(r.max_set_distance) << ','
       << format_double(r.step_seconds) << '\n';
  }
}

Instance cmd_generate(std::size_t m, std::size_t n, std::uint64_t seed, const std::filesystem::path& out,
                      std::ostream& log) {
  Instance inst = generate(m, n, seed);
  save(inst, out);
  log << "wrote " << out.string() << ": m=" << m << " n=" << n << " seed=" << seed
      << " x0_violation=" << format_double(violation(inst.sets(), inst.x0, 0.0)) << '\n';
  return inst;
}

BenchRow cmd_run(const std::filesystem::path& instance_path, const RunOptions& options,
                 const std::optional<std::filesystem::path>& trace_path,
                 const std::optional<std::filesystem::path>& csv_path, std::ostream& out) {
  const Instance inst = load(instance_path);
  Trace trace;
  const BenchRow row = run_instance(inst, options, &trace);

  out << kCsvHeader << '\n' << to_csv(row) << '\n';
  if (csv_path) {
    std::error_code ec;
    const bool fresh = !std::filesystem::exists(*csv_path, ec) || std::filesystem::file_size(*csv_path, ec) == 0;
    std::ofstream csv(*csv_path, std::ios::app);
    if (!csv) throw Error(Errc::IoError, "cannot open '" + csv_path->string() + "' for appending");
    if (fresh) csv << kCsvHeader << '\n';
    csv << to_csv(row) << '\n';
  }
  if (trace_path) {
    std::ofstream tf(*trace_path, std::ios::trunc);
    if (!tf) throw Error(Errc::IoError, "cannot open '" + trace_path->string() + "' for writing");
    write_trace(tf, trace);
  }
  return row;
}

BenchResult cmd_bench(const BenchOptions& options, const std::filesystem::path& out_csv, std::ostream& log) {
  if (options.repeats == 0) throw Error(Errc::InvalidArgument, "bench needs at least one repeat");
  BenchResult result;
  for (const auto& [m, n] : options.sizes) {
    std::vector<Instance> instances;
    instances.reserve(options.repeats);
    for (std::size_t r = 0; r < options.repeats; ++r) instances.push_back(generate(m, n, options.base_seed + r));

    for (Method method : options.methods) {
      RunOptions run = options.run;
      run.method = method;
      SummaryRow summary{std::string(to_string(method)), m, n, 0.0, 0.0, 0.0};
      for (const auto& inst : instances) {
        BenchRow row = run_instance(inst, run);
        log << to_csv(row) << '\n';
        summary.mean_iterations += static_cast<double>(row.iterations);
        summary.mean_wall_seconds += row.wall_seconds;
        summary.mean_violation += row.violation;
        result.raw.push_back(std::move(row));
      }
      const auto count = static_cast<double>(options.repeats);
      summary.mean_iterations /= count;
      summary.mean_wall_seconds /= count;
      summary.mean_violation /= count;
      result.summary.push_back(summary);
    }
  }

  if (out_csv.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(out_csv.parent_path(), ec);
  }
  std::ofstream csv(out_csv, std::ios::trunc);
  if (!csv) throw Error(Errc::IoError, "cannot open '" + out_csv.string() + "' for writing");
  csv << kCsvHeader << '\n';
  for (const auto& row : result.raw) csv << to_csv(row) << '\n';
  for (const auto& row : result.summary) csv << to_csv(row) << '\n';
  if (!csv.flush()) throw Error(Errc::IoError, "failed writing '" + out_csv.string() + "'");
  return result;
}

Trace cmd_trace2d(const std::filesystem::path& instance_path, const RunOptions& options,
                  const std::filesystem::path& out_svg) {
  const Instance inst = load(instance_path);
  if (inst.n != 2) {
    throw Error(Errc::DimensionNot2D, "trace2d needs a 2-D instance, got n=" + std::to_string(inst.n));
  }
  Trace trace;
  run_instance(inst, options, &trace);
  std::ofstream out(out_svg, std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot open '" + out_svg.string() + "' for writing");
  out << render_trace_svg(inst, trace, to_string(options.method));
  if (!out.flush()) throw Error(Errc::IoError, "failed writing '" + out_svg.string() + "'");
  return trace;
}

std::optional<std::pair<std::size_t, std::size_t>> parse_size(std::string_view text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string_view::npos) return std::nullopt;
  std::size_t m = 0;
  std::size_t n = 0;
  const auto lhs = text.substr(0, x);
  const auto rhs = text.substr(x + 1);
  auto a = std::from_chars(lhs.data(), lhs.data() + lhs.size(), m);
  auto b = std::from_chars(rhs.data(), rhs.data() + rhs.size(), n);
  if (a.ec != std::errc() || a.ptr != lhs.data() + lhs.size() || b.ec != std::errc() ||
      b.ptr != rhs.data() + rhs.size() || m == 0 || n == 0) {
    return std::nullopt;
  }
  return std::pair{m, n};
}

}  // namespace polyproj::bench
