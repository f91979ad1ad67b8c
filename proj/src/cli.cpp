#include "polyproj/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <optional>

#include "polyproj/bench.hpp"

namespace polyproj::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Method method_or_usage(const std::string& name) {
  if (auto m = parse_method(name)) return *m;
  throw UsageError("unknown method '" + name + "'");
}

void add_run_flags(CLI::App* cmd, bench::RunOptions& run, std::string& method, bool with_method) {
  if (with_method) cmd->add_option("--method", method, "3pm, 3pm-par, a3pm, a3pm-par, cyclic, cimmino, cimmino-par, sccrm, crm");
  cmd->add_option("--eps", run.eps, "epsilon of the approximate-solution stopping test")->check(CLI::NonNegativeNumber);
  cmd->add_option("--accuracy", run.accuracy, "constant accuracy in [0,1) for a3pm (0 = exact projections)");
  cmd->add_option("--max-iters", run.max_iters, "iteration cap");
  cmd->add_option("--max-seconds", run.max_seconds, "wall-time cap in seconds")->check(CLI::PositiveNumber);
}

}  // namespace

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convex feasibility solvers for ellipsoid intersections"};
  app.require_subcommand(1);

  std::size_t m = 0, n = 0;
  std::uint64_t seed = 1;
  std::string out_path, instance_path, method = "3pm", trace_path, csv_path;
  std::vector<std::string> sizes, methods;
  std::size_t repeats = 1;
  bench::RunOptions run;

  auto* gen = app.add_subcommand("generate", "write a random ellipsoid instance");
  gen->add_option("--m", m, "number of ellipsoids")->required()->check(CLI::PositiveNumber);
  gen->add_option("--n", n, "dimension")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--out", out_path, "instance file")->required();

  auto* runc = app.add_subcommand("run", "run one method on an instance file");
  runc->add_option("instance,--instance", instance_path, "instance file")->required();
  add_run_flags(runc, run, method, true);
  runc->add_option("--trace", trace_path, "per-iteration trace file");
  runc->add_option("--out,--csv", csv_path, "CSV file the result row is appended to");

  auto* benchc = app.add_subcommand("bench", "run methods over generated instances");
  benchc->add_option("--sizes", sizes, "problem sizes as MxN, e.g. 3x10 10x50")->required();
  benchc->add_option("--methods", methods, "methods to compare")->required();
  benchc->add_option("--repeats", repeats, "seeds per size")->check(CLI::PositiveNumber);
  benchc->add_option("--seed", seed, "first seed");
  add_run_flags(benchc, run, method, false);
  benchc->add_option("--out", out_path, "CSV output")->required();

  auto* tr = app.add_subcommand("trace2d", "render a 2-D run as SVG");
  tr->add_option("instance,--instance", instance_path, "2-D instance file")->required();
  add_run_flags(tr, run, method, true);
  tr->add_option("--out", out_path, "SVG output")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*gen) {
      bench::cmd_generate(m, n, seed, out_path, out);
    } else if (*runc) {
      run.method = method_or_usage(method);
      std::optional<std::filesystem::path> trace, csv;
      if (!trace_path.empty()) trace = trace_path;
      if (!csv_path.empty()) csv = csv_path;
      bench::cmd_run(instance_path, run, trace, csv, out);
    } else if (*benchc) {
      bench::BenchOptions opts;
      for (const auto& s : sizes) {
        auto parsed = bench::parse_size(s);
        if (!parsed) throw UsageError("bad size '" + s + "', expected MxN");
        opts.sizes.push_back(*parsed);
      }
      for (const auto& name : methods) opts.methods.push_back(method_or_usage(name));
      opts.repeats = repeats;
      opts.base_seed = seed;
      opts.run = run;
      bench::cmd_bench(opts, out_path, out);
    } else if (*tr) {
      run.method = method_or_usage(method);
      const Trace trace = bench::cmd_trace2d(instance_path, run, out_path);
      out << "wrote " << out_path << ": " << trace.iterations() << " iterations, " << to_string(trace.termination)
          << '\n';
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == Errc::InvalidArgument || e.code() == Errc::UnknownMethod ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace polyproj::cli
