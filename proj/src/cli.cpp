#include "shorent/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "shorent/experiments.hpp"
#include "shorent/groverian.hpp"
#include "shorent/rng.hpp"
#include "shorent/shor.hpp"
#include "shorent/state_io.hpp"

namespace shorent::cli {

namespace {

/// Input error surfaced to the user with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint64_t seed = kDefaultSeed;
  int restarts = 0;

  // factor
  std::uint64_t n = 0;
  std::optional<std::uint64_t> y;
  int max_attempts = 10;
  std::string log_path = "factor_attempts.json";

  // trace
  std::vector<std::uint64_t> shor;
  std::optional<std::uint64_t> product_seed;
  std::optional<std::uint64_t> random_seed;
  std::vector<std::uint64_t> periodic;
  std::string file;
  bool fig2 = false;
  bool fig3 = false;
  int qubits = 9;
  std::uint64_t shift = 0;
  bool every_gate = false;
  bool timing = false;

  // sweep / periodic-study
  std::uint64_t n_max = 100;
  bool long_run = false;
  unsigned threads = 0;
  std::vector<int> qubit_list{6, 8, 10};
  std::vector<std::uint64_t> period_list{1, 2, 3, 4, 5, 6, 7, 8};

  std::string out_path;
};

/// Writes to `path`, or to `fallback` when the path is empty.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw UsageError("cannot open " + path + " for writing");
  write(file);
}

int cmd_factor(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n < 4 || is_prime(cfg.n)) {
    err << cfg.n << (cfg.n < 4 ? " is not a composite number" : " is prime") << "\n";
    return kUsageError;
  }
  FactorOptions options;
  options.y = cfg.y;
  options.max_attempts = cfg.max_attempts;
  FactorReport report;
  try {
    report = factor(cfg.n, options, cfg.seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  emit(cfg.log_path, out, [&](std::ostream& s) { s << attempt_log_json(report); });
  for (const AttemptRecord& a : report.attempts) {
    err << "attempt y=" << a.y << " status=" << to_string(a.status);
    if (a.c) err << " c=" << *a.c;
    err << "\n";
  }
  if (!report.success) {
    err << "no factor of " << cfg.n << " found in " << report.attempts.size() << " attempts\n";
    return kAlgorithmFailure;
  }
  out << cfg.n << " = " << report.factors[0] << " × " << report.factors[1] << "\n";
  return kSuccess;
}

int cmd_trace(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  TraceOptions options;
  if (cfg.restarts > 0) options.groverian.restarts = cfg.restarts;
  options.every_gate = cfg.every_gate;

  const int sources = !cfg.shor.empty() + cfg.product_seed.has_value() + cfg.random_seed.has_value() +
                      !cfg.periodic.empty() + !cfg.file.empty() + cfg.fig2 + cfg.fig3;
  if (sources != 1) throw UsageError("trace needs exactly one of --shor, --product, --random, --periodic, --file, --fig2, --fig3");

  std::vector<TraceRecord> records;
  try {
    if (!cfg.shor.empty()) {
      records = run_fig3({{cfg.shor[0], cfg.shor[1]}}, cfg.shift, options, cfg.seed);
    } else if (cfg.fig3) {
      records = run_fig3({{91, 41}, {33, 23}, {33, 4}}, cfg.shift, options, cfg.seed);
    } else if (cfg.fig2) {
      records = run_fig2(cfg.qubits, 3, 1, options, cfg.seed);
    } else if (cfg.product_seed) {
      const auto input = make_random_product_state(cfg.qubits, *cfg.product_seed);
      records = trace_qft("product", input.state, options, cfg.seed);
    } else if (cfg.random_seed) {
      records = trace_qft("random", make_random_isotropic_state(cfg.qubits, *cfg.random_seed), options, cfg.seed);
    } else if (!cfg.periodic.empty()) {
      const PeriodicStateSpec spec{static_cast<int>(cfg.periodic[0]), cfg.periodic[1], cfg.periodic[2]};
      records = trace_qft("periodic", make_periodic_state(spec), options, cfg.seed);
    } else {
      StateVector state = read_state_file(cfg.file);
      if (state.norm_error() > 1e-6) throw UsageError("state in " + cfg.file + " is not normalized");
      records = trace_qft("file", state, options, cfg.seed);
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  emit(cfg.out_path, out, [&](std::ostream& s) { write_trace_csv(s, records, cfg.seed, cfg.timing); });
  err << "traced " << records.size() << " states\n";
  return kSuccess;
}

int cmd_groverian(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  StateVector state = [&] {
    try {
      return read_state_file(cfg.file);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }();
  if (state.norm_error() > 1e-6) {
    throw UsageError("state in " + cfg.file + " is not normalized (|norm^2 - 1| = " +
                     std::to_string(state.norm_error()) + ")");
  }
  GroverianOptions options;
  if (cfg.restarts > 0) options.restarts = cfg.restarts;
  const GroverianResult result = maximize(state, options, cfg.seed);
  nlohmann::json doc;
  doc["p_max"] = result.p_max;
  doc["g"] = result.g();
  doc["theta"] = result.ansatz.theta;
  doc["gamma"] = result.ansatz.gamma;
  doc["restarts"] = result.restarts;
  doc["converged"] = result.converged;
  doc["spread"] = result.spread;
  out << doc.dump(2) << "\n";
  return kSuccess;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  SweepOptions options;
  if (cfg.restarts > 0) options.groverian.restarts = cfg.restarts;
  options.threads = cfg.threads;
  const std::uint64_t n_max = cfg.long_run ? 200 : cfg.n_max;
  if (n_max < 3) throw UsageError("--n-max must be at least 3");
  if (n_max > 200 && !cfg.long_run) err << "warning: N_max > 200 is beyond desk scale\n";
  const auto records = run_fig4(n_max, options, cfg.seed);
  emit(cfg.out_path.empty() ? "fig4_sweep.csv" : cfg.out_path, out,
       [&](std::ostream& s) { write_sweep_csv(s, records, cfg.seed); });
  const SweepSummary s = summarize(records);
  out << "records: " << records.size() << "\n"
      << "gcd_shortcut: " << s.gcd_shortcut << "\n"
      << "power_of_two_order: " << s.power_of_two_order << "\n"
      << "entangled: " << s.entangled << "\n"
      << "max_G: " << s.max_g << "\n"
      << "bound_violations: " << s.bound_violations << "\n"
      << "classification_mismatches: " << s.classification_mismatches << "\n";
  return kSuccess;
}

int cmd_periodic_study(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  TraceOptions options;
  if (cfg.restarts > 0) options.groverian.restarts = cfg.restarts;
  std::vector<PeriodicStudyRecord> records;
  try {
    records = run_periodic_study(cfg.qubit_list, cfg.period_list, options, cfg.seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  emit(cfg.out_path.empty() ? "periodic_study.csv" : cfg.out_path, out,
       [&](std::ostream& s) { write_periodic_csv(s, records, cfg.seed); });
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"State-vector simulation of Shor's algorithm with Groverian entanglement tracing"};
  app.require_subcommand(1);
  app.add_option("--seed", cfg.seed, "Master RNG seed")->capture_default_str();

  auto* factor_cmd = app.add_subcommand("factor", "Factor N with the simulated Shor pipeline");
  factor_cmd->add_option("--n", cfg.n, "Composite integer to factor")->required();
  factor_cmd->add_option("--y", cfg.y, "Fixed base y (default: random per attempt)");
  factor_cmd->add_option("--max-attempts", cfg.max_attempts, "Attempt budget")->capture_default_str();
  factor_cmd->add_option("--log", cfg.log_path, "Attempt-log JSON path")->capture_default_str();
  factor_cmd->add_option("--seed", cfg.seed, "Master RNG seed");

  auto* trace_cmd = app.add_subcommand("trace", "Groverian measure along the QFT gate sequence");
  trace_cmd->add_option("--shor", cfg.shor, "N y: pre-processed Shor state")->expected(2);
  trace_cmd->add_option("--product", cfg.product_seed, "Random product state from this seed");
  trace_cmd->add_option("--random", cfg.random_seed, "Isotropic random state from this seed");
  trace_cmd->add_option("--periodic", cfg.periodic, "L r l: periodic state")->expected(3);
  trace_cmd->add_option("--file", cfg.file, "State JSON file");
  trace_cmd->add_flag("--fig2", cfg.fig2, "Three random product states and one random state");
  trace_cmd->add_flag("--fig3", cfg.fig3, "Shor states for (91, 41), (33, 23), (33, 4)");
  trace_cmd->add_option("--qubits", cfg.qubits, "Qubit count for product/random/fig2 inputs")->capture_default_str();
  trace_cmd->add_option("--shift", cfg.shift, "Auxiliary measurement shift l for Shor inputs")->capture_default_str();
  trace_cmd->add_flag("--every-gate", cfg.every_gate, "Evaluate G after Hadamards too");
  trace_cmd->add_flag("--timing", cfg.timing, "Add an eval_seconds column (breaks byte-identical reruns)");
  trace_cmd->add_option("--restarts", cfg.restarts, "Optimizer restarts per evaluation (default 8)");
  trace_cmd->add_option("--out", cfg.out_path, "Output CSV (default stdout)");
  trace_cmd->add_option("--seed", cfg.seed, "Master RNG seed");

  auto* grov_cmd = app.add_subcommand("groverian", "P_max and G of a state file");
  grov_cmd->add_option("--file", cfg.file, "State JSON file")->required();
  grov_cmd->add_option("--restarts", cfg.restarts, "Optimizer restarts (default 20)");
  grov_cmd->add_option("--seed", cfg.seed, "Master RNG seed");

  auto* sweep_cmd = app.add_subcommand("sweep", "G after pre-processing for all (N, y)");
  sweep_cmd->add_option("--n-max", cfg.n_max, "Largest N")->capture_default_str();
  sweep_cmd->add_flag("--long-run", cfg.long_run, "Sweep up to N = 200");
  sweep_cmd->add_option("--restarts", cfg.restarts, "Optimizer restarts per state (default 8)");
  sweep_cmd->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
  sweep_cmd->add_option("--out", cfg.out_path, "Output CSV (default fig4_sweep.csv)");
  sweep_cmd->add_option("--seed", cfg.seed, "Master RNG seed");

  auto* periodic_cmd = app.add_subcommand("periodic-study", "P_max and QFT drift of periodic states");
  periodic_cmd->add_option("--qubits", cfg.qubit_list, "Register sizes")->delimiter(',')->capture_default_str();
  periodic_cmd->add_option("--periods", cfg.period_list, "Periods r")->delimiter(',')->capture_default_str();
  periodic_cmd->add_option("--restarts", cfg.restarts, "Optimizer restarts per evaluation (default 8)");
  periodic_cmd->add_option("--out", cfg.out_path, "Output CSV (default periodic_study.csv)");
  periodic_cmd->add_option("--seed", cfg.seed, "Master RNG seed");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (factor_cmd->parsed()) return cmd_factor(cfg, out, err);
    if (trace_cmd->parsed()) return cmd_trace(cfg, out, err);
    if (grov_cmd->parsed()) return cmd_groverian(cfg, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(cfg, out, err);
    if (periodic_cmd->parsed()) return cmd_periodic_study(cfg, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace shorent::cli
