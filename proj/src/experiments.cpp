#include "shorent/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "shorent/rng.hpp"
#include "shorent/shor.hpp"

namespace shorent {

namespace {

double timed_groverian(const StateVector& state, const GroverianOptions& options, std::uint64_t seed,
                       double& seconds) {
  const auto start = std::chrono::steady_clock::now();
  const double g = maximize(state, options, seed).g();
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return g;
}

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_comment(std::ostream& out, std::uint64_t seed) {
  out << "# seed=" << seed << " version=" << kVersion << "\n";
}

// Runs fn(i) for i in [0, count) on up to `threads` workers.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
}

}  // namespace

std::vector<TraceRecord> trace_qft(const std::string& experiment, const StateVector& input,
                                   const TraceOptions& options, std::uint64_t seed) {
  std::vector<TraceRecord> records;
  TraceRecord first{experiment, 0, std::nullopt, 0.0, input.norm_error(), 0.0};
  first.g = timed_groverian(input, options.groverian, derive_seed(seed, {0}), first.eval_seconds);
  records.push_back(first);

  const int total = static_cast<int>(build_qft_schedule(input.num_qubits()).gates.size());
  run_qft(input, [&](int ordinal, const GateOp& gate, const StateVector& state) {
    const bool wanted = options.every_gate || gate.kind() == GateKind::ControlledPhase || ordinal == total;
    if (!wanted) return;
    TraceRecord rec{experiment, ordinal, gate, 0.0, state.norm_error(), 0.0};
    rec.g = timed_groverian(state, options.groverian,
                            derive_seed(seed, {static_cast<std::uint64_t>(ordinal)}), rec.eval_seconds);
    records.push_back(std::move(rec));
  });
  return records;
}

std::vector<TraceRecord> run_fig2(int num_qubits, int num_product_states, int num_random_states,
                                  const TraceOptions& options, std::uint64_t seed) {
  if (num_qubits < 2) throw std::invalid_argument("fig2 traces need at least two qubits");
  std::vector<TraceRecord> out;
  for (int i = 0; i < num_product_states; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    const auto input = make_random_product_state(num_qubits, derive_seed(seed, {1, idx}));
    auto recs = trace_qft("product_" + std::to_string(i + 1), input.state, options,
                          derive_seed(seed, {11, idx}));
    out.insert(out.end(), recs.begin(), recs.end());
  }
  for (int i = 0; i < num_random_states; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    const auto input = make_random_isotropic_state(num_qubits, derive_seed(seed, {2, idx}));
    auto recs = trace_qft("random_" + std::to_string(i + 1), input, options, derive_seed(seed, {12, idx}));
    out.insert(out.end(), recs.begin(), recs.end());
  }
  return out;
}

std::vector<TraceRecord> run_fig3(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& cases,
                                  std::uint64_t shift, const TraceOptions& options, std::uint64_t seed) {
  std::vector<TraceRecord> out;
  for (const auto& [n, y] : cases) {
    const ShorInstance instance = ShorInstance::make(n, y);
    const PreprocessResult pre = preprocess(instance, PreprocessMode::fixed_shift(shift), seed);
    auto recs = trace_qft("N" + std::to_string(n) + "_y" + std::to_string(y), pre.state, options,
                          derive_seed(seed, {3, n, y}));
    out.insert(out.end(), recs.begin(), recs.end());
  }
  return out;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::GcdShortcut: return "gcd_shortcut";
    case Classification::PowerOfTwoOrder: return "power_of_two_order";
    case Classification::Entangled: return "entangled";
  }
  return "unknown";
}

std::vector<SweepRecord> run_fig4(std::uint64_t n_max, const SweepOptions& options, std::uint64_t seed) {
  if (n_max < 3) throw std::invalid_argument("n_max must be at least 3");

  struct Cell {
    std::uint64_t n, y;
    int num_qubits;
    std::optional<std::uint64_t> order;
  };
  std::vector<Cell> cells;
  for (std::uint64_t n = 4; n <= n_max; ++n) {
    if (is_prime(n)) continue;
    const int L = choose_register_size(n);
    for (std::uint64_t y = 2; y + 1 < n; ++y) cells.push_back({n, y, L, find_order(n, y)});
  }

  // Distinct collapsed states, keyed by (L, r) with r = 0 for the gcd case.
  std::map<std::pair<int, std::uint64_t>, double> g_by_state;
  std::map<std::pair<int, std::uint64_t>, Cell> representative;
  for (const Cell& c : cells) representative.try_emplace({c.num_qubits, c.order.value_or(0)}, c);
  std::vector<std::pair<std::pair<int, std::uint64_t>, Cell>> jobs(representative.begin(), representative.end());
  std::vector<double> results(jobs.size());
  parallel_for(jobs.size(), options.threads, [&](std::size_t i) {
    const auto& [key, cell] = jobs[i];
    const ShorInstance instance = ShorInstance::make(cell.n, cell.y);
    const PreprocessResult pre = preprocess(instance, PreprocessMode::fixed_shift(0), seed);
    results[i] = maximize(pre.state, options.groverian,
                          derive_seed(seed, {static_cast<std::uint64_t>(key.first), key.second}))
                     .g();
  });
  for (std::size_t i = 0; i < jobs.size(); ++i) g_by_state[jobs[i].first] = results[i];

  std::vector<SweepRecord> records;
  records.reserve(cells.size());
  for (const Cell& c : cells) {
    SweepRecord rec{c.n, c.y, c.order, std::nullopt, g_by_state.at({c.num_qubits, c.order.value_or(0)}),
                    Classification::Entangled, std::sqrt(1.0 - 1.0 / (2.0 * static_cast<double>(c.n)))};
    if (!c.order) {
      rec.classification = Classification::GcdShortcut;
    } else {
      const std::uint64_t odd = PeriodicStateSpec{c.num_qubits, *c.order, 0}.odd_part();
      rec.odd_part = odd;
      if (odd == 1) rec.classification = Classification::PowerOfTwoOrder;
    }
    records.push_back(rec);
  }
  return records;
}

SweepSummary summarize(const std::vector<SweepRecord>& records) {
  SweepSummary s;
  for (const SweepRecord& r : records) {
    switch (r.classification) {
      case Classification::GcdShortcut: ++s.gcd_shortcut; break;
      case Classification::PowerOfTwoOrder: ++s.power_of_two_order; break;
      case Classification::Entangled: ++s.entangled; break;
    }
    s.max_g = std::max(s.max_g, r.g);
    if (r.g > r.bound + 1e-6) ++s.bound_violations;
    const bool zero = r.g <= kZeroEntanglement;
    if (zero != (r.classification != Classification::Entangled)) ++s.classification_mismatches;
  }
  return s;
}

std::vector<PeriodicStudyRecord> run_periodic_study(const std::vector<int>& num_qubits,
                                                    const std::vector<std::uint64_t>& periods,
                                                    const TraceOptions& options, std::uint64_t seed) {
  std::vector<PeriodicStudyRecord> out;
  for (int L : num_qubits) {
    for (std::uint64_t r : periods) {
      const PeriodicStateSpec spec{L, r, 0};
      const StateVector state = make_periodic_state(spec);
      const std::uint64_t stream = derive_seed(seed, {static_cast<std::uint64_t>(L), r});
      const auto trace = trace_qft("periodic", state, options, stream);
      double drift = 0.0;
      for (const TraceRecord& t : trace) drift = std::max(drift, std::abs(t.g - trace.front().g));
      const double g0 = trace.front().g;
      out.push_back({L, r, spec.odd_part(), 1.0 - g0 * g0, drift});
    }
  }
  return out;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& records, std::uint64_t seed,
                     bool include_timing) {
  write_comment(out, seed);
  out << "experiment_id,gate_index,gate_kind,k,m,theta_radians,groverian_G,norm_error";
  if (include_timing) out << ",eval_seconds";
  out << "\n";
  for (const TraceRecord& r : records) {
    out << r.experiment << "," << r.gate_index << ",";
    if (!r.gate) {
      out << "none,,,";
    } else if (r.gate->kind() == GateKind::Hadamard) {
      out << "H," << r.gate->target() << ",,0";
    } else {
      out << "CP," << r.gate->target() << "," << r.gate->control() << "," << fmt_double(r.gate->angle());
    }
    out << "," << fmt_double(r.g) << "," << fmt_double(r.norm_error);
    if (include_timing) out << "," << fmt_double(r.eval_seconds);
    out << "\n";
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records, std::uint64_t seed) {
  write_comment(out, seed);
  out << "N,y,order,odd_part,groverian_G,classification,bound\n";
  for (const SweepRecord& r : records) {
    out << r.n << "," << r.y << ",";
    if (r.order) out << *r.order;
    out << ",";
    if (r.odd_part) out << *r.odd_part;
    out << "," << fmt_double(r.g) << "," << to_string(r.classification) << "," << fmt_double(r.bound) << "\n";
  }
}

void write_periodic_csv(std::ostream& out, const std::vector<PeriodicStudyRecord>& records,
                        std::uint64_t seed) {
  write_comment(out, seed);
  out << "L,r,d,p_max,max_qft_drift\n";
  for (const PeriodicStudyRecord& r : records) {
    out << r.num_qubits << "," << r.period << "," << r.odd_part << "," << fmt_double(r.p_max) << ","
        << fmt_double(r.max_drift) << "\n";
  }
}

}  // namespace shorent
