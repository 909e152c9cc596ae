#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "shorent/groverian.hpp"
#include "shorent/state_vector.hpp"

namespace shorent {

inline constexpr const char* kVersion = "1.0.0";

/// G at or below this counts as unentangled.
inline constexpr double kZeroEntanglement = 1e-4;

struct TraceOptions {
  GroverianOptions groverian{.restarts = 8};
  /// Evaluate G after every gate instead of only after controlled phases
  /// and the final gate.
  bool every_gate = false;
};

struct TraceRecord {
  std::string experiment;
  /// 0 is the input state, t >= 1 the state after gate t.
  int gate_index = 0;
  std::optional<GateOp> gate;
  double g = 0.0;
  double norm_error = 0.0;
  double eval_seconds = 0.0;
};

/// G of `input` before the QFT and along the gate schedule. The evaluation at
/// ordinal t uses the stream derive_seed(seed, {t}).
std::vector<TraceRecord> trace_qft(const std::string& experiment, const StateVector& input,
                                   const TraceOptions& options, std::uint64_t seed);

/// QFT traces of `num_product_states` random product states followed by
/// `num_random_states` isotropic random states on L qubits.
std::vector<TraceRecord> run_fig2(int num_qubits, int num_product_states, int num_random_states,
                                  const TraceOptions& options, std::uint64_t seed);

/// QFT traces of Shor pre-processed states for each (N, y), with the
/// auxiliary measurement fixed to shift l.
std::vector<TraceRecord> run_fig3(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& cases,
                                  std::uint64_t shift, const TraceOptions& options, std::uint64_t seed);

enum class Classification { GcdShortcut, PowerOfTwoOrder, Entangled };

std::string to_string(Classification c);

struct SweepRecord {
  std::uint64_t n;
  std::uint64_t y;
  std::optional<std::uint64_t> order;
  std::optional<std::uint64_t> odd_part;
  double g;
  Classification classification;
  /// sqrt(1 - 1/(2N))
  double bound;
};

struct SweepOptions {
  GroverianOptions groverian{.restarts = 8};
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Every composite N in [3, n_max] and every 1 < y < N-1: pre-process with
/// shift 0, evaluate G of the main register and classify. Rows are sorted by
/// N, then y.
///
/// With shift 0 the collapsed state depends only on (L, r), or is |0> when
/// gcd(y, N) > 1, so G is evaluated once per distinct state with the stream
/// derive_seed(seed, {L, r}) (r = 0 for the gcd case).
std::vector<SweepRecord> run_fig4(std::uint64_t n_max, const SweepOptions& options, std::uint64_t seed);

struct SweepSummary {
  std::size_t gcd_shortcut = 0;
  std::size_t power_of_two_order = 0;
  std::size_t entangled = 0;
  double max_g = 0.0;
  /// Rows with G > bound + 1e-6.
  std::size_t bound_violations = 0;
  /// Rows where (G <= kZeroEntanglement) disagrees with (classification != Entangled).
  std::size_t classification_mismatches = 0;
};

SweepSummary summarize(const std::vector<SweepRecord>& records);

struct PeriodicStudyRecord {
  int num_qubits;
  std::uint64_t period;
  std::uint64_t odd_part;
  double p_max;
  /// max_t |G_t - G_0| along the QFT.
  double max_drift;
};

/// For every L in `num_qubits` and r in `periods` (r <= 2^L), the shift-0
/// periodic state's P_max and the QFT drift of its G.
std::vector<PeriodicStudyRecord> run_periodic_study(const std::vector<int>& num_qubits,
                                                    const std::vector<std::uint64_t>& periods,
                                                    const TraceOptions& options, std::uint64_t seed);

// CSV output. Each file starts with "# seed=<seed> version=<version>" and a
// header row.

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& records, std::uint64_t seed,
                     bool include_timing = false);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records, std::uint64_t seed);
void write_periodic_csv(std::ostream& out, const std::vector<PeriodicStudyRecord>& records,
                        std::uint64_t seed);

}  // namespace shorent
