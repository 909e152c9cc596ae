#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shorent/state_vector.hpp"

namespace shorent {

// ---------------------------------------------------------------------------
// Classical number theory

bool is_prime(std::uint64_t n);
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus);

/// Unique L with N^2 < 2^L <= 2 N^2. Requires N >= 3.
int choose_register_size(std::uint64_t n);

/// y^a mod N for a = 0..q-1 by iterated modular multiplication.
std::vector<std::uint64_t> modexp_table(std::uint64_t n, std::uint64_t y, std::uint64_t q);

/// Smallest r > 0 with y^r = 1 (mod N), by brute force; nullopt when
/// gcd(y, N) > 1.
std::optional<std::uint64_t> find_order(std::uint64_t n, std::uint64_t y);

// ---------------------------------------------------------------------------
// Problem instance

struct ShorInstance {
  std::uint64_t n;
  std::uint64_t y;
  int num_qubits;

  std::uint64_t q() const { return std::uint64_t{1} << num_qubits; }

  /// Validates N >= 3 composite and 1 < y < N-1; sizes the register.
  /// Throws std::invalid_argument otherwise.
  static ShorInstance make(std::uint64_t n, std::uint64_t y);
};

enum class ShorStatus { Factored, OddOrder, TrivialRoot, ApproxFailed, NonCoprimeShortcut };

std::string to_string(ShorStatus status);

// ---------------------------------------------------------------------------
// Pre-processing

struct PreprocessMode {
  enum class Kind { Sample, FixedShift };
  Kind kind = Kind::Sample;
  std::uint64_t shift = 0;

  static PreprocessMode sample() { return {Kind::Sample, 0}; }
  static PreprocessMode fixed_shift(std::uint64_t l) { return {Kind::FixedShift, l}; }
};

struct PreprocessResult {
  /// Measured auxiliary value y^l mod N.
  std::uint64_t z;
  /// Smallest a with y^a = z (mod N).
  std::uint64_t shift;
  /// Order of y; nullopt when gcd(y, N) > 1.
  std::optional<std::uint64_t> order;
  /// Number of main-register indices consistent with z.
  std::uint64_t support_count;
  /// Main register after the auxiliary measurement.
  StateVector state;
  /// gcd(y, N) when it is a nontrivial divisor.
  std::optional<std::uint64_t> shortcut_factor;

  bool is_shortcut() const { return shortcut_factor.has_value(); }
};

/// Equal superposition, modular exponentiation into an auxiliary register
/// and measurement of that register. The auxiliary register is handled
/// classically: main-register indices are grouped by y^a mod N and one group
/// is selected with Born weight proportional to its size (Sample) or imposed
/// (FixedShift). When gcd(y, N) > 1 the result carries the gcd as a shortcut
/// factor together with the collapsed state.
/// Throws std::invalid_argument if a fixed shift is not the first index of its
/// residue class (l >= r when the order exists).
PreprocessResult preprocess(const ShorInstance& instance, PreprocessMode mode, Rng& rng);
PreprocessResult preprocess(const ShorInstance& instance, PreprocessMode mode, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Quantum Fourier transform

struct QftSchedule {
  int num_qubits = 0;
  /// Execution order; gate ordinal t refers to gates[t - 1].
  std::vector<GateOp> gates;
};

/// QFT = F_1 F_2 ... F_L with F_k = A_k B_{k,k+1} ... B_{k,L}, the rightmost
/// factor acting first: F_L runs first, and within F_k the phases
/// B_{k,L}, ..., B_{k,k+1} precede the Hadamard A_k.
QftSchedule build_qft_schedule(int num_qubits);

using TraceCallback = std::function<void(int ordinal, const GateOp& gate, const StateVector& state)>;

/// Maps amplitudes f(a) to (1/sqrt q) sum_a exp(2 pi i a c / q) f(a).
///
/// With qubit 1 as the most significant bit the gate schedule realizes the
/// transform composed with a qubit-order reversal on its input, so the
/// reversal is applied first and the schedule then runs gate by gate.
/// `trace` (if set) sees the state after every gate.
StateVector run_qft(StateVector state, const TraceCallback& trace = {});

// ---------------------------------------------------------------------------
// Post-processing

struct Convergent {
  std::uint64_t numerator;
  std::uint64_t denominator;
  friend bool operator==(const Convergent&, const Convergent&) = default;
};

/// The convergent p/s of c/q (lowest terms) with s < N and |c/q - p/s| <= 1/(2q).
/// At most one exists when q > N^2.
std::optional<Convergent> continued_fraction_recover(std::uint64_t c, std::uint64_t q, std::uint64_t n);

struct PostprocessResult {
  std::uint64_t c = 0;
  std::optional<Convergent> convergent;
  /// Recovered order: the smallest multiple k s of the convergent denominator
  /// s with y^(k s) = 1 (mod N), for k up to the bit length of N.
  std::optional<std::uint64_t> order;
  std::optional<std::uint64_t> x;
  std::vector<std::uint64_t> factors;
  ShorStatus status = ShorStatus::ApproxFailed;
};

/// Continued-fraction recovery of the order, then gcd(y^(r/2) +- 1, N).
/// A convergent is accepted only if some small multiple r of its denominator
/// satisfies y^r = 1 (mod N); otherwise, and for c = 0, the status is
/// ApproxFailed.
PostprocessResult postprocess(const ShorInstance& instance, std::uint64_t c);

// ---------------------------------------------------------------------------
// Full pipeline

struct FactorOptions {
  /// Use this base for every attempt; otherwise draw y uniformly from [2, N-2].
  std::optional<std::uint64_t> y;
  int max_attempts = 10;
  /// Repeat measurements of one random y at most this many times. Odd orders
  /// and trivial roots move to a fresh y immediately.
  int attempts_per_y = 10;
};

struct AttemptRecord {
  std::uint64_t y;
  std::optional<std::uint64_t> shift;
  std::optional<std::uint64_t> c;
  ShorStatus status;
  std::vector<std::uint64_t> factors;
};

struct FactorReport {
  std::uint64_t n = 0;
  bool success = false;
  /// Two nontrivial factors with product N when success.
  std::vector<std::uint64_t> factors;
  std::vector<AttemptRecord> attempts;
};

/// preprocess -> run_qft -> full measurement -> postprocess, repeated until
/// a factor is found or the attempt budget runs out.
/// Throws std::invalid_argument if N is not composite or y is invalid.
FactorReport factor(std::uint64_t n, const FactorOptions& options, std::uint64_t seed);

/// JSON array of {y, l, c, status, factors}.
std::string attempt_log_json(const FactorReport& report);

}  // namespace shorent
