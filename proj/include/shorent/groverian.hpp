#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "shorent/state_vector.hpp"

namespace shorent {

/// <e|psi> for the product state e realized by `ansatz`.
/// Throws std::invalid_argument on a qubit-count mismatch.
Complex overlap(const StateVector& state, const ProductAnsatz& ansatz);

/// Outcome of maximizing |c cos(theta) + d e^{i gamma} sin(theta)|^2 over
/// (theta, gamma).
struct SingleQubitUpdate {
  double theta;
  double gamma;
  /// |c|^2 + |d|^2, the maximized value.
  double value;
  /// c = d = 0: every angle is optimal and the caller should keep its own.
  bool degenerate;
};

/// cos(theta) = |c| / sqrt(|c|^2 + |d|^2), gamma = arg c - arg d in [0, 2 pi).
SingleQubitUpdate optimal_single_qubit(Complex c, Complex d);

/// Coordinate-ascent state for maximizing |<psi|e>|^2 over product states e.
///
/// With all qubits but k held fixed the conjugate overlap takes the form
///   <psi|e> = c_k cos(theta_k) + d_k e^{i gamma_k} sin(theta_k),
/// where c_k (d_k) sums conj(a_j) times the other qubits' factors over the
/// indices with bit k equal to 0 (1). Each coordinate step is solved in
/// closed form by optimal_single_qubit.
class CoordinateAscent {
 public:
  CoordinateAscent(const StateVector& state, ProductAnsatz start);

  const ProductAnsatz& ansatz() const { return ansatz_; }
  /// |<psi|e>|^2 at the current ansatz.
  double value() const { return value_; }

  /// (c_k, d_k) for the current ansatz, computed in O(2^L).
  std::pair<Complex, Complex> coefficients(int k) const;

  /// Optimizes qubit k alone. Returns the new value.
  double update_single_qubit(int k);

  /// One round of updates k = 1..L using left-contracted partial overlaps
  /// and a suffix table of product factors; O(2^L) for the whole round.
  /// Returns the new value.
  double sweep();

  /// Largest decrease of the objective observed across all updates so far
  /// (0 for a monotone run).
  double max_drop() const { return max_drop_; }
  int degenerate_updates() const { return degenerate_updates_; }

 private:
  void record(double new_value);

  int num_qubits_;
  std::vector<Complex> conj_amplitudes_;
  ProductAnsatz ansatz_;
  double value_ = 0.0;
  double max_drop_ = 0.0;
  int degenerate_updates_ = 0;

  // Scratch reused across sweeps.
  std::vector<Complex> suffix_;
  std::vector<Complex> partial_;
};

struct GroverianOptions {
  int restarts = 20;
  /// If the first `restarts` optima disagree by more than 1e-8, keep adding
  /// restarts up to this total. Values <= restarts disable escalation.
  int escalated_restarts = 64;
  /// Stop a restart once a full sweep gains less than this in |f|^2.
  double tolerance = 1e-12;
  int max_sweeps = 1000;
};

struct GroverianResult {
  double p_max = 0.0;
  ProductAnsatz ansatz;
  std::vector<int> sweeps_used;
  /// Restarts actually run, including escalation.
  int restarts = 0;
  /// At least half the restarts reached the best value within 1e-8.
  bool converged = false;
  /// max - min of the per-restart optima.
  double spread = 0.0;
  int degenerate_updates = 0;
  /// Largest per-update decrease of |f|^2 seen in any restart.
  double max_drop = 0.0;

  double g() const;
};

/// P_max and G for `state` by coordinate ascent from uniformly random
/// starting points. Restart i uses the stream derive_seed(seed, {i}).
GroverianResult maximize(const StateVector& state, const GroverianOptions& options, std::uint64_t seed);

/// Upper bound on L accepted by brute_force_pmax.
inline constexpr int kBruteForceMaxQubits = 3;

/// Independent estimate of P_max for L <= 3. The last two qubits are
/// eliminated exactly via the largest singular value of the remaining 2x2
/// coefficient matrix; for L = 3 the first qubit is scanned on a
/// grid_resolution^2 grid over (theta, gamma) and the best cell refined by a
/// shrinking local pattern search. Throws std::invalid_argument for L > 3.
double brute_force_pmax(const StateVector& state, int grid_resolution = 64);

}  // namespace shorent
