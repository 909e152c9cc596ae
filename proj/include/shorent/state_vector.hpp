#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace shorent {

using Complex = std::complex<double>;
using Rng = std::mt19937_64;

/// Basis index j of an L-qubit register. Qubit k (1-based) is the k-th most
/// significant bit of j, i.e. bit position L - k.
constexpr std::uint64_t qubit_mask(int num_qubits, int k) {
  return std::uint64_t{1} << (num_qubits - k);
}

constexpr int bit_of(std::uint64_t index, int num_qubits, int k) {
  return static_cast<int>((index >> (num_qubits - k)) & 1U);
}

/// Largest register we allocate densely (2^26 amplitudes = 1 GiB).
inline constexpr int kMaxQubits = 26;

/// Single-qubit state cos(theta)|0> + e^{i gamma} sin(theta)|1> per qubit.
struct ProductAnsatz {
  std::vector<double> theta;
  std::vector<double> gamma;

  int num_qubits() const { return static_cast<int>(theta.size()); }
};

enum class GateKind { Hadamard, ControlledPhase };

/// Hadamard on qubit k, or controlled phase pi / 2^(m-k) on qubits k < m.
class GateOp {
 public:
  static GateOp hadamard(int k);
  static GateOp controlled_phase(int k, int m);

  GateKind kind() const { return kind_; }
  int target() const { return target_; }
  /// Second qubit of a controlled phase; 0 for a Hadamard.
  int control() const { return control_; }
  double angle() const;

  std::string label() const;

  friend bool operator==(const GateOp&, const GateOp&) = default;

 private:
  GateOp(GateKind kind, int target, int control)
      : kind_(kind), target_(target), control_(control) {}

  GateKind kind_;
  int target_;
  int control_;
};

/// Dense, normalized amplitude vector of an L-qubit register.
class StateVector {
 public:
  /// Takes ownership of `amplitudes`; the length must be a power of two >= 2.
  /// Does not renormalize.
  explicit StateVector(std::vector<Complex> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }

  std::span<const Complex> amplitudes() const { return amplitudes_; }
  const Complex& operator[](std::size_t j) const { return amplitudes_[j]; }

  double norm_squared() const;
  /// |norm^2 - 1|
  double norm_error() const;

  void normalize();

  /// In-place gate application; throws std::out_of_range on bad qubit indices.
  void apply(const GateOp& gate);

  /// Relabels qubits so that qubit k becomes qubit perm[k-1]. `perm` is a
  /// permutation of 1..L.
  StateVector permuted(std::span<const int> perm) const;

  /// Reverses the qubit order (qubit k <-> qubit L+1-k).
  void reverse_qubits();

 private:
  int num_qubits_;
  std::vector<Complex> amplitudes_;
};

StateVector make_basis_state(int num_qubits, std::uint64_t index);
StateVector make_equal_superposition(int num_qubits);

/// Uniform superposition over {l, l+r, l+2r, ...} within [0, 2^L).
struct PeriodicStateSpec {
  int num_qubits;
  std::uint64_t period;
  std::uint64_t shift;

  /// period = 2^power_of_two * odd_part with odd_part odd.
  int power_of_two() const;
  std::uint64_t odd_part() const;
};

StateVector make_periodic_state(const PeriodicStateSpec& spec);

StateVector make_product_state(const ProductAnsatz& ansatz);

struct RandomProductState {
  StateVector state;
  ProductAnsatz ansatz;
};

/// theta_k uniform on [0, pi), gamma_k uniform on [0, 2 pi).
RandomProductState make_random_product_state(int num_qubits, Rng& rng);
RandomProductState make_random_product_state(int num_qubits, std::uint64_t seed);

/// Normalized vector of i.i.d. standard complex Gaussians (Haar-random pure state).
StateVector make_random_isotropic_state(int num_qubits, Rng& rng);
StateVector make_random_isotropic_state(int num_qubits, std::uint64_t seed);

StateVector apply_gate(StateVector state, const GateOp& gate);

struct Measurement {
  /// Measured bits in the order of the requested qubit subset, packed
  /// most-significant first.
  std::uint64_t outcome;
  StateVector collapsed;
};

/// Projective computational-basis measurement of `qubits` (1-based).
Measurement measure_subregister(const StateVector& state, std::span<const int> qubits, Rng& rng);
Measurement measure_subregister(const StateVector& state, std::span<const int> qubits,
                                std::uint64_t seed);

}  // namespace shorent
