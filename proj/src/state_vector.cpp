#include "shorent/state_vector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace shorent {

namespace {

void check_qubit(int num_qubits, int k) {
  if (k < 1 || k > num_qubits) {
    throw std::out_of_range("qubit index " + std::to_string(k) + " outside 1.." +
                            std::to_string(num_qubits));
  }
}

void check_num_qubits(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in 1.." + std::to_string(kMaxQubits));
  }
}

}  // namespace

GateOp GateOp::hadamard(int k) {
  if (k < 1) throw std::out_of_range("Hadamard qubit must be >= 1");
  return GateOp(GateKind::Hadamard, k, 0);
}

GateOp GateOp::controlled_phase(int k, int m) {
  if (k < 1 || m <= k) throw std::out_of_range("controlled phase requires 1 <= k < m");
  return GateOp(GateKind::ControlledPhase, k, m);
}

double GateOp::angle() const {
  if (kind_ == GateKind::Hadamard) return 0.0;
  return std::ldexp(std::numbers::pi, -(control_ - target_));
}

std::string GateOp::label() const {
  if (kind_ == GateKind::Hadamard) return "H(" + std::to_string(target_) + ")";
  return "CP(" + std::to_string(target_) + "," + std::to_string(control_) + ")";
}

StateVector::StateVector(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
  const std::size_t n = amplitudes_.size();
  if (n < 2 || !std::has_single_bit(n)) {
    throw std::invalid_argument("state dimension " + std::to_string(n) +
                                " is not a power of two >= 2");
  }
  num_qubits_ = std::countr_zero(n);
  check_num_qubits(num_qubits_);
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const Complex& a : amplitudes_) s += std::norm(a);
  return s;
}

double StateVector::norm_error() const { return std::abs(norm_squared() - 1.0); }

void StateVector::normalize() {
  const double n = std::sqrt(norm_squared());
  if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
  for (Complex& a : amplitudes_) a /= n;
}

void StateVector::apply(const GateOp& gate) {
  check_qubit(num_qubits_, gate.target());
  const std::uint64_t dim = amplitudes_.size();
  if (gate.kind() == GateKind::Hadamard) {
    const std::uint64_t stride = qubit_mask(num_qubits_, gate.target());
    const double h = std::numbers::sqrt2 / 2.0;
    for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
      for (std::uint64_t j = base; j < base + stride; ++j) {
        const Complex a0 = amplitudes_[j];
        const Complex a1 = amplitudes_[j + stride];
        amplitudes_[j] = h * (a0 + a1);
        amplitudes_[j + stride] = h * (a0 - a1);
      }
    }
    return;
  }
  check_qubit(num_qubits_, gate.control());
  const std::uint64_t both =
      qubit_mask(num_qubits_, gate.target()) | qubit_mask(num_qubits_, gate.control());
  const Complex phase = std::polar(1.0, gate.angle());
  for (std::uint64_t j = 0; j < dim; ++j) {
    if ((j & both) == both) amplitudes_[j] *= phase;
  }
}

StateVector StateVector::permuted(std::span<const int> perm) const {
  const int n = num_qubits_;
  if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("permutation size mismatch");
  std::vector<bool> seen(n + 1, false);
  for (int p : perm) {
    check_qubit(n, p);
    if (seen[p]) throw std::invalid_argument("not a permutation");
    seen[p] = true;
  }
  std::vector<Complex> out(amplitudes_.size());
  for (std::uint64_t j = 0; j < amplitudes_.size(); ++j) {
    std::uint64_t target = 0;
    for (int k = 1; k <= n; ++k) {
      if (bit_of(j, n, k)) target |= qubit_mask(n, perm[k - 1]);
    }
    out[target] = amplitudes_[j];
  }
  return StateVector(std::move(out));
}

void StateVector::reverse_qubits() {
  const int n = num_qubits_;
  for (std::uint64_t j = 0; j < amplitudes_.size(); ++j) {
    std::uint64_t rev = 0;
    for (int b = 0; b < n; ++b) rev |= ((j >> b) & 1U) << (n - 1 - b);
    if (rev > j) std::swap(amplitudes_[j], amplitudes_[rev]);
  }
}

StateVector make_basis_state(int num_qubits, std::uint64_t index) {
  check_num_qubits(num_qubits);
  const std::uint64_t dim = std::uint64_t{1} << num_qubits;
  if (index >= dim) {
    throw std::out_of_range("basis index " + std::to_string(index) + " >= 2^" +
                            std::to_string(num_qubits));
  }
  std::vector<Complex> amps(dim);
  amps[index] = 1.0;
  return StateVector(std::move(amps));
}

StateVector make_equal_superposition(int num_qubits) {
  check_num_qubits(num_qubits);
  const std::uint64_t dim = std::uint64_t{1} << num_qubits;
  return StateVector(std::vector<Complex>(dim, Complex(1.0 / std::sqrt(static_cast<double>(dim)))));
}

int PeriodicStateSpec::power_of_two() const {
  if (period == 0) throw std::invalid_argument("period must be positive");
  return std::countr_zero(period);
}

std::uint64_t PeriodicStateSpec::odd_part() const { return period >> power_of_two(); }

StateVector make_periodic_state(const PeriodicStateSpec& spec) {
  check_num_qubits(spec.num_qubits);
  const std::uint64_t q = std::uint64_t{1} << spec.num_qubits;
  if (spec.period == 0 || spec.period > q) throw std::invalid_argument("period must be in 1..2^L");
  if (spec.shift >= spec.period) throw std::invalid_argument("shift must be smaller than the period");
  const std::uint64_t count = (q - 1 - spec.shift) / spec.period + 1;
  const double amp = 1.0 / std::sqrt(static_cast<double>(count));
  std::vector<Complex> amps(q);
  for (std::uint64_t j = spec.shift; j < q; j += spec.period) amps[j] = amp;
  return StateVector(std::move(amps));
}

StateVector make_product_state(const ProductAnsatz& ansatz) {
  const int n = ansatz.num_qubits();
  check_num_qubits(n);
  if (ansatz.gamma.size() != ansatz.theta.size()) throw std::invalid_argument("ansatz angle count mismatch");
  // Grow the tensor product one qubit at a time, most significant first.
  std::vector<Complex> amps{1.0};
  amps.reserve(std::size_t{1} << n);
  for (int k = 0; k < n; ++k) {
    const Complex zero = std::cos(ansatz.theta[k]);
    const Complex one = std::polar(std::sin(ansatz.theta[k]), ansatz.gamma[k]);
    std::vector<Complex> next(amps.size() * 2);
    for (std::size_t j = 0; j < amps.size(); ++j) {
      next[2 * j] = amps[j] * zero;
      next[2 * j + 1] = amps[j] * one;
    }
    amps = std::move(next);
  }
  return StateVector(std::move(amps));
}

RandomProductState make_random_product_state(int num_qubits, Rng& rng) {
  check_num_qubits(num_qubits);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ProductAnsatz ansatz;
  for (int k = 0; k < num_qubits; ++k) {
    ansatz.theta.push_back(std::numbers::pi * unit(rng));
    ansatz.gamma.push_back(2.0 * std::numbers::pi * unit(rng));
  }
  StateVector state = make_product_state(ansatz);
  return {std::move(state), std::move(ansatz)};
}

RandomProductState make_random_product_state(int num_qubits, std::uint64_t seed) {
  Rng rng(seed);
  return make_random_product_state(num_qubits, rng);
}

StateVector make_random_isotropic_state(int num_qubits, Rng& rng) {
  check_num_qubits(num_qubits);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Complex> amps(std::size_t{1} << num_qubits);
  for (Complex& a : amps) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    a = Complex(re, im);
  }
  StateVector state(std::move(amps));
  state.normalize();
  return state;
}

StateVector make_random_isotropic_state(int num_qubits, std::uint64_t seed) {
  Rng rng(seed);
  return make_random_isotropic_state(num_qubits, rng);
}

StateVector apply_gate(StateVector state, const GateOp& gate) {
  state.apply(gate);
  return state;
}

Measurement measure_subregister(const StateVector& state, std::span<const int> qubits, Rng& rng) {
  if (qubits.empty()) throw std::invalid_argument("cannot measure an empty qubit subset");
  const int n = state.num_qubits();
  std::uint64_t subset_mask = 0;
  for (int k : qubits) {
    check_qubit(n, k);
    if (subset_mask & qubit_mask(n, k)) throw std::invalid_argument("duplicate qubit in subset");
    subset_mask |= qubit_mask(n, k);
  }

  // Sample a basis index with Born probabilities; its bits on the subset fix
  // the outcome.
  const auto amps = state.amplitudes();
  double total = 0.0;
  for (const Complex& a : amps) total += std::norm(a);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double target = unit(rng) * total;
  std::uint64_t chosen = amps.size() - 1;
  double acc = 0.0;
  for (std::uint64_t j = 0; j < amps.size(); ++j) {
    acc += std::norm(amps[j]);
    if (acc > target && std::norm(amps[j]) > 0.0) {
      chosen = j;
      break;
    }
  }
  while (std::norm(amps[chosen]) == 0.0 && chosen > 0) --chosen;

  const std::uint64_t pattern = chosen & subset_mask;
  std::vector<Complex> collapsed(amps.size());
  for (std::uint64_t j = 0; j < amps.size(); ++j) {
    if ((j & subset_mask) == pattern) collapsed[j] = amps[j];
  }
  StateVector out(std::move(collapsed));
  out.normalize();

  std::uint64_t outcome = 0;
  for (int k : qubits) outcome = (outcome << 1) | static_cast<std::uint64_t>(bit_of(chosen, n, k));
  return {outcome, std::move(out)};
}

Measurement measure_subregister(const StateVector& state, std::span<const int> qubits,
                                std::uint64_t seed) {
  Rng rng(seed);
  return measure_subregister(state, qubits, rng);
}

}  // namespace shorent
