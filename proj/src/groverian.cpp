#include "shorent/groverian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "shorent/rng.hpp"

namespace shorent {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct QubitFactor {
  Complex zero;
  Complex one;
};

QubitFactor factor(const ProductAnsatz& ansatz, int k) {
  return {Complex(std::cos(ansatz.theta[k - 1])),
          std::polar(std::sin(ansatz.theta[k - 1]), ansatz.gamma[k - 1])};
}

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  // fmod of a value just below 2 pi can round up to exactly 2 pi.
  return a >= kTwoPi ? 0.0 : a;
}

void check_ansatz(const StateVector& state, const ProductAnsatz& ansatz) {
  if (ansatz.num_qubits() != state.num_qubits() || ansatz.gamma.size() != ansatz.theta.size()) {
    throw std::invalid_argument("ansatz has " + std::to_string(ansatz.num_qubits()) +
                                " qubits, state has " + std::to_string(state.num_qubits()));
  }
}

// Contracts the most significant remaining qubit of v with (f.zero, f.one).
void contract_front(std::vector<Complex>& v, const QubitFactor& f) {
  const std::size_t half = v.size() / 2;
  for (std::size_t r = 0; r < half; ++r) v[r] = f.zero * v[r] + f.one * v[half + r];
  v.resize(half);
}

// Contracts the least significant remaining qubit of v.
void contract_back(std::vector<Complex>& v, const QubitFactor& f) {
  const std::size_t half = v.size() / 2;
  for (std::size_t r = 0; r < half; ++r) v[r] = f.zero * v[2 * r] + f.one * v[2 * r + 1];
  v.resize(half);
}

ProductAnsatz random_ansatz(int num_qubits, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ProductAnsatz a;
  for (int k = 0; k < num_qubits; ++k) {
    a.theta.push_back(std::numbers::pi * unit(rng));
    a.gamma.push_back(kTwoPi * unit(rng));
  }
  return a;
}

}  // namespace

Complex overlap(const StateVector& state, const ProductAnsatz& ansatz) {
  check_ansatz(state, ansatz);
  std::vector<Complex> v(state.amplitudes().begin(), state.amplitudes().end());
  for (int k = 1; k <= state.num_qubits(); ++k) {
    QubitFactor f = factor(ansatz, k);
    contract_front(v, {std::conj(f.zero), std::conj(f.one)});
  }
  return v[0];
}

SingleQubitUpdate optimal_single_qubit(Complex c, Complex d) {
  const double cc = std::norm(c);
  const double dd = std::norm(d);
  const double value = cc + dd;
  if (value <= 1e-300) return {0.0, 0.0, 0.0, true};
  const double cos_theta = std::min(1.0, std::sqrt(cc / value));
  return {std::acos(cos_theta), wrap_angle(std::arg(c) - std::arg(d)), value, false};
}

CoordinateAscent::CoordinateAscent(const StateVector& state, ProductAnsatz start)
    : num_qubits_(state.num_qubits()), ansatz_(std::move(start)) {
  check_ansatz(state, ansatz_);
  conj_amplitudes_.reserve(state.dimension());
  for (const Complex& a : state.amplitudes()) conj_amplitudes_.push_back(std::conj(a));
  value_ = std::norm(overlap(state, ansatz_));
}

std::pair<Complex, Complex> CoordinateAscent::coefficients(int k) const {
  if (k < 1 || k > num_qubits_) throw std::out_of_range("qubit index out of range");
  std::vector<Complex> v = conj_amplitudes_;
  for (int q = 1; q < k; ++q) contract_front(v, factor(ansatz_, q));
  for (int q = num_qubits_; q > k; --q) contract_back(v, factor(ansatz_, q));
  return {v[0], v[1]};
}

void CoordinateAscent::record(double new_value) {
  max_drop_ = std::max(max_drop_, value_ - new_value);
  value_ = new_value;
}

double CoordinateAscent::update_single_qubit(int k) {
  const auto [c, d] = coefficients(k);
  const SingleQubitUpdate u = optimal_single_qubit(c, d);
  if (u.degenerate) {
    ++degenerate_updates_;
    record(0.0);
    return value_;
  }
  ansatz_.theta[k - 1] = u.theta;
  ansatz_.gamma[k - 1] = u.gamma;
  record(u.value);
  return value_;
}

double CoordinateAscent::sweep() {
  const int n = num_qubits_;
  const std::size_t dim = conj_amplitudes_.size();

  // suffix_ holds, for each k, the product of factors of qubits k+1..L as a
  // vector of length 2^(L-k) starting at offset 2^(L-k) - 1. These qubits
  // are not touched before qubit k is updated in this sweep.
  suffix_.assign(dim - 1, Complex(0.0));
  suffix_[0] = 1.0;
  for (int k = n - 1; k >= 1; --k) {
    const std::size_t len = std::size_t{1} << (n - k);
    const std::size_t half = len / 2;
    const Complex* next = &suffix_[half - 1];
    Complex* cur = &suffix_[len - 1];
    const QubitFactor f = factor(ansatz_, k + 1);
    for (std::size_t r = 0; r < half; ++r) {
      cur[r] = f.zero * next[r];
      cur[half + r] = f.one * next[r];
    }
  }

  partial_ = conj_amplitudes_;
  for (int k = 1; k <= n; ++k) {
    const std::size_t half = std::size_t{1} << (n - k);
    const Complex* s = &suffix_[half - 1];
    Complex c = 0.0;
    Complex d = 0.0;
    for (std::size_t r = 0; r < half; ++r) {
      c += partial_[r] * s[r];
      d += partial_[half + r] * s[r];
    }
    const SingleQubitUpdate u = optimal_single_qubit(c, d);
    if (u.degenerate) {
      ++degenerate_updates_;
      record(0.0);
    } else {
      ansatz_.theta[k - 1] = u.theta;
      ansatz_.gamma[k - 1] = u.gamma;
      record(u.value);
    }
    const QubitFactor f = factor(ansatz_, k);
    for (std::size_t r = 0; r < half; ++r) partial_[r] = f.zero * partial_[r] + f.one * partial_[half + r];
  }
  return value_;
}

double GroverianResult::g() const { return std::sqrt(std::max(0.0, 1.0 - p_max)); }

GroverianResult maximize(const StateVector& state, const GroverianOptions& options, std::uint64_t seed) {
  if (options.restarts < 1) throw std::invalid_argument("at least one restart is required");
  GroverianResult result;
  std::vector<double> optima;
  double best = -1.0;

  const auto run_restart = [&](int i) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(i)}));
    CoordinateAscent opt(state, random_ansatz(state.num_qubits(), rng));
    double previous = opt.value();
    int sweeps = 0;
    while (sweeps < options.max_sweeps) {
      const double current = opt.sweep();
      ++sweeps;
      if (current - previous < options.tolerance) break;
      previous = current;
    }
    result.sweeps_used.push_back(sweeps);
    result.degenerate_updates += opt.degenerate_updates();
    result.max_drop = std::max(result.max_drop, opt.max_drop());
    optima.push_back(opt.value());
    if (opt.value() > best) {
      best = opt.value();
      result.ansatz = opt.ansatz();
    }
  };

  int i = 0;
  for (; i < options.restarts; ++i) run_restart(i);
  const auto [lo0, hi0] = std::minmax_element(optima.begin(), optima.end());
  if (*hi0 - *lo0 > 1e-8) {
    for (; i < options.escalated_restarts; ++i) run_restart(i);
  }

  result.restarts = i;
  result.p_max = std::clamp(best, 0.0, 1.0);
  const auto [lo, hi] = std::minmax_element(optima.begin(), optima.end());
  result.spread = *hi - *lo;
  const auto agreeing = std::count_if(optima.begin(), optima.end(),
                                      [best](double v) { return best - v <= 1e-8; });
  result.converged = 2 * agreeing >= result.restarts;
  return result;
}

namespace {

// Largest squared singular value of [[m00, m01], [m10, m11]].
double top_singular_squared(Complex m00, Complex m01, Complex m10, Complex m11) {
  const double frob = std::norm(m00) + std::norm(m01) + std::norm(m10) + std::norm(m11);
  const double det = std::norm(m00 * m11 - m01 * m10);
  return 0.5 * (frob + std::sqrt(std::max(0.0, frob * frob - 4.0 * det)));
}

// Best product overlap over the last two qubits after fixing qubit 1 of a
// three-qubit state to cos(theta)|0> + e^{i gamma} sin(theta)|1>.
double three_qubit_objective(std::span<const Complex> a, double theta, double gamma) {
  const Complex c0 = std::cos(theta);
  const Complex c1 = std::polar(std::sin(theta), -gamma);
  std::array<Complex, 4> m;
  for (int r = 0; r < 4; ++r) m[r] = c0 * a[r] + c1 * a[4 + r];
  return top_singular_squared(m[0], m[1], m[2], m[3]);
}

}  // namespace

double brute_force_pmax(const StateVector& state, int grid_resolution) {
  const int n = state.num_qubits();
  if (n > kBruteForceMaxQubits) {
    throw std::invalid_argument("brute_force_pmax supports at most " +
                                std::to_string(kBruteForceMaxQubits) + " qubits");
  }
  if (grid_resolution < 2) throw std::invalid_argument("grid resolution must be >= 2");
  const auto a = state.amplitudes();
  if (n == 1) return state.norm_squared();
  if (n == 2) return top_singular_squared(a[0], a[1], a[2], a[3]);

  // theta in [0, pi/2] and gamma in [0, 2 pi) cover every single-qubit state
  // up to a global phase.
  const double theta_step = (std::numbers::pi / 2.0) / grid_resolution;
  const double gamma_step = kTwoPi / grid_resolution;
  double best = -1.0;
  double best_theta = 0.0;
  double best_gamma = 0.0;
  for (int i = 0; i <= grid_resolution; ++i) {
    for (int j = 0; j < grid_resolution; ++j) {
      const double v = three_qubit_objective(a, i * theta_step, j * gamma_step);
      if (v > best) {
        best = v;
        best_theta = i * theta_step;
        best_gamma = j * gamma_step;
      }
    }
  }

  // Pattern search on a shrinking 3x3 stencil around the best cell.
  double h_theta = theta_step;
  double h_gamma = gamma_step;
  while (h_theta > 1e-12) {
    bool moved = false;
    for (int di = -1; di <= 1; ++di) {
      for (int dj = -1; dj <= 1; ++dj) {
        if (di == 0 && dj == 0) continue;
        const double t = best_theta + di * h_theta;
        const double g = best_gamma + dj * h_gamma;
        const double v = three_qubit_objective(a, t, g);
        if (v > best) {
          best = v;
          best_theta = t;
          best_gamma = g;
          moved = true;
        }
      }
    }
    if (!moved) {
      h_theta /= 2.0;
      h_gamma /= 2.0;
    }
  }
  return best;
}

}  // namespace shorent
