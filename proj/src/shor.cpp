#include "shorent/shor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "shorent/rng.hpp"

namespace shorent {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus) {
  if (modulus == 1) return 0;
  unsigned __int128 result = 1;
  unsigned __int128 b = base % modulus;
  while (exponent > 0) {
    if (exponent & 1U) result = result * b % modulus;
    b = b * b % modulus;
    exponent >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

int choose_register_size(std::uint64_t n) {
  if (n < 3) throw std::invalid_argument("N must be at least 3");
  if (n > (std::uint64_t{1} << 31)) throw std::invalid_argument("N too large for a 64-bit register size");
  const std::uint64_t n2 = n * n;
  int L = 1;
  while ((std::uint64_t{1} << L) <= n2) ++L;
  return L;
}

std::vector<std::uint64_t> modexp_table(std::uint64_t n, std::uint64_t y, std::uint64_t q) {
  std::vector<std::uint64_t> table(q);
  std::uint64_t v = 1 % n;
  for (std::uint64_t a = 0; a < q; ++a) {
    table[a] = v;
    v = v * y % n;
  }
  return table;
}

std::optional<std::uint64_t> find_order(std::uint64_t n, std::uint64_t y) {
  if (std::gcd(n, y) != 1) return std::nullopt;
  std::uint64_t v = y % n;
  for (std::uint64_t r = 1; r <= n; ++r) {
    if (v == 1 % n) return r;
    v = v * y % n;
  }
  return std::nullopt;
}

ShorInstance ShorInstance::make(std::uint64_t n, std::uint64_t y) {
  if (n < 3) throw std::invalid_argument("N must be at least 3");
  if (is_prime(n)) throw std::invalid_argument(std::to_string(n) + " is prime");
  if (y <= 1 || y + 1 >= n) {
    throw std::invalid_argument("y must satisfy 1 < y < N-1, got y = " + std::to_string(y));
  }
  const int L = choose_register_size(n);
  if (L > kMaxQubits) throw std::invalid_argument("N too large for a dense simulation");
  return {n, y, L};
}

std::string to_string(ShorStatus status) {
  switch (status) {
    case ShorStatus::Factored: return "factored";
    case ShorStatus::OddOrder: return "odd_order";
    case ShorStatus::TrivialRoot: return "trivial_root";
    case ShorStatus::ApproxFailed: return "approx_failed";
    case ShorStatus::NonCoprimeShortcut: return "non_coprime_shortcut";
  }
  return "unknown";
}

PreprocessResult preprocess(const ShorInstance& instance, PreprocessMode mode, Rng& rng) {
  const std::uint64_t q = instance.q();
  const auto table = modexp_table(instance.n, instance.y, q);

  std::uint64_t shift = 0;
  if (mode.kind == PreprocessMode::Kind::Sample) {
    // Each index a is equally likely, so sampling a uniformly selects the
    // residue class of y^a with probability proportional to its size.
    std::uniform_int_distribution<std::uint64_t> pick(0, q - 1);
    const std::uint64_t a = pick(rng);
    shift = static_cast<std::uint64_t>(std::find(table.begin(), table.end(), table[a]) - table.begin());
  } else {
    shift = mode.shift;
    if (shift >= q) throw std::invalid_argument("shift must be smaller than q");
    const auto first = std::find(table.begin(), table.end(), table[shift]) - table.begin();
    if (static_cast<std::uint64_t>(first) != shift) {
      throw std::invalid_argument("shift " + std::to_string(shift) +
                                  " is not the smallest index of its residue class (l >= r)");
    }
  }
  const std::uint64_t z = table[shift];

  std::vector<Complex> amps(q);
  std::uint64_t count = 0;
  for (std::uint64_t a = shift; a < q; ++a) {
    if (table[a] == z) {
      amps[a] = 1.0;
      ++count;
    }
  }
  const double norm = 1.0 / std::sqrt(static_cast<double>(count));
  for (Complex& amp : amps) amp *= norm;

  PreprocessResult result{z, shift, find_order(instance.n, instance.y), count,
                          StateVector(std::move(amps)), std::nullopt};
  const std::uint64_t g = std::gcd(instance.n, instance.y);
  if (g != 1) result.shortcut_factor = g;
  return result;
}

PreprocessResult preprocess(const ShorInstance& instance, PreprocessMode mode, std::uint64_t seed) {
  Rng rng(seed);
  return preprocess(instance, mode, rng);
}

QftSchedule build_qft_schedule(int num_qubits) {
  if (num_qubits < 1) throw std::invalid_argument("QFT needs at least one qubit");
  QftSchedule schedule{num_qubits, {}};
  schedule.gates.reserve(num_qubits * (num_qubits + 1) / 2);
  for (int k = num_qubits; k >= 1; --k) {
    for (int m = num_qubits; m > k; --m) schedule.gates.push_back(GateOp::controlled_phase(k, m));
    schedule.gates.push_back(GateOp::hadamard(k));
  }
  return schedule;
}

StateVector run_qft(StateVector state, const TraceCallback& trace) {
  const QftSchedule schedule = build_qft_schedule(state.num_qubits());
  state.reverse_qubits();
  int ordinal = 0;
  for (const GateOp& gate : schedule.gates) {
    state.apply(gate);
    ++ordinal;
    if (trace) trace(ordinal, gate, state);
  }
  return state;
}

std::optional<Convergent> continued_fraction_recover(std::uint64_t c, std::uint64_t q, std::uint64_t n) {
  if (q == 0 || c >= q) throw std::invalid_argument("continued_fraction_recover requires 0 <= c < q");
  // Convergents h/k of c/q via the standard recurrence.
  using Int = __int128;
  Int h_older = 0, h_old = 1;
  Int k_older = 1, k_old = 0;
  Int num = c, den = q;
  while (den != 0) {
    const Int a = num / den;
    const Int h = a * h_old + h_older;
    const Int k = a * k_old + k_older;
    h_older = h_old;
    h_old = h;
    k_older = k_old;
    k_old = k;
    if (k >= static_cast<Int>(n)) break;
    Int diff = static_cast<Int>(c) * k - h * static_cast<Int>(q);
    if (diff < 0) diff = -diff;
    if (2 * diff <= k) return Convergent{static_cast<std::uint64_t>(h), static_cast<std::uint64_t>(k)};
    const Int rem = num - a * den;
    num = den;
    den = rem;
  }
  return std::nullopt;
}

PostprocessResult postprocess(const ShorInstance& instance, std::uint64_t c) {
  if (c >= instance.q()) throw std::invalid_argument("measured index out of range");
  PostprocessResult result;
  result.c = c;
  result.convergent = continued_fraction_recover(c, instance.q(), instance.n);
  if (!result.convergent) return result;

  // j/r in lowest terms only yields r / gcd(j, r); small multiples recover r.
  const std::uint64_t s = result.convergent->denominator;
  if (result.convergent->numerator == 0) return result;
  const auto max_multiplier = static_cast<std::uint64_t>(std::bit_width(instance.n));
  std::uint64_t r = 0;
  for (std::uint64_t k = 1; k <= max_multiplier && k * s < instance.n; ++k) {
    if (mod_pow(instance.y, k * s, instance.n) == 1) {
      r = k * s;
      break;
    }
  }
  if (r == 0) return result;
  result.order = r;
  if (r % 2 == 1) {
    result.status = ShorStatus::OddOrder;
    return result;
  }
  const std::uint64_t x = mod_pow(instance.y, r / 2, instance.n);
  result.x = x;
  if (x == 1 || x == instance.n - 1) {
    result.status = ShorStatus::TrivialRoot;
    return result;
  }
  for (std::uint64_t cand : {std::gcd(x - 1, instance.n), std::gcd(x + 1, instance.n)}) {
    if (cand > 1 && cand < instance.n &&
        std::find(result.factors.begin(), result.factors.end(), cand) == result.factors.end()) {
      result.factors.push_back(cand);
    }
  }
  std::sort(result.factors.begin(), result.factors.end());
  result.status = result.factors.empty() ? ShorStatus::TrivialRoot : ShorStatus::Factored;
  return result;
}

namespace {

std::vector<std::uint64_t> split(std::uint64_t n, std::uint64_t p) {
  std::vector<std::uint64_t> out{p, n / p};
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

FactorReport factor(std::uint64_t n, const FactorOptions& options, std::uint64_t seed) {
  if (n < 3 || is_prime(n)) {
    throw std::invalid_argument(std::to_string(n) + (n < 3 ? " is too small" : " is prime"));
  }
  if (options.y) ShorInstance::make(n, *options.y);
  if (!options.y && n < 4) throw std::invalid_argument("no valid base y for N < 4");

  FactorReport report;
  report.n = n;
  Rng rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick_y(2, n - 2);

  std::uint64_t y = options.y ? *options.y : pick_y(rng);
  int attempts_on_y = 0;
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    if (!options.y && attempts_on_y >= options.attempts_per_y) {
      y = pick_y(rng);
      attempts_on_y = 0;
    }
    ++attempts_on_y;
    const ShorInstance instance = ShorInstance::make(n, y);

    PreprocessResult pre = preprocess(instance, PreprocessMode::sample(), rng);
    if (pre.is_shortcut()) {
      const auto factors = split(n, *pre.shortcut_factor);
      report.attempts.push_back({y, std::nullopt, std::nullopt, ShorStatus::NonCoprimeShortcut, factors});
      report.success = true;
      report.factors = factors;
      return report;
    }

    const StateVector out = run_qft(std::move(pre.state));
    std::vector<int> all(instance.num_qubits);
    std::iota(all.begin(), all.end(), 1);
    const std::uint64_t c = measure_subregister(out, all, rng).outcome;
    PostprocessResult post = postprocess(instance, c);
    report.attempts.push_back({y, pre.shift, c, post.status, post.factors});

    if (post.status == ShorStatus::Factored) {
      report.success = true;
      report.factors = split(n, post.factors.front());
      return report;
    }
    if (post.status == ShorStatus::OddOrder || post.status == ShorStatus::TrivialRoot) {
      // The order of y is a property of y alone; another measurement cannot help.
      if (options.y) break;
      attempts_on_y = options.attempts_per_y;
    }
  }
  return report;
}

std::string attempt_log_json(const FactorReport& report) {
  nlohmann::json arr = nlohmann::json::array();
  for (const AttemptRecord& a : report.attempts) {
    nlohmann::json entry;
    entry["y"] = a.y;
    entry["l"] = a.shift ? nlohmann::json(*a.shift) : nlohmann::json(nullptr);
    entry["c"] = a.c ? nlohmann::json(*a.c) : nlohmann::json(nullptr);
    entry["status"] = to_string(a.status);
    entry["factors"] = a.factors;
    arr.push_back(std::move(entry));
  }
  return arr.dump(2) + "\n";
}

}  // namespace shorent
