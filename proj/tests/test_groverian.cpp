#include "shorent/groverian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "shorent/rng.hpp"

using namespace shorent;

namespace {

constexpr double kPi = std::numbers::pi;

StateVector bell() {
  const double h = 1.0 / std::sqrt(2.0);
  return StateVector(std::vector<Complex>{h, 0, 0, h});
}

StateVector ghz3() {
  const double h = 1.0 / std::sqrt(2.0);
  std::vector<Complex> a(8);
  a[0] = a[7] = h;
  return StateVector(std::move(a));
}

StateVector w3() {
  const double t = 1.0 / std::sqrt(3.0);
  std::vector<Complex> a(8);
  a[1] = a[2] = a[4] = t;
  return StateVector(std::move(a));
}

ProductAnsatz random_angles(int L, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ProductAnsatz a;
  for (int k = 0; k < L; ++k) {
    a.theta.push_back(kPi * u(rng));
    a.gamma.push_back(2 * kPi * u(rng));
  }
  return a;
}

}  // namespace

TEST(Overlap, Examples) {
  const auto rp = make_random_product_state(6, 3);
  EXPECT_NEAR(std::abs(overlap(rp.state, rp.ansatz)), 1.0, 1e-12);

  const auto f = overlap(bell(), {{0, 0}, {0, 0}});
  EXPECT_NEAR(f.real(), 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(f.imag(), 0.0, 1e-12);

  EXPECT_NEAR(std::abs(overlap(make_basis_state(1, 1), {{0.0}, {0.0}})), 0.0, 1e-15);
  EXPECT_THROW(overlap(bell(), {{0.0}, {0.0}}), std::invalid_argument);
}

TEST(Overlap, MatchesDirectSum) {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const int L = 1 + trial % 7;
    const auto s = make_random_isotropic_state(L, rng);
    const auto a = random_angles(L, rng);
    EXPECT_NEAR(std::abs(overlap(s, a) - oracle::direct_overlap(s, a)), 0.0, 1e-12);
  }
}

TEST(SingleQubitUpdate, Examples) {
  auto u = optimal_single_qubit(1.0, 0.0);
  EXPECT_NEAR(u.theta, 0.0, 1e-12);
  EXPECT_NEAR(u.value, 1.0, 1e-12);

  const double h = 1 / std::sqrt(2.0);
  u = optimal_single_qubit(h, h);
  EXPECT_NEAR(u.theta, kPi / 4, 1e-12);
  EXPECT_NEAR(u.gamma, 0.0, 1e-12);
  EXPECT_NEAR(u.value, 1.0, 1e-12);

  // gamma = arg(0.6) - arg(0.8i) = -pi/2, wrapped to 3 pi / 2.
  u = optimal_single_qubit(0.6, Complex(0, 0.8));
  EXPECT_NEAR(u.theta, std::acos(0.6), 1e-12);
  EXPECT_NEAR(u.gamma, 1.5 * kPi, 1e-12);
  EXPECT_NEAR(u.value, 1.0, 1e-12);
  const Complex f = 0.6 * std::cos(u.theta) + Complex(0, 0.8) * std::polar(std::sin(u.theta), u.gamma);
  EXPECT_NEAR(std::norm(f), 1.0, 1e-12);

  EXPECT_TRUE(optimal_single_qubit(0.0, 0.0).degenerate);
}

TEST(SingleQubitUpdate, AttainsClosedFormMaximumOnGrid) {
  Rng rng(23);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    const Complex c(g(rng), g(rng)), d(g(rng), g(rng));
    const auto u = optimal_single_qubit(c, d);
    double grid_best = 0.0;
    for (int i = 0; i <= 200; ++i) {
      for (int j = 0; j < 200; ++j) {
        const double th = kPi * i / 200, ga = 2 * kPi * j / 200;
        grid_best = std::max(grid_best, std::norm(c * std::cos(th) + d * std::polar(std::sin(th), ga)));
      }
    }
    EXPECT_GE(u.value + 1e-12, grid_best);
    EXPECT_NEAR(std::norm(c * std::cos(u.theta) + d * std::polar(std::sin(u.theta), u.gamma)), u.value, 1e-12);
  }
}

TEST(CoordinateAscent, CoefficientsMatchEnumeration) {
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const int L = 1 + trial % 6;
    const auto s = make_random_isotropic_state(L, rng);
    const CoordinateAscent opt(s, random_angles(L, rng));
    for (int k = 1; k <= L; ++k) {
      const auto [c, d] = opt.coefficients(k);
      const auto [c0, d0] = oracle::direct_coefficients(s, opt.ansatz(), k);
      EXPECT_NEAR(std::abs(c - c0), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(d - d0), 0.0, 1e-12);
    }
  }
}

TEST(CoordinateAscent, UpdateReachesClosedFormValue) {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int L = 2 + trial % 5;
    const auto s = make_random_isotropic_state(L, rng);
    CoordinateAscent opt(s, random_angles(L, rng));
    for (int k = 1; k <= L; ++k) {
      const auto [c, d] = opt.coefficients(k);
      const double before = opt.value();
      const double after = opt.update_single_qubit(k);
      EXPECT_NEAR(after, std::norm(c) + std::norm(d), 1e-12);
      EXPECT_NEAR(after, std::norm(oracle::direct_overlap(s, opt.ansatz())), 1e-12);
      EXPECT_GE(after, before - 1e-12);
    }
  }
}

TEST(CoordinateAscent, SweepEqualsSequentialUpdates) {
  Rng rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const int L = 2 + trial % 7;
    const auto s = make_random_isotropic_state(L, rng);
    const auto start = random_angles(L, rng);
    CoordinateAscent fast(s, start);
    CoordinateAscent slow(s, start);
    for (int round = 0; round < 3; ++round) {
      fast.sweep();
      for (int k = 1; k <= L; ++k) slow.update_single_qubit(k);
      EXPECT_NEAR(fast.value(), slow.value(), 1e-12);
      for (int k = 0; k < L; ++k) {
        EXPECT_NEAR(fast.ansatz().theta[k], slow.ansatz().theta[k], 1e-9);
      }
    }
    EXPECT_NEAR(fast.value(), std::norm(oracle::direct_overlap(s, fast.ansatz())), 1e-12);
  }
}

TEST(CoordinateAscent, DegenerateUpdateKeepsAngles) {
  // |11> against an ansatz whose qubit 2 is |0>: c_1 = d_1 = 0.
  const auto s = make_basis_state(2, 3);
  CoordinateAscent opt(s, {{0.3, 0.0}, {0.7, 0.0}});
  const auto [c, d] = opt.coefficients(1);
  EXPECT_EQ(std::abs(c), 0.0);
  EXPECT_EQ(std::abs(d), 0.0);
  opt.update_single_qubit(1);
  EXPECT_EQ(opt.ansatz().theta[0], 0.3);
  EXPECT_EQ(opt.ansatz().gamma[0], 0.7);
  EXPECT_EQ(opt.degenerate_updates(), 1);
  // Qubit 2 can still move and then the optimum is reached.
  opt.sweep();
  opt.sweep();
  EXPECT_NEAR(opt.value(), 1.0, 1e-12);
}

TEST(CoordinateAscent, AscentIsMonotone) {
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const int L = 2 + trial % 9;
    const auto s = make_random_isotropic_state(L, rng);
    CoordinateAscent opt(s, random_angles(L, rng));
    double prev = opt.value();
    for (int sweep = 0; sweep < 20; ++sweep) {
      const double v = opt.sweep();
      EXPECT_GE(v, prev - 1e-12);
      prev = v;
    }
    EXPECT_LE(opt.max_drop(), 1e-12);
  }
}

TEST(Maximize, ProductStatesAreUnentangled) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto rp = make_random_product_state(1 + static_cast<int>(seed % 8), seed);
    const auto r = maximize(rp.state, {}, seed);
    EXPECT_NEAR(r.p_max, 1.0, 1e-9);
    EXPECT_LE(r.g(), 1e-4);
    EXPECT_TRUE(r.converged);
  }
}

TEST(Maximize, BellState) {
  const auto r = maximize(bell(), {}, 1);
  EXPECT_NEAR(r.p_max, 0.5, 1e-6);
  EXPECT_NEAR(r.g(), std::sqrt(0.5), 1e-6);
}

TEST(Maximize, PeriodicStateOddPartThree) {
  const auto r = maximize(make_periodic_state({10, 3, 0}), {}, 2);
  EXPECT_NEAR(r.p_max, 1.0 / 3.0, 0.02);
}

TEST(Maximize, PowerOfTwoPeriodsAreProductStates) {
  for (int L : {3, 6, 9}) {
    for (std::uint64_t r : {1u, 2u, 4u, 8u}) {
      if (r > (1u << L)) continue;
      for (std::uint64_t l = 0; l < r; l += 3) {
        const auto res = maximize(make_periodic_state({L, r, l}), {}, 3);
        EXPECT_LE(res.g(), 1e-6) << "L=" << L << " r=" << r << " l=" << l;
      }
    }
  }
}

TEST(Maximize, ResultInvariants) {
  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const int L = 1 + trial % 8;
    const auto s = make_random_isotropic_state(L, rng);
    const auto r = maximize(s, {.restarts = 8}, trial);
    EXPECT_NEAR(r.g() * r.g() + r.p_max, 1.0, 1e-12);
    EXPECT_LE(r.g(), std::sqrt(1.0 - std::ldexp(1.0, -L)) + 1e-9);
    EXPECT_GE(r.p_max, std::ldexp(1.0, -L) - 1e-12);
    EXPECT_NEAR(std::norm(overlap(s, r.ansatz)), r.p_max, 1e-12);
    EXPECT_EQ(static_cast<int>(r.sweeps_used.size()), r.restarts);
    EXPECT_GE(r.restarts, 8);
    EXPECT_LE(r.max_drop, 1e-12);
    for (double g : r.ansatz.gamma) {
      EXPECT_GE(g, 0.0);
      EXPECT_LT(g, 2 * kPi);
    }
  }
}

TEST(Maximize, DeterministicForSeed) {
  const auto s = make_random_isotropic_state(6, 5);
  const auto a = maximize(s, {}, 77);
  const auto b = maximize(s, {}, 77);
  EXPECT_EQ(a.p_max, b.p_max);
  EXPECT_EQ(a.ansatz.theta, b.ansatz.theta);
}

TEST(Maximize, EscalatesWhenRestartsDisagree) {
  // Random 9-qubit states have several local maxima.
  const auto s = make_random_isotropic_state(9, 3);
  const auto r = maximize(s, {.restarts = 8, .escalated_restarts = 32}, 1);
  EXPECT_GT(r.spread, 1e-8);
  EXPECT_EQ(r.restarts, 32);
  const auto fixed = maximize(s, {.restarts = 8, .escalated_restarts = 0}, 1);
  EXPECT_EQ(fixed.restarts, 8);
  EXPECT_GE(r.p_max, fixed.p_max);
}

TEST(Maximize, LocalUnitaryInvariance) {
  Rng rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const int L = 2 + trial % 5;
    const auto s = make_random_isotropic_state(L, rng);
    StateVector t = s;
    for (int k = 1; k <= L; ++k) t = oracle::apply_local_unitary(t, oracle::random_unitary2(rng), k);
    const double p1 = maximize(s, {}, 1).p_max;
    const double p2 = maximize(t, {}, 2).p_max;
    EXPECT_NEAR(p1, p2, 1e-4) << "L=" << L;
  }
}

TEST(Maximize, PermutationCovariance) {
  Rng rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    const int L = 2 + trial % 5;
    const auto s = make_random_isotropic_state(L, rng);
    std::vector<int> perm(L);
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto t = s.permuted(perm);
    const auto rs = maximize(s, {}, 5);
    const auto rt = maximize(t, {}, 6);
    EXPECT_NEAR(rs.p_max, rt.p_max, 1e-8);
    // The optimal ansatz of s, relabeled, is optimal for t.
    ProductAnsatz moved{std::vector<double>(L), std::vector<double>(L)};
    for (int k = 0; k < L; ++k) {
      moved.theta[perm[k] - 1] = rs.ansatz.theta[k];
      moved.gamma[perm[k] - 1] = rs.ansatz.gamma[k];
    }
    EXPECT_NEAR(std::norm(overlap(t, moved)), rt.p_max, 1e-8);
  }
}

TEST(BruteForce, KnownStates) {
  EXPECT_NEAR(brute_force_pmax(bell(), 64), 0.5, 1e-3);
  EXPECT_NEAR(brute_force_pmax(ghz3(), 64), 0.5, 1e-3);
  EXPECT_NEAR(brute_force_pmax(w3(), 64), 4.0 / 9.0, 1e-3);
  EXPECT_NEAR(brute_force_pmax(make_random_isotropic_state(1, 1), 8), 1.0, 1e-12);
  EXPECT_THROW(brute_force_pmax(make_equal_superposition(4), 16), std::invalid_argument);
}

TEST(BruteForce, IsAValidLowerBoundAndConvergesUnderRefinement) {
  // Coarse and fine grids agree after refinement on the W state.
  EXPECT_NEAR(brute_force_pmax(w3(), 16), brute_force_pmax(w3(), 128), 1e-9);
}

TEST(BruteForce, AgreesWithOptimizer) {
  Rng rng(59);
  for (int trial = 0; trial < 15; ++trial) {
    const int L = 1 + trial % 3;
    const auto s = make_random_isotropic_state(L, rng);
    EXPECT_NEAR(maximize(s, {}, trial).p_max, brute_force_pmax(s, 64), 1e-3);
  }
  EXPECT_NEAR(maximize(w3(), {}, 1).p_max, brute_force_pmax(w3(), 64), 1e-6);
}
