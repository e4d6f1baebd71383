#include <cmath>

#include <gtest/gtest.h>

#include "gvbound/synthesis.hpp"

using namespace gvbound;
using namespace gvbound::synthesis;

namespace {

std::vector<std::string> all_words(int n) {
  std::vector<std::string> words{""};
  for (int k = 0; k < n; ++k) {
    std::vector<std::string> grown;
    for (const auto& w : words)
      for (char c : kAlphabet) grown.push_back(w + c);
    words = std::move(grown);
  }
  return words;
}

BigInt pow_big(unsigned base, unsigned e) { return boost::multiprecision::pow(BigInt{base}, e); }

}  // namespace

TEST(Strand, Validation) {
  EXPECT_THROW(Strand("ACGU"), DomainError);
  EXPECT_EQ(Strand("ACGT").size(), 4u);
}

TEST(SynthesisTime, FigureExamples) {
  EXPECT_EQ(synthesis_time(Strand("CTACG")), 7);
  EXPECT_EQ(synthesis_time(Strand("AGTA")), 5);
  EXPECT_EQ(synthesis_time(Strand("CTT")), 8);
  EXPECT_EQ(synthesis_time(Strand("TTTT")), 16);
  EXPECT_EQ(synthesis_time(Strand("ACGTACGT")), 8);
  EXPECT_THROW(synthesis_time(Strand("")), DomainError);
}

TEST(SynthesisTime, BoundsAndSupersequenceCrossCheck) {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& w : all_words(n)) {
      const Strand s(w);
      const int t = synthesis_time(s);
      ASSERT_GE(t, n);
      ASSERT_LE(t, 4 * n);
      ASSERT_TRUE(is_producible(s, t)) << w;
      ASSERT_FALSE(is_producible(s, t - 1)) << w;
    }
  }
}

TEST(Hamming, Examples) {
  EXPECT_EQ(hamming_distance(Strand("ACGT"), Strand("ACGT")), 0);
  EXPECT_EQ(hamming_distance(Strand("ACGT"), Strand("TCGA")), 2);
  EXPECT_EQ(hamming_distance(Strand("AAAA"), Strand("CCCC")), 4);
  EXPECT_THROW(hamming_distance(Strand("AC"), Strand("ACG")), DimensionMismatch);
}

TEST(WordCounts, Examples) {
  EXPECT_EQ(count_words_exact(1, 4), 4);
  EXPECT_EQ(count_words_exact(1, 2), 2);
  EXPECT_EQ(count_words_exact(2, 8), 16);
  BigInt brute = 0;
  for (const auto& w : all_words(2)) brute += synthesis_time(Strand(w)) <= 8;
  EXPECT_EQ(brute, 16);
}

TEST(WordCounts, MatchEnumeration) {
  for (int n = 1; n <= 6; ++n) {
    const auto by_time = count_words_by_time(n);
    std::vector<BigInt> brute(by_time.size());
    for (const auto& w : all_words(n)) brute[static_cast<std::size_t>(synthesis_time(Strand(w)))] += 1;
    EXPECT_EQ(by_time, brute) << n;
  }
}

TEST(WordCounts, Mass) {
  for (int n = 0; n <= 30; ++n) {
    BigInt total = 0;
    for (const auto& c : count_words_by_time(n)) total += c;
    EXPECT_EQ(total, pow_big(4, static_cast<unsigned>(n)));
  }
}

TEST(PairCounts, Examples) {
  EXPECT_EQ(count_pairs_exact(1, 2, 0), 1);
  EXPECT_EQ(count_pairs_exact(1, 5, 1), 4);
  EXPECT_EQ(pair_counts<BigInt>(1).sum(), 16);
  EXPECT_EQ(count_pairs_bruteforce(2, 4, 0), 1);
  BigInt total = 0;
  for (const auto& [key, count] : pair_buckets_bruteforce(2)) total += count;
  EXPECT_EQ(total, 256);
  EXPECT_THROW(pair_buckets_bruteforce(7), SizeLimit);
}

TEST(PairCounts, OracleEquivalence) {
  for_each_length<BigInt>(PairCaps{5}, [](int n, const TimeDistanceGrid<BigInt>& g) {
    const auto buckets = pair_buckets_bruteforce(n);
    BigInt covered = 0;
    for (const auto& [key, count] : buckets) {
      ASSERT_EQ(g.get(key.first, key.second), count) << n << " t=" << key.first << " s=" << key.second;
      covered += count;
    }
    ASSERT_EQ(g.sum(), covered);
  });
}

TEST(PairCounts, Mass) {
  for_each_length<BigInt>(PairCaps{20}, [](int n, const TimeDistanceGrid<BigInt>& g) {
    ASSERT_EQ(g.sum(), pow_big(16, static_cast<unsigned>(n))) << n;
  });
}

TEST(PairCounts, VanishOutsideSupport) {
  const auto g = pair_counts<BigInt>(6);
  for (int t = 0; t <= g.t_max(); ++t)
    for (int s = 0; s <= g.s_max(); ++s)
      if (t < 2 * 6) EXPECT_EQ(g.at(t, s), 0);
}

TEST(CostPairs, AgreeOnMarginalsOnly) {
  // Same totals per time, same values for n <= 1, different distance profiles for n >= 2.
  for (int n = 0; n <= 8; ++n) {
    const auto strands = pair_counts<BigInt>(n);
    const auto costs = cost_pair_counts<BigInt>(n);
    EXPECT_EQ(costs.sum(), pow_big(16, static_cast<unsigned>(n)));
    for (int t = 0; t <= 8 * n; ++t) {
      BigInt a = 0, b = 0;
      for (int s = 0; s <= n; ++s) {
        a += strands.at(t, s);
        b += costs.at(t, s);
      }
      EXPECT_EQ(a, b) << n << " " << t;
    }
    if (n <= 1) {
      for (int t = 0; t <= 8 * n; ++t)
        for (int s = 0; s <= n; ++s) EXPECT_EQ(strands.at(t, s), costs.at(t, s));
    }
  }
  const auto strands = pair_counts<BigInt>(2);
  const auto costs = cost_pair_counts<BigInt>(2);
  int differing = 0;
  for (int t = 0; t <= 16; ++t)
    for (int s = 0; s <= 2; ++s) differing += strands.at(t, s) != costs.at(t, s);
  EXPECT_GT(differing, 0);
}

TEST(CostPairs, GeneratingFunctionRecursion) {
  // M(n,t,s) = sum_i M(n-1,t-2i,s) + 2 sum_{i<j} M(n-1,t-i-j,s-1)
  const auto prev = cost_pair_counts<BigInt>(4);
  const auto cur = cost_pair_counts<BigInt>(5);
  for (int t = 0; t <= 40; ++t)
    for (int s = 0; s <= 5; ++s) {
      BigInt v = 0;
      for (int i = 1; i <= 4; ++i) v += prev.get(t - 2 * i, s);
      for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) v += 2 * prev.get(t - i - j, s - 1);
      EXPECT_EQ(cur.get(t, s), v);
    }
}

TEST(PairCounts, LogDomainTracksExact) {
  const auto exact = pair_counts<BigInt>(12);
  const auto approx = pair_counts<Log2Count>(12);
  for (int t = 0; t <= exact.t_max(); ++t)
    for (int s = 0; s <= exact.s_max(); ++s) {
      if (exact.at(t, s) == 0) {
        EXPECT_TRUE(approx.at(t, s).is_zero());
      } else {
        EXPECT_NEAR(approx.at(t, s).log2(), log2_big(exact.at(t, s)), 1e-9);
      }
    }
}

TEST(PairCounts, BudgetEnforced) {
  EXPECT_THROW(for_each_length<BigInt>(PairCaps{3000}, [](int, const TimeDistanceGrid<BigInt>&) {}), ResourceLimit);
}

TEST(Capacity, Anchors) {
  EXPECT_NEAR(capacity(2.5), 2.0, 1e-12);
  EXPECT_DOUBLE_EQ(capacity(4.0), 2.0);
  EXPECT_NEAR(capacity(2.0), 1.8522859940752383, 1e-10);
  EXPECT_NEAR(capacity(1.5), 1.3563435617464668, 1e-10);
  EXPECT_THROW(capacity(1.0), DomainError);
  EXPECT_THROW(capacity(0.5), DomainError);
}

TEST(Capacity, KneeCubicRoot) {
  const auto cp = capacity_point(2.5 - 1e-12);
  EXPECT_NEAR(cp.y, 1.0, 1e-9);
  EXPECT_NEAR(cp.x, 0.25, 1e-9);
}

TEST(Capacity, MatchesWordCounts) {
  const int n = 100;
  const double rate = log2_big(count_words_exact(n, 2 * n)) / n;
  EXPECT_LE(std::abs(rate - capacity(2.0)), 0.1);
}

TEST(Capacity, Nondecreasing) {
  double prev = 0.0;
  for (double tau = 1.02; tau <= 4.0; tau += 0.02) {
    const double c = capacity(tau);
    EXPECT_GE(c, prev - 1e-12) << tau;
    EXPECT_LE(c, 2.0 + 1e-12);
    prev = c;
  }
}

TEST(Capacity, AgreesWithGenericSolver) {
  for (double tau : {1.3, 1.8, 2.2}) {
    const auto cp = acsv::solve_critical_point(word_denominator(), acsv::Direction({1.0, tau}),
                                               std::vector<double>{0.3, 0.5});
    EXPECT_NEAR(acsv::growth_exponent(cp), capacity(tau), 1e-9) << tau;
  }
}

TEST(CriticalPoint, ResidualsOnGrid) {
  for (double tau : {1.5, 2.0}) {
    const double dmax = delta_max(tau).delta_max;
    for (double delta = 0.05; delta < dmax; delta += 0.05) {
      const auto cp = critical_point(tau, delta);
      EXPECT_LE(cp.residual_norm(), 1e-9) << tau << " " << delta;
    }
  }
}

TEST(CriticalPoint, FrozenValues) {
  const auto cp = critical_point(2.0, 0.1);
  const double exponent = -std::log2(cp.x_hat) - 4.0 * std::log2(cp.y_hat) - 0.1 * std::log2(cp.z_hat);
  EXPECT_NEAR(exponent, 2.4687748375220018, 1e-10);
  EXPECT_NEAR(ball_rate_upper(2.0, 0.1).value, 2.4687748375220018, 1e-10);
  EXPECT_NEAR(ball_rate_upper(1.5, 0.1).value, 1.9272596635324653, 1e-10);
}

TEST(CriticalPoint, SmallDeltaLimit) {
  // z-hat -> 0 and the ball rate tends to Cap(tau) (the diagonal pairs).
  double prev = 1e9;
  for (double delta : {1e-2, 1e-3, 1e-4}) {
    const auto cp = critical_point(2.0, delta);
    EXPECT_LT(cp.z_hat, prev);
    prev = cp.z_hat;
  }
  EXPECT_NEAR(ball_rate_upper(2.0, 1e-6).value, capacity(2.0), 1e-4);
}

TEST(CriticalPoint, MatchesNewton) {
  for (double tau : {1.5, 1.75, 2.0, 2.25})
    for (double delta : {0.05, 0.2, 0.4}) {
      if (delta >= delta_max(tau).delta_max) continue;
      const auto cf = critical_point(tau, delta);
      const auto cp = acsv::solve_critical_point(pair_system(), acsv::Direction({1.0, 2 * tau, delta}),
                                                 std::vector<double>{cf.x_hat * 1.1, cf.y_hat * 0.9, cf.z_hat * 1.1});
      EXPECT_NEAR(cp.z[0], cf.x_hat, 1e-8);
      EXPECT_NEAR(cp.z[1], cf.y_hat, 1e-8);
      EXPECT_NEAR(cp.z[2], cf.z_hat, 1e-8);
    }
}

TEST(CriticalPoint, Domain) {
  EXPECT_THROW(critical_point(2.0, 0.0), DomainError);
  EXPECT_THROW(critical_point(2.0, 1.0), DomainError);
  EXPECT_THROW(critical_point(3.0, 0.1), DomainError);
}

TEST(CriticalPoint, ZHatIncreasesWithDelta) {
  for (double tau : {1.5, 2.0}) {
    const double dmax = delta_max(tau).delta_max;
    double prev = 0.0;
    for (double delta = 0.01; delta < dmax; delta += 0.01) {
      const double z = critical_point(tau, delta).z_hat;
      EXPECT_GT(z, prev);
      prev = z;
    }
  }
}

TEST(DeltaMax, Values) {
  EXPECT_NEAR(delta_max(1.5).delta_max, 0.5165884174654594, 1e-10);
  EXPECT_NEAR(delta_max(2.0).delta_max, 0.6983041263680461, 1e-10);
  EXPECT_NEAR(delta_max(2.25).delta_max, 0.737398576796776, 1e-10);
  EXPECT_THROW(delta_max(2.5), DomainError);
}

TEST(DeltaMax, Properties) {
  double prev = 0.0;
  for (double tau : {1.5, 1.75, 2.0, 2.25}) {
    const auto dm = delta_max(tau);
    EXPECT_GT(dm.delta_max, prev);
    prev = dm.delta_max;
    EXPECT_NEAR(dm.y_min, capacity_point(tau).y, 1e-9);
    EXPECT_NEAR(critical_point(tau, dm.delta_max * (1 - 1e-10)).z_hat, 1.0, 1e-6);
    EXPECT_NEAR(ball_rate_upper(tau, dm.delta_max * (1 - 1e-10)).value, 2 * capacity(tau), 1e-6);
    const Rate sat = ball_rate_upper(tau, dm.delta_max);
    EXPECT_TRUE(sat.flags.has(Flag::Saturated));
    EXPECT_DOUBLE_EQ(sat.value, 2 * capacity(tau));
  }
}

TEST(BallRate, HighTauBranch) {
  EXPECT_NEAR(ball_rate_upper(3.0, 0.75).value, 4.0, 1e-12);
  EXPECT_DOUBLE_EQ(ball_rate_upper(3.0, 0.9).value, 4.0);
  EXPECT_DOUBLE_EQ(ball_rate_upper(2.5, 0.0).value, 2.0);
  EXPECT_NEAR(ball_rate_upper(3.0, 0.3).value, 2.0 + entropy(0.3) + 0.3 * std::log2(3.0), 1e-12);
  EXPECT_TRUE(ball_rate_upper(3.0, 0.3).flags.has(Flag::UpperBound));
}

TEST(BallRate, DiagonalAtZeroDistance) {
  EXPECT_DOUBLE_EQ(ball_rate_upper(2.0, 0.0).value, capacity(2.0));
  EXPECT_DOUBLE_EQ(gv_rate(2.0, 0.0).value, capacity(2.0));
}

TEST(BallRate, Domain) {
  EXPECT_THROW(ball_rate_upper(1.0, 0.1), DomainError);
  EXPECT_THROW(ball_rate_upper(2.0, 1.1), DomainError);
}

TEST(Bounds, Values) {
  EXPECT_NEAR(gv_rate(2.0, 0.1).value, 1.2357971506284748, 1e-10);
  EXPECT_NEAR(gv_rate(1.5, 0.1).value, 0.7854274599604683, 1e-10);
  EXPECT_NEAR(simple_lb_rate(2.0, 0.1).value, capacity(2.0) - entropy(0.1) - 0.1 * std::log2(3.0), 1e-12);
  EXPECT_NEAR(simple_lb_rate(2.0, 0.1).value, 1.2247941504138413, 1e-10);
  EXPECT_DOUBLE_EQ(simple_lb_rate(2.0, 0.0).value, capacity(2.0));
  EXPECT_NEAR(simple_lb_rate(3.0, 0.75).value, 0.0, 1e-12);
  EXPECT_GT(gv_rate(1.5, 0.05).value, 0.0);
}

TEST(Bounds, GvZeroFromDeltaMaxOn) {
  for (double tau : {1.5, 2.0}) {
    const double dmax = delta_max(tau).delta_max;
    EXPECT_GT(gv_rate(tau, dmax * 0.99).value, 0.0);
    EXPECT_DOUBLE_EQ(gv_rate(tau, dmax).value, 0.0);
    EXPECT_DOUBLE_EQ(gv_rate(tau, 0.9).value, 0.0);
  }
}

TEST(Bounds, GvDominatesSimple) {
  for (double tau : {1.5, 2.0, 3.0})
    for (int i = 0; i <= 100; ++i) {
      const double delta = i / 100.0;
      EXPECT_GE(gv_rate(tau, delta).value, simple_lb_rate(tau, delta).value - 1e-12) << tau << " " << delta;
    }
}

TEST(Convergence, CostPairBallApproachesRateFromBelow) {
  // log2 of sum_{t <= 2 tau n, s <= delta n} M(n,t,s), per symbol
  const double tau = 2.0, delta = 0.1;
  const double target = ball_rate_upper(tau, delta).value;
  std::vector<double> rates;
  const std::vector<int> lengths{20, 40, 60, 80, 100};
  for_each_length_cost_pairs<Log2Count>(
      PairCaps{100, static_cast<int>(2 * tau * 100), static_cast<int>(delta * 100)},
      [&](int n, const TimeDistanceGrid<Log2Count>& g) {
        if (n == 0 || n % 20 != 0) return;
        rates.push_back(g.ball(static_cast<int>(2 * tau * n), static_cast<int>(delta * n)).log2() / n);
      });
  ASSERT_EQ(rates.size(), lengths.size());
  double prev_gap = 1e9;
  for (double r : rates) {
    EXPECT_LT(r, target);
    EXPECT_LT(target - r, prev_gap);
    prev_gap = target - r;
  }
}

TEST(Convergence, StrandPairBallStaysBelowRate) {
  const double tau = 2.0, delta = 0.1;
  const double target = ball_rate_upper(tau, delta).value;
  double prev = 0.0;
  for_each_length<Log2Count>(
      PairCaps{100, static_cast<int>(2 * tau * 100), static_cast<int>(delta * 100)},
      [&](int n, const TimeDistanceGrid<Log2Count>& g) {
        if (n == 0 || n % 20 != 0) return;
        const double r = g.ball(static_cast<int>(2 * tau * n), static_cast<int>(delta * n)).log2() / n;
        EXPECT_LT(r, target);
        EXPECT_GT(r, prev);
        prev = r;
      });
}
