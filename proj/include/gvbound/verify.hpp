#pragma once

// Self-check suites: oracle equivalences, mass identities, critical-point
// residuals, knee continuity and bound orderings. Each check is isolated so a
// failure or exception in one does not stop the rest.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gvbound/acsv.hpp"
#include "gvbound/errors.hpp"
#include "gvbound/numeric.hpp"
#include "gvbound/sticky.hpp"
#include "gvbound/synthesis.hpp"

namespace gvbound::verify {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  int n_budget = 8;
  double tolerance = kDefaultTolerance;
};

namespace checks {

inline Outcome within(double err, double tol) {
  return {err <= tol, "max error " + gvbound::detail::fmt(err) + " (tolerance " + gvbound::detail::fmt(tol) + ")"};
}

// --- acsv ---

inline Outcome binomial_direction(const VerifyOptions& opt) {
  const auto x = SparsePolynomial::variable(2, 0);
  const auto y = SparsePolynomial::variable(2, 1);
  const auto h = 1.0 - x - y;
  std::mt19937 gen(12345);
  std::uniform_real_distribution<double> dist(0.1, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double a = dist(gen), b = dist(gen);
    const auto cp = acsv::solve_critical_point(h, acsv::Direction({a, b}), {opt.tolerance});
    worst = std::max(worst, std::abs(acsv::growth_exponent(cp) - (a + b) * entropy(a / (a + b))));
  }
  return within(worst, 1e-9);
}

inline Outcome scale_invariance(const VerifyOptions& opt) {
  const auto h = sticky::pair_denominator();
  const acsv::Direction r = sticky::pair_direction(0.3, 0.2);
  const std::vector<double> start{0.6, 0.6, 0.5, 0.5};
  const auto a = acsv::solve_critical_point(h, r, start, {opt.tolerance});
  const auto b = acsv::solve_critical_point(2.0 * h, r, start, {opt.tolerance});
  double worst = 0.0;
  for (std::size_t i = 0; i < a.z.size(); ++i) worst = std::max(worst, std::abs(a.z[i] - b.z[i]));
  return within(worst, 1e-9);
}

inline Outcome sticky_newton_vs_closed_form(const VerifyOptions& opt) {
  double worst = 0.0;
  for (double rho : {0.1, 0.2, 0.3, 0.4, 0.5}) {
    for (double beta : {0.05, 0.1, 0.15, 0.2}) {
      if (beta >= sticky::beta_max(rho)) continue;
      const auto cf = sticky::critical_point_closed_form(sticky::StickyParams(rho, beta));
      const std::vector<double> start{cf.x * 0.9, cf.x * 0.9, cf.y * 1.1, cf.z * 0.9};
      const auto nw = acsv::solve_critical_point(sticky::pair_system(), sticky::pair_direction(rho, 2 * beta),
                                                 start, {opt.tolerance});
      const double expect[] = {cf.x, cf.x, cf.y, cf.z};
      for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(nw.z[i] - expect[i]));
    }
  }
  return within(worst, 1e-8);
}

inline Outcome synthesis_newton_vs_closed_form(const VerifyOptions& opt) {
  double worst = 0.0;
  for (double tau : {1.5, 2.0}) {
    const double dmax = synthesis::delta_max(tau).delta_max;
    for (double delta = 0.05; delta < dmax; delta += 0.05) {
      const auto cf = synthesis::critical_point(tau, delta);
      const std::vector<double> start{cf.x_hat * 1.05, cf.y_hat * 0.95, cf.z_hat * 1.05};
      const auto nw = acsv::solve_critical_point(synthesis::pair_system(), acsv::Direction({1.0, 2 * tau, delta}),
                                                 start, {opt.tolerance});
      const double expect[] = {cf.x_hat, cf.y_hat, cf.z_hat};
      for (std::size_t i = 0; i < 3; ++i) worst = std::max(worst, std::abs(nw.z[i] - expect[i]));
    }
  }
  return within(worst, 1e-8);
}

// --- sticky ---

inline Outcome sticky_oracle(const VerifyOptions& opt) {
  const int n = std::clamp(opt.n_budget, 1, 8);
  const sticky::PairCountTable<BigInt> table(sticky::PairDims{n, n, n, 2 * n});
  long mismatches = 0, compared = 0;
  for (int n1 = 0; n1 <= n; ++n1)
    for (int n2 = 0; n2 <= n; ++n2)
      for (int r = 0; r <= std::min(n1, n2); ++r)
        for (int s = 0; s <= 2 * n; ++s, ++compared)
          mismatches += table(n1, n2, r, s) != sticky::count_pairs_bruteforce(n1, n2, r, s);
  return {mismatches == 0, std::to_string(compared) + " entries up to n=" + std::to_string(n) + ", " +
                               std::to_string(mismatches) + " mismatches"};
}

inline Outcome sticky_mass(const VerifyOptions& opt) {
  const int n = std::clamp(opt.n_budget, 1, 60);
  long bad = 0;
  sticky::for_each_layer<BigInt>(sticky::PairDims{n, n, n, 2 * n}, [&](int r, const sticky::Slab<BigInt>& slab) {
    for (int m = std::max(r, 1); m <= n; ++m) {
      BigInt total = 0;
      for (int s = 0; s <= 2 * n; ++s) total += slab.at(m, m, s);
      const BigInt size = r == 0 ? BigInt{0} : binomial_exact(m - 1, r - 1);
      bad += total != size * size;
    }
  });
  return {bad == 0, "n <= " + std::to_string(n) + ", " + std::to_string(bad) + " failures"};
}

inline Outcome sticky_confusability(const VerifyOptions&) {
  const auto words = sticky::compositions(6, 3);
  long bad = 0;
  for (int b = 0; b <= 2; ++b)
    for (const auto& u : words)
      for (const auto& v : words) bad += sticky::is_confusable(u, v, b) != sticky::confusable_bruteforce(u, v, b);
  return {bad == 0, std::to_string(bad) + " disagreements over S(6,3), b in {0,1,2}"};
}

inline Outcome sticky_residuals(const VerifyOptions&) {
  double worst = 0.0;
  for (double rho = 0.1; rho < 0.451; rho += 0.05)
    for (double beta = 0.1; beta < 0.451; beta += 0.05) {
      if (beta >= sticky::beta_max(rho)) continue;
      worst = std::max(worst, sticky::critical_point_closed_form(sticky::StickyParams(rho, beta)).residual_norm());
    }
  return within(worst, 1e-9);
}

inline Outcome sticky_dual_route(const VerifyOptions&) {
  double worst = 0.0;
  for (double rho = 0.1; rho < 0.451; rho += 0.05)
    for (double beta = 0.1; beta < 0.451; beta += 0.05) {
      if (beta >= sticky::beta_max(rho)) continue;
      const sticky::StickyParams p(rho, beta);
      worst = std::max(worst, std::abs(sticky::ball_rate(p).value - sticky::pair_exponent(p)));
    }
  return within(worst, 1e-9);
}

inline Outcome sticky_knee(const VerifyOptions&) {
  double worst = 0.0;
  for (double rho : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double bm = sticky::beta_max(rho);
    worst = std::max(worst, std::abs(sticky::ball_rate_closed_form(rho, bm) - 2.0 * entropy(rho)));
  }
  return within(worst, 1e-8);
}

inline Outcome sticky_ordering(const VerifyOptions&) {
  long bad = 0;
  for (int i = 1; i <= 24; ++i) {
    const double beta = i / 100.0;
    const double lb = sticky::simple_lb_rate(beta).value;
    const double gv = sticky::gv_rate(beta).rate.value;
    const double sp = sticky::sp_rate(beta);
    bad += !(lb <= gv && gv <= sp);
  }
  return {bad == 0, std::to_string(bad) + " violations of lb <= gv <= sp on beta in {0.01..0.24}"};
}

// --- synthesis ---

inline Outcome synthesis_timing(const VerifyOptions&) {
  const bool ok = synthesis::synthesis_time(synthesis::Strand("CTACG")) == 7 &&
                  synthesis::synthesis_time(synthesis::Strand("AGTA")) == 5 &&
                  synthesis::synthesis_time(synthesis::Strand("CTT")) == 8;
  return {ok, "CTACG=7, AGTA=5, CTT=8"};
}

inline Outcome synthesis_producibility(const VerifyOptions& opt) {
  const int n_max = std::clamp(opt.n_budget, 1, 6);
  long bad = 0;
  std::vector<std::string> words{""};
  for (int n = 1; n <= n_max; ++n) {
    std::vector<std::string> grown;
    for (const auto& w : words)
      for (char c : synthesis::kAlphabet) grown.push_back(w + c);
    words = std::move(grown);
    for (const auto& w : words) {
      const synthesis::Strand s(w);
      const int t = synthesis::synthesis_time(s);
      bad += t < n || t > 4 * n || !synthesis::is_producible(s, t) || synthesis::is_producible(s, t - 1);
    }
  }
  return {bad == 0, std::to_string(bad) + " strands disagree with the supersequence test (n <= " +
                        std::to_string(n_max) + ")"};
}

inline Outcome synthesis_oracle(const VerifyOptions& opt) {
  const int n_max = std::clamp(opt.n_budget, 0, 5);
  long bad = 0;
  synthesis::for_each_length<BigInt>(synthesis::PairCaps{n_max}, [&](int n, const synthesis::TimeDistanceGrid<BigInt>& g) {
    const auto buckets = synthesis::pair_buckets_bruteforce(n);
    BigInt covered = 0;
    for (const auto& [key, count] : buckets) {
      bad += g.get(key.first, key.second) != count;
      covered += count;
    }
    bad += g.sum() != covered;  // nothing outside the enumerated buckets
  });
  return {bad == 0, std::to_string(bad) + " bucket mismatches for n <= " + std::to_string(n_max)};
}

inline Outcome synthesis_mass(const VerifyOptions& opt) {
  const int n_max = std::clamp(opt.n_budget, 1, 20);
  long bad = 0;
  synthesis::for_each_length<BigInt>(synthesis::PairCaps{n_max}, [&](int n, const synthesis::TimeDistanceGrid<BigInt>& g) {
    bad += g.sum() != boost::multiprecision::pow(BigInt{16}, static_cast<unsigned>(n));
  });
  for (int n = 0; n <= 30; ++n) {
    BigInt total = 0;
    for (const auto& c : synthesis::count_words_by_time(n)) total += c;
    bad += total != boost::multiprecision::pow(BigInt{4}, static_cast<unsigned>(n));
  }
  return {bad == 0, "pairs n <= " + std::to_string(n_max) + ", words n <= 30, " + std::to_string(bad) + " failures"};
}

inline Outcome synthesis_residuals(const VerifyOptions&) {
  double worst = 0.0;
  for (double tau : {1.5, 2.0}) {
    const double dmax = synthesis::delta_max(tau).delta_max;
    for (double delta = 0.05; delta < dmax; delta += 0.05)
      worst = std::max(worst, synthesis::critical_point(tau, delta).residual_norm());
  }
  return within(worst, 1e-9);
}

inline Outcome synthesis_knee(const VerifyOptions&) {
  double worst = 0.0;
  for (double tau : {1.5, 1.75, 2.0, 2.25}) {
    const auto dm = synthesis::delta_max(tau);
    const double below = dm.delta_max * (1.0 - 1e-9);
    worst = std::max(worst, std::abs(synthesis::critical_point(tau, below).z_hat - 1.0));
    worst = std::max(worst, std::abs(synthesis::ball_rate_upper(tau, below).value - 2.0 * synthesis::capacity(tau)));
  }
  const double at = synthesis::ball_rate_upper(3.0, 0.75).value;
  const double above = synthesis::ball_rate_upper(3.0, 0.75 + 1e-9).value;
  worst = std::max(worst, std::abs(at - above));
  return within(worst, 1e-6);
}

inline Outcome synthesis_capacity(const VerifyOptions&) {
  double prev = 0.0;
  bool monotone = true;
  for (double tau = 1.05; tau <= 4.0; tau += 0.05) {
    const double c = synthesis::capacity(tau);
    monotone = monotone && c >= prev - 1e-12;
    prev = c;
  }
  const double at_knee = std::abs(synthesis::capacity(2.5) - 2.0);
  return {monotone && at_knee <= 1e-9,
          std::string(monotone ? "nondecreasing" : "not monotone") + ", |Cap(5/2) - 2| = " + gvbound::detail::fmt(at_knee)};
}

inline Outcome synthesis_ordering(const VerifyOptions&) {
  long bad = 0;
  for (double tau : {1.5, 2.0})
    for (int i = 0; i <= 100; ++i) {
      const double delta = i / 100.0;
      bad += synthesis::gv_rate(tau, delta).value < synthesis::simple_lb_rate(tau, delta).value;
    }
  return {bad == 0, std::to_string(bad) + " violations of lb <= gv at tau in {1.5, 2}"};
}

}  // namespace checks

struct Check {
  std::string suite;
  std::string name;
  std::function<Outcome(const VerifyOptions&)> run;
};

inline const std::vector<Check>& registry() {
  static const std::vector<Check> all = {
      {"acsv", "binomial-direction oracle", checks::binomial_direction},
      {"acsv", "scale invariance", checks::scale_invariance},
      {"acsv", "sticky newton vs closed form", checks::sticky_newton_vs_closed_form},
      {"acsv", "synthesis newton vs closed form", checks::synthesis_newton_vs_closed_form},
      {"sticky", "pair-count oracle", checks::sticky_oracle},
      {"sticky", "mass identity", checks::sticky_mass},
      {"sticky", "confusability oracle", checks::sticky_confusability},
      {"sticky", "critical-point residuals", checks::sticky_residuals},
      {"sticky", "ball rate dual route", checks::sticky_dual_route},
      {"sticky", "knee continuity", checks::sticky_knee},
      {"sticky", "bound ordering", checks::sticky_ordering},
      {"synthesis", "synthesis time examples", checks::synthesis_timing},
      {"synthesis", "supersequence cross-check", checks::synthesis_producibility},
      {"synthesis", "pair-count oracle", checks::synthesis_oracle},
      {"synthesis", "mass identities", checks::synthesis_mass},
      {"synthesis", "critical-point residuals", checks::synthesis_residuals},
      {"synthesis", "knee continuity", checks::synthesis_knee},
      {"synthesis", "capacity anchors", checks::synthesis_capacity},
      {"synthesis", "bound ordering", checks::synthesis_ordering},
  };
  return all;
}

inline bool is_suite(const std::string& s) {
  return s == "all" || s == "acsv" || s == "sticky" || s == "synthesis";
}

inline std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opt = {}) {
  if (!is_suite(suite)) throw DomainError("unknown suite '" + suite + "' (expected all, sticky, synthesis or acsv)");
  if (opt.n_budget < 1) throw DomainError("n-budget must be positive");
  std::vector<CheckResult> out;
  for (const auto& c : registry()) {
    if (suite != "all" && c.suite != suite) continue;
    CheckResult r{c.suite, c.name, false, ""};
    try {
      const Outcome o = c.run(opt);
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.detail = std::string("error: ") + e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace gvbound::verify
