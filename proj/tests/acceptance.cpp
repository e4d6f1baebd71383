// Acceptance run: one PASS/FAIL line per criterion.
//
//   gvbound_acceptance                 run all criteria
//   gvbound_acceptance --criterion N   run criterion N only
//   gvbound_acceptance --out DIR       where criterion 8 writes its CSV/SVG files

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "gvbound/gvbound.hpp"

using namespace gvbound;

namespace {

struct Result {
  bool passed = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::filesystem::path g_out_dir = "acceptance_out";

// 1. Sticky pair counts equal enumeration for n1, n2 <= 8; runtime <= 60 s.
Result sticky_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const sticky::PairCountTable<BigInt> table(sticky::PairDims{8, 8, 8, 16});
  long compared = 0, mismatches = 0;
  for (int n1 = 0; n1 <= 8; ++n1)
    for (int n2 = 0; n2 <= 8; ++n2)
      for (int r = 0; r <= 8; ++r)
        for (int s = 0; s <= 16; ++s, ++compared)
          mismatches += table(n1, n2, r, s) != sticky::count_pairs_bruteforce(n1, n2, r, s);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {mismatches == 0 && secs <= 60.0, std::to_string(compared) + " entries, " + std::to_string(mismatches) +
                                               " mismatches, " + fmt(secs) + " s"};
}

// 2. Synthesis pair counts equal enumeration for every (t, s) bucket at n <= 5; runtime <= 60 s.
Result synthesis_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  long buckets_checked = 0, mismatches = 0;
  synthesis::for_each_length<BigInt>(synthesis::PairCaps{5}, [&](int n, const synthesis::TimeDistanceGrid<BigInt>& g) {
    const auto buckets = synthesis::pair_buckets_bruteforce(n);
    for (int t = 0; t <= g.t_max(); ++t)
      for (int s = 0; s <= g.s_max(); ++s, ++buckets_checked) {
        const auto it = buckets.find({t, s});
        const BigInt expect = it == buckets.end() ? BigInt{0} : BigInt{it->second};
        mismatches += g.at(t, s) != expect;
      }
  });
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {mismatches == 0 && secs <= 60.0, std::to_string(buckets_checked) + " buckets, " +
                                               std::to_string(mismatches) + " mismatches, " + fmt(secs) + " s"};
}

// 3. Mass identities: sticky n <= 60, synthesis n <= 20, exact.
Result mass_identities() {
  long sticky_bad = 0, sticky_checked = 0;
  constexpr int n_max = 60;
  sticky::for_each_layer<BigInt>(sticky::PairDims{n_max, n_max, n_max, 2 * n_max},
                                 [&](int r, const sticky::Slab<BigInt>& slab) {
                                   for (int n = std::max(r, 1); n <= n_max; ++n, ++sticky_checked) {
                                     BigInt total = 0;
                                     for (int s = 0; s <= 2 * n_max; ++s) total += slab.at(n, n, s);
                                     const BigInt size = r == 0 ? BigInt{0} : binomial_exact(n - 1, r - 1);
                                     sticky_bad += total != size * size;
                                   }
                                 });
  long syn_bad = 0;
  synthesis::for_each_length<BigInt>(synthesis::PairCaps{20}, [&](int n, const synthesis::TimeDistanceGrid<BigInt>& g) {
    syn_bad += g.sum() != boost::multiprecision::pow(BigInt{16}, static_cast<unsigned>(n));
  });
  return {sticky_bad == 0 && syn_bad == 0, "sticky " + std::to_string(sticky_checked) + " (n,r) pairs, " +
                                               std::to_string(sticky_bad) + " failures; synthesis n<=20, " +
                                               std::to_string(syn_bad) + " failures"};
}

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double v = lo + step * i;
    if (v > hi + 1e-12) break;
    out.push_back(v);
  }
  return out;
}

// Points of the rho, beta grid where the closed-form critical point exists
// (beta below the knee); beyond it the ball rate is the saturated constant.
std::vector<std::pair<double, double>> sticky_grid(int* skipped) {
  std::vector<std::pair<double, double>> out;
  *skipped = 0;
  for (double rho : grid(0.1, 0.45, 0.05))
    for (double beta : grid(0.1, 0.45, 0.05)) {
      if (beta < sticky::beta_max(rho)) out.emplace_back(rho, beta);
      else ++*skipped;
    }
  return out;
}

// 4. Closed-form critical points satisfy their systems to <= 1e-9.
Result closed_form_residuals() {
  int skipped = 0;
  double worst_sticky = 0.0;
  const auto pts = sticky_grid(&skipped);
  for (const auto& [rho, beta] : pts) {
    worst_sticky = std::max(worst_sticky, sticky::critical_point_closed_form(sticky::StickyParams(rho, beta)).residual_norm());
  }
  double worst_syn = 0.0;
  int syn_points = 0;
  for (double tau : {1.5, 2.0}) {
    const double dmax = synthesis::delta_max(tau).delta_max;
    for (double delta : grid(0.05, dmax, 0.05)) {
      worst_syn = std::max(worst_syn, synthesis::critical_point(tau, delta).residual_norm());
      ++syn_points;
    }
  }
  return {worst_sticky <= 1e-9 && worst_syn <= 1e-9,
          "sticky max " + fmt(worst_sticky) + " over " + std::to_string(pts.size()) + " points (" +
              std::to_string(skipped) + " saturated skipped); synthesis max " + fmt(worst_syn) + " over " +
              std::to_string(syn_points) + " points"};
}

// 5. Explicit ball-rate formula equals the critical-point exponent within 1e-9.
Result dual_route() {
  int skipped = 0;
  double worst = 0.0;
  const auto pts = sticky_grid(&skipped);
  for (const auto& [rho, beta] : pts) {
    const sticky::StickyParams p(rho, beta);
    worst = std::max(worst, std::abs(sticky::ball_rate(p).value - sticky::pair_exponent(p)));
  }
  return {worst <= 1e-9, "max difference " + fmt(worst) + " over " + std::to_string(pts.size()) + " points"};
}

// 6. |log2 N(n,n,rho n,delta n)/n - T(rho,delta)| at (0.5, 0.25) decreasing over
//    n in {16,...,48} and <= 0.1 at n = 48; runtime <= 5 min.
Result rate_convergence() {
  const auto t0 = std::chrono::steady_clock::now();
  const double rho = 0.5, delta = 0.25;
  const double target = sticky::pair_exponent(sticky::StickyParams::from_delta(rho, delta));
  std::string detail = "T=" + fmt(target) + " gaps:";
  std::string corrected = " | gap after removing 1.5*log2(delta n)/n:";
  bool decreasing = true;
  double prev = 1e300, last = 0.0;
  for (int n : {16, 24, 32, 40, 48}) {
    const int r = static_cast<int>(std::floor(rho * n));
    const int s = static_cast<int>(std::floor(delta * n));
    const double g = sticky::count_pairs<Log2Count>(n, n, r, s).log2() / n;
    const double gap = std::abs(g - target);
    decreasing = decreasing && gap < prev;
    prev = last = gap;
    detail += " " + std::to_string(n) + ":" + fmt(gap);
    corrected += " " + fmt(std::abs(g + 1.5 * std::log2(delta * n) / n - target));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  // Informational only: the same gap at longer lengths.
  std::string longer = " | longer lengths:";
  for (int n : {96, 128, 160}) {
    const double g = sticky::count_pairs<Log2Count>(n, n, n / 2, n / 4).log2() / n;
    longer += " " + std::to_string(n) + ":" + fmt(std::abs(g - target));
  }
  return {decreasing && last <= 0.1 && secs <= 300.0,
          detail + (decreasing ? " (decreasing)" : " (not decreasing)") + ", " + fmt(secs) + " s" + corrected + longer};
}

// 7. Capacity anchors.
Result capacity_anchors() {
  const double at_knee = std::abs(synthesis::capacity(2.5) - 2.0);
  const auto knee_root = synthesis::capacity_point(2.5 - 1e-13);
  const double cubic_at_one = (4 - 2.5) + (3 - 2.5) + (2 - 2.5) + (1 - 2.5);
  const int n = 100;
  const double counted = log2_big(synthesis::count_words_exact(n, 2 * n)) / n;
  const double gap = std::abs(counted - synthesis::capacity(2.0));
  return {at_knee <= 1e-9 && cubic_at_one == 0.0 && gap <= 0.1,
          "|Cap(5/2)-2|=" + fmt(at_knee) + ", y_bar(5/2-)=" + fmt(knee_root.y) + ", Cap(2)=" +
              fmt(synthesis::capacity(2.0)) + ", log2|S(100,<=200)|/100=" + fmt(counted) + ", gap " + fmt(gap)};
}

// 8. Figure curves as CSV+SVG with the stated orderings.
Result figures() {
  std::filesystem::create_directories(g_out_dir);
  const auto write = [](const std::string& name, const std::string& body) {
    std::ofstream out(g_out_dir / name, std::ios::binary);
    out << body;
    return static_cast<bool>(out);
  };
  bool ok = true;
  std::string detail;

  curve::CurveSpec fig1;
  fig1.channel = curve::Channel::Sticky;
  fig1.bounds = {curve::Bound::Gv, curve::Bound::Sp, curve::Bound::Lb};
  fig1.sweep = {0.0, 0.49, 50};
  const auto s1 = curve::compute_curves(fig1);
  ok = write("fig1_sticky.csv", curve::to_csv(s1)) && write("fig1_sticky.svg", curve::to_svg(s1, "sticky-insertion channel")) && ok;
  int bad1 = 0;
  for (std::size_t i = 0; i < s1.curves[0].rows.size(); ++i) {
    const double gv = s1.curves[0].rows[i].y, sp = s1.curves[1].rows[i].y, lb = s1.curves[2].rows[i].y;
    bad1 += !(lb <= gv && gv <= sp && gv > 0.0);
  }
  ok = ok && bad1 == 0;
  detail += "sticky: " + std::to_string(s1.curves[0].rows.size()) + " rows, " + std::to_string(bad1) + " violations";

  for (double tau : {1.5, 2.0}) {
    curve::CurveSpec fig3;
    fig3.channel = curve::Channel::Synthesis;
    fig3.bounds = {curve::Bound::Gv, curve::Bound::Lb};
    fig3.tau = tau;
    fig3.sweep = {0.0, 0.8, 81};
    const auto s3 = curve::compute_curves(fig3);
    const std::string stem = "fig3_synthesis_tau" + fmt(tau);
    ok = write(stem + ".csv", curve::to_csv(s3)) &&
         write(stem + ".svg", curve::to_svg(s3, "synthesis channel, tau = " + fmt(tau))) && ok;
    const double dmax = synthesis::delta_max(tau).delta_max;
    int bad = 0;
    for (std::size_t i = 0; i < s3.curves[0].rows.size(); ++i) {
      const auto& gv = s3.curves[0].rows[i];
      bad += gv.y < s3.curves[1].rows[i].y;
      bad += gv.x >= dmax ? gv.y != 0.0 : !(gv.y > 0.0);
    }
    // exactly at the knee
    bad += synthesis::gv_rate(tau, dmax).value != 0.0;
    ok = ok && bad == 0;
    detail += "; tau=" + fmt(tau) + ": delta_max=" + fmt(dmax) + ", " + std::to_string(bad) + " violations";
  }
  detail += "; files in " + g_out_dir.string();
  return {ok, detail};
}

// 9. Knee continuity and stationarity.
Result knee_continuity() {
  double sticky_jump = 0.0, slope = 0.0;
  for (double rho : grid(0.1, 0.9, 0.1)) {
    const double bm = sticky::beta_max(rho);
    const double below = sticky::ball_rate(sticky::StickyParams(rho, bm * (1 - 1e-12))).value;
    const double at = sticky::ball_rate(sticky::StickyParams(rho, bm)).value;
    sticky_jump = std::max(sticky_jump, std::abs(below - at));
    const double h = 1e-5;
    const double fd = (sticky::ball_rate_closed_form(rho, bm + h) - sticky::ball_rate_closed_form(rho, bm - h)) / (2 * h);
    slope = std::max(slope, std::abs(fd));
  }
  double syn_jump = 0.0;
  for (double tau : {1.5, 1.75, 2.0, 2.25}) {
    const double dm = synthesis::delta_max(tau).delta_max;
    const double below = synthesis::ball_rate_upper(tau, dm * (1 - 1e-12)).value;
    const double at = synthesis::ball_rate_upper(tau, dm).value;
    syn_jump = std::max(syn_jump, std::abs(below - at));
  }
  return {sticky_jump <= 1e-6 && syn_jump <= 1e-6 && slope <= 1e-5,
          "sticky jump " + fmt(sticky_jump) + ", synthesis jump " + fmt(syn_jump) + ", |dT/dbeta| at knee " + fmt(slope)};
}

// 10. Numeric argmax agrees with the minus-sign closed form.
Result sign_resolution() {
  double worst = 0.0;
  double plus_margin = 1e300;
  for (double beta : grid(0.05, 0.45, 0.05)) {
    const auto gv = sticky::gv_rate(beta);
    worst = std::max(worst, std::abs(gv.numeric_rate - gv.closed_form_rate));
    plus_margin = std::min(plus_margin, gv.closed_form_rate - gv.plus_sign_rate);
  }
  const auto at0 = sticky::gv_rate(0.0);
  const double rho_err = std::abs(at0.numeric_rho - 0.5);
  return {worst <= 1e-6 && rho_err <= 1e-6,
          "max |numeric - minus-sign| " + fmt(worst) + ", beta=0 argmax " + fmt(at0.numeric_rho) +
              ", plus-sign candidate worse by >= " + fmt(plus_margin)};
}

struct Criterion {
  const char* title;
  std::function<Result()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"sticky pair counts match enumeration (n1,n2 <= 8)", sticky_oracle},
      {"synthesis pair counts match enumeration (n <= 5)", synthesis_oracle},
      {"mass identities (sticky n <= 60, synthesis n <= 20)", mass_identities},
      {"closed-form critical-point residuals <= 1e-9", closed_form_residuals},
      {"ball-rate formula vs critical-point exponent <= 1e-9", dual_route},
      {"sticky rate convergence at (0.5, 0.25), gap <= 0.1 at n=48", rate_convergence},
      {"synthesis capacity anchors", capacity_anchors},
      {"figure curves and orderings", figures},
      {"knee continuity and stationarity", knee_continuity},
      {"gv argmax vs minus-sign closed form", sign_resolution},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (std::strcmp(argv[i], "--out") == 0 && i + 1 < argc) {
      g_out_dir = argv[++i];
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N] [--out DIR]\n", argv[0]);
      return 2;
    }
  }
  const auto& all = criteria();
  if (only < 0 || only > static_cast<int>(all.size())) {
    std::fprintf(stderr, "criterion must be in 1..%zu\n", all.size());
    return 2;
  }
  int failed = 0;
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (only != 0 && static_cast<int>(k) + 1 != only) continue;
    Result r;
    try {
      r = all[k].run();
    } catch (const std::exception& e) {
      r = {false, std::string("error: ") + e.what()};
    }
    std::printf("%s criterion %zu: %s : %s\n", r.passed ? "PASS" : "FAIL", k + 1, all[k].title, r.detail.c_str());
    std::fflush(stdout);
    failed += !r.passed;
  }
  return failed == 0 ? 0 : 1;
}
