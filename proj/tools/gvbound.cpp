// gvbound: bound curves, self-check suites and single-point evaluations.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gvbound/gvbound.hpp"

namespace {

using namespace gvbound;

void kv(const std::string& key, const std::string& value) { std::cout << key << " = " << value << "\n"; }
void kv(const std::string& key, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  kv(key, std::string(buf));
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (double x : v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    out += (out.empty() ? "" : ",") + std::string(buf);
  }
  return out;
}

int point_sticky(std::optional<double> rho, double beta) {
  if (!(beta >= 0.0 && beta <= 0.5)) throw DomainError("beta must lie in [0, 0.5], got " + detail::fmt(beta));
  kv("channel", "sticky");
  kv("beta", beta);
  kv("delta", 2.0 * beta);
  kv("sp", sticky::sp_rate(beta));
  const Rate lb = sticky::simple_lb_rate(beta);
  kv("lb", lb.value);
  kv("lb.flags", lb.flags.to_string());
  kv("lb.rho", sticky::simple_lb_rho(beta));

  if (!rho) {
    const auto gv = sticky::gv_rate(beta);
    kv("gv", gv.rate.value);
    kv("gv.flags", gv.rate.flags.to_string());
    kv("gv.rho", gv.rho_star);
    kv("gv.rho.minus_sign", gv.closed_form_rho);
    kv("gv.rate.minus_sign", gv.closed_form_rate);
    kv("gv.rho.plus_sign", gv.plus_sign_rho);
    kv("gv.rate.plus_sign", gv.plus_sign_rate);
    kv("gv.rho.numeric", gv.numeric_rho);
    kv("gv.rate.numeric", gv.numeric_rate);
    if (beta == 0.5) return 0;
    rho = gv.rho_star;
  }

  const sticky::StickyParams p(*rho, beta);
  kv("rho", p.rho());
  kv("capacity", sticky::capacity_runs(p.rho()));
  kv("beta_max", sticky::beta_max(p.rho()));
  const Rate ball = sticky::ball_rate(p);
  kv("ball_rate", ball.value);
  kv("ball_rate.flags", ball.flags.to_string());
  const Rate gv_at = sticky::gv_rate_at(p);
  kv("gv_at_rho", gv_at.value);
  kv("gv_at_rho.flags", gv_at.flags.to_string());
  if (beta > 0.0 && 2.0 - p.delta() - 2.0 * p.rho() > 0.0) {
    const auto cp = sticky::critical_point_closed_form(p);
    kv("x", cp.x);
    kv("y", cp.y);
    kv("z", cp.z);
    kv("residuals", join(cp.residuals));
    kv("numerator", sticky::pair_numerator(cp.x, cp.x, cp.z));
    kv("prefactor", "Theta(n^(-3/2)) * (z*)^(-k)");
  } else {
    kv("critical_point", "none (boundary or saturated regime)");
  }
  return 0;
}

int point_synthesis(double tau, double delta, double tol) {
  kv("channel", "synthesis");
  kv("tau", tau);
  kv("delta", delta);
  kv("capacity", synthesis::capacity(tau, tol));
  const Rate ball = synthesis::ball_rate_upper(tau, delta, tol);
  kv("ball_rate", ball.value);
  kv("ball_rate.flags", ball.flags.to_string());
  const Rate gv = synthesis::gv_rate(tau, delta, tol);
  kv("gv", gv.value);
  kv("gv.flags", gv.flags.to_string());
  const Rate lb = synthesis::simple_lb_rate(tau, delta, tol);
  kv("lb", lb.value);
  kv("lb.flags", lb.flags.to_string());
  if (tau < synthesis::kCapacityKnee) {
    const auto cap = synthesis::capacity_point(tau, tol);
    kv("x_bar", cap.x);
    kv("y_bar", cap.y);
    const auto dm = synthesis::delta_max(tau, tol);
    kv("delta_max", dm.delta_max);
    kv("y_min", dm.y_min);
    if (delta > 0.0 && delta < dm.delta_max) {
      const auto cp = synthesis::critical_point(tau, delta, tol);
      kv("x_hat", cp.x_hat);
      kv("y_hat", cp.y_hat);
      kv("z_hat", cp.z_hat);
      kv("residuals", join(cp.residuals));
      kv("prefactor", "Theta(n^(-1)) * (z*)^(-k)");
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gilbert-Varshamov and related rate bounds for the sticky-insertion and DNA synthesis channels"};
  app.require_subcommand(1);

  std::string channel = "sticky";
  std::string bounds;
  std::optional<double> rho;
  std::string beta_range = "0:0.49:50";
  double tau = 2.0;
  std::string delta_range;
  std::string format = "csv";
  std::string output;
  int n_budget = 8;
  double tolerance = kDefaultTolerance;
  std::string suite = "all";
  double beta = 0.1;
  double delta = 0.1;

  auto* curve = app.add_subcommand("curve", "evaluate bounds over a sweep and write CSV or SVG");
  curve->add_option("--channel", channel, "sticky or synthesis")->check(CLI::IsMember({"sticky", "synthesis"}));
  curve->add_option("--bounds", bounds, "comma-separated subset of gv,sp,lb,capacity");
  curve->add_option("--rho", rho, "sticky: fixed run density for the gv curve");
  curve->add_option("--beta-range", beta_range, "sticky sweep lo:hi:steps");
  curve->add_option("--tau", tau, "synthesis: cycles per symbol");
  curve->add_option("--delta-range", delta_range, "synthesis sweep lo:hi:steps");
  curve->add_option("--format", format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
  curve->add_option("--output", output, "output path (default: stdout)");
  curve->add_option("--tolerance", tolerance, "root-finding tolerance");

  auto* verify = app.add_subcommand("verify", "run self-check suites");
  verify->add_option("--suite", suite, "all, sticky, synthesis or acsv");
  verify->add_option("--n-budget", n_budget, "largest word length for the exhaustive checks");
  verify->add_option("--tolerance", tolerance, "root-finding tolerance");

  auto* point = app.add_subcommand("point", "evaluate every quantity at one parameter point");
  point->add_option("--channel", channel, "sticky or synthesis")->check(CLI::IsMember({"sticky", "synthesis"}));
  point->add_option("--rho", rho, "sticky: run density (default: the GV maximizer)");
  point->add_option("--beta", beta, "sticky: insertion density");
  point->add_option("--tau", tau, "synthesis: cycles per symbol");
  point->add_option("--delta", delta, "synthesis: relative Hamming distance");
  point->add_option("--tolerance", tolerance, "root-finding tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*curve) {
      curve::CurveSpec spec;
      spec.channel = curve::parse_channel(channel);
      spec.tolerance = tolerance;
      if (spec.channel == curve::Channel::Sticky) {
        spec.bounds = curve::parse_bounds(bounds.empty() ? "gv,sp,lb" : bounds);
        spec.rho = rho;
        spec.sweep = curve::SweepRange::parse(beta_range);
      } else {
        spec.bounds = curve::parse_bounds(bounds.empty() ? "gv,lb" : bounds);
        spec.tau = tau;
        spec.sweep = curve::SweepRange::parse(delta_range.empty() ? "0:1:101" : delta_range);
      }
      const auto set = curve::compute_curves(spec);
      std::string title = spec.channel == curve::Channel::Sticky
                              ? "sticky-insertion channel"
                              : "synthesis channel, tau = " + curve::text::g12(spec.tau);
      const std::string body = format == "svg" ? curve::to_svg(set, title) : curve::to_csv(set);
      if (output.empty()) {
        std::cout << body;
      } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) throw Error("cannot open '" + output + "' for writing");
        out << body;
        if (!out) throw Error("write to '" + output + "' failed");
      }
      return 0;
    }
    if (*verify) {
      if (!verify::is_suite(suite)) {
        std::cerr << "error: unknown suite '" << suite << "' (expected all, sticky, synthesis or acsv)\n";
        return 2;
      }
      const auto results = verify::run_suite(suite, {n_budget, tolerance});
      int failed = 0;
      for (const auto& r : results) {
        std::printf("%-4s  %-10s %-34s %s\n", r.passed ? "PASS" : "FAIL", r.suite.c_str(), r.name.c_str(),
                    r.detail.c_str());
        failed += !r.passed;
      }
      std::printf("%zu checks, %d failed\n", results.size(), failed);
      return failed == 0 ? 0 : 1;
    }
    if (*point) {
      return channel == "sticky" ? point_sticky(rho, beta) : point_synthesis(tau, delta, tolerance);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
