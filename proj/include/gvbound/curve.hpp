#pragma once

// Bound curves over a parameter sweep, with CSV and SVG emitters.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gvbound/errors.hpp"
#include "gvbound/numeric.hpp"
#include "gvbound/rate.hpp"
#include "gvbound/sticky.hpp"
#include "gvbound/synthesis.hpp"

namespace gvbound::curve {

enum class Channel { Sticky, Synthesis };
enum class Bound { Gv, Sp, Lb, Capacity };

inline Channel parse_channel(const std::string& s) {
  if (s == "sticky") return Channel::Sticky;
  if (s == "synthesis") return Channel::Synthesis;
  throw DomainError("unknown channel '" + s + "' (expected sticky or synthesis)");
}

inline std::string to_string(Channel c) { return c == Channel::Sticky ? "sticky" : "synthesis"; }

inline Bound parse_bound(const std::string& s) {
  if (s == "gv") return Bound::Gv;
  if (s == "sp") return Bound::Sp;
  if (s == "lb") return Bound::Lb;
  if (s == "capacity") return Bound::Capacity;
  throw DomainError("unknown bound '" + s + "' (expected gv, sp, lb or capacity)");
}

inline std::string to_string(Bound b) {
  switch (b) {
    case Bound::Gv: return "gv";
    case Bound::Sp: return "sp";
    case Bound::Lb: return "lb";
    case Bound::Capacity: return "capacity";
  }
  return "?";
}

// Comma-separated list, e.g. "gv,sp,lb". Duplicates are dropped.
inline std::vector<Bound> parse_bounds(const std::string& list) {
  std::vector<Bound> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const Bound b = parse_bound(item);
    if (std::find(out.begin(), out.end(), b) == out.end()) out.push_back(b);
  }
  if (out.empty()) throw DomainError("no bounds requested");
  return out;
}

struct SweepRange {
  double lo = 0.0;
  double hi = 0.0;
  int steps = 2;

  // "lo:hi:steps"
  static SweepRange parse(const std::string& text) {
    SweepRange r;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &r.lo, &r.hi, &r.steps, &tail) != 3) {
      throw DomainError("sweep range '" + text + "' is not of the form lo:hi:steps");
    }
    return r;
  }

  void validate() const {
    if (steps < 2) throw DomainError("sweep needs at least 2 steps, got " + std::to_string(steps));
    if (!(lo < hi)) throw DomainError("sweep needs lo < hi, got " + gvbound::detail::fmt(lo) + ":" + gvbound::detail::fmt(hi));
  }

  std::vector<double> points() const {
    validate();
    std::vector<double> xs(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
      xs[static_cast<std::size_t>(i)] = i == steps - 1 ? hi : lo + (hi - lo) * i / (steps - 1);
    }
    return xs;
  }
};

struct CurveSpec {
  Channel channel = Channel::Sticky;
  std::vector<Bound> bounds{Bound::Gv, Bound::Sp, Bound::Lb};
  std::optional<double> rho;  // sticky: evaluate GV at this run density instead of optimizing
  double tau = 2.0;           // synthesis: time budget per symbol
  SweepRange sweep{0.0, 0.49, 50};
  double tolerance = kDefaultTolerance;

  std::string sweep_name() const { return channel == Channel::Sticky ? "beta" : "delta"; }

  void validate() const {
    sweep.validate();
    if (bounds.empty()) throw DomainError("no bounds requested");
    if (channel == Channel::Sticky) {
      if (sweep.lo < 0.0 || sweep.hi > 0.5) {
        throw DomainError("sticky beta sweep must lie in [0, 0.5], got " + gvbound::detail::fmt(sweep.lo) + ":" +
                          gvbound::detail::fmt(sweep.hi));
      }
      if (rho && !(*rho > 0.0 && *rho < 1.0)) throw DomainError("rho must lie in (0,1), got " + gvbound::detail::fmt(*rho));
    } else {
      if (sweep.lo < 0.0 || sweep.hi > 1.0) {
        throw DomainError("synthesis delta sweep must lie in [0, 1], got " + gvbound::detail::fmt(sweep.lo) + ":" +
                          gvbound::detail::fmt(sweep.hi));
      }
      if (!(tau > 1.0)) throw DomainError("tau must exceed 1, got " + gvbound::detail::fmt(tau));
      if (std::find(bounds.begin(), bounds.end(), Bound::Sp) != bounds.end()) {
        throw DomainError("the sp bound is only available for the sticky channel");
      }
    }
    if (!(tolerance > 0.0)) throw DomainError("tolerance must be positive");
  }
};

struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
  Flags flags;
};

struct RateCurve {
  std::string label;
  std::vector<CurvePoint> rows;
};

struct CurveSet {
  std::string x_label;
  std::vector<RateCurve> curves;  // all share the same x grid
};

inline Rate evaluate_bound(const CurveSpec& spec, Bound bound, double x) {
  if (spec.channel == Channel::Sticky) {
    const double beta = x;
    switch (bound) {
      case Bound::Gv:
        if (spec.rho) return sticky::gv_rate_at(sticky::StickyParams(*spec.rho, beta));
        return sticky::gv_rate(beta).rate;
      case Bound::Sp: return {sticky::sp_rate(beta), {}};
      case Bound::Lb: return sticky::simple_lb_rate(beta);
      case Bound::Capacity: return {spec.rho ? sticky::capacity_runs(*spec.rho) : 1.0, {}};
    }
  } else {
    const double delta = x;
    switch (bound) {
      case Bound::Gv: return synthesis::gv_rate(spec.tau, delta, spec.tolerance);
      case Bound::Lb: return synthesis::simple_lb_rate(spec.tau, delta, spec.tolerance);
      case Bound::Capacity: return {synthesis::capacity(spec.tau, spec.tolerance), {}};
      case Bound::Sp: break;
    }
  }
  throw DomainError("bound '" + to_string(bound) + "' is not available for the " + to_string(spec.channel) +
                    " channel");
}

inline constexpr std::size_t kParallelThreshold = 64;

// Evaluates every requested bound on the sweep grid. Grids larger than
// kParallelThreshold are split across threads; results are placed by index
// so the output does not depend on scheduling.
inline CurveSet compute_curves(const CurveSpec& spec) {
  spec.validate();
  const std::vector<double> xs = spec.sweep.points();
  const std::size_t nb = spec.bounds.size();
  std::vector<std::vector<Rate>> values(xs.size(), std::vector<Rate>(nb));

  const auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t b = 0; b < nb; ++b) values[i][b] = evaluate_bound(spec, spec.bounds[b], xs[i]);
  };

  if (xs.size() <= kParallelThreshold) {
    fill(0, xs.size());
  } else {
    const std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    const std::size_t chunk = (xs.size() + workers - 1) / workers;
    std::vector<std::future<void>> jobs;
    for (std::size_t begin = 0; begin < xs.size(); begin += chunk) {
      jobs.push_back(std::async(std::launch::async, fill, begin, std::min(xs.size(), begin + chunk)));
    }
    for (auto& j : jobs) j.get();  // rethrows the first failure
  }

  CurveSet out;
  out.x_label = spec.sweep_name();
  for (std::size_t b = 0; b < nb; ++b) {
    RateCurve c;
    c.label = to_string(spec.bounds[b]);
    c.rows.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) c.rows.push_back({xs[i], values[i][b].value, values[i][b].flags});
    out.curves.push_back(std::move(c));
  }
  return out;
}

namespace text {

inline std::string g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string f2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace text

// Header: x label, one column per curve, then "flags" (union over the row).
inline std::string to_csv(const CurveSet& set) {
  std::string out = set.x_label;
  for (const auto& c : set.curves) out += "," + c.label;
  out += ",flags\n";
  const std::size_t rows = set.curves.empty() ? 0 : set.curves.front().rows.size();
  for (std::size_t i = 0; i < rows; ++i) {
    out += text::g12(set.curves.front().rows[i].x);
    Flags flags;
    for (const auto& c : set.curves) {
      out += "," + text::g12(c.rows[i].y);
      flags |= c.rows[i].flags;
    }
    out += "," + flags.to_string() + "\n";
  }
  return out;
}

// Parses output of to_csv. Each curve's row receives the row's flag union.
inline CurveSet read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError("read_csv: empty input");
  const auto header = text::split(line, ',');
  if (header.size() < 3 || header.back() != "flags") throw DomainError("read_csv: malformed header '" + line + "'");
  CurveSet set;
  set.x_label = header.front();
  for (std::size_t k = 1; k + 1 < header.size(); ++k) set.curves.push_back({header[k], {}});
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = text::split(line, ',');
    if (cells.size() != header.size()) {
      throw DomainError("read_csv: line " + std::to_string(lineno) + " has " + std::to_string(cells.size()) +
                        " fields, expected " + std::to_string(header.size()));
    }
    const double x = std::stod(cells.front());
    const Flags flags = Flags::parse(cells.back());
    for (std::size_t k = 0; k < set.curves.size(); ++k) set.curves[k].rows.push_back({x, std::stod(cells[k + 1]), flags});
  }
  return set;
}

// Static line chart: 800x600 viewBox, linear axes from the sweep range and
// [0, ymax], legend in the top-right corner, one path per curve.
inline std::string to_svg(const CurveSet& set, const std::string& title = "") {
  constexpr double W = 800, H = 600, left = 70, right = 20, top = 40, bottom = 60;
  constexpr double pw = W - left - right, ph = H - top - bottom;
  static constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  double xmin = 0, xmax = 1, ymax = 0;
  bool any = false;
  for (const auto& c : set.curves) {
    for (const auto& p : c.rows) {
      if (!any) xmin = xmax = p.x;
      any = true;
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymax = std::max(ymax, p.y);
    }
  }
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  ymax = std::max(0.1, std::ceil(ymax * 10.0 - 1e-9) / 10.0);
  const auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  const auto sy = [&](double y) { return top + ph - y / ymax * ph; };
  using text::f2;
  using text::g12;

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" width=\"800\" height=\"600\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  if (!title.empty()) {
    s += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" + title +
         "</text>\n";
  }
  s += "<g stroke=\"black\" stroke-width=\"1\">\n";
  s += "<line x1=\"" + f2(left) + "\" y1=\"" + f2(top + ph) + "\" x2=\"" + f2(left + pw) + "\" y2=\"" + f2(top + ph) + "\"/>\n";
  s += "<line x1=\"" + f2(left) + "\" y1=\"" + f2(top) + "\" x2=\"" + f2(left) + "\" y2=\"" + f2(top + ph) + "\"/>\n";
  s += "</g>\n";
  s += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  constexpr int ticks = 5;
  for (int i = 0; i <= ticks; ++i) {
    const double xv = xmin + (xmax - xmin) * i / ticks;
    const double yv = ymax * i / ticks;
    s += "<line x1=\"" + f2(sx(xv)) + "\" y1=\"" + f2(top + ph) + "\" x2=\"" + f2(sx(xv)) + "\" y2=\"" +
         f2(top + ph + 5) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + f2(sx(xv)) + "\" y=\"" + f2(top + ph + 20) + "\" text-anchor=\"middle\">" + g12(xv) + "</text>\n";
    s += "<line x1=\"" + f2(left - 5) + "\" y1=\"" + f2(sy(yv)) + "\" x2=\"" + f2(left) + "\" y2=\"" + f2(sy(yv)) +
         "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + f2(left - 8) + "\" y=\"" + f2(sy(yv) + 4) + "\" text-anchor=\"end\">" + g12(yv) + "</text>\n";
  }
  s += "<text x=\"" + f2(left + pw / 2) + "\" y=\"" + f2(H - 15) + "\" text-anchor=\"middle\">" + set.x_label +
       "</text>\n";
  s += "<text x=\"18\" y=\"" + f2(top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
       f2(top + ph / 2) + ")\">rate (bits per symbol)</text>\n";
  s += "</g>\n";

  for (std::size_t k = 0; k < set.curves.size(); ++k) {
    const auto& c = set.curves[k];
    std::string d;
    for (std::size_t i = 0; i < c.rows.size(); ++i) {
      d += (i == 0 ? "M" : " L") + f2(sx(c.rows[i].x)) + " " + f2(sy(c.rows[i].y));
    }
    s += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + palette[k % std::size(palette)] +
         "\" stroke-width=\"2\"/>\n";
  }

  const double lx = left + pw - 130;
  s += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect x=\"" + f2(lx) + "\" y=\"" + f2(top + 8) + "\" width=\"120\" height=\"" +
       f2(12 + 18.0 * static_cast<double>(set.curves.size())) + "\" fill=\"white\" stroke=\"#888888\"/>\n";
  for (std::size_t k = 0; k < set.curves.size(); ++k) {
    const double ly = top + 24 + 18.0 * static_cast<double>(k);
    s += "<line x1=\"" + f2(lx + 10) + "\" y1=\"" + f2(ly - 4) + "\" x2=\"" + f2(lx + 40) + "\" y2=\"" + f2(ly - 4) +
         "\" stroke=\"" + palette[k % std::size(palette)] + "\" stroke-width=\"2\"/>\n";
    s += "<text x=\"" + f2(lx + 48) + "\" y=\"" + f2(ly) + "\">" + set.curves[k].label + "</text>\n";
  }
  s += "</g>\n</svg>\n";
  return s;
}

}  // namespace gvbound::curve
