#pragma once

// Smooth-point asymptotics for rational generating functions G/H: solve the
// critical-point system of the denominator in a given direction and report
// the exponential growth rate of the coefficients along that direction.
//
// Only the exponential rate is computed. The n^{-(l-1)/2} prefactor and the
// Hessian-dependent constant are surfaced as a descriptive string.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gvbound/errors.hpp"
#include "gvbound/numeric.hpp"
#include "gvbound/polynomial.hpp"

namespace gvbound::acsv {

// Normalized growth rates k_i = n * r_i of the coefficient index.
class Direction {
 public:
  explicit Direction(std::vector<double> r) : r_(std::move(r)) {
    if (r_.empty()) throw DomainError("Direction: empty");
    for (double v : r_) {
      if (!(v > 0.0)) throw DomainError("Direction: components must be positive, got " + detail::fmt(v));
    }
  }
  std::size_t size() const { return r_.size(); }
  double operator[](std::size_t i) const { return r_[i]; }
  std::span<const double> values() const { return r_; }

 private:
  std::vector<double> r_;
};

struct CriticalPoint {
  std::vector<double> z;
  double residual_norm = 0.0;
  Direction direction;
  int iterations = 0;
};

struct SolveOptions {
  double tolerance = kDefaultTolerance;
  int max_iterations = 200;
  int max_halvings = 30;
};

// H together with its exact first and second partial derivatives.
class CriticalSystem {
 public:
  explicit CriticalSystem(SparsePolynomial h) : h_(std::move(h)) {
    const std::size_t l = h_.num_vars();
    grad_.reserve(l);
    for (std::size_t i = 0; i < l; ++i) grad_.push_back(h_.derivative(i));
    hess_.resize(l);
    for (std::size_t i = 0; i < l; ++i) {
      hess_[i].reserve(l);
      for (std::size_t j = 0; j < l; ++j) hess_[i].push_back(grad_[i].derivative(j));
    }
  }

  const SparsePolynomial& denominator() const { return h_; }
  std::size_t num_vars() const { return h_.num_vars(); }

  // [H(z), r_l z_j H_j - r_j z_l H_l for j < l].
  std::vector<double> residual(const Direction& r, std::span<const double> z) const {
    check(r, z);
    const std::size_t l = num_vars();
    const std::size_t last = l - 1;
    std::vector<double> out(l);
    out[0] = h_.evaluate(z);
    const double zl_hl = z[last] * grad_[last].evaluate(z);
    for (std::size_t j = 0; j < last; ++j) {
      out[j + 1] = r[last] * z[j] * grad_[j].evaluate(z) - r[j] * zl_hl;
    }
    return out;
  }

  Eigen::MatrixXd jacobian(const Direction& r, std::span<const double> z) const {
    check(r, z);
    const std::size_t l = num_vars();
    const std::size_t last = l - 1;
    std::vector<double> g(l);
    for (std::size_t i = 0; i < l; ++i) g[i] = grad_[i].evaluate(z);
    Eigen::MatrixXd jac(l, l);
    for (std::size_t k = 0; k < l; ++k) jac(0, k) = g[k];
    for (std::size_t j = 0; j < last; ++j) {
      for (std::size_t k = 0; k < l; ++k) {
        const double dj = (j == k ? g[j] : 0.0) + z[j] * hess_[j][k].evaluate(z);
        const double dl = (last == k ? g[last] : 0.0) + z[last] * hess_[last][k].evaluate(z);
        jac(static_cast<Eigen::Index>(j + 1), static_cast<Eigen::Index>(k)) =
            r[last] * dj - r[j] * dl;
      }
    }
    return jac;
  }

 private:
  void check(const Direction& r, std::span<const double> z) const {
    if (z.size() != num_vars() || r.size() != num_vars()) {
      throw DimensionMismatch("critical system: expected " + std::to_string(num_vars()) +
                              " coordinates, got point of size " + std::to_string(z.size()) +
                              " and direction of size " + std::to_string(r.size()));
    }
  }

  SparsePolynomial h_;
  std::vector<SparsePolynomial> grad_;
  std::vector<std::vector<SparsePolynomial>> hess_;
};

inline double max_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double evaluate(const SparsePolynomial& h, std::span<const double> z) {
  return h.evaluate(z);
}

inline std::vector<double> critical_system_residual(const SparsePolynomial& h, const Direction& r,
                                                    std::span<const double> z) {
  return CriticalSystem(h).residual(r, z);
}

// Damped Newton on the critical-point system. A step is halved (up to
// max_halvings times) while it would leave the positive orthant or increase
// the residual max-norm.
inline CriticalPoint solve_critical_point(const CriticalSystem& system, const Direction& r,
                                          std::span<const double> initial,
                                          const SolveOptions& opts = {}) {
  const std::size_t l = system.num_vars();
  if (initial.size() != l) throw DimensionMismatch("solve_critical_point: initial point has wrong size");
  for (double v : initial) {
    if (!(v > 0.0)) throw DomainError("solve_critical_point: initial point must be positive");
  }
  std::vector<double> z(initial.begin(), initial.end());
  std::vector<double> f = system.residual(r, z);
  double norm = max_norm(f);
  std::vector<double> trial(l);
  for (int it = 0; it < opts.max_iterations; ++it) {
    if (norm <= opts.tolerance) return {z, norm, r, it};
    const Eigen::MatrixXd jac = system.jacobian(r, z);
    const Eigen::Map<const Eigen::VectorXd> rhs(f.data(), static_cast<Eigen::Index>(l));
    const auto lu = jac.fullPivLu();
    if (!lu.isInvertible()) throw NonConvergence("solve_critical_point: singular Jacobian");
    const Eigen::VectorXd step = lu.solve(rhs);

    double scale = 1.0;
    bool accepted = false;
    std::vector<double> fallback;
    for (int h = 0; h <= opts.max_halvings; ++h, scale *= 0.5) {
      bool positive = true;
      for (std::size_t i = 0; i < l; ++i) {
        trial[i] = z[i] - scale * step(static_cast<Eigen::Index>(i));
        positive = positive && trial[i] > 0.0;
      }
      if (!positive) continue;
      std::vector<double> ft = system.residual(r, trial);
      if (fallback.empty()) fallback = trial;
      if (max_norm(ft) < norm) {
        z = trial;
        f = std::move(ft);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // No decreasing step: take the smallest positive one so the iteration
      // can leave a shallow plateau.
      if (fallback.empty()) throw NonConvergence("solve_critical_point: every damped step leaves the positive orthant");
      z = fallback;
      f = system.residual(r, z);
    }
    norm = max_norm(f);
  }
  if (norm <= opts.tolerance) return {z, norm, r, opts.max_iterations};
  throw NonConvergence("solve_critical_point: residual " + detail::fmt(norm) + " after " +
                       std::to_string(opts.max_iterations) + " iterations");
}

inline CriticalPoint solve_critical_point(const SparsePolynomial& h, const Direction& r,
                                          std::span<const double> initial,
                                          const SolveOptions& opts = {}) {
  return solve_critical_point(CriticalSystem(h), r, initial, opts);
}

inline CriticalPoint solve_critical_point(const SparsePolynomial& h, const Direction& r,
                                          const SolveOptions& opts = {}) {
  const std::vector<double> start(h.num_vars(), 0.5);
  return solve_critical_point(h, r, start, opts);
}

// -sum_i r_i log2 z_i, the growth rate in bits per unit of n.
inline double growth_exponent(const CriticalPoint& cp) {
  double total = 0.0;
  for (std::size_t i = 0; i < cp.z.size(); ++i) total -= cp.direction[i] * std::log2(cp.z[i]);
  return total;
}

// Order of the sub-exponential correction, as text.
inline std::string prefactor_order(const CriticalPoint& cp) {
  const std::size_t l = cp.z.size();
  if (l <= 1) return "Theta(1) * (z*)^(-k)";
  return "Theta(k_" + std::to_string(l) + "^(-" + std::to_string(l - 1) + "/2)) * (z*)^(-k)";
}

}  // namespace gvbound::acsv
