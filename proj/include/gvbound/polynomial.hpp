#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gvbound/errors.hpp"

namespace gvbound {

// Sparse real polynomial in a fixed number of variables. Terms are keyed by
// exponent vector; zero coefficients are never stored.
class SparsePolynomial {
 public:
  using Exponents = std::vector<int>;

  explicit SparsePolynomial(std::size_t num_vars) : num_vars_(num_vars) {
    if (num_vars == 0) throw DomainError("SparsePolynomial: need at least one variable");
  }

  static SparsePolynomial constant(std::size_t num_vars, double c) {
    SparsePolynomial p(num_vars);
    p.add_term(Exponents(num_vars, 0), c);
    return p;
  }

  // The monomial z_index.
  static SparsePolynomial variable(std::size_t num_vars, std::size_t index) {
    if (index >= num_vars) throw DimensionMismatch("SparsePolynomial::variable: index out of range");
    SparsePolynomial p(num_vars);
    Exponents e(num_vars, 0);
    e[index] = 1;
    p.add_term(std::move(e), 1.0);
    return p;
  }

  std::size_t num_vars() const { return num_vars_; }
  std::size_t num_terms() const { return terms_.size(); }
  const std::map<Exponents, double>& terms() const { return terms_; }

  void add_term(Exponents exponents, double coefficient) {
    if (exponents.size() != num_vars_) {
      throw DimensionMismatch("SparsePolynomial::add_term: exponent vector has length " +
                              std::to_string(exponents.size()) + ", expected " +
                              std::to_string(num_vars_));
    }
    for (int e : exponents) {
      if (e < 0) throw DomainError("SparsePolynomial::add_term: negative exponent");
    }
    if (coefficient == 0.0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(exponents), coefficient);
    if (!inserted) {
      it->second += coefficient;
      if (it->second == 0.0) terms_.erase(it);
    }
  }

  double evaluate(std::span<const double> z) const {
    check_point(z);
    double total = 0.0;
    for (const auto& [exps, coef] : terms_) {
      double term = coef;
      for (std::size_t i = 0; i < num_vars_; ++i) {
        for (int k = 0; k < exps[i]; ++k) term *= z[i];
      }
      total += term;
    }
    return total;
  }

  SparsePolynomial derivative(std::size_t index) const {
    if (index >= num_vars_) throw DimensionMismatch("SparsePolynomial::derivative: index out of range");
    SparsePolynomial d(num_vars_);
    for (const auto& [exps, coef] : terms_) {
      if (exps[index] == 0) continue;
      Exponents e = exps;
      e[index] -= 1;
      d.add_term(std::move(e), coef * exps[index]);
    }
    return d;
  }

  // Reorders variables: variable i of the result is variable perm[i] of *this.
  SparsePolynomial permuted(std::span<const std::size_t> perm) const {
    if (perm.size() != num_vars_) throw DimensionMismatch("SparsePolynomial::permuted: bad permutation");
    SparsePolynomial p(num_vars_);
    for (const auto& [exps, coef] : terms_) {
      Exponents e(num_vars_);
      for (std::size_t i = 0; i < num_vars_; ++i) e[i] = exps[perm[i]];
      p.add_term(std::move(e), coef);
    }
    return p;
  }

  SparsePolynomial& operator+=(const SparsePolynomial& o) {
    check_same(o);
    for (const auto& [exps, coef] : o.terms_) add_term(exps, coef);
    return *this;
  }
  SparsePolynomial& operator-=(const SparsePolynomial& o) { return *this += o * -1.0; }

  friend SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b) { return a += b; }
  friend SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b) { return a -= b; }
  friend SparsePolynomial operator-(double c, const SparsePolynomial& b) {
    return constant(b.num_vars_, c) - b;
  }
  friend SparsePolynomial operator+(double c, const SparsePolynomial& b) {
    return constant(b.num_vars_, c) + b;
  }

  friend SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b) {
    a.check_same(b);
    SparsePolynomial p(a.num_vars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(a.num_vars_);
        for (std::size_t i = 0; i < a.num_vars_; ++i) e[i] = ea[i] + eb[i];
        p.add_term(std::move(e), ca * cb);
      }
    }
    return p;
  }
  friend SparsePolynomial operator*(const SparsePolynomial& a, double s) {
    SparsePolynomial p(a.num_vars_);
    for (const auto& [e, c] : a.terms_) p.add_term(e, c * s);
    return p;
  }
  friend SparsePolynomial operator*(double s, const SparsePolynomial& a) { return a * s; }

 private:
  void check_point(std::span<const double> z) const {
    if (z.size() != num_vars_) {
      throw DimensionMismatch("SparsePolynomial: point has " + std::to_string(z.size()) +
                              " coordinates, polynomial has " + std::to_string(num_vars_) +
                              " variables");
    }
  }
  void check_same(const SparsePolynomial& o) const {
    if (o.num_vars_ != num_vars_) throw DimensionMismatch("SparsePolynomial: arity mismatch");
  }

  std::size_t num_vars_;
  std::map<Exponents, double> terms_;
};

}  // namespace gvbound
