#pragma once

#include <span>
#include <vector>

namespace gdisc {

/// Dense univariate polynomial, coefficient m multiplies t^m.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  double operator()(double t) const;
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coeffs() const { return coeffs_; }

  Polynomial derivative() const;
  /// Multiplies by t and adds a constant: returns c + t * p(t).
  Polynomial times_t_plus(double c) const;

 private:
  std::vector<double> coeffs_{0.0};
};

/// All real roots of p in [lo, hi], ascending. Isolation recurses on the
/// derivative, so each monotone piece holds at most one root; roots are
/// refined by bisection to `tol`. Identically-zero input yields no roots.
std::vector<double> real_roots_in(const Polynomial& p, double lo, double hi,
                                  double tol = 1e-13);

}  // namespace gdisc
