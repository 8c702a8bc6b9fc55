#include "gdisc/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace gdisc {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

double Polynomial::operator()(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t m = 1; m < coeffs_.size(); ++m) d[m - 1] = coeffs_[m] * static_cast<double>(m);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::times_t_plus(double c) const {
  std::vector<double> r(coeffs_.size() + 1, 0.0);
  r[0] = c;
  for (std::size_t m = 0; m < coeffs_.size(); ++m) r[m + 1] = coeffs_[m];
  return Polynomial(std::move(r));
}

namespace {

bool is_zero(const Polynomial& p) {
  return std::all_of(p.coeffs().begin(), p.coeffs().end(), [](double c) { return c == 0.0; });
}

double bisect(const Polynomial& p, double a, double b, double fa, double tol) {
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    double m = 0.5 * (a + b);
    double fm = p(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<double> real_roots_in(const Polynomial& p, double lo, double hi, double tol) {
  std::vector<double> roots;
  if (hi < lo || is_zero(p)) return roots;
  if (p.degree() == 0) return roots;

  // Monotone pieces between critical points.
  std::vector<double> cuts{lo};
  for (double c : real_roots_in(p.derivative(), lo, hi, tol))
    if (c > cuts.back()) cuts.push_back(c);
  if (hi > cuts.back()) cuts.push_back(hi);

  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    double a = cuts[k], b = cuts[k + 1];
    double fa = p(a), fb = p(b);
    if (fa == 0.0) {
      if (roots.empty() || a - roots.back() > tol) roots.push_back(a);
      continue;
    }
    if (fb == 0.0) continue;  // picked up as the next piece's left end
    if ((fa < 0.0) != (fb < 0.0)) roots.push_back(bisect(p, a, b, fa, tol));
  }
  if (cuts.size() >= 1 && p(hi) == 0.0 && (roots.empty() || hi - roots.back() > tol))
    roots.push_back(hi);
  return roots;
}

}  // namespace gdisc
