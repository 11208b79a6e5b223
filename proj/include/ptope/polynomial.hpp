#pragma once

#include <stdexcept>
#include <vector>

namespace ptope {

/// One term coef * x1^e1 * ... * xn^en of a multivariate polynomial.
struct Monomial {
  double coef = 0.0;
  std::vector<int> exponents;
};

/// Sum of monomials over R^n; the closed-form field type the text formats
/// can carry.
struct Polynomial {
  int n = 0;
  std::vector<Monomial> terms;

  Polynomial() = default;

  Polynomial(int dim, std::vector<Monomial> ts) : n(dim), terms(std::move(ts)) {
    if (n < 1) throw std::invalid_argument("polynomial dimension must be >= 1");
    for (const auto& t : terms) {
      if (static_cast<int>(t.exponents.size()) != n) {
        throw std::invalid_argument("monomial exponent count must equal the dimension");
      }
      for (int e : t.exponents) {
        if (e < 0) throw std::invalid_argument("monomial exponents must be nonnegative");
      }
    }
  }

  double eval(const std::vector<double>& x) const {
    double acc = 0.0;
    for (const auto& t : terms) {
      double v = t.coef;
      for (int d = 0; d < n; ++d) {
        for (int e = 0; e < t.exponents[d]; ++e) v *= x[d];
      }
      acc += v;
    }
    return acc;
  }
};

}  // namespace ptope
