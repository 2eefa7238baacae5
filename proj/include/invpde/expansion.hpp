#pragma once

// Expansion of a residual into a polynomial in the jet coordinates (n = 2)
// after clearing denominators.
//
// euclidean / conformal: residual = factor * P * rho^{-m},      rho = 1 + u_x^2 + u_y^2
// affine / projective:   residual = factor * P * det(hess)^{-m}
//
// P has coprime integer coefficients whenever the exact polynomial has rational
// ones (factor > 0 absorbs the content), and m is minimal.

#include <string>
#include <vector>

#include "invpde/pde_builder.hpp"

namespace invpde {

struct ExpandedPolynomial {
  struct Monomial {
    std::vector<int> exps;
    double coef = 0.0;
    friend bool operator==(const Monomial&, const Monomial&) = default;
  };
  std::vector<std::string> vars;
  std::vector<Monomial> monomials;
  int rho_power = 0;
  // "rho" or "det_hess".
  std::string denominator = "rho";
  double factor = 1.0;

  // P at the jet (grad, hess[, cubic]).
  double evaluate(const GraphJet& j) const;

  friend bool operator==(const ExpandedPolynomial&, const ExpandedPolynomial&) = default;
};

// NotPolynomial for lam leaves, divisions by non-constants, negative powers;
// WrongDimension unless n = 2.
ExpandedPolynomial expand_polynomial(const PdeDescriptor& desc);

// "(1+u_y^2)u_{xx} - 2u_xu_yu_{xy} + (1+u_x^2)u_{yy}" style rendering:
// monomials grouped by their second/third order part, lower-order cofactors in
// parentheses.
std::string to_latex(const ExpandedPolynomial& p);

}  // namespace invpde
