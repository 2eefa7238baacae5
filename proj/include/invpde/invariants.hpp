#pragma once

// Scalar invariants of 2- and 3-jets of graphs.
//
// With rho = 1 + |grad u|^2 the chart metric is h = rho^{-2} (rho I - grad grad^T)
// and the shape matrix is S = h * hess.  S is self-adjoint for h^{-1}; its
// spectrum is real and equals that of the symmetric L^T hess L for h = L L^T.

#include <span>
#include <vector>

#include <Eigen/Core>

#include "invpde/hypersurface_jets.hpp"
#include "invpde/sym_tensor.hpp"

namespace invpde {

double rho(std::span<const double> grad);

SymMatrix chart_metric_h(std::span<const double> grad);
Eigen::MatrixXd shape_matrix(std::span<const double> grad, const SymMatrix& hess);

// tr(S^d), d >= 1.
double tau_d(const Eigen::MatrixXd& S, int d);

// Eigenvalues of S, sorted descending.
std::vector<double> eigenvalues(std::span<const double> grad, const SymMatrix& hess);

// e_i(lambda); e_0 = 1, e_i = 0 for i > size.
double elementary_symmetric(std::span<const double> lambda, int i);

// S - (tr S / n) I.
Eigen::MatrixXd tracefree_shape(std::span<const double> grad, const SymMatrix& hess);
// tr(Sring^d).
double tauring_d(std::span<const double> grad, const SymMatrix& hess, int d);

// n = 2 only (WrongDimension):
// ((1+u_y^2)u_xx - 2u_xu_yu_xy + (1+u_x^2)u_yy)^2 - 4 rho (u_xx u_yy - u_xy^2).
double conformal_discriminant(std::span<const double> grad, const SymMatrix& hess);

// (tr_g C)_k = sum_ij g^{ij} C_ijk.  SingularMetric if g is not invertible.
std::vector<double> cubic_trace(const SymMatrix& g, const SymCubic& C);
// C - w.g with w = tr_g(C) / (n + 2).
SymCubic tracefree_cubic(const SymMatrix& g, const SymCubic& C);
// sum g^{ii'} g^{jj'} g^{kk'} C_ijk C_i'j'k'.
double pick_norm(const SymMatrix& g, const SymCubic& C);

// The explicit third-order Aff(3)-invariant polynomial (n = 2, order 3).
double F_aff3(const GraphJet& j);
// Its 13 terms, in the printed order, so callers can form relative residuals.
std::vector<double> F_aff3_terms(const SymMatrix& hess, const SymCubic& cubic);

}  // namespace invpde
