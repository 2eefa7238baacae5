#include "invpde/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Dense>

#include "invpde/errors.hpp"

namespace invpde {

double rho(std::span<const double> grad) {
  double r = 1.0;
  for (double g : grad) r += g * g;
  return r;
}

namespace {

void require_size(std::span<const double> grad, const SymMatrix& hess) {
  if (static_cast<int>(grad.size()) != hess.n()) throw DimensionMismatch("grad and hess sizes differ");
}

Eigen::MatrixXd inverse_metric(const SymMatrix& g) {
  const Eigen::MatrixXd m = g.matrix();
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  const double scale = g.max_abs();
  if (scale == 0.0 || !lu.isInvertible() || std::abs(lu.determinant()) < 1e-14 * std::pow(scale, g.n()))
    throw SingularMetric("metric is not invertible");
  return lu.inverse();
}

}  // namespace

SymMatrix chart_metric_h(std::span<const double> grad) {
  const int n = static_cast<int>(grad.size());
  const double r = rho(grad);
  SymMatrix h(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      h(i, j) = ((i == j ? r : 0.0) - grad[static_cast<std::size_t>(i)] * grad[static_cast<std::size_t>(j)]) / (r * r);
  return h;
}

Eigen::MatrixXd shape_matrix(std::span<const double> grad, const SymMatrix& hess) {
  require_size(grad, hess);
  return chart_metric_h(grad).matrix() * hess.matrix();
}

double tau_d(const Eigen::MatrixXd& S, int d) {
  if (d < 1) throw std::invalid_argument("tau_d needs d >= 1");
  Eigen::MatrixXd P = S;
  for (int k = 1; k < d; ++k) P = P * S;
  return P.trace();
}

std::vector<double> eigenvalues(std::span<const double> grad, const SymMatrix& hess) {
  require_size(grad, hess);
  const Eigen::LLT<Eigen::MatrixXd> llt(chart_metric_h(grad).matrix());
  const Eigen::MatrixXd L = llt.matrixL();
  Eigen::MatrixXd M = L.transpose() * hess.matrix() * L;
  M = 0.5 * (M + M.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  std::vector<double> lam(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::stable_sort(lam.begin(), lam.end(), std::greater<>());
  return lam;
}

double elementary_symmetric(std::span<const double> lambda, int i) {
  if (i < 0) throw std::invalid_argument("elementary_symmetric needs i >= 0");
  // e[k] after processing a prefix of lambda.
  std::vector<double> e(static_cast<std::size_t>(i) + 1, 0.0);
  e[0] = 1.0;
  for (double l : lambda)
    for (int k = i; k >= 1; --k) e[static_cast<std::size_t>(k)] += l * e[static_cast<std::size_t>(k - 1)];
  return e[static_cast<std::size_t>(i)];
}

Eigen::MatrixXd tracefree_shape(std::span<const double> grad, const SymMatrix& hess) {
  Eigen::MatrixXd S = shape_matrix(grad, hess);
  const double mean = S.trace() / static_cast<double>(S.rows());
  S.diagonal().array() -= mean;
  return S;
}

double tauring_d(std::span<const double> grad, const SymMatrix& hess, int d) {
  return tau_d(tracefree_shape(grad, hess), d);
}

double conformal_discriminant(std::span<const double> grad, const SymMatrix& hess) {
  if (hess.n() != 2 || grad.size() != 2) throw WrongDimension("conformal_discriminant is defined for n = 2");
  const double ux = grad[0], uy = grad[1];
  const double uxx = hess(0, 0), uxy = hess(1, 0), uyy = hess(1, 1);
  const double mean = (1 + uy * uy) * uxx - 2 * ux * uy * uxy + (1 + ux * ux) * uyy;
  return mean * mean - 4 * (1 + ux * ux + uy * uy) * (uxx * uyy - uxy * uxy);
}

std::vector<double> cubic_trace(const SymMatrix& g, const SymCubic& C) {
  if (g.n() != C.n()) throw DimensionMismatch("metric and cubic sizes differ");
  const Eigen::MatrixXd gi = inverse_metric(g);
  const int n = g.n();
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(k)] += gi(i, j) * C(i, j, k);
  return w;
}

SymCubic tracefree_cubic(const SymMatrix& g, const SymCubic& C) {
  std::vector<double> w = cubic_trace(g, C);
  for (double& x : w) x /= (g.n() + 2);
  return C - symmetric_product(w, g);
}

double pick_norm(const SymMatrix& g, const SymCubic& C) {
  if (g.n() != C.n()) throw DimensionMismatch("metric and cubic sizes differ");
  const SymCubic raised = congruence(C, inverse_metric(g));
  double s = 0.0;
  for (std::size_t p = 0; p < C.lex().size(); ++p) {
    int i = 0, j = 0, k = 0;
    C.triple(p, i, j, k);
    s += SymCubic::multiplicity(i, j, k) * raised.lex()[p] * C.lex()[p];
  }
  return s;
}

std::vector<double> F_aff3_terms(const SymMatrix& hess, const SymCubic& cubic) {
  if (hess.n() != 2 || cubic.n() != 2) throw WrongDimension("F_aff3 is defined for n = 2");
  const double uxx = hess(0, 0), uxy = hess(1, 0), uyy = hess(1, 1);
  const double uxxx = cubic(0, 0, 0), uxxy = cubic(0, 0, 1), uxyy = cubic(0, 1, 1), uyyy = cubic(1, 1, 1);
  return {
      6 * uxx * uxxx * uxy * uyy * uyyy,
      -6 * uxx * uxxx * uxyy * uyy * uyy,
      -18 * uxx * uxxy * uxy * uxyy * uyy,
      12 * uxx * uxxy * uxy * uxy * uyyy,
      -6 * uxx * uxx * uxxy * uyy * uyyy,
      9 * uxx * uxxy * uxxy * uyy * uyy,
      -6 * uxx * uxx * uxy * uxyy * uyyy,
      9 * uxx * uxx * uxyy * uxyy * uyy,
      uxx * uxx * uxx * uyyy * uyyy,
      -6 * uxxx * uxxy * uxy * uyy * uyy,
      12 * uxxx * uxy * uxy * uxyy * uyy,
      -8 * uxxx * uxy * uxy * uxy * uyyy,
      uxxx * uxxx * uyy * uyy * uyy,
  };
}

double F_aff3(const GraphJet& j) {
  if (j.n != 2) throw WrongDimension("F_aff3 is defined for n = 2");
  if (j.order != 3) throw OrderUnderflow("F_aff3 needs an order-3 jet");
  double s = 0.0;
  for (double t : F_aff3_terms(*j.hess, *j.cubic)) s += t;
  return s;
}

}  // namespace invpde
