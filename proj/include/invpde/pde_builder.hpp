#pragma once

// Invariant PDEs: a geometry plus an invariant expression, evaluated as a
// residual on jets.
//
//   euclidean   order 2   leaves lam, sigma, tau, tauring   (chart metric route)
//   conformal   order 2   leaves tauring(d >= 2)            (stereographic chart)
//   affine      order 3   leaf pick                         (normalize, then Pick norm)
//   projective  order 3   leaf pick                         (as affine, in the chart t = 1)

#include <string>

#include "invpde/group_actions.hpp"
#include "invpde/invariant_expr.hpp"

namespace invpde {

struct PdeDescriptor {
  Geometry geometry = Geometry::euclidean;
  int n = 2;
  int order = 2;
  InvariantExpr expr;
  Chart chart = Chart::euclidean;
  std::string name;

  friend bool operator==(const PdeDescriptor&, const PdeDescriptor&) = default;
};

int order_for(Geometry g);

// Throws InvalidExpr when expr uses leaves the geometry does not support or
// indices beyond n.
void validate_expr(Geometry geometry, int n, const InvariantExpr& expr);

PdeDescriptor build(Geometry geometry, int n, const InvariantExpr& expr, std::string name = "");

// minimal_surface = tau(1), monge_ampere = sigma(n), umbilical = tauring(2),
// affine_cubic / projective_cubic = pick.  Hyphens are accepted for underscores.
// InvalidExpr for unknown names or a preset that does not fit the geometry.
PdeDescriptor preset(const std::string& name, Geometry geometry, int n = 2);
// The geometry a preset belongs to.
Geometry preset_geometry(const std::string& name);

struct ResidualValue {
  double value = 0.0;
  // (1 + |hess| + |cubic|)^degree, of the jet the expression is evaluated on.
  double scale = 1.0;
  double normalized() const { return value / scale; }
};

// Jets of higher order are projected; lower order raises OrderUnderflow.
// ChartMismatch, DimensionMismatch, DegenerateHessian, NotGraph, DivisionByZero.
ResidualValue evaluate(const PdeDescriptor& desc, const GraphJet& j);
double residual(const PdeDescriptor& desc, const GraphJet& j);

// Euclidean only: normalize to the origin and evaluate on the eigenvalues of
// the normalized hessian (where h = I).
ResidualValue evaluate_via_normalization(const PdeDescriptor& desc, const GraphJet& j);
double residual_via_normalization(const PdeDescriptor& desc, const GraphJet& j);

enum class EmitFormat { json, latex };
// json: the descriptor (with its expansion when one exists); latex: the
// expanded polynomial (NotPolynomial otherwise).
std::string emit(const PdeDescriptor& desc, EmitFormat format);

}  // namespace invpde
