#pragma once

// Point transformations of M = R^{n+1} (points ordered (u, x^1..x^n)) for the
// Euclidean, affine, projective and conformal geometries, and their
// prolongation to jets of graphs by transform-then-re-graph.
//
//   euclidean / affine : p -> A p + b            chart: the identity
//   projective         : [u:x:1] -> P [u:x:1]    chart: affine chart t = 1
//   conformal          : light-cone model in W = R^{1,n+2} with coordinates
//                        (lambda, u, x, t) and form -lambda^2 + u^2 + |x|^2 + t^2;
//                        chart: stereographic y = 2s/(1+t) of the unit sphere.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "invpde/hypersurface_jets.hpp"

namespace invpde {

enum class Geometry { euclidean, affine, projective, conformal };

std::string_view to_string(Geometry g);
Geometry geometry_from_string(std::string_view s);  // SchemaError
Chart chart_for(Geometry g);

struct GroupElement {
  Geometry type = Geometry::euclidean;
  int n = 0;
  // euclidean/affine: A, (n+1)x(n+1), plus b.  projective: P, (n+2)x(n+2).
  // conformal: C, (n+3)x(n+3).  b is empty for the matrix groups.
  Eigen::MatrixXd matrix;
  Eigen::VectorXd b;

  static GroupElement identity(Geometry type, int n);
  static GroupElement euclidean(Eigen::MatrixXd A, Eigen::VectorXd b);
  static GroupElement affine(Eigen::MatrixXd A, Eigen::VectorXd b);
  static GroupElement projective(Eigen::MatrixXd P);
  static GroupElement conformal(Eigen::MatrixXd C);

  bool is_identity() const;
  // Throws InvalidElement when the defining constraints fail.
  void validate() const;
};

// The Gram matrix diag(-1, 1, ..., 1) of size n+3.
Eigen::MatrixXd conformal_gram(int n);

// g1 * g2, i.e. apply g2 first.
GroupElement compose(const GroupElement& g1, const GroupElement& g2);
GroupElement inverse(const GroupElement& g);

// Image of a chart point (u, x).  ChartDomain if it leaves the chart.
std::vector<double> act_point(const GroupElement& g, std::span<const double> p);

// Jet of g(S) at g(p) for S with jet j at p.  ChartMismatch if j.chart does not
// belong to g's geometry, NotGraph if the image is vertical, ChartDomain.
GraphJet prolong(const GroupElement& g, const GraphJet& j);

// Deterministic pseudorandom element exp(scale * X) for a Gaussian generator X
// of the group's Lie algebra (plus a Gaussian translation for the affine
// groups).  scale == 0 gives the identity exactly.
GroupElement random_element(Geometry type, int n, std::uint64_t seed, double scale);

struct Normalization {
  GroupElement g;
  GraphJet normalized;
  // Number of +2 entries of the normalized hessian (affine/projective); n for euclidean.
  int signature = 0;
};

// euclidean (order >= 2): base -> origin, tangent plane -> horizontal.
// affine/projective (order 3): additionally grad -> 0, hess -> 2 diag(1_d, -1_{n-d}).
// DegenerateHessian if |det hess| < 1e-8 |hess|_max^n.
Normalization normalize_to_origin(Geometry type, const GraphJet& j);

// Tolerance for the degenerate-hessian test, shared with the residuals.
bool hessian_degenerate(const SymMatrix& hess);

}  // namespace invpde
