#pragma once

// Closed-form hypersurface germs used as exact solutions.  Each entry returns
// the Taylor germ at a requested base point, in the variables x - base.

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "invpde/hypersurface_jets.hpp"

namespace invpde {

struct Germ {
  std::string name;
  int n = 2;
  Chart chart = Chart::euclidean;
  // ChartDomain when base lies outside the germ's domain.
  std::function<TruncatedJet(std::span<const double> base, int order)> at;

  GraphJet jet(std::span<const double> base, int order) const;
  // Same germ, tagged with another chart (the coordinates are unchanged).
  Germ in_chart(Chart c) const;
};

// Derivatives f, f', ..., f'''' of a one-variable profile at a point.
using Profile = std::function<std::array<double, 5>(double)>;

Germ plane(std::span<const double> slope, double offset = 0.0);
Germ paraboloid(int n = 2);                   // |x|^2
Germ saddle();                                // x^2 - y^2
Germ cylinder_graph(int n, Profile f);
Germ cylinder_graph(int n = 2);               // f = cos
Germ sphere_cap(int n, double r, double c);   // c - sqrt(r^2 - |x|^2), |x| < r
Germ scherk();                                // ln cos x - ln cos y, |x|, |y| < pi/2
// Image of {u = x^T G x} under the shear (u, x) -> (u, x + u w); order <= 3.
Germ sheared_quadric(const Eigen::MatrixXd& G, std::span<const double> w);

// All of the above with default parameters, keyed by name.
std::vector<Germ> solution_catalog();
// SchemaError for unknown names.
Germ germ_by_name(const std::string& name);

}  // namespace invpde
