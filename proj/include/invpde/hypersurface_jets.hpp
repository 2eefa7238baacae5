#pragma once

// Points of the jet space of hypersurfaces u = f(x) in R^{n+1}, in a named
// chart, together with jet extension, projection, the affine fiber action and
// a finite-difference tangency check for total derivatives.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "invpde/jet_algebra.hpp"
#include "invpde/sym_tensor.hpp"

namespace invpde {

enum class Chart { euclidean, affine, projective_affine_chart, sphere_stereographic };

std::string_view to_string(Chart c);
// SchemaError on unknown names.
Chart chart_from_string(std::string_view s);

struct GraphJet {
  Chart chart = Chart::euclidean;
  int n = 0;
  int order = 1;
  std::vector<double> base;
  double u = 0.0;
  std::vector<double> grad;
  std::optional<SymMatrix> hess;   // order >= 2
  std::optional<SymCubic> cubic;   // order == 3

  // Zero jet of the given shape.
  static GraphJet zero(int n, int order, Chart chart = Chart::euclidean);

  // DimensionMismatch / OrderUnderflow when the fields disagree with n, order.
  void validate() const;
};

using FiberVector = std::variant<SymMatrix, SymCubic>;
int degree(const FiberVector& v);

// Jet of the polynomial `germ` (a function of x, expanded about x = 0) at `base`.
GraphJet jet_extend(const TruncatedJet& germ, std::span<const double> base, int order,
                    Chart chart = Chart::euclidean);
// Same, for a germ already expanded about `base` (its variables are x - base).
GraphJet jet_from_local(const TruncatedJet& local, std::span<const double> base, int order,
                        Chart chart = Chart::euclidean);
// The Taylor polynomial of j in the variables x - base: coefficient D_alpha u / alpha!.
TruncatedJet local_polynomial(const GraphJet& j);

// Truncation to order m (m <= j.order).
GraphJet project(const GraphJet& j, int m);

// Adds v to the top-order coefficients.  DegreeMismatch unless
// degree(v) == j.order >= 2.
GraphJet shift_fiber(const GraphJet& j, const FiberVector& v);

// Max deviation between finite-difference derivatives of the (l-1)-jet of
// `germ` along x^i and the total derivatives D_i read off from the l-jet.
double tangency_check(const TruncatedJet& germ, int l, std::span<const double> base);

// Largest absolute difference between matching fields (order and n must agree).
double max_difference(const GraphJet& a, const GraphJet& b);

}  // namespace invpde
