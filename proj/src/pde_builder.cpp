#include "invpde/pde_builder.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <Eigen/Core>

#include "invpde/errors.hpp"
#include "invpde/expansion.hpp"
#include "invpde/invariants.hpp"
#include "invpde/json_io.hpp"

namespace invpde {

int order_for(Geometry g) { return (g == Geometry::affine || g == Geometry::projective) ? 3 : 2; }

void validate_expr(Geometry geometry, int n, const InvariantExpr& expr) {
  using K = InvariantExpr::Kind;
  if (n < 1 || n > kMaxVars) throw InvalidExpr("n must lie in [1, 8]");
  expr.for_each_leaf([&](const InvariantExpr& leaf) {
    const K k = leaf.kind();
    if (k == K::constant) return;
    const std::string where = leaf.str() + " in a " + std::string(to_string(geometry)) + " expression";
    switch (geometry) {
      case Geometry::euclidean:
        if (k == K::pick) throw InvalidExpr(where + ": the Pick invariant is third order");
        break;
      case Geometry::conformal:
        if (k != K::tauring) throw InvalidExpr(where + ": only tauring(d >= 2) is conformally invariant");
        break;
      case Geometry::affine:
      case Geometry::projective:
        if (k != K::pick) throw InvalidExpr(where + ": only the Pick invariant is available");
        break;
    }
    if (k != K::pick && leaf.index() > n)
      throw InvalidExpr(where + ": index exceeds n = " + std::to_string(n));
  });
}

PdeDescriptor build(Geometry geometry, int n, const InvariantExpr& expr, std::string name) {
  validate_expr(geometry, n, expr);
  if (geometry == Geometry::conformal && n < 2) throw InvalidExpr("conformal expressions need n >= 2");
  PdeDescriptor d;
  d.geometry = geometry;
  d.n = n;
  d.order = order_for(geometry);
  d.expr = expr;
  d.chart = chart_for(geometry);
  d.name = std::move(name);
  return d;
}

namespace {

std::string canonical_preset(std::string name) {
  std::replace(name.begin(), name.end(), '-', '_');
  return name;
}

}  // namespace

Geometry preset_geometry(const std::string& raw) {
  const std::string name = canonical_preset(raw);
  if (name == "minimal_surface" || name == "monge_ampere") return Geometry::euclidean;
  if (name == "umbilical") return Geometry::conformal;
  if (name == "affine_cubic") return Geometry::affine;
  if (name == "projective_cubic") return Geometry::projective;
  throw InvalidExpr("unknown preset '" + raw + "'");
}

PdeDescriptor preset(const std::string& raw, Geometry geometry, int n) {
  const std::string name = canonical_preset(raw);
  const Geometry natural = preset_geometry(name);
  const bool pick_family = (natural == Geometry::affine || natural == Geometry::projective) &&
                           (geometry == Geometry::affine || geometry == Geometry::projective);
  if (natural != geometry && !pick_family)
    throw InvalidExpr("preset '" + raw + "' belongs to the " + std::string(to_string(natural)) + " geometry");
  InvariantExpr e;
  if (name == "minimal_surface") e = InvariantExpr::tau(1);
  else if (name == "monge_ampere") e = InvariantExpr::sigma(n);
  else if (name == "umbilical") e = InvariantExpr::tauring(2);
  else e = InvariantExpr::pick();
  return build(geometry, n, e, name);
}

namespace {

GraphJet prepare(const PdeDescriptor& desc, const GraphJet& j) {
  j.validate();
  if (j.chart != desc.chart)
    throw ChartMismatch("jet chart " + std::string(to_string(j.chart)) + " differs from descriptor chart " +
                        std::string(to_string(desc.chart)));
  if (j.n != desc.n)
    throw DimensionMismatch("jet has n = " + std::to_string(j.n) + ", descriptor n = " + std::to_string(desc.n));
  if (j.order < desc.order)
    throw OrderUnderflow("descriptor needs an order-" + std::to_string(desc.order) + " jet");
  return j.order == desc.order ? j : project(j, desc.order);
}

ResidualValue evaluate_second_order(const InvariantExpr& expr, std::span<const double> grad, const SymMatrix& hess) {
  using K = InvariantExpr::Kind;
  std::optional<Eigen::MatrixXd> S, Sring;
  std::optional<std::vector<double>> lam;
  auto leaf = [&](const InvariantExpr& e) -> double {
    switch (e.kind()) {
      case K::lam:
        if (!lam) lam = eigenvalues(grad, hess);
        return (*lam)[static_cast<std::size_t>(e.index() - 1)];
      case K::sigma:
        if (!lam) lam = eigenvalues(grad, hess);
        return elementary_symmetric(*lam, e.index());
      case K::tau:
        if (!S) S = shape_matrix(grad, hess);
        return tau_d(*S, e.index());
      case K::tauring:
        if (!Sring) Sring = tracefree_shape(grad, hess);
        return tau_d(*Sring, e.index());
      default: throw InvalidExpr("leaf " + e.str() + " is not a second-order invariant");
    }
  };
  ResidualValue r;
  r.value = expr.evaluate(leaf);
  r.scale = std::pow(1.0 + hess.max_abs(), expr.degree());
  return r;
}

}  // namespace

ResidualValue evaluate(const PdeDescriptor& desc, const GraphJet& jet) {
  const GraphJet j = prepare(desc, jet);
  switch (desc.geometry) {
    case Geometry::euclidean:
    case Geometry::conformal: return evaluate_second_order(desc.expr, j.grad, *j.hess);
    case Geometry::affine:
    case Geometry::projective: break;
  }
  const Normalization norm = normalize_to_origin(desc.geometry, j);
  SymMatrix g = *norm.normalized.hess;
  g *= 0.5;
  const SymCubic& cubic = *norm.normalized.cubic;
  const SymCubic c0 = tracefree_cubic(g, cubic);
  const double p = pick_norm(g, c0);
  ResidualValue r;
  r.value = desc.expr.evaluate([&](const InvariantExpr&) { return p; });
  r.scale = std::pow(1.0 + norm.normalized.hess->max_abs() + cubic.max_abs(), desc.expr.degree());
  return r;
}

double residual(const PdeDescriptor& desc, const GraphJet& j) { return evaluate(desc, j).value; }

ResidualValue evaluate_via_normalization(const PdeDescriptor& desc, const GraphJet& jet) {
  if (desc.geometry != Geometry::euclidean)
    throw InvalidExpr("the normalization route is provided for euclidean descriptors only");
  const GraphJet j = prepare(desc, jet);
  const Normalization norm = normalize_to_origin(Geometry::euclidean, j);
  return evaluate_second_order(desc.expr, norm.normalized.grad, *norm.normalized.hess);
}

double residual_via_normalization(const PdeDescriptor& desc, const GraphJet& j) {
  return evaluate_via_normalization(desc, j).value;
}

std::string emit(const PdeDescriptor& desc, EmitFormat format) {
  if (format == EmitFormat::latex) return to_latex(expand_polynomial(desc));
  nlohmann::json out = to_json(desc);
  try {
    out["expansion"] = to_json(expand_polynomial(desc));
  } catch (const NotPolynomial&) {
  } catch (const WrongDimension&) {
  }
  return out.dump(2);
}

}  // namespace invpde
