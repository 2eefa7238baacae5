#include "invpde/hypersurface_jets.hpp"

#include <algorithm>
#include <cmath>

#include "invpde/errors.hpp"

namespace invpde {

std::string_view to_string(Chart c) {
  switch (c) {
    case Chart::euclidean: return "euclidean";
    case Chart::affine: return "affine";
    case Chart::projective_affine_chart: return "projective_affine_chart";
    case Chart::sphere_stereographic: return "sphere_stereographic";
  }
  return "euclidean";
}

Chart chart_from_string(std::string_view s) {
  if (s == "euclidean") return Chart::euclidean;
  if (s == "affine") return Chart::affine;
  if (s == "projective_affine_chart") return Chart::projective_affine_chart;
  if (s == "sphere_stereographic") return Chart::sphere_stereographic;
  throw SchemaError("unknown chart '" + std::string(s) + "'");
}

GraphJet GraphJet::zero(int n, int order, Chart chart) {
  if (order < 1 || order > 3) throw OrderUnderflow("graph jets have order 1, 2 or 3");
  GraphJet j;
  j.chart = chart;
  j.n = n;
  j.order = order;
  j.base.assign(static_cast<std::size_t>(n), 0.0);
  j.grad.assign(static_cast<std::size_t>(n), 0.0);
  if (order >= 2) j.hess = SymMatrix(n);
  if (order >= 3) j.cubic = SymCubic(n);
  return j;
}

void GraphJet::validate() const {
  if (n < 1 || n > kMaxVars) throw DimensionMismatch("jet dimension must lie in [1, 8]");
  if (order < 1 || order > 3) throw OrderUnderflow("graph jets have order 1, 2 or 3");
  if (base.size() != static_cast<std::size_t>(n) || grad.size() != static_cast<std::size_t>(n))
    throw DimensionMismatch("base/grad length differs from n");
  if (hess.has_value() != (order >= 2) || cubic.has_value() != (order >= 3))
    throw DimensionMismatch("hess/cubic presence disagrees with the jet order");
  if (hess && hess->n() != n) throw DimensionMismatch("hess has wrong size");
  if (cubic && cubic->n() != n) throw DimensionMismatch("cubic has wrong size");
}

int degree(const FiberVector& v) { return std::holds_alternative<SymMatrix>(v) ? 2 : 3; }

GraphJet jet_from_local(const TruncatedJet& local, std::span<const double> base, int order, Chart chart) {
  const int n = local.n_vars();
  if (static_cast<int>(base.size()) != n) throw DimensionMismatch("base point has wrong size");
  if (local.order() < order)
    throw OrderUnderflow("germ of order " + std::to_string(local.order()) + " cannot give a " +
                         std::to_string(order) + "-jet");
  GraphJet j = GraphJet::zero(n, order, chart);
  j.base.assign(base.begin(), base.end());
  j.u = local.constant_term();
  const MultiIndex z = MultiIndex::zero(n);
  for (int i = 0; i < n; ++i) {
    const MultiIndex ei = z.with(i, 1);
    j.grad[static_cast<std::size_t>(i)] = local.coeff(ei);
    if (order < 2) continue;
    for (int k = 0; k <= i; ++k) {
      const MultiIndex a = ei.with(k, ei[k] + 1);
      (*j.hess)(i, k) = local.coeff(a) * a.factorial();
    }
  }
  if (order >= 3) {
    SymCubic& c = *j.cubic;
    for (std::size_t p = 0; p < c.lex().size(); ++p) {
      int a = 0, b = 0, d = 0;
      c.triple(p, a, b, d);
      MultiIndex m = z;
      m = m.with(a, m[a] + 1);
      m = m.with(b, m[b] + 1);
      m = m.with(d, m[d] + 1);
      c.lex()[p] = local.coeff(m) * m.factorial();
    }
  }
  return j;
}

GraphJet jet_extend(const TruncatedJet& germ, std::span<const double> base, int order, Chart chart) {
  if (germ.order() < order)
    throw OrderUnderflow("germ of order " + std::to_string(germ.order()) + " cannot give a " +
                         std::to_string(order) + "-jet");
  return jet_from_local(recenter(germ, base), base, order, chart);
}

TruncatedJet local_polynomial(const GraphJet& j) {
  j.validate();
  TruncatedJet p(j.n, j.order);
  const MultiIndex z = MultiIndex::zero(j.n);
  p[0] = j.u;
  for (int i = 0; i < j.n; ++i) {
    const MultiIndex ei = z.with(i, 1);
    p.set_coeff(ei, j.grad[static_cast<std::size_t>(i)]);
    if (j.order < 2) continue;
    for (int k = 0; k <= i; ++k) {
      const MultiIndex a = ei.with(k, ei[k] + 1);
      p.set_coeff(a, (*j.hess)(i, k) / a.factorial());
    }
  }
  if (j.order >= 3) {
    const SymCubic& c = *j.cubic;
    for (std::size_t q = 0; q < c.lex().size(); ++q) {
      int a = 0, b = 0, d = 0;
      c.triple(q, a, b, d);
      MultiIndex m = z;
      m = m.with(a, m[a] + 1);
      m = m.with(b, m[b] + 1);
      m = m.with(d, m[d] + 1);
      p.set_coeff(m, c.lex()[q] / m.factorial());
    }
  }
  return p;
}

GraphJet project(const GraphJet& j, int m) {
  if (m < 1 || m > j.order)
    throw OrderUnderflow("cannot project an order-" + std::to_string(j.order) + " jet to order " +
                         std::to_string(m));
  GraphJet r = j;
  r.order = m;
  if (m < 3) r.cubic.reset();
  if (m < 2) r.hess.reset();
  return r;
}

GraphJet shift_fiber(const GraphJet& j, const FiberVector& v) {
  const int k = degree(v);
  if (j.order < 2 || k != j.order)
    throw DegreeMismatch("fiber vector of degree " + std::to_string(k) + " cannot act on an order-" +
                         std::to_string(j.order) + " jet");
  GraphJet r = j;
  if (k == 2) {
    const auto& s = std::get<SymMatrix>(v);
    if (s.n() != j.n) throw DimensionMismatch("fiber vector has wrong size");
    *r.hess += s;
  } else {
    const auto& s = std::get<SymCubic>(v);
    if (s.n() != j.n) throw DimensionMismatch("fiber vector has wrong size");
    *r.cubic += s;
  }
  return r;
}

namespace {

// Coordinates (u, u_i, u_ij) of a jet up to `order`, flattened.
std::vector<double> coordinates(const GraphJet& j, int order) {
  std::vector<double> out{j.u};
  if (order >= 1) out.insert(out.end(), j.grad.begin(), j.grad.end());
  if (order >= 2) out.insert(out.end(), j.hess->lower().begin(), j.hess->lower().end());
  return out;
}

// D_i applied to the same coordinates: u -> u_i, u_k -> u_ik, u_kl -> u_ikl.
std::vector<double> total_derivative(const GraphJet& j, int i, int order) {
  std::vector<double> out{j.grad[static_cast<std::size_t>(i)]};
  if (order >= 1)
    for (int k = 0; k < j.n; ++k) out.push_back((*j.hess)(i, k));
  if (order >= 2)
    for (int a = 0; a < j.n; ++a)
      for (int b = 0; b <= a; ++b) out.push_back((*j.cubic)(i, a, b));
  return out;
}

}  // namespace

double tangency_check(const TruncatedJet& germ, int l, std::span<const double> base) {
  if (l < 1 || l > 3) throw OrderUnderflow("tangency check supports l = 1, 2, 3");
  if (germ.order() < l) throw OrderUnderflow("germ order is below l");
  const int n = germ.n_vars();
  const GraphJet top = jet_extend(germ, base, l);
  auto diff = [&](int i, double h) {
    std::vector<double> p(base.begin(), base.end()), m(base.begin(), base.end());
    p[static_cast<std::size_t>(i)] += h;
    m[static_cast<std::size_t>(i)] -= h;
    // Order-0 jets are not GraphJets; fall back to values.
    const auto cp = l == 1 ? std::vector<double>{germ.evaluate(p)} : coordinates(jet_extend(germ, p, l - 1), l - 1);
    const auto cm = l == 1 ? std::vector<double>{germ.evaluate(m)} : coordinates(jet_extend(germ, m, l - 1), l - 1);
    std::vector<double> d(cp.size());
    for (std::size_t q = 0; q < d.size(); ++q) d[q] = (cp[q] - cm[q]) / (2.0 * h);
    return d;
  };
  constexpr double h1 = 1e-3, h2 = 5e-4;
  double defect = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto d1 = diff(i, h1);
    const auto d2 = diff(i, h2);
    const auto exact = total_derivative(top, i, l - 1);
    for (std::size_t q = 0; q < exact.size(); ++q) {
      const double richardson = (4.0 * d2[q] - d1[q]) / 3.0;
      defect = std::max(defect, std::abs(richardson - exact[q]));
    }
  }
  return defect;
}

double max_difference(const GraphJet& a, const GraphJet& b) {
  if (a.n != b.n || a.order != b.order) throw DimensionMismatch("jets have different shapes");
  double m = std::abs(a.u - b.u);
  for (int i = 0; i < a.n; ++i) {
    m = std::max(m, std::abs(a.base[static_cast<std::size_t>(i)] - b.base[static_cast<std::size_t>(i)]));
    m = std::max(m, std::abs(a.grad[static_cast<std::size_t>(i)] - b.grad[static_cast<std::size_t>(i)]));
  }
  if (a.hess) m = std::max(m, (*a.hess - *b.hess).max_abs());
  if (a.cubic) m = std::max(m, (*a.cubic - *b.cubic).max_abs());
  return m;
}

}  // namespace invpde
