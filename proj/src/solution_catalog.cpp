#include "invpde/solution_catalog.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "invpde/errors.hpp"
#include "invpde/group_actions.hpp"

namespace invpde {

GraphJet Germ::jet(std::span<const double> base, int order) const {
  return jet_from_local(at(base, order), base, order, chart);
}

Germ Germ::in_chart(Chart c) const {
  Germ g = *this;
  g.chart = c;
  return g;
}

namespace {

void require_base(std::span<const double> base, int n) {
  if (static_cast<int>(base.size()) != n) throw DimensionMismatch("base point has wrong size");
}

// sum_k f^(k)(b_i)/k! (x_i - b_i)^k as a jet in n variables.
TruncatedJet profile_jet(int n, int order, int i, double b, const std::array<double, 5>& d) {
  return apply_univariate(TruncatedJet::variable(n, order, i, b), d);
}

std::array<double, 5> log_cos(double x) {
  if (std::abs(x) >= std::numbers::pi / 2) throw ChartDomain("ln cos is defined for |x| < pi/2");
  const double t = std::tan(x);
  const double s2 = 1.0 + t * t;  // sec^2
  return {std::log(std::cos(x)), -t, -s2, -2.0 * s2 * t, -4.0 * s2 * t * t - 2.0 * s2 * s2};
}

}  // namespace

Germ plane(std::span<const double> slope, double offset) {
  const int n = static_cast<int>(slope.size());
  std::vector<double> a(slope.begin(), slope.end());
  Germ g{"plane", n, Chart::euclidean, {}};
  g.at = [n, a, offset](std::span<const double> base, int order) {
    require_base(base, n);
    TruncatedJet j = TruncatedJet::constant(n, order, offset);
    for (int i = 0; i < n; ++i) {
      j[0] += a[static_cast<std::size_t>(i)] * base[static_cast<std::size_t>(i)];
      if (order >= 1) j[static_cast<std::size_t>(1 + i)] = a[static_cast<std::size_t>(i)];
    }
    return j;
  };
  return g;
}

namespace {

Germ diagonal_quadric(std::string name, std::vector<double> diag) {
  const int n = static_cast<int>(diag.size());
  Germ g{std::move(name), n, Chart::euclidean, {}};
  g.at = [n, diag](std::span<const double> base, int order) {
    require_base(base, n);
    TruncatedJet u(n, order);
    for (int i = 0; i < n; ++i) {
      const TruncatedJet xi = TruncatedJet::variable(n, order, i, base[static_cast<std::size_t>(i)]);
      u += xi * xi * diag[static_cast<std::size_t>(i)];
    }
    return u;
  };
  return g;
}

}  // namespace

Germ paraboloid(int n) { return diagonal_quadric("paraboloid", std::vector<double>(static_cast<std::size_t>(n), 1.0)); }

Germ saddle() { return diagonal_quadric("saddle", {1.0, -1.0}); }

Germ cylinder_graph(int n, Profile f) {
  Germ g{"cylinder_graph", n, Chart::euclidean, {}};
  g.at = [n, f](std::span<const double> base, int order) {
    require_base(base, n);
    return profile_jet(n, order, 0, base[0], f(base[0]));
  };
  return g;
}

Germ cylinder_graph(int n) {
  return cylinder_graph(
      n, [](double x) { return std::array<double, 5>{std::cos(x), -std::sin(x), -std::cos(x), std::sin(x), std::cos(x)}; });
}

Germ sphere_cap(int n, double r, double c) {
  Germ g{"sphere_cap", n, Chart::euclidean, {}};
  g.at = [n, r, c](std::span<const double> base, int order) {
    require_base(base, n);
    TruncatedJet q = TruncatedJet::constant(n, order, r * r);
    for (int i = 0; i < n; ++i) {
      const TruncatedJet xi = TruncatedJet::variable(n, order, i, base[static_cast<std::size_t>(i)]);
      q -= xi * xi;
    }
    if (!(q.constant_term() > 0.0)) throw ChartDomain("sphere cap is defined for |x| < r");
    return c - sqrt(q);
  };
  return g;
}

Germ scherk() {
  Germ g{"scherk", 2, Chart::euclidean, {}};
  g.at = [](std::span<const double> base, int order) {
    require_base(base, 2);
    return profile_jet(2, order, 0, base[0], log_cos(base[0])) - profile_jet(2, order, 1, base[1], log_cos(base[1]));
  };
  return g;
}

Germ sheared_quadric(const Eigen::MatrixXd& G, std::span<const double> w) {
  const int n = static_cast<int>(G.rows());
  if (G.cols() != n || static_cast<int>(w.size()) != n) throw DimensionMismatch("quadric and shear sizes differ");
  const Eigen::MatrixXd Gs = 0.5 * (G + G.transpose());
  const Eigen::VectorXd wv = Eigen::Map<const Eigen::VectorXd>(w.data(), n);
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n + 1, n + 1);
  A.block(1, 0, n, 1) = wv;
  const GroupElement shear = GroupElement::affine(A, Eigen::VectorXd::Zero(n + 1));

  Germ g{"sheared_quadric", n, Chart::affine, {}};
  g.at = [n, Gs, wv, shear](std::span<const double> base, int order) {
    require_base(base, n);
    if (order > 3) throw OrderUnderflow("sheared quadric germs are available up to order 3");
    // Preimage x0 with x0 + Q(x0) w = base.
    const Eigen::VectorXd target = Eigen::Map<const Eigen::VectorXd>(base.data(), n);
    Eigen::VectorXd x = target;
    for (int it = 0; it < 100; ++it) {
      const Eigen::VectorXd F = x + x.dot(Gs * x) * wv - target;
      if (F.lpNorm<Eigen::Infinity>() <= 1e-15 * (1.0 + target.lpNorm<Eigen::Infinity>())) break;
      const Eigen::MatrixXd J = Eigen::MatrixXd::Identity(n, n) + wv * (2.0 * Gs * x).transpose();
      x -= J.partialPivLu().solve(F);
    }
    // Q as an exact polynomial jet about the origin.
    TruncatedJet q(n, 3);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const TruncatedJet xi = TruncatedJet::variable(n, 3, i), xj = TruncatedJet::variable(n, 3, j);
        q += xi * xj * Gs(i, j);
      }
    const std::vector<double> x0(x.data(), x.data() + n);
    const GraphJet image = prolong(shear, jet_extend(q, x0, std::max(order, 1), Chart::affine));
    // Pin the base to the request (the Newton solve leaves ~1 ulp).
    GraphJet at_base = image;
    at_base.base.assign(base.begin(), base.end());
    TruncatedJet local = local_polynomial(at_base);
    return order == 0 ? local.truncated(0) : local;
  };
  return g;
}

std::vector<Germ> solution_catalog() {
  const std::vector<double> slope{0.5, -0.25};
  const std::vector<double> w{0.3, -0.2};
  return {plane(slope, 1.0),       paraboloid(2), saddle(), cylinder_graph(2), sphere_cap(2, 1.0, 0.0),
          scherk(), sheared_quadric(Eigen::MatrixXd::Identity(2, 2), w)};
}

Germ germ_by_name(const std::string& name) {
  for (Germ& g : solution_catalog())
    if (g.name == name) return g;
  throw SchemaError("unknown surface '" + name + "'");
}

}  // namespace invpde
