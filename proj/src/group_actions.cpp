#include "invpde/group_actions.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "invpde/errors.hpp"

namespace invpde {

std::string_view to_string(Geometry g) {
  switch (g) {
    case Geometry::euclidean: return "euclidean";
    case Geometry::affine: return "affine";
    case Geometry::projective: return "projective";
    case Geometry::conformal: return "conformal";
  }
  return "euclidean";
}

Geometry geometry_from_string(std::string_view s) {
  if (s == "euclidean") return Geometry::euclidean;
  if (s == "affine") return Geometry::affine;
  if (s == "projective") return Geometry::projective;
  if (s == "conformal") return Geometry::conformal;
  throw SchemaError("unknown geometry '" + std::string(s) + "'");
}

Chart chart_for(Geometry g) {
  switch (g) {
    case Geometry::euclidean: return Chart::euclidean;
    case Geometry::affine: return Chart::affine;
    case Geometry::projective: return Chart::projective_affine_chart;
    case Geometry::conformal: return Chart::sphere_stereographic;
  }
  return Chart::euclidean;
}

namespace {

int matrix_size(Geometry type, int n) {
  switch (type) {
    case Geometry::euclidean:
    case Geometry::affine: return n + 1;
    case Geometry::projective: return n + 2;
    case Geometry::conformal: return n + 3;
  }
  return n + 1;
}

bool has_translation(Geometry type) { return type == Geometry::euclidean || type == Geometry::affine; }

}  // namespace

GroupElement GroupElement::identity(Geometry type, int n) {
  if (n < 1 || n > kMaxVars) throw DimensionMismatch("n must lie in [1, 8]");
  GroupElement g;
  g.type = type;
  g.n = n;
  const int m = matrix_size(type, n);
  g.matrix = Eigen::MatrixXd::Identity(m, m);
  if (has_translation(type)) g.b = Eigen::VectorXd::Zero(m);
  return g;
}

GroupElement GroupElement::euclidean(Eigen::MatrixXd A, Eigen::VectorXd b) {
  GroupElement g{Geometry::euclidean, static_cast<int>(A.rows()) - 1, std::move(A), std::move(b)};
  g.validate();
  return g;
}

GroupElement GroupElement::affine(Eigen::MatrixXd A, Eigen::VectorXd b) {
  GroupElement g{Geometry::affine, static_cast<int>(A.rows()) - 1, std::move(A), std::move(b)};
  g.validate();
  return g;
}

GroupElement GroupElement::projective(Eigen::MatrixXd P) {
  GroupElement g{Geometry::projective, static_cast<int>(P.rows()) - 2, std::move(P), {}};
  g.validate();
  return g;
}

GroupElement GroupElement::conformal(Eigen::MatrixXd C) {
  GroupElement g{Geometry::conformal, static_cast<int>(C.rows()) - 3, std::move(C), {}};
  g.validate();
  return g;
}

bool GroupElement::is_identity() const {
  const auto m = matrix.rows();
  if (matrix != Eigen::MatrixXd::Identity(m, m)) return false;
  return b.size() == 0 || b.isZero(0.0);
}

Eigen::MatrixXd conformal_gram(int n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Identity(n + 3, n + 3);
  J(0, 0) = -1.0;
  return J;
}

void GroupElement::validate() const {
  if (n < 1 || n > kMaxVars) throw InvalidElement("n must lie in [1, 8]");
  const int m = matrix_size(type, n);
  if (matrix.rows() != m || matrix.cols() != m)
    throw InvalidElement("matrix must be " + std::to_string(m) + "x" + std::to_string(m));
  if (has_translation(type) && b.size() != m)
    throw InvalidElement("translation must have length " + std::to_string(m));
  if (!matrix.allFinite() || (b.size() > 0 && !b.allFinite())) throw InvalidElement("non-finite entries");
  switch (type) {
    case Geometry::euclidean: {
      const double orth = (matrix.transpose() * matrix - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
      if (orth > 1e-10) throw InvalidElement("A is not orthogonal");
      if (std::abs(matrix.determinant() - 1.0) > 1e-10) throw InvalidElement("det A is not +1");
      break;
    }
    case Geometry::affine:
      if (std::abs(matrix.determinant()) < 1e-10) throw InvalidElement("A is singular");
      break;
    case Geometry::projective:
      if (std::abs(matrix.determinant() - 1.0) > 1e-8) throw InvalidElement("det P is not 1");
      break;
    case Geometry::conformal: {
      const Eigen::MatrixXd J = conformal_gram(n);
      if ((matrix.transpose() * J * matrix - J).cwiseAbs().maxCoeff() > 1e-8)
        throw InvalidElement("C does not preserve the ambient quadratic form");
      break;
    }
  }
}

GroupElement compose(const GroupElement& g1, const GroupElement& g2) {
  if (g1.type != g2.type || g1.n != g2.n) throw DimensionMismatch("elements of different groups");
  GroupElement r = g1;
  r.matrix = g1.matrix * g2.matrix;
  if (has_translation(g1.type)) r.b = g1.matrix * g2.b + g1.b;
  return r;
}

GroupElement inverse(const GroupElement& g) {
  GroupElement r = g;
  switch (g.type) {
    case Geometry::euclidean: r.matrix = g.matrix.transpose(); break;
    case Geometry::conformal: {
      const Eigen::MatrixXd J = conformal_gram(g.n);
      r.matrix = J * g.matrix.transpose() * J;
      break;
    }
    default: r.matrix = g.matrix.inverse(); break;
  }
  if (has_translation(g.type)) r.b = -(r.matrix * g.b);
  return r;
}

namespace {

double value_of(double x) { return x; }
double value_of(const TruncatedJet& x) { return x.constant_term(); }

// Image of the point p (length n+1) under g; T is double or TruncatedJet.
template <class T>
std::vector<T> push_forward(const GroupElement& g, std::span<const T> p) {
  const int d = g.n + 1;
  if (static_cast<int>(p.size()) != d) throw DimensionMismatch("chart point must have n+1 coordinates");
  const Eigen::MatrixXd& M = g.matrix;
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(d));
  switch (g.type) {
    case Geometry::euclidean:
    case Geometry::affine:
      for (int i = 0; i < d; ++i) {
        T acc = p[0] * M(i, 0) + g.b(i);
        for (int k = 1; k < d; ++k) acc = acc + p[static_cast<std::size_t>(k)] * M(i, k);
        out.push_back(std::move(acc));
      }
      return out;
    case Geometry::projective: {
      // Homogeneous coordinates (p, 1).
      auto row = [&](int i) {
        T acc = p[0] * M(i, 0) + M(i, d);
        for (int k = 1; k < d; ++k) acc = acc + p[static_cast<std::size_t>(k)] * M(i, k);
        return acc;
      };
      const T den = row(d);
      double scale = std::abs(value_of(den));
      std::vector<T> num;
      for (int i = 0; i < d; ++i) {
        num.push_back(row(i));
        scale = std::max(scale, std::abs(value_of(num.back())));
      }
      if (std::abs(value_of(den)) <= 1e-12 * scale)
        throw ChartDomain("image point lies on the hyperplane at infinity of the affine chart");
      for (auto& x : num) out.push_back(x / den);
      return out;
    }
    case Geometry::conformal: {
      // Cone lift of the stereographic point y, scaled by (4 + |y|^2):
      //   (lambda, s, t) = (4 + r^2, 4y, 4 - r^2).
      T r2 = p[0] * p[0];
      for (int k = 1; k < d; ++k) r2 = r2 + p[static_cast<std::size_t>(k)] * p[static_cast<std::size_t>(k)];
      std::vector<T> v;
      v.push_back(r2 + 4.0);
      for (int k = 0; k < d; ++k) v.push_back(p[static_cast<std::size_t>(k)] * 4.0);
      v.push_back(4.0 - r2);
      const int m = d + 2;
      auto row = [&](int i) {
        T acc = v[0] * M(i, 0);
        for (int k = 1; k < m; ++k) acc = acc + v[static_cast<std::size_t>(k)] * M(i, k);
        return acc;
      };
      std::vector<T> w;
      double scale = 0.0;
      for (int i = 0; i < m; ++i) {
        w.push_back(row(i));
        scale = std::max(scale, std::abs(value_of(w.back())));
      }
      // y' = 2 s' / (lambda' + t')
      const T den = w[0] + w[static_cast<std::size_t>(m - 1)];
      if (std::abs(value_of(den)) <= 1e-12 * scale)
        throw ChartDomain("image point is the excluded pole of the stereographic chart");
      for (int k = 0; k < d; ++k) out.push_back(w[static_cast<std::size_t>(k + 1)] * 2.0 / den);
      return out;
    }
  }
  return out;
}

}  // namespace

std::vector<double> act_point(const GroupElement& g, std::span<const double> p) {
  return push_forward<double>(g, p);
}

GraphJet prolong(const GroupElement& g, const GraphJet& j) {
  j.validate();
  if (j.n != g.n) throw DimensionMismatch("jet and group element have different n");
  if (j.chart != chart_for(g.type))
    throw ChartMismatch("a " + std::string(to_string(j.chart)) + " jet cannot be acted on by the " +
                        std::string(to_string(g.type)) + " group");
  if (g.is_identity()) return j;

  const int n = j.n;
  const int k = j.order;
  std::vector<TruncatedJet> point;
  point.push_back(local_polynomial(j));
  for (int i = 0; i < n; ++i) point.push_back(TruncatedJet::variable(n, k, i, j.base[static_cast<std::size_t>(i)]));

  std::vector<TruncatedJet> image = push_forward<TruncatedJet>(g, point);

  std::vector<double> new_base;
  std::vector<TruncatedJet> xmap;
  for (int i = 0; i < n; ++i) {
    TruncatedJet xi = image[static_cast<std::size_t>(i + 1)];
    new_base.push_back(xi.constant_term());
    xi[0] = 0.0;
    xmap.push_back(std::move(xi));
  }
  // Vertical tangent plane: the x-projection of the image tangent frame has
  // (nearly) zero volume compared with the frame itself.
  {
    Eigen::MatrixXd frame(n + 1, n), jx(n, n);
    for (int c = 0; c < n; ++c) {
      const std::size_t p = static_cast<std::size_t>(1 + c);
      frame(0, c) = image[0][p];
      for (int r = 0; r < n; ++r) frame(r + 1, c) = xmap[static_cast<std::size_t>(r)][p];
    }
    jx = frame.bottomRows(n);
    double volume = 1.0;
    for (int c = 0; c < n; ++c) volume *= frame.col(c).norm();
    if (!(std::abs(jx.determinant()) > 1e-10 * volume))
      throw NotGraph("transformed hypersurface has a vertical tangent plane");
  }
  std::vector<TruncatedJet> back;
  try {
    back = invert_map(xmap);
  } catch (const SingularJacobian& e) {
    throw NotGraph(std::string("transformed hypersurface is not a graph over x: ") + e.what());
  }
  const TruncatedJet unew = compose(image[0], back);
  return jet_from_local(unew, new_base, k, j.chart);
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Eigen::MatrixXd gaussian(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = normal(rng);
  return m;
}

}  // namespace

GroupElement random_element(Geometry type, int n, std::uint64_t seed, double scale) {
  GroupElement g = GroupElement::identity(type, n);
  if (scale == 0.0) return g;
  std::mt19937_64 rng(splitmix64(seed ^ (static_cast<std::uint64_t>(type) << 56) ^
                                 (static_cast<std::uint64_t>(n) << 48)));
  const int m = matrix_size(type, n);
  const Eigen::MatrixXd X = gaussian(rng, m, m);
  switch (type) {
    case Geometry::euclidean: {
      const Eigen::MatrixXd K = 0.5 * (X - X.transpose());
      g.matrix = (scale * K).exp();
      // Re-orthonormalize away the exponential's rounding.
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(g.matrix);
      Eigen::MatrixXd Q = qr.householderQ();
      for (int c = 0; c < m; ++c)
        if (Q.col(c).dot(g.matrix.col(c)) < 0) Q.col(c) *= -1.0;
      g.matrix = Q;
      g.b = scale * gaussian(rng, m, 1).col(0);
      break;
    }
    case Geometry::affine:
      g.matrix = (scale * X).exp();
      g.b = scale * gaussian(rng, m, 1).col(0);
      break;
    case Geometry::projective: {
      const Eigen::MatrixXd T = X - (X.trace() / m) * Eigen::MatrixXd::Identity(m, m);
      g.matrix = (scale * T).exp();
      g.matrix /= std::pow(g.matrix.determinant(), 1.0 / m);
      break;
    }
    case Geometry::conformal: {
      const Eigen::MatrixXd S = 0.5 * (X - X.transpose());
      g.matrix = (scale * conformal_gram(n) * S).exp();
      break;
    }
  }
  return g;
}

// ---------------------------------------------------------------------------

bool hessian_degenerate(const SymMatrix& hess) {
  const double norm = hess.max_abs();
  if (norm == 0.0) return true;
  return std::abs(hess.matrix().determinant()) < 1e-8 * std::pow(norm, hess.n());
}

namespace {

Normalization normalize_euclidean(const GraphJet& j) {
  if (j.order < 2) throw OrderUnderflow("euclidean normalization needs a jet of order >= 2");
  const int n = j.n;
  const int d = n + 1;
  Eigen::VectorXd p0(d), nu(d);
  p0(0) = j.u;
  nu(0) = 1.0;
  double rho = 1.0;
  for (int i = 0; i < n; ++i) {
    p0(i + 1) = j.base[static_cast<std::size_t>(i)];
    nu(i + 1) = -j.grad[static_cast<std::size_t>(i)];
    rho += j.grad[static_cast<std::size_t>(i)] * j.grad[static_cast<std::size_t>(i)];
  }
  nu /= std::sqrt(rho);
  // Minimal rotation taking nu to e0: R = I + K + K^2 / (1 + <nu, e0>), K = e0 nu^T - nu e0^T.
  const Eigen::VectorXd e0 = Eigen::VectorXd::Unit(d, 0);
  const Eigen::MatrixXd K = e0 * nu.transpose() - nu * e0.transpose();
  const Eigen::MatrixXd R = Eigen::MatrixXd::Identity(d, d) + K + K * K / (1.0 + nu(0));

  Normalization out;
  out.g = GroupElement::identity(Geometry::euclidean, n);
  out.g.matrix = R;
  out.g.b = -(R * p0);
  out.signature = n;

  // Normalized 2-jet directly: the new height function over the tangent
  // frame R^T e_a has hessian E^T hess E / sqrt(rho) with E_{ia} = R_{a+1, i+1}.
  GraphJet normalized = GraphJet::zero(n, j.order, j.chart);
  const Eigen::MatrixXd E = R.block(1, 1, n, n).transpose();
  *normalized.hess = congruence(*j.hess, E);
  *normalized.hess *= 1.0 / std::sqrt(rho);
  if (j.order >= 3) normalized.cubic = prolong(out.g, j).cubic;
  out.normalized = std::move(normalized);
  return out;
}

// T with T^T H T = 2 diag(1_d, -1_{n-d}); returns d.
int fiducial_congruence(const SymMatrix& hess, Eigen::MatrixXd& T) {
  const int n = hess.n();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess.matrix());
  const Eigen::VectorXd& lam = es.eigenvalues();  // ascending
  const Eigen::MatrixXd& Q = es.eigenvectors();
  T.resize(n, n);
  int col = 0;
  // Positive directions first; eigenvector order and signs are fixed so that an
  // already normalized hessian gives T = I.
  for (int i = 0; i < n; ++i)
    if (lam(i) > 0) T.col(col++) = Q.col(i) * std::sqrt(2.0 / lam(i));
  const int d = col;
  for (int i = 0; i < n; ++i)
    if (lam(i) < 0) T.col(col++) = Q.col(i) * std::sqrt(-2.0 / lam(i));
  if (col != n) throw DegenerateHessian("hessian has a zero eigenvalue");
  for (int c = 0; c < n; ++c) {
    Eigen::Index r = 0;
    T.col(c).cwiseAbs().maxCoeff(&r);
    if (T(r, c) < 0) T.col(c) *= -1.0;
  }
  return d;
}

Normalization normalize_affine(Geometry type, const GraphJet& j) {
  if (j.order != 3) throw OrderUnderflow("affine/projective normalization needs an order-3 jet");
  if (hessian_degenerate(*j.hess))
    throw DegenerateHessian("|det hess| is below 1e-8 |hess|^n; the jet lies on the Monge-Ampere locus");
  const int n = j.n;
  Eigen::MatrixXd T;
  const int sig = fiducial_congruence(*j.hess, T);
  if (type == Geometry::projective && T.determinant() < 0) T.col(n - 1) *= -1.0;

  // p -> A (p - p0), A = [[1, -grad^T], [0, T^{-1}]].
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + 1, n + 1);
  A(0, 0) = 1.0;
  for (int i = 0; i < n; ++i) A(0, i + 1) = -j.grad[static_cast<std::size_t>(i)];
  A.block(1, 1, n, n) = T.inverse();
  Eigen::VectorXd p0(n + 1);
  p0(0) = j.u;
  for (int i = 0; i < n; ++i) p0(i + 1) = j.base[static_cast<std::size_t>(i)];
  const Eigen::VectorXd b = -(A * p0);

  Normalization out;
  out.signature = sig;
  if (type == Geometry::affine) {
    out.g = GroupElement::identity(Geometry::affine, n);
    out.g.matrix = A;
    out.g.b = b;
  } else {
    Eigen::MatrixXd P = Eigen::MatrixXd::Identity(n + 2, n + 2);
    P.block(0, 0, n + 1, n + 1) = A;
    P.block(0, n + 1, n + 1, 1) = b;
    P *= std::pow(A.determinant(), -1.0 / (n + 2));
    out.g = GroupElement::identity(Geometry::projective, n);
    out.g.matrix = P;
  }
  GraphJet normalized = GraphJet::zero(n, 3, j.chart);
  *normalized.hess = congruence(*j.hess, T);
  *normalized.cubic = congruence(*j.cubic, T);
  out.normalized = std::move(normalized);
  return out;
}

}  // namespace

Normalization normalize_to_origin(Geometry type, const GraphJet& j) {
  j.validate();
  if (j.chart != chart_for(type))
    throw ChartMismatch("jet chart " + std::string(to_string(j.chart)) + " does not belong to the " +
                        std::string(to_string(type)) + " geometry");
  switch (type) {
    case Geometry::euclidean: return normalize_euclidean(j);
    case Geometry::affine:
    case Geometry::projective: return normalize_affine(type, j);
    case Geometry::conformal: break;
  }
  throw InvalidElement("normalization to the origin is not provided for the conformal geometry");
}

}  // namespace invpde
