#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "invpde/errors.hpp"
#include "invpde/group_actions.hpp"
#include "invpde/verify_harness.hpp"
#include "test_util.hpp"

using namespace invpde;

namespace {

GraphJet random_graph_jet(std::mt19937_64& rng, int n, int order, Chart chart, double spread = 0.5) {
  std::uniform_real_distribution<double> u(-spread, spread);
  std::vector<double> base(static_cast<std::size_t>(n));
  for (double& b : base) b = u(rng);
  return jet_from_local(testutil::random_jet(rng, n, order, spread), base, order, chart);
}

Eigen::MatrixXd rotation(double theta) {
  Eigen::MatrixXd A(2, 2);
  // (u, x) ordering: a counter-clockwise turn of the (x, u)-plane.
  A << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  return A;
}

constexpr Geometry kAll[] = {Geometry::euclidean, Geometry::affine, Geometry::projective, Geometry::conformal};

}  // namespace

TEST_SUITE("group_actions") {
  TEST_CASE("act_point examples") {
    const Eigen::Vector3d b(1.0, -2.0, 0.5);
    const auto t = GroupElement::euclidean(Eigen::Matrix3d::Identity(), b);
    const auto p = act_point(t, std::vector<double>{0.1, 0.2, 0.3});
    CHECK(p[0] == doctest::Approx(1.1));
    CHECK(p[1] == doctest::Approx(-1.8));
    CHECK(p[2] == doctest::Approx(0.8));
    const std::vector<double> q{0.3, -0.7, 0.2};
    for (Geometry g : {Geometry::projective, Geometry::conformal}) {
      const auto r = act_point(GroupElement::identity(g, 2), q);
      for (int i = 0; i < 3; ++i) CHECK(r[static_cast<std::size_t>(i)] == doctest::Approx(q[static_cast<std::size_t>(i)]).epsilon(1e-15));
    }
  }

  TEST_CASE("prolong by a translation only moves the base") {
    std::mt19937_64 rng(31);
    const GraphJet j = random_graph_jet(rng, 2, 3, Chart::euclidean);
    const auto t = GroupElement::euclidean(Eigen::Matrix3d::Identity(), Eigen::Vector3d(0.4, 1.0, -2.0));
    const GraphJet k = prolong(t, j);
    CHECK(k.u == doctest::Approx(j.u + 0.4));
    CHECK(k.base[0] == doctest::Approx(j.base[0] + 1.0));
    CHECK(k.base[1] == doctest::Approx(j.base[1] - 2.0));
    CHECK(std::abs(k.grad[0] - j.grad[0]) <= 1e-14);
    CHECK((*k.hess - *j.hess).max_abs() <= 1e-13);
    CHECK((*k.cubic - *j.cubic).max_abs() <= 1e-12);
  }

  TEST_CASE("rotating a line turns its slope") {
    for (double phi : {0.0, 0.3, -0.7, 1.1})
      for (double theta : {0.2, -0.4, 0.25}) {
        GraphJet line = GraphJet::zero(1, 2);
        line.grad[0] = std::tan(phi);
        const GraphJet r = prolong(GroupElement::euclidean(rotation(theta), Eigen::Vector2d::Zero()), line);
        CHECK(r.grad[0] == doctest::Approx(std::tan(phi + theta)).epsilon(1e-13));
        CHECK(std::abs((*r.hess)(0, 0)) <= 1e-13);
      }
    CHECK_THROWS_AS(prolong(GroupElement::euclidean(rotation(M_PI / 2), Eigen::Vector2d::Zero()), GraphJet::zero(1, 2)),
                    NotGraph);
  }

  TEST_CASE("rotating a circle keeps its curvature") {
    // u = 1 - sqrt(1 - x^2) at x = 0.3; curvature of the unit circle is 1.
    GraphJet j = GraphJet::zero(1, 2);
    const double x = 0.3, s = std::sqrt(1 - x * x);
    j.base[0] = x;
    j.u = 1 - s;
    j.grad[0] = x / s;
    (*j.hess)(0, 0) = 1 / (s * s * s);
    const GraphJet r = prolong(GroupElement::euclidean(rotation(0.5), Eigen::Vector2d(0.1, -0.2)), j);
    const double k = (*r.hess)(0, 0) / std::pow(1 + r.grad[0] * r.grad[0], 1.5);
    CHECK(k == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("chart mismatch") {
    const GraphJet j = GraphJet::zero(2, 2, Chart::sphere_stereographic);
    CHECK_THROWS_AS(prolong(GroupElement::identity(Geometry::affine, 2), j), ChartMismatch);
  }

  TEST_CASE("random_element contract") {
    for (Geometry g : kAll) {
      CHECK(random_element(g, 2, 5, 0.0).is_identity());
      const auto a = random_element(g, 2, 17, 0.5), b = random_element(g, 2, 17, 0.5);
      CHECK(a.matrix == b.matrix);
      CHECK(a.b == b.b);
      CHECK_NOTHROW(a.validate());
    }
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto e = random_element(Geometry::euclidean, 3, s, 0.5);
      const Eigen::MatrixXd d = e.matrix.transpose() * e.matrix - Eigen::MatrixXd::Identity(4, 4);
      CHECK(d.cwiseAbs().maxCoeff() <= 1e-10);
      CHECK(e.matrix.determinant() > 0);
      const auto p = random_element(Geometry::projective, 3, s, 0.5);
      CHECK(p.matrix.determinant() == doctest::Approx(1.0).epsilon(1e-12));
      const auto c = random_element(Geometry::conformal, 2, s, 0.3);
      const Eigen::MatrixXd J = conformal_gram(2);
      CHECK((c.matrix.transpose() * J * c.matrix - J).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }

  TEST_CASE("inverse and compose") {
    for (Geometry g : kAll) {
      const auto a = random_element(g, 2, 3, 0.4);
      CHECK(compose(a, inverse(a)).matrix.isApprox(GroupElement::identity(g, 2).matrix, 1e-12));
    }
  }

  TEST_CASE("property: prolongation is functorial") {
    std::mt19937_64 rng(32);
    for (Geometry g : kAll) {
      const Chart chart = chart_for(g);
      double worst = 0.0;
      int done = 0;
      for (std::uint64_t s = 0; s < 60; ++s) {
        const int order = g == Geometry::euclidean || g == Geometry::conformal ? 2 + static_cast<int>(s % 2) : 3;
        const GraphJet j = random_graph_jet(rng, 2, order, chart);
        const auto g1 = random_element(g, 2, 2 * s, 0.3), g2 = random_element(g, 2, 2 * s + 1, 0.3);
        try {
          const GraphJet lhs = prolong(compose(g1, g2), j);
          const GraphJet rhs = prolong(g1, prolong(g2, j));
          const double size = 1.0 + lhs.hess->max_abs() + (lhs.cubic ? lhs.cubic->max_abs() : 0.0);
          worst = std::max(worst, max_difference(lhs, rhs) / size);
          ++done;
        } catch (const NotGraph&) {
        } catch (const ChartDomain&) {
        }
      }
      CAPTURE(to_string(g));
      CHECK(done > 40);
      CHECK(worst <= 1e-9);
    }
  }

  TEST_CASE("property: prolongation commutes with projection") {
    std::mt19937_64 rng(33);
    for (Geometry g : kAll) {
      double worst = 0.0;
      for (std::uint64_t s = 0; s < 30; ++s) {
        const GraphJet j = random_graph_jet(rng, 2, 3, chart_for(g));
        const auto e = random_element(g, 2, s, 0.3);
        try {
          worst = std::max(worst, max_difference(project(prolong(e, j), 2), prolong(e, project(j, 2))));
        } catch (const NotGraph&) {
        } catch (const ChartDomain&) {
        }
      }
      CHECK(worst <= 1e-10);
    }
  }

  TEST_CASE("normalize_to_origin examples") {
    GraphJet j = GraphJet::zero(2, 2);
    *j.hess = SymMatrix::diagonal(std::vector<double>{1.0, 3.0});
    CHECK(normalize_to_origin(Geometry::euclidean, j).g.is_identity());

    j.u = 1.0;
    j.base = {2.0, 3.0};
    const Normalization t = normalize_to_origin(Geometry::euclidean, j);
    CHECK(t.g.matrix.isApprox(Eigen::Matrix3d::Identity(), 1e-15));
    CHECK(t.g.b(0) == doctest::Approx(-1.0));
    CHECK(t.g.b(1) == doctest::Approx(-2.0));
    CHECK(t.g.b(2) == doctest::Approx(-3.0));

    GraphJet a = GraphJet::zero(2, 3, Chart::affine);
    *a.hess = 2.0 * SymMatrix::identity(2);
    const Normalization na = normalize_to_origin(Geometry::affine, a);
    CHECK(na.g.is_identity());
    CHECK(na.signature == 2);

    GraphJet flat = GraphJet::zero(2, 3, Chart::affine);
    *flat.hess = SymMatrix::diagonal(std::vector<double>{1.0, 0.0});
    CHECK_THROWS_AS(normalize_to_origin(Geometry::affine, flat), DegenerateHessian);
  }

  TEST_CASE("property: normalization reproduces itself under re-prolongation") {
    std::mt19937_64 rng(34);
    for (Geometry g : {Geometry::euclidean, Geometry::affine, Geometry::projective}) {
      double worst = 0.0;
      for (int s = 0; s < 50; ++s) {
        const GraphJet j = random_graph_jet(rng, 2, 3, chart_for(g), 1.0);
        if (hessian_degenerate(*j.hess)) continue;
        const Normalization nz = normalize_to_origin(g, j);
        const GraphJet again = prolong(nz.g, j);
        worst = std::max(worst, max_difference(again, nz.normalized) / (1.0 + again.cubic->max_abs()));
        CHECK(std::abs(nz.normalized.u) <= 1e-12);
        for (double x : nz.normalized.base) CHECK(std::abs(x) <= 1e-12);
        for (double x : nz.normalized.grad) CHECK(std::abs(x) <= 1e-12);
        if (g != Geometry::euclidean) {
          const SymMatrix& h = *nz.normalized.hess;
          CHECK(std::abs(h(0, 1)) <= 1e-10);
          CHECK(std::abs(std::abs(h(0, 0)) - 2.0) <= 1e-10);
          CHECK(std::abs(std::abs(h(1, 1)) - 2.0) <= 1e-10);
        }
      }
      CHECK(worst <= 1e-9);
    }
  }

  TEST_CASE("property: identity and base compatibility") {
    std::mt19937_64 rng(35);
    for (Geometry g : kAll) {
      double worst = 0.0;
      for (std::uint64_t s = 0; s < 50; ++s) {
        const GraphJet j = random_graph_jet(rng, 2, 3, chart_for(g));
        CHECK(max_difference(prolong(GroupElement::identity(g, 2), j), j) == 0.0);
        const auto e = random_element(g, 2, s, 0.3);
        try {
          const GraphJet k = prolong(e, j);
          std::vector<double> p{j.u};
          p.insert(p.end(), j.base.begin(), j.base.end());
          const auto q = act_point(e, p);
          worst = std::max(worst, std::abs(q[0] - k.u));
          for (int i = 0; i < 2; ++i) worst = std::max(worst, std::abs(q[static_cast<std::size_t>(i + 1)] - k.base[static_cast<std::size_t>(i)]));
        } catch (const NotGraph&) {
        } catch (const ChartDomain&) {
        }
      }
      CHECK(worst <= 1e-12);
    }
  }

  TEST_CASE("property: stabilizers act affinely on the top fiber") {
    // Elements fixing the origin and the horizontal plane (and, at order 3,
    // the hessian 2I) map fiber shifts to fiber shifts.
    std::mt19937_64 rng(36);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < 40; ++t) {
      const double th = u(rng);
      Eigen::Matrix2d R;
      R << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
      Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
      A(0, 0) = 1.0;
      A.block(1, 1, 2, 2) = R;

      // order 2, Euclidean and affine (the affine one also rescales u)
      GraphJet j2 = GraphJet::zero(2, 2, Chart::euclidean);
      *j2.hess = testutil::random_sym(rng, 2);
      const SymMatrix v2 = testutil::random_sym(rng, 2);
      for (const GroupElement& g : {GroupElement::euclidean(A, Eigen::Vector3d::Zero()),
                                    GroupElement::affine(Eigen::Matrix3d(A * (1.0 + 0.5 * u(rng))), Eigen::Vector3d::Zero())}) {
        GraphJet a = j2, b = shift_fiber(j2, v2);
        a.chart = b.chart = chart_for(g.type);
        const GraphJet pa = prolong(g, a), pb = prolong(g, b);
        worst = std::max(worst, max_difference(project(pa, 1), project(pb, 1)));
      }

      // order 3, affine, fixing hess = 2I
      GraphJet j3 = GraphJet::zero(2, 3, Chart::affine);
      *j3.hess = 2.0 * SymMatrix::identity(2);
      *j3.cubic = testutil::random_cubic(rng, 2);
      const SymCubic v3 = testutil::random_cubic(rng, 2);
      const GroupElement g3 = GroupElement::affine(A, Eigen::Vector3d::Zero());
      const GraphJet pa = prolong(g3, j3), pb = prolong(g3, shift_fiber(j3, v3));
      worst = std::max(worst, max_difference(project(pa, 2), project(pb, 2)));
      // The shift itself transforms as a cubic form.
      const SymCubic moved = *pb.cubic - *pa.cubic;
      worst = std::max(worst, (moved - congruence(v3, R.transpose())).max_abs());
    }
    CHECK(worst <= 1e-9);
  }
}
