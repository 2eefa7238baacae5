#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "invpde/errors.hpp"
#include "invpde/group_actions.hpp"
#include "invpde/invariants.hpp"
#include "test_util.hpp"

using namespace invpde;

namespace {

std::vector<double> random_grad(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 0.8);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = g(rng);
  return v;
}

// sum g^{ia} g^{jb} g^{kc} C_ijk C_abc over all index triples.
double brute_force_pick(const SymMatrix& g, const SymCubic& C) {
  const Eigen::MatrixXd gi = g.matrix().inverse();
  const int n = g.n();
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) s += gi(i, a) * gi(j, b) * gi(k, c) * C(i, j, k) * C(a, b, c);
  return s;
}

}  // namespace

TEST_SUITE("invariants") {
  TEST_CASE("chart metric") {
    CHECK(chart_metric_h(std::vector<double>{0.0, 0.0}) == SymMatrix::identity(2));
    const SymMatrix h = chart_metric_h(std::vector<double>{1.0, 0.0});
    CHECK(h(0, 0) == doctest::Approx(0.25));
    CHECK(h(1, 1) == doctest::Approx(0.5));
    CHECK(h(0, 1) == 0.0);
  }

  TEST_CASE("shape matrix and traces") {
    const std::vector<double> g0{0.0, 0.0}, g1{1.0, 0.0};
    const Eigen::MatrixXd S0 = shape_matrix(g0, SymMatrix::diagonal(std::vector<double>{2.0, 3.0}));
    CHECK(S0(0, 0) == 2.0);
    CHECK(S0(1, 1) == 3.0);
    const Eigen::MatrixXd S1 = shape_matrix(g1, SymMatrix::diagonal(std::vector<double>{1.0, 0.0}));
    CHECK(S1(0, 0) == doctest::Approx(0.25));
    CHECK(S1.cwiseAbs().sum() == doctest::Approx(0.25));
    CHECK(tau_d(S1, 1) == doctest::Approx(0.25));
    // The minimal-surface operator over rho^2.
    const double ux = 1.0, uy = 0.0, uxx = 1.0, uxy = 0.0, uyy = 0.0;
    const double H = (1 + uy * uy) * uxx - 2 * ux * uy * uxy + (1 + ux * ux) * uyy;
    CHECK(tau_d(S1, 1) == doctest::Approx(H / 4.0));
    CHECK(tau_d(Eigen::MatrixXd::Zero(2, 2), 3) == 0.0);
  }

  TEST_CASE("eigenvalues") {
    const auto a = eigenvalues(std::vector<double>{0.0, 0.0}, SymMatrix::diagonal(std::vector<double>{2.0, 3.0}));
    CHECK(a[0] == doctest::Approx(3.0));
    CHECK(a[1] == doctest::Approx(2.0));
    const auto b = eigenvalues(std::vector<double>{1.0, 0.0}, SymMatrix::diagonal(std::vector<double>{1.0, 0.0}));
    CHECK(b[0] == doctest::Approx(0.25));
    CHECK(std::abs(b[1]) <= 1e-15);
  }

  TEST_CASE("property: eigenvalues are those of the shape matrix") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 1 + trial % 4;
      const auto g = random_grad(rng, n);
      const SymMatrix hess = testutil::random_sym(rng, n);
      const auto lam = eigenvalues(g, hess);
      const Eigen::MatrixXd S = shape_matrix(g, hess);
      for (int d = 1; d <= 3; ++d) {
        double p = 0.0;
        for (double l : lam) p += std::pow(l, d);
        CHECK(p == doctest::Approx(tau_d(S, d)).epsilon(1e-11));
      }
      CHECK(elementary_symmetric(lam, n) == doctest::Approx(S.determinant()).epsilon(1e-11).scale(1.0));
      for (std::size_t i = 1; i < lam.size(); ++i) CHECK(lam[i - 1] >= lam[i]);
    }
  }

  TEST_CASE("elementary symmetric functions") {
    const std::vector<double> l{1.0, 2.0, 3.0};
    CHECK(elementary_symmetric(l, 0) == 1.0);
    CHECK(elementary_symmetric(l, 1) == 6.0);
    CHECK(elementary_symmetric(l, 2) == 11.0);
    CHECK(elementary_symmetric(l, 3) == 6.0);
    CHECK(elementary_symmetric(std::vector<double>{4.0, 0.0, -1.0}, 3) == 0.0);
  }

  TEST_CASE("property: Newton identity and the determinant of the shape matrix") {
    std::mt19937_64 rng(42);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const auto g = random_grad(rng, 2);
      const SymMatrix hess = testutil::random_sym(rng, 2);
      const Eigen::MatrixXd S = shape_matrix(g, hess);
      const double t1 = tau_d(S, 1), t2 = tau_d(S, 2);
      const double r = rho(g);
      const double detS = S.determinant();
      const double dh = hess(0, 0) * hess(1, 1) - hess(0, 1) * hess(0, 1);
      worst = std::max({worst, std::abs((t1 * t1 - t2) / 2 - detS), std::abs(detS - dh / (r * r * r))});
    }
    CHECK(worst <= 1e-12);
  }

  TEST_CASE("trace-free shape and the conformal discriminant") {
    const std::vector<double> z{0.0, 0.0};
    CHECK(tracefree_shape(z, 3.0 * SymMatrix::identity(2)).cwiseAbs().maxCoeff() == 0.0);
    const Eigen::MatrixXd T = tracefree_shape(z, SymMatrix::diagonal(std::vector<double>{2.0, 0.0}));
    CHECK(T(0, 0) == 1.0);
    CHECK(T(1, 1) == -1.0);
    CHECK(conformal_discriminant(z, SymMatrix::identity(2)) == 0.0);
    // (1 + 0)^2 - 4 * 0
    CHECK(conformal_discriminant(z, SymMatrix::diagonal(std::vector<double>{1.0, 0.0})) == 1.0);
    CHECK(conformal_discriminant(z, SymMatrix::diagonal(std::vector<double>{1.0, -1.0})) == 4.0);
    CHECK_THROWS_AS(conformal_discriminant(std::vector<double>{0, 0, 0}, SymMatrix(3)), WrongDimension);

    std::mt19937_64 rng(43);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const auto g = random_grad(rng, 2);
      const SymMatrix hess = testutil::random_sym(rng, 2);
      const double r = rho(g);
      const double lhs = conformal_discriminant(g, hess);
      const double rhs = 2 * std::pow(r, 4) * tauring_d(g, hess, 2);
      worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
    }
    CHECK(worst <= 1e-10);
  }

  TEST_CASE("cubic trace and trace-free projection") {
    const SymMatrix I = SymMatrix::identity(2);
    CHECK(cubic_trace(I, SymCubic(2)) == std::vector<double>{0.0, 0.0});
    SymCubic e(2);
    e(0, 0, 0) = 1.0;
    CHECK(cubic_trace(I, e) == std::vector<double>{1.0, 0.0});
    const std::vector<double> w{1.0, 0.0};
    const auto t = cubic_trace(I, symmetric_product(w, I));
    CHECK(t[0] == doctest::Approx(4.0));
    CHECK(t[1] == 0.0);

    const SymCubic c = tracefree_cubic(I, e);
    CHECK(c(0, 0, 0) == doctest::Approx(0.25));
    CHECK(c(0, 1, 1) == doctest::Approx(-0.25));
    CHECK(c(0, 0, 1) == 0.0);
    CHECK(c(1, 1, 1) == 0.0);
    for (double x : cubic_trace(I, c)) CHECK(std::abs(x) <= 1e-15);

    CHECK_THROWS_AS(cubic_trace(SymMatrix(2), e), SingularMetric);
  }

  TEST_CASE("property: the trace-free projection") {
    std::mt19937_64 rng(44);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 1 + trial % 4;
      SymMatrix g = testutil::random_sym(rng, n);
      for (int i = 0; i < n; ++i) g(i, i) += 3.0 * (trial % 2 ? 1 : -1) * (i % 2 ? 1 : -1);
      const SymCubic C = testutil::random_cubic(rng, n);
      std::vector<double> w(static_cast<std::size_t>(n));
      for (double& x : w) x = std::normal_distribution<double>()(rng);
      const SymCubic P = tracefree_cubic(g, C);
      worst = std::max(worst, (tracefree_cubic(g, P) - P).max_abs());
      worst = std::max(worst, tracefree_cubic(g, symmetric_product(w, g)).max_abs());
      // Adding a pure-trace term does not change the projection.
      worst = std::max(worst, (tracefree_cubic(g, C + symmetric_product(w, g)) - P).max_abs());
      for (double x : cubic_trace(g, P)) worst = std::max(worst, std::abs(x));
    }
    CHECK(worst <= 1e-12);
  }

  TEST_CASE("Pick norm against index summation") {
    const SymMatrix I = SymMatrix::identity(2);
    CHECK(pick_norm(I, SymCubic(2)) == 0.0);
    SymCubic e(2);
    e(0, 0, 0) = 1.0;
    const SymCubic c = tracefree_cubic(I, e);
    CHECK(pick_norm(I, c) == doctest::Approx(brute_force_pick(I, c)));
    CHECK(pick_norm(I, c) == doctest::Approx(4 * 0.0625));

    std::mt19937_64 rng(45);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 1 + trial % 4;
      SymMatrix g = testutil::random_sym(rng, n);
      for (int i = 0; i < n; ++i) g(i, i) += (i % 2 ? 3.0 : -3.0);
      const SymCubic C = testutil::random_cubic(rng, n);
      CHECK(pick_norm(g, C) == doctest::Approx(brute_force_pick(g, C)).epsilon(1e-11));
    }
  }

  TEST_CASE("the 13-term affine invariant") {
    GraphJet j = GraphJet::zero(2, 3, Chart::affine);
    *j.hess = SymMatrix::identity(2);
    CHECK(F_aff3(j) == 0.0);
    (*j.cubic)(0, 0, 0) = 1.0;
    CHECK(F_aff3(j) == 1.0);
    CHECK(F_aff3_terms(*j.hess, *j.cubic).size() == 13);
    CHECK_THROWS_AS(F_aff3(project(j, 2)), OrderUnderflow);
  }

  TEST_CASE("property: F vanishes exactly on pure-trace cubics") {
    std::mt19937_64 rng(46);
    for (int trial = 0; trial < 200; ++trial) {
      GraphJet j = GraphJet::zero(2, 3, Chart::affine);
      *j.hess = testutil::random_sym(rng, 2);
      if (std::abs(j.hess->matrix().determinant()) < 1e-3) continue;
      const SymMatrix g = 0.5 * *j.hess;
      std::vector<double> w{std::normal_distribution<double>()(rng), std::normal_distribution<double>()(rng)};
      *j.cubic = symmetric_product(w, g);
      double scale = 1.0;
      for (double t : F_aff3_terms(*j.hess, *j.cubic)) scale = std::max(scale, std::abs(t));
      CHECK(std::abs(F_aff3(j)) <= 1e-12 * scale);
      *j.cubic = testutil::random_cubic(rng, 2);
      CHECK(std::abs(pick_norm(g, tracefree_cubic(g, *j.cubic))) > 0.0);
    }
  }

  TEST_CASE("property: Pick norm is congruence invariant") {
    std::mt19937_64 rng(47);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 1 + trial % 4;
      SymMatrix g = testutil::random_sym(rng, n);
      for (int i = 0; i < n; ++i) g(i, i) += (i % 2 ? 3.0 : -3.0);
      const SymCubic C = tracefree_cubic(g, testutil::random_cubic(rng, n));
      Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) A(i, k) += 0.4 * std::normal_distribution<double>()(rng);
      const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(A).singularValues();
      if (sv(0) > 10.0 * sv(n - 1)) continue;
      const double before = pick_norm(g, C);
      const double after = pick_norm(congruence(g, A), congruence(C, A));
      worst = std::max(worst, std::abs(before - after) / (1.0 + std::abs(before)));
    }
    CHECK(worst <= 1e-9);
  }

  TEST_CASE("property: Euclidean motions rescale eigenvalues by one factor") {
    std::mt19937_64 rng(48);
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 200; ++s) {
      GraphJet j = GraphJet::zero(2, 2);
      j.grad = random_grad(rng, 2);
      *j.hess = testutil::random_sym(rng, 2);
      const auto before = eigenvalues(j.grad, *j.hess);
      if (std::abs(before[1]) < 0.1) continue;
      try {
        const GraphJet k = prolong(random_element(Geometry::euclidean, 2, s, 0.5), j);
        const auto after = eigenvalues(k.grad, *k.hess);
        // A negative factor (the normal flips) reverses the sorted order.
        const double r = before[0] / before[1];
        const double r1 = after[0] / after[1], r2 = after[1] / after[0];
        worst = std::max(worst, std::min(std::abs(r - r1), std::abs(r - r2)) / (1.0 + std::abs(r)));
      } catch (const NotGraph&) {
      }
    }
    CHECK(worst <= 1e-8);
  }
}
