#include <doctest.h>

#include <cmath>
#include <random>

#include "invpde/errors.hpp"
#include "invpde/hypersurface_jets.hpp"
#include "invpde/solution_catalog.hpp"
#include "test_util.hpp"

using namespace invpde;

TEST_SUITE("hypersurface_jets") {
  TEST_CASE("jet_extend of simple germs") {
    TruncatedJet x2(1, 2);
    x2[2] = 1.0;
    const std::vector<double> o{0.0};
    const GraphJet j = jet_extend(x2, o, 2);
    CHECK(j.u == 0.0);
    CHECK(j.grad[0] == 0.0);
    CHECK((*j.hess)(0, 0) == 2.0);

    const std::vector<double> b{1.5};
    const GraphJet k = jet_extend(x2, b, 2);
    CHECK(k.u == doctest::Approx(2.25));
    CHECK(k.grad[0] == doctest::Approx(3.0));

    const GraphJet z = jet_extend(TruncatedJet(2, 3), std::vector<double>{0.2, 0.1}, 3);
    CHECK(z.u == 0.0);
    CHECK(z.hess->max_abs() == 0.0);
    CHECK(z.cubic->max_abs() == 0.0);
  }

  TEST_CASE("Scherk germ at the origin") {
    const GraphJet j = scherk().jet(std::vector<double>{0.0, 0.0}, 2);
    CHECK(std::abs(j.grad[0]) <= 1e-15);
    CHECK(std::abs(j.grad[1]) <= 1e-15);
    CHECK((*j.hess)(0, 0) == doctest::Approx(-1.0));
    CHECK((*j.hess)(1, 1) == doctest::Approx(1.0));
    CHECK((*j.hess)(0, 1) == 0.0);
  }

  TEST_CASE("local polynomial round trip") {
    std::mt19937_64 rng(21);
    const TruncatedJet p = testutil::random_jet(rng, 3, 3);
    const std::vector<double> base{0.1, 0.2, 0.3};
    const GraphJet j = jet_from_local(p, base, 3);
    CHECK(testutil::max_diff(local_polynomial(j), p) <= 1e-15);
    CHECK(max_difference(jet_extend(recenter(p, std::vector<double>{-0.1, -0.2, -0.3}), base, 3), j) <= 1e-14);
  }

  TEST_CASE("project") {
    std::mt19937_64 rng(22);
    const GraphJet j = jet_from_local(testutil::random_jet(rng, 2, 3), std::vector<double>{0, 0}, 3);
    const GraphJet p = project(j, 2);
    CHECK(p.order == 2);
    CHECK(!p.cubic);
    CHECK(*p.hess == *j.hess);
    CHECK(max_difference(project(j, 3), j) == 0.0);
    CHECK_THROWS_AS(project(p, 3), OrderUnderflow);
  }

  TEST_CASE("shift_fiber") {
    GraphJet j = GraphJet::zero(2, 2);
    *j.hess = SymMatrix::identity(2);
    const GraphJet s = shift_fiber(j, SymMatrix::diagonal(std::vector<double>{0.0, 2.0}));
    CHECK((*s.hess)(0, 0) == 1.0);
    CHECK((*s.hess)(1, 1) == 3.0);
    CHECK(max_difference(shift_fiber(j, SymMatrix(2)), j) == 0.0);
    CHECK_THROWS_AS(shift_fiber(j, SymCubic(2)), DegreeMismatch);
    CHECK_THROWS_AS(shift_fiber(project(j, 1), SymMatrix(2)), DegreeMismatch);
  }

  TEST_CASE("property: fiber action is a group action") {
    std::mt19937_64 rng(23);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 1 + trial % 4;
      const GraphJet j = jet_from_local(testutil::random_jet(rng, n, 3), std::vector<double>(static_cast<std::size_t>(n), 0.0), 3);
      const SymCubic v = testutil::random_cubic(rng, n), w = testutil::random_cubic(rng, n);
      worst = std::max(worst, max_difference(shift_fiber(shift_fiber(j, v), -1.0 * v), j));
      worst = std::max(worst, max_difference(shift_fiber(shift_fiber(j, v), w), shift_fiber(j, v + w)));
      // The shift is vertical.
      CHECK(max_difference(project(shift_fiber(j, v), 2), project(j, 2)) == 0.0);
      // Reading a jet back from its Taylor polynomial.
      worst = std::max(worst, max_difference(jet_from_local(local_polynomial(j), j.base, 3), j));
    }
    CHECK(worst <= 1e-14);
  }

  TEST_CASE("tangency of jet extensions") {
    TruncatedJet x3(1, 3);
    x3[3] = 1.0;
    CHECK(tangency_check(x3, 2, std::vector<double>{0.0}) <= 1e-8);
    CHECK(tangency_check(TruncatedJet::constant(2, 3, 4.0), 2, std::vector<double>{0.3, 0.1}) == 0.0);
    std::mt19937_64 rng(24);
    for (int l = 1; l <= 3; ++l)
      CHECK(tangency_check(testutil::random_jet(rng, 2, 3), l, std::vector<double>{0.2, -0.4}) <= 1e-8);
  }

  TEST_CASE("validation") {
    GraphJet j = GraphJet::zero(2, 3);
    j.cubic.reset();
    CHECK_THROWS_AS(j.validate(), DimensionMismatch);
    GraphJet k = GraphJet::zero(2, 2);
    k.grad.push_back(0.0);
    CHECK_THROWS_AS(k.validate(), DimensionMismatch);
    CHECK(chart_from_string(to_string(Chart::sphere_stereographic)) == Chart::sphere_stereographic);
    CHECK_THROWS_AS(chart_from_string("torus"), SchemaError);
  }
}
