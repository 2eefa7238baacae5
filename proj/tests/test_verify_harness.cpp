#include <doctest.h>

#include <cmath>

#include "invpde/errors.hpp"
#include "invpde/verify_harness.hpp"

using namespace invpde;

TEST_SUITE("verify_harness") {
  TEST_CASE("zero-set samples are on the zero set") {
    for (const auto& d : {preset("minimal_surface", Geometry::euclidean), preset("monge_ampere", Geometry::euclidean),
                          preset("umbilical", Geometry::conformal), preset("affine_cubic", Geometry::affine)}) {
      int found = 0;
      for (std::uint64_t s = 0; s < 30; ++s) {
        const auto j = sample_zero_set_jet(d, s, 1.0);
        if (!j) continue;
        ++found;
        CHECK(std::abs(evaluate(d, *j).normalized()) <= 1e-12);
      }
      CHECK(found >= 25);
    }
  }

  TEST_CASE("determinism") {
    const PdeDescriptor d = preset("minimal_surface", Geometry::euclidean);
    SampleConfig cfg;
    cfg.seed = 7;
    cfg.count = 20;
    const Report a = invariance_report(d, cfg), b = invariance_report(d, cfg);
    CHECK(a.max_defect == b.max_defect);
    CHECK(a.evaluated == b.evaluated);
    CHECK(sample_seed(1, 2) == sample_seed(1, 2));
    CHECK(sample_seed(1, 2) != sample_seed(1, 3));
  }

  TEST_CASE("vacuous and translation-only runs") {
    const PdeDescriptor d = preset("monge_ampere", Geometry::euclidean);
    SampleConfig cfg;
    cfg.count = 0;
    const Report r = invariance_report(d, cfg);
    CHECK(r.pass);
    CHECK(r.attempted == 0);
    cfg.count = 50;
    cfg.translations_only = true;
    for (const auto& e : {d, preset("affine_cubic", Geometry::affine), preset("projective_cubic", Geometry::projective)}) {
      const Report t = invariance_report(e, cfg);
      CHECK(t.max_defect <= 1e-12);
    }
  }

  TEST_CASE("a non-invariant expression fails") {
    // lam(1) - 1 is not a relative invariant: its zero set is not preserved.
    const PdeDescriptor d = build(Geometry::euclidean, 2, InvariantExpr::lam(1) - InvariantExpr::constant(1));
    SampleConfig cfg;
    cfg.count = 50;
    const Report r = invariance_report(d, cfg);
    CHECK_FALSE(r.pass);
  }

  TEST_CASE("ratio defect") {
    CHECK(ratio_defect(std::vector<double>{1, 2}, std::vector<double>{2, 4}) <= 1e-15);
    CHECK(ratio_defect(std::vector<double>{1, 2}, std::vector<double>{-2, -4}) <= 1e-15);
    CHECK(ratio_defect(std::vector<double>{1, 2}, std::vector<double>{-4, -2}) <= 1e-15);
    CHECK(ratio_defect(std::vector<double>{1, 0}, std::vector<double>{1, 1}) > 0.1);
  }

  TEST_CASE("solutions") {
    const std::vector<std::vector<double>> pts{{0.1, 0.2}, {-0.4, 0.3}, {0.6, -0.5}};
    CHECK(check_solution(preset("minimal_surface", Geometry::euclidean), scherk(), pts, 1e-10).pass);
    CHECK(check_solution(preset("monge_ampere", Geometry::euclidean), cylinder_graph(), pts, 1e-12).pass);
    CHECK(check_solution(preset("umbilical", Geometry::conformal), sphere_cap(2, 2.0, 0.0), pts, 1e-10).pass);
    CHECK_FALSE(check_solution(preset("minimal_surface", Geometry::euclidean), paraboloid(), pts, 1e-10).pass);

    const GraphJet s = scherk().jet(std::vector<double>{0.3, -0.2}, 2);
    CHECK(s.grad[0] == doctest::Approx(-std::tan(0.3)));
    CHECK(s.grad[1] == doctest::Approx(-std::tan(0.2)));
    CHECK((*s.hess)(0, 0) == doctest::Approx(-1.0 / std::pow(std::cos(0.3), 2)));
    CHECK((*s.hess)(1, 1) == doctest::Approx(1.0 / std::pow(std::cos(0.2), 2)));
    CHECK((*s.hess)(0, 1) == 0.0);
    CHECK_THROWS_AS(scherk().jet(std::vector<double>{1.6, 0.0}, 2), ChartDomain);

    const GraphJet apex = sphere_cap(1, 1.0, 1.0).jet(std::vector<double>{0.0}, 2);
    CHECK((*apex.hess)(0, 0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(germ_by_name("klein_bottle"), SchemaError);
  }

  TEST_CASE("skip accounting") {
    const PdeDescriptor d = preset("minimal_surface", Geometry::euclidean);
    SampleConfig cfg;
    cfg.count = 200;
    cfg.scale = 0.0;
    const Report still = invariance_report(d, cfg);
    CHECK(still.skipped_total() == 0);
    CHECK(still.max_defect <= 1e-12);
    cfg.scale = 0.5;
    const Report mild = invariance_report(d, cfg);
    cfg.scale = 3.0;
    const Report wild = invariance_report(d, cfg);
    CHECK(mild.skipped.at("not_graph") <= wild.skipped.at("not_graph"));
    CHECK(wild.evaluated + wild.skipped_total() == wild.attempted);
  }
}
