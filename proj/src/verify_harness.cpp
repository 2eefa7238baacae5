#include "invpde/verify_harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "invpde/errors.hpp"
#include "invpde/invariants.hpp"

namespace invpde {

int Report::skipped_total() const {
  int s = 0;
  for (const auto& [k, v] : skipped) s += v;
  return s;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr double kSampleTolerance = 1e-12;

}  // namespace

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
}

GraphJet random_jet(const PdeDescriptor& desc, std::uint64_t seed, double jet_scale) {
  std::mt19937_64 rng(splitmix64(seed));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  const int n = desc.n;
  for (int attempt = 0;; ++attempt) {
    GraphJet j = GraphJet::zero(n, desc.order, desc.chart);
    for (double& b : j.base) b = 0.5 * jet_scale * uniform(rng);
    j.u = 0.5 * jet_scale * uniform(rng);
    for (double& g : j.grad) g = 0.7 * jet_scale * normal(rng);
    for (double& h : j.hess->lower()) h = jet_scale * normal(rng);
    if (j.cubic)
      for (double& c : j.cubic->lex()) c = jet_scale * normal(rng);
    const bool needs_nondegenerate = desc.order == 3;
    if (!needs_nondegenerate || !hessian_degenerate(*j.hess) || attempt > 50) return j;
  }
}

namespace {

// Residual normalized by its scale, as a function of one jet coordinate.
class Slice {
 public:
  Slice(const PdeDescriptor& desc, GraphJet j) : desc_(desc), j_(std::move(j)) {}

  double& coordinate() {
    const int n = j_.n;
    return desc_.order == 3 ? (*j_.cubic)(n - 1, n - 1, n - 1) : (*j_.hess)(n - 1, n - 1);
  }

  // NaN where the residual is undefined.
  double operator()(double t) {
    coordinate() = t;
    try {
      return evaluate(desc_, j_).value;
    } catch (const Error&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  }

  double normalized(double t) {
    coordinate() = t;
    try {
      return std::abs(evaluate(desc_, j_).normalized());
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  }

  GraphJet& jet() { return j_; }

 private:
  const PdeDescriptor& desc_;
  GraphJet j_;
};

std::optional<double> bracket_and_solve(Slice& f, double t0) {
  const double span0 = 1.0 + std::abs(t0);
  for (double radius : {1.0, 4.0, 16.0, 64.0, 256.0, 1024.0}) {
    const double R = radius * span0;
    constexpr int kGrid = 64;
    double a = t0 - R, fa = f(a);
    for (int k = 1; k <= kGrid; ++k) {
      const double b = t0 - R + 2.0 * R * k / kGrid;
      const double fb = f(b);
      if (std::isfinite(fa) && fa == 0.0) return a;
      if (std::isfinite(fa) && std::isfinite(fb) && ((fa < 0) != (fb < 0))) {
        // Bisection to adjacent doubles.
        double lo = a, hi = b, flo = fa;
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (mid <= lo || mid >= hi) break;
          const double fm = f(mid);
          if (!std::isfinite(fm)) break;
          if (fm == 0.0) return mid;
          if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        return f.normalized(lo) <= f.normalized(hi) ? lo : hi;
      }
      a = b;
      fa = fb;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<GraphJet> sample_zero_set_jet(const PdeDescriptor& desc, std::uint64_t seed, double jet_scale) {
  Slice f(desc, random_jet(desc, seed, jet_scale));
  const double t0 = f.coordinate();
  if (auto t = bracket_and_solve(f, t0); t && f.normalized(*t) <= kSampleTolerance) {
    f.coordinate() = *t;
    return f.jet();
  }
  // Zero sets of higher codimension (umbilics, pure-trace cubics) are not
  // reached by a 1-D solve; build a point on them directly.
  std::mt19937_64 rng(splitmix64(seed ^ 0x5bd1e995ULL));
  std::normal_distribution<double> normal(0.0, 1.0);
  GraphJet j = f.jet();
  const int n = desc.n;
  if (desc.order == 2) {
    // hess = c rho (I + grad grad^T) = c h^{-1}, so S = c I.
    const double c = jet_scale * normal(rng);
    const double r = rho(j.grad);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b <= a; ++b)
        (*j.hess)(a, b) = c * r * ((a == b ? 1.0 : 0.0) + j.grad[static_cast<std::size_t>(a)] * j.grad[static_cast<std::size_t>(b)]);
  } else {
    std::vector<double> w(static_cast<std::size_t>(n));
    for (double& x : w) x = jet_scale * normal(rng);
    *j.cubic = symmetric_product(w, 0.5 * *j.hess);
  }
  try {
    if (std::abs(evaluate(desc, j).normalized()) <= kSampleTolerance) return j;
  } catch (const Error&) {
  }
  return std::nullopt;
}

double ratio_defect(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionMismatch("eigenvalue vectors differ in length");
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  na = std::sqrt(na);
  nb = std::sqrt(nb);
  if (na == 0.0 && nb == 0.0) return 0.0;
  if (na == 0.0 || nb == 0.0) return 1.0;
  double best = std::numeric_limits<double>::infinity();
  for (bool reversed : {false, true}) {
    double dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dot += (reversed ? a[a.size() - 1 - i] : a[i]) * b[i];
    const double s = dot < 0 ? -1.0 : 1.0;
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double ai = reversed ? a[a.size() - 1 - i] : a[i];
      const double d = s * ai / na - b[i] / nb;
      d2 += d * d;
    }
    best = std::min(best, std::sqrt(d2));
  }
  return best;
}

namespace {

GroupElement translation(const PdeDescriptor& desc, std::uint64_t seed, double scale) {
  GroupElement g = GroupElement::identity(desc.geometry, desc.n);
  if (desc.geometry == Geometry::conformal) return g;
  std::mt19937_64 rng(splitmix64(seed));
  std::normal_distribution<double> normal(0.0, 1.0);
  if (desc.geometry == Geometry::projective) {
    for (int i = 0; i <= desc.n; ++i) g.matrix(i, desc.n + 1) = scale * normal(rng);
  } else {
    for (int i = 0; i <= desc.n; ++i) g.b(i) = scale * normal(rng);
  }
  return g;
}

std::string desc_id(const PdeDescriptor& desc) {
  return desc.name.empty() ? std::string(to_string(desc.geometry)) + ":" + desc.expr.str() : desc.name;
}

}  // namespace

Report invariance_report(const PdeDescriptor& desc, const SampleConfig& cfg) {
  Report rep;
  rep.desc_id = desc_id(desc);
  rep.seed = cfg.seed;
  rep.attempted = std::max(cfg.count, 0);
  for (const char* k : {"not_graph", "chart_domain", "degenerate_hessian", "no_root"}) rep.skipped[k] = 0;
  if (desc.geometry == Geometry::euclidean) rep.max_ratio_defect = 0.0;

  for (int i = 0; i < rep.attempted; ++i) {
    const std::uint64_t s = sample_seed(cfg.seed, static_cast<std::uint64_t>(i));
    const std::optional<GraphJet> j = sample_zero_set_jet(desc, s, cfg.jet_scale);
    if (!j) {
      ++rep.skipped["no_root"];
      continue;
    }
    const GroupElement g = cfg.translations_only ? translation(desc, s ^ 1ULL, cfg.scale)
                                                 : random_element(desc.geometry, desc.n, s ^ 1ULL, cfg.scale);
    try {
      const GraphJet image = prolong(g, *j);
      const ResidualValue r = evaluate(desc, image);
      rep.max_defect = std::max(rep.max_defect, std::abs(r.normalized()));
      if (!std::isfinite(r.normalized())) rep.max_defect = std::numeric_limits<double>::infinity();
      if (rep.max_ratio_defect) {
        const auto before = eigenvalues(j->grad, *j->hess);
        const auto after = eigenvalues(image.grad, *image.hess);
        rep.max_ratio_defect = std::max(*rep.max_ratio_defect, ratio_defect(before, after));
      }
      ++rep.evaluated;
    } catch (const NotGraph&) {
      ++rep.skipped["not_graph"];
    } catch (const ChartDomain&) {
      ++rep.skipped["chart_domain"];
    } catch (const DegenerateHessian&) {
      ++rep.skipped["degenerate_hessian"];
    }
  }
  rep.pass = rep.max_defect <= cfg.tol;
  return rep;
}

Report check_solution(const PdeDescriptor& desc, const Germ& germ, const std::vector<std::vector<double>>& points,
                      double tol) {
  Report rep;
  rep.desc_id = desc_id(desc) + " on " + germ.name;
  const Germ g = germ.in_chart(desc.chart);
  for (const auto& p : points) {
    ++rep.attempted;
    const ResidualValue r = evaluate(desc, g.jet(p, desc.order));
    rep.max_defect = std::max(rep.max_defect, std::abs(r.normalized()));
    if (!std::isfinite(r.normalized())) rep.max_defect = std::numeric_limits<double>::infinity();
    ++rep.evaluated;
  }
  rep.pass = rep.max_defect <= tol;
  return rep;
}

}  // namespace invpde
