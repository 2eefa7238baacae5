#pragma once

// Sampling-based invariance checks and exact-solution checks.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "invpde/pde_builder.hpp"
#include "invpde/solution_catalog.hpp"

namespace invpde {

struct SampleConfig {
  std::uint64_t seed = 0;
  int count = 100;
  double scale = 0.5;      // size of the random group elements
  double jet_scale = 1.0;  // spread of the random jets
  double tol = 1e-7;
  // Draw pure translations instead of general elements (euclidean/affine/projective).
  bool translations_only = false;
};

struct Report {
  std::string desc_id;
  int attempted = 0;
  int evaluated = 0;
  // not_graph, chart_domain, degenerate_hessian, no_root
  std::map<std::string, int> skipped;
  double max_defect = 0.0;
  // Euclidean only: rank-1 proportionality defect of the eigenvalue vectors.
  std::optional<double> max_ratio_defect;
  bool pass = true;
  std::uint64_t seed = 0;

  int skipped_total() const;
};

// Counter-based per-sample seed.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

// A random jet with residual(desc, jet) = 0: random lower data, then a 1-D
// root solve in the last hessian diagonal entry (order 2) or the last cubic
// entry (order 3); falls back to constructive zero-set points (umbilic hessian,
// pure-trace cubic) where the zero set has higher codimension.  nullopt when no
// root with normalized residual <= 1e-12 is found.
std::optional<GraphJet> sample_zero_set_jet(const PdeDescriptor& desc, std::uint64_t seed, double jet_scale);

// A generic random jet of the descriptor's shape (not on the zero set).
GraphJet random_jet(const PdeDescriptor& desc, std::uint64_t seed, double jet_scale);

// Max distance from rank-1 proportionality, allowing a sign flip: the
// distance between unit vectors a/|a| and +-b/|b| (b possibly reversed).
double ratio_defect(std::span<const double> a, std::span<const double> b);

Report invariance_report(const PdeDescriptor& desc, const SampleConfig& cfg);

// Max normalized |residual| of the germ's jets at the given points.
Report check_solution(const PdeDescriptor& desc, const Germ& germ, const std::vector<std::vector<double>>& points,
                      double tol);

}  // namespace invpde
