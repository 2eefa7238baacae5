#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "invpde/jet_algebra.hpp"
#include "invpde/sym_tensor.hpp"

namespace testutil {

inline invpde::TruncatedJet random_jet(std::mt19937_64& rng, int n, int order, double spread = 1.0,
                                       bool zero_constant = false) {
  std::uniform_real_distribution<double> u(-spread, spread);
  invpde::TruncatedJet j(n, order);
  for (std::size_t p = 0; p < j.size(); ++p) j[p] = u(rng);
  if (zero_constant) j[0] = 0.0;
  return j;
}

inline invpde::SymMatrix random_sym(std::mt19937_64& rng, int n, double spread = 1.0) {
  std::uniform_real_distribution<double> u(-spread, spread);
  invpde::SymMatrix m(n);
  for (double& x : m.lower()) x = u(rng);
  return m;
}

inline invpde::SymCubic random_cubic(std::mt19937_64& rng, int n, double spread = 1.0) {
  std::uniform_real_distribution<double> u(-spread, spread);
  invpde::SymCubic c(n);
  for (double& x : c.lex()) x = u(rng);
  return c;
}

inline double max_diff(const invpde::TruncatedJet& a, const invpde::TruncatedJet& b) {
  double m = 0.0;
  const std::size_t k = std::min(a.size(), b.size());
  for (std::size_t p = 0; p < k; ++p) m = std::max(m, std::abs(a[p] - b[p]));
  return m;
}

}  // namespace testutil
