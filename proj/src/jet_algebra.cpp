#include "invpde/jet_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <string>
#include <unordered_map>

#include <Eigen/Dense>

#include "invpde/errors.hpp"

namespace invpde {

// ---------------------------------------------------------------------------
// MultiIndex
// ---------------------------------------------------------------------------

MultiIndex::MultiIndex(std::initializer_list<int> exponents)
    : MultiIndex(std::span<const int>(exponents.begin(), exponents.size())) {}

MultiIndex::MultiIndex(std::span<const int> exponents) : n_(static_cast<int>(exponents.size())) {
  if (n_ > kMaxVars) throw DimensionMismatch("at most 8 variables are supported");
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 0 || exponents[i] > 255)
      throw std::invalid_argument("multi-index exponent out of range");
    e_[i] = static_cast<std::uint8_t>(exponents[i]);
  }
}

MultiIndex MultiIndex::zero(int n) {
  if (n < 0 || n > kMaxVars) throw DimensionMismatch("at most 8 variables are supported");
  MultiIndex m;
  m.n_ = n;
  return m;
}

MultiIndex MultiIndex::unit(int n, int i) { return zero(n).with(i, 1); }

int MultiIndex::degree() const {
  int d = 0;
  for (int i = 0; i < n_; ++i) d += e_[static_cast<std::size_t>(i)];
  return d;
}

double MultiIndex::factorial() const {
  double f = 1.0;
  for (int i = 0; i < n_; ++i)
    for (int k = 2; k <= e_[static_cast<std::size_t>(i)]; ++k) f *= k;
  return f;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.n_ != n_) throw DimensionMismatch("multi-index sizes differ");
  MultiIndex r = *this;
  for (std::size_t i = 0; i < static_cast<std::size_t>(n_); ++i)
    r.e_[i] = static_cast<std::uint8_t>(e_[i] + other.e_[i]);
  return r;
}

MultiIndex MultiIndex::with(int i, int exponent) const {
  if (i < 0 || i >= n_) throw DimensionMismatch("variable index out of range");
  MultiIndex r = *this;
  r.e_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(exponent);
  return r;
}

// ---------------------------------------------------------------------------
// Layout tables (one per variable count, built for order kMaxOrder)
// ---------------------------------------------------------------------------

namespace {

std::uint32_t encode(const MultiIndex& a) {
  std::uint32_t key = 0;
  for (int i = 0; i < a.size(); ++i) key = key * 8u + static_cast<std::uint32_t>(a[i]);
  return key;
}

struct Layout {
  int n = 0;
  std::vector<MultiIndex> monomials;
  std::vector<int> degree;
  std::array<std::size_t, kMaxOrder + 2> count_upto{};  // count_upto[d] = #monomials of degree < d
  std::unordered_map<std::uint32_t, int> position;
  std::vector<int> product;  // product[i*m+j], -1 if degree exceeds kMaxOrder

  std::size_t count(int order) const { return count_upto[static_cast<std::size_t>(order) + 1]; }
};

void generate(int n, int var, int remaining, std::vector<int>& exps, std::vector<MultiIndex>& out) {
  if (var == n - 1) {
    exps[static_cast<std::size_t>(var)] = remaining;
    out.emplace_back(std::span<const int>(exps));
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    exps[static_cast<std::size_t>(var)] = e;
    generate(n, var + 1, remaining - e, exps, out);
  }
}

Layout build_layout(int n) {
  Layout L;
  L.n = n;
  for (int d = 0; d <= kMaxOrder; ++d) {
    L.count_upto[static_cast<std::size_t>(d)] = L.monomials.size();
    if (n == 0) {
      if (d == 0) L.monomials.push_back(MultiIndex::zero(0));
      continue;
    }
    std::vector<int> exps(static_cast<std::size_t>(n), 0);
    generate(n, 0, d, exps, L.monomials);
  }
  L.count_upto[kMaxOrder + 1] = L.monomials.size();
  const std::size_t m = L.monomials.size();
  for (std::size_t i = 0; i < m; ++i) {
    L.degree.push_back(L.monomials[i].degree());
    L.position.emplace(encode(L.monomials[i]), static_cast<int>(i));
  }
  L.product.assign(m * m, -1);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (L.degree[i] + L.degree[j] <= kMaxOrder)
        L.product[i * m + j] = L.position.at(encode(L.monomials[i] + L.monomials[j]));
  return L;
}

const Layout& layout(int n) {
  static std::array<Layout, kMaxVars + 1> layouts;
  static std::array<std::once_flag, kMaxVars + 1> flags;
  if (n < 0 || n > kMaxVars) throw DimensionMismatch("variable count must lie in [0, 8]");
  const auto k = static_cast<std::size_t>(n);
  std::call_once(flags[k], [k, n] { layouts[k] = build_layout(n); });
  return layouts[k];
}

void check_order(int order) {
  if (order < 0 || order > kMaxOrder)
    throw OrderUnderflow("jet order must lie in [0, 4], got " + std::to_string(order));
}

void require_same_vars(const TruncatedJet& a, const TruncatedJet& b) {
  if (a.n_vars() != b.n_vars())
    throw DimensionMismatch("jets have " + std::to_string(a.n_vars()) + " and " +
                            std::to_string(b.n_vars()) + " variables");
}

}  // namespace

std::size_t monomial_count(int n, int order) {
  check_order(order);
  return layout(n).count(order);
}

std::size_t monomial_position(const MultiIndex& alpha) {
  const Layout& L = layout(alpha.size());
  auto it = L.position.find(encode(alpha));
  if (it == L.position.end() || alpha.degree() > kMaxOrder)
    throw OrderUnderflow("monomial degree exceeds the supported order");
  return static_cast<std::size_t>(it->second);
}

// ---------------------------------------------------------------------------
// TruncatedJet
// ---------------------------------------------------------------------------

TruncatedJet::TruncatedJet(int n_vars, int order) : n_(n_vars), order_(order) {
  check_order(order);
  c_.assign(layout(n_vars).count(order), 0.0);
}

TruncatedJet TruncatedJet::constant(int n_vars, int order, double value) {
  TruncatedJet j(n_vars, order);
  j.c_[0] = value;
  return j;
}

TruncatedJet TruncatedJet::variable(int n_vars, int order, int i, double value) {
  TruncatedJet j = constant(n_vars, order, value);
  if (i < 0 || i >= n_vars) throw DimensionMismatch("variable index out of range");
  if (order >= 1) j.c_[static_cast<std::size_t>(1 + i)] = 1.0;
  return j;
}

const MultiIndex& TruncatedJet::monomial(std::size_t pos) const { return layout(n_).monomials[pos]; }

double TruncatedJet::coeff(const MultiIndex& alpha) const {
  if (alpha.size() != n_) throw DimensionMismatch("multi-index size differs from n_vars");
  if (alpha.degree() > order_) return 0.0;
  return c_[monomial_position(alpha)];
}

void TruncatedJet::set_coeff(const MultiIndex& alpha, double value) {
  if (alpha.size() != n_) throw DimensionMismatch("multi-index size differs from n_vars");
  if (alpha.degree() > order_)
    throw OrderUnderflow("cannot store a degree-" + std::to_string(alpha.degree()) +
                         " coefficient in an order-" + std::to_string(order_) + " jet");
  c_[monomial_position(alpha)] = value;
}

TruncatedJet TruncatedJet::truncated(int order) const {
  check_order(order);
  TruncatedJet r(n_, order);
  const std::size_t m = std::min(r.c_.size(), c_.size());
  std::copy_n(c_.begin(), m, r.c_.begin());
  return r;
}

double TruncatedJet::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw DimensionMismatch("evaluation point has wrong size");
  const Layout& L = layout(n_);
  double s = 0.0;
  for (std::size_t p = 0; p < c_.size(); ++p) {
    if (c_[p] == 0.0) continue;
    double term = c_[p];
    const MultiIndex& a = L.monomials[p];
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < a[i]; ++k) term *= x[static_cast<std::size_t>(i)];
    s += term;
  }
  return s;
}

double TruncatedJet::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

TruncatedJet& TruncatedJet::operator+=(const TruncatedJet& other) { return *this = add(*this, other); }
TruncatedJet& TruncatedJet::operator-=(const TruncatedJet& other) { return *this = sub(*this, other); }

TruncatedJet& TruncatedJet::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

TruncatedJet& TruncatedJet::operator+=(double s) {
  c_[0] += s;
  return *this;
}

// ---------------------------------------------------------------------------
// Arithmetic
// ---------------------------------------------------------------------------

TruncatedJet add(const TruncatedJet& a, const TruncatedJet& b) {
  require_same_vars(a, b);
  TruncatedJet r = a.truncated(std::min(a.order(), b.order()));
  for (std::size_t p = 0; p < r.size(); ++p) r[p] += b[p];
  return r;
}

TruncatedJet sub(const TruncatedJet& a, const TruncatedJet& b) {
  require_same_vars(a, b);
  TruncatedJet r = a.truncated(std::min(a.order(), b.order()));
  for (std::size_t p = 0; p < r.size(); ++p) r[p] -= b[p];
  return r;
}

TruncatedJet mul(const TruncatedJet& a, const TruncatedJet& b) {
  require_same_vars(a, b);
  const int order = std::min(a.order(), b.order());
  const Layout& L = layout(a.n_vars());
  const std::size_t m = L.monomials.size();
  TruncatedJet r(a.n_vars(), order);
  const std::size_t na = L.count(order);
  for (std::size_t i = 0; i < na; ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    const std::size_t nb = L.count(order - L.degree[i]);
    const int* row = &L.product[i * m];
    for (std::size_t j = 0; j < nb; ++j) r[static_cast<std::size_t>(row[j])] += ai * b[j];
  }
  return r;
}

TruncatedJet divide(const TruncatedJet& a, const TruncatedJet& b) {
  require_same_vars(a, b);
  const double b0 = b.constant_term();
  if (std::abs(b0) <= 1e-13 * std::max(1.0, b.max_abs()))
    throw DivisionBySingular("denominator has a vanishing constant term");
  const int order = std::min(a.order(), b.order());
  // 1/b = (1/b0) * sum_k (-t)^k with t = b/b0 - 1, which has no constant term.
  TruncatedJet t = b.truncated(order) * (1.0 / b0);
  t[0] = 0.0;
  TruncatedJet inv = TruncatedJet::constant(b.n_vars(), order, 1.0);
  for (int k = 0; k < order; ++k) inv = 1.0 - mul(t, inv);
  return mul(a.truncated(order), inv) * (1.0 / b0);
}

TruncatedJet differentiate(const TruncatedJet& a, int var) {
  if (var < 0 || var >= a.n_vars()) throw DimensionMismatch("variable index out of range");
  TruncatedJet r(a.n_vars(), std::max(a.order() - 1, 0));
  if (a.order() == 0) return r;
  for (std::size_t p = 0; p < r.size(); ++p) {
    const MultiIndex& alpha = r.monomial(p);
    const MultiIndex up = alpha.with(var, alpha[var] + 1);
    r[p] = (alpha[var] + 1) * a[monomial_position(up)];
  }
  return r;
}

namespace {

// Horner evaluation of `outer` (m variables) at the jets `inner`, nested over
// variables: outer = sum_e y_v^e * P_e(y_{v+1}, ...).
TruncatedJet horner(const TruncatedJet& outer, std::span<const TruncatedJet> inner, int order,
                    std::vector<int>& prefix, int var, int budget) {
  const int m = outer.n_vars();
  const int n = inner.empty() ? 0 : inner[0].n_vars();
  if (var == m) {
    return TruncatedJet::constant(n, order, outer.coeff(MultiIndex(std::span<const int>(prefix))));
  }
  const TruncatedJet& y = inner[static_cast<std::size_t>(var)];
  prefix[static_cast<std::size_t>(var)] = budget;
  TruncatedJet acc = horner(outer, inner, order, prefix, var + 1, 0);
  for (int e = budget - 1; e >= 0; --e) {
    prefix[static_cast<std::size_t>(var)] = e;
    acc = mul(acc, y) + horner(outer, inner, order, prefix, var + 1, budget - e);
  }
  prefix[static_cast<std::size_t>(var)] = 0;
  return acc;
}

TruncatedJet substitute(const TruncatedJet& outer, std::span<const TruncatedJet> inner, int order) {
  std::vector<int> prefix(static_cast<std::size_t>(outer.n_vars()), 0);
  if (outer.n_vars() == 0) {
    return TruncatedJet::constant(inner.empty() ? 0 : inner[0].n_vars(), order, outer.constant_term());
  }
  return horner(outer, inner, order, prefix, 0, outer.order());
}

}  // namespace

TruncatedJet recenter(const TruncatedJet& a, std::span<const double> shift) {
  if (static_cast<int>(shift.size()) != a.n_vars()) throw DimensionMismatch("shift has wrong size");
  std::vector<TruncatedJet> inner;
  inner.reserve(shift.size());
  for (int i = 0; i < a.n_vars(); ++i)
    inner.push_back(TruncatedJet::variable(a.n_vars(), a.order(), i, shift[static_cast<std::size_t>(i)]));
  // Polynomial re-expansion is exact: degree never exceeds a.order().
  return substitute(a, inner, a.order());
}

TruncatedJet compose(const TruncatedJet& outer, std::span<const TruncatedJet> inner, int requested_order) {
  if (static_cast<int>(inner.size()) != outer.n_vars())
    throw DimensionMismatch("outer jet has " + std::to_string(outer.n_vars()) + " variables but " +
                            std::to_string(inner.size()) + " inner jets were given");
  if (inner.empty()) {
    throw DimensionMismatch("composition needs at least one inner jet");
  }
  const int n = inner[0].n_vars();
  int available = outer.order();
  std::vector<double> centre;
  bool shifted = false;
  for (const TruncatedJet& g : inner) {
    if (g.n_vars() != n) throw DimensionMismatch("inner jets disagree on variable count");
    available = std::min(available, g.order());
    centre.push_back(g.constant_term());
    shifted = shifted || g.constant_term() != 0.0;
  }
  int order = available;
  if (requested_order >= 0) {
    if (requested_order > available)
      throw OrderUnderflow("requested order " + std::to_string(requested_order) +
                           " exceeds the inputs' order " + std::to_string(available));
    order = requested_order;
  }
  const TruncatedJet base = shifted ? recenter(outer, centre) : outer;
  std::vector<TruncatedJet> zeroed;
  zeroed.reserve(inner.size());
  for (const TruncatedJet& g : inner) {
    TruncatedJet z = g.truncated(order);
    z[0] = 0.0;
    zeroed.push_back(std::move(z));
  }
  return substitute(base.truncated(std::min(base.order(), std::max(order, 0))), zeroed, order);
}

std::vector<TruncatedJet> compose_maps(std::span<const TruncatedJet> f, std::span<const TruncatedJet> g) {
  std::vector<TruncatedJet> out;
  out.reserve(f.size());
  for (const TruncatedJet& fi : f) out.push_back(compose(fi, g));
  return out;
}

std::vector<TruncatedJet> invert_map(std::span<const TruncatedJet> f, const InvertOptions& options) {
  const int n = static_cast<int>(f.size());
  if (n == 0) throw DimensionMismatch("cannot invert an empty map");
  int order = kMaxOrder;
  for (const TruncatedJet& fi : f) {
    if (fi.n_vars() != n) throw DimensionMismatch("map must be square (n jets over n variables)");
    order = std::min(order, fi.order());
  }
  if (order < 1) throw OrderUnderflow("inversion needs at least the linear part");

  Eigen::MatrixXd J(n, n);
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    const double c0 = f[static_cast<std::size_t>(i)].constant_term();
    if (std::abs(c0) > 1e-12 * std::max(1.0, f[static_cast<std::size_t>(i)].max_abs()))
      throw std::invalid_argument("invert_map: map components must have zero constant term");
    for (int j = 0; j < n; ++j) {
      J(i, j) = f[static_cast<std::size_t>(i)][static_cast<std::size_t>(1 + j)];
      scale = std::max(scale, std::abs(J(i, j)));
    }
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
  const double det = lu.determinant();
  if (scale == 0.0 || std::abs(det) < options.det_tolerance * std::pow(scale, n))
    throw SingularJacobian("linear part is singular (|det| = " + std::to_string(std::abs(det)) + ")");
  const Eigen::MatrixXd Jinv = lu.inverse();
  const double cond = J.lpNorm<1>() * Jinv.lpNorm<1>();
  if (!(cond < options.max_condition))
    throw SingularJacobian("linear part is ill-conditioned (cond = " + std::to_string(cond) + ")");

  // Nonlinear remainder N = f - J x.
  std::vector<TruncatedJet> nonlinear(f.begin(), f.end());
  for (int i = 0; i < n; ++i) {
    auto& ni = nonlinear[static_cast<std::size_t>(i)];
    ni = ni.truncated(order);
    ni[0] = 0.0;
    for (int j = 0; j < n; ++j) ni[static_cast<std::size_t>(1 + j)] = 0.0;
  }
  auto apply_inverse = [&](const std::vector<TruncatedJet>& rhs) {
    std::vector<TruncatedJet> out;
    for (int i = 0; i < n; ++i) {
      TruncatedJet acc(n, order);
      for (int j = 0; j < n; ++j) acc += rhs[static_cast<std::size_t>(j)] * Jinv(i, j);
      out.push_back(std::move(acc));
    }
    return out;
  };

  std::vector<TruncatedJet> y;
  for (int i = 0; i < n; ++i) y.push_back(TruncatedJet::variable(n, order, i));
  // Fixed point g = J^{-1}(y - N(g)); each sweep fixes one more degree.
  std::vector<TruncatedJet> g = apply_inverse(y);
  for (int sweep = 1; sweep < order; ++sweep) {
    std::vector<TruncatedJet> rhs;
    for (int i = 0; i < n; ++i)
      rhs.push_back(y[static_cast<std::size_t>(i)] - compose(nonlinear[static_cast<std::size_t>(i)], g));
    g = apply_inverse(rhs);
  }
  return g;
}

TruncatedJet apply_univariate(const TruncatedJet& a, std::span<const double> derivs) {
  TruncatedJet t = a;
  t[0] = 0.0;
  const int order = a.order();
  // Horner in t: sum_k d_k/k! t^k.
  std::vector<double> taylor;
  double fact = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) fact *= k;
    taylor.push_back(static_cast<std::size_t>(k) < derivs.size() ? derivs[static_cast<std::size_t>(k)] / fact
                                                                  : 0.0);
  }
  TruncatedJet acc = TruncatedJet::constant(a.n_vars(), order, taylor.back());
  for (int k = order - 1; k >= 0; --k) acc = mul(acc, t) + taylor[static_cast<std::size_t>(k)];
  return acc;
}

TruncatedJet sqrt(const TruncatedJet& a) {
  const double x = a.constant_term();
  if (!(x > 0.0)) throw DivisionBySingular("sqrt of a jet needs a positive constant term");
  std::vector<double> d;
  // d^k/dx^k x^{1/2} = (1/2)(-1/2)...(1/2-k+1) x^{1/2-k}
  double coef = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    d.push_back(coef * std::pow(x, 0.5 - k));
    coef *= (0.5 - k);
  }
  return apply_univariate(a, d);
}

TruncatedJet operator+(const TruncatedJet& a, const TruncatedJet& b) { return add(a, b); }
TruncatedJet operator-(const TruncatedJet& a, const TruncatedJet& b) { return sub(a, b); }
TruncatedJet operator*(const TruncatedJet& a, const TruncatedJet& b) { return mul(a, b); }
TruncatedJet operator/(const TruncatedJet& a, const TruncatedJet& b) { return divide(a, b); }
TruncatedJet operator-(const TruncatedJet& a) { return a * -1.0; }

TruncatedJet operator*(const TruncatedJet& a, double s) {
  TruncatedJet r = a;
  r *= s;
  return r;
}
TruncatedJet operator*(double s, const TruncatedJet& a) { return a * s; }

TruncatedJet operator+(const TruncatedJet& a, double s) {
  TruncatedJet r = a;
  r += s;
  return r;
}
TruncatedJet operator+(double s, const TruncatedJet& a) { return a + s; }
TruncatedJet operator-(const TruncatedJet& a, double s) { return a + (-s); }
TruncatedJet operator-(double s, const TruncatedJet& a) { return (-a) + s; }

}  // namespace invpde
