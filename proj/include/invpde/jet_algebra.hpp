#pragma once

// Truncated multivariate Taylor series ("truncated jets") in up to eight
// variables and up to order four.  Coefficients are stored densely, one slot
// per monomial, in graded order: all monomials of degree 0, then degree 1, and
// so on, each degree block sorted lexicographically (x0 before x1 ...).
// Because the layout is graded, the layout for order N is a prefix of the one
// for order N+1.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace invpde {

inline constexpr int kMaxVars = 8;
inline constexpr int kMaxOrder = 4;

class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::initializer_list<int> exponents);
  explicit MultiIndex(std::span<const int> exponents);

  static MultiIndex zero(int n);
  static MultiIndex unit(int n, int i);

  int size() const { return n_; }
  int operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
  int degree() const;
  // Product of exponent factorials, alpha!.
  double factorial() const;

  MultiIndex operator+(const MultiIndex& other) const;
  MultiIndex with(int i, int exponent) const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::array<std::uint8_t, kMaxVars> e_{};
  int n_ = 0;
};

class TruncatedJet {
 public:
  TruncatedJet() = default;
  // The zero jet.
  TruncatedJet(int n_vars, int order);

  static TruncatedJet constant(int n_vars, int order, double value);
  // value + x_i
  static TruncatedJet variable(int n_vars, int order, int i, double value = 0.0);

  int n_vars() const { return n_; }
  int order() const { return order_; }
  std::size_t size() const { return c_.size(); }

  // Positional access in layout order.
  double operator[](std::size_t pos) const { return c_[pos]; }
  double& operator[](std::size_t pos) { return c_[pos]; }
  const MultiIndex& monomial(std::size_t pos) const;
  std::span<const double> coefficients() const { return c_; }

  // Zero for monomials above the order.
  double coeff(const MultiIndex& alpha) const;
  // Throws OrderUnderflow for degree > order.
  void set_coeff(const MultiIndex& alpha, double value);

  double constant_term() const { return c_.empty() ? 0.0 : c_[0]; }
  TruncatedJet truncated(int order) const;
  double evaluate(std::span<const double> x) const;
  double max_abs() const;

  TruncatedJet& operator+=(const TruncatedJet& other);
  TruncatedJet& operator-=(const TruncatedJet& other);
  TruncatedJet& operator*=(double s);
  TruncatedJet& operator+=(double s);

 private:
  int n_ = 0;
  int order_ = 0;
  std::vector<double> c_;
};

// Number of monomials in n variables of degree <= order.
std::size_t monomial_count(int n, int order);
// Position of alpha in the graded layout.
std::size_t monomial_position(const MultiIndex& alpha);

// Named operations.  Binary operations require equal n_vars (DimensionMismatch)
// and return a jet of order min(a.order, b.order).
TruncatedJet add(const TruncatedJet& a, const TruncatedJet& b);
TruncatedJet sub(const TruncatedJet& a, const TruncatedJet& b);
TruncatedJet mul(const TruncatedJet& a, const TruncatedJet& b);
// a / b; DivisionBySingular when |b(0)| is negligible.
TruncatedJet divide(const TruncatedJet& a, const TruncatedJet& b);
// Formal partial derivative; the order drops by one (floored at zero).
TruncatedJet differentiate(const TruncatedJet& a, int var);

// outer(inner_0, ..., inner_{m-1}).  outer has m variables; all inner jets share
// n variables.  Inner jets with nonzero constant terms are handled by first
// re-expanding outer (as a polynomial) about those constants.  The result order
// is min(outer.order, inner orders), or `requested_order` if given
// (OrderUnderflow if that exceeds what the inputs determine).
TruncatedJet compose(const TruncatedJet& outer, std::span<const TruncatedJet> inner,
                     int requested_order = -1);
// Re-expansion of a about the point `shift`: returns z -> a(shift + z).
TruncatedJet recenter(const TruncatedJet& a, std::span<const double> shift);

struct InvertOptions {
  // |det J| < det_tolerance * (max |J_ij|)^n is reported as singular.
  double det_tolerance = 1e-10;
  // 1-norm condition number bound for the linear part.
  double max_condition = 1e12;
};

// Series reversion of a map with zero constant terms and invertible linear
// part.  Returns g with f(g(y)) = y and g(f(x)) = x to the working order.
// Throws SingularJacobian.
std::vector<TruncatedJet> invert_map(std::span<const TruncatedJet> f,
                                     const InvertOptions& options = {});

// Component-wise composition of maps: (f o g)_i = compose(f_i, g).
std::vector<TruncatedJet> compose_maps(std::span<const TruncatedJet> f,
                                       std::span<const TruncatedJet> g);

// sum_k derivs[k]/k! (a - a(0))^k: the jet of phi(a) given phi's derivatives at a(0).
TruncatedJet apply_univariate(const TruncatedJet& a, std::span<const double> derivs);
TruncatedJet sqrt(const TruncatedJet& a);

TruncatedJet operator+(const TruncatedJet& a, const TruncatedJet& b);
TruncatedJet operator-(const TruncatedJet& a, const TruncatedJet& b);
TruncatedJet operator*(const TruncatedJet& a, const TruncatedJet& b);
TruncatedJet operator/(const TruncatedJet& a, const TruncatedJet& b);
TruncatedJet operator-(const TruncatedJet& a);
TruncatedJet operator*(const TruncatedJet& a, double s);
TruncatedJet operator*(double s, const TruncatedJet& a);
TruncatedJet operator+(const TruncatedJet& a, double s);
TruncatedJet operator+(double s, const TruncatedJet& a);
TruncatedJet operator-(const TruncatedJet& a, double s);
TruncatedJet operator-(double s, const TruncatedJet& a);

}  // namespace invpde
