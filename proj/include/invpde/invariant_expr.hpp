#pragma once

// Small expression trees over the jet invariants:
//   leaves  const(c), lam(i), sigma(i), tau(d), tauring(d), pick
//   nodes   a + b, a - b, a * b, a / b, a ^ k (integer k)
// Indices are 1-based: lam(1) is the largest eigenvalue.

#include <functional>
#include <string>
#include <vector>

namespace invpde {

class InvariantExpr {
 public:
  enum class Kind { constant, lam, sigma, tau, tauring, pick, add, sub, mul, div, pow };

  InvariantExpr() = default;

  static InvariantExpr constant(double v);
  static InvariantExpr lam(int i);
  static InvariantExpr sigma(int i);
  static InvariantExpr tau(int d);
  static InvariantExpr tauring(int d);
  static InvariantExpr pick();
  static InvariantExpr binary(Kind k, InvariantExpr a, InvariantExpr b);
  static InvariantExpr power(InvariantExpr a, int k);

  Kind kind() const { return kind_; }
  bool is_leaf() const;
  double value() const { return value_; }
  // Leaf index (lam/sigma/tau/tauring) or exponent (pow).
  int index() const { return index_; }
  const std::vector<InvariantExpr>& args() const { return args_; }

  // Leaves are evaluated by the callback; DivisionByZero on a zero denominator.
  double evaluate(const std::function<double(const InvariantExpr&)>& leaf) const;

  // Degree of homogeneity in the second (or third) order fiber data:
  // lam 1, sigma(i) i, tau/tauring(d) d, pick 2; sums take the max.
  int degree() const;

  // Visits every leaf.
  void for_each_leaf(const std::function<void(const InvariantExpr&)>& f) const;

  // Human-readable infix form, e.g. "tau(1)" or "(lam(1) * lam(2))".
  std::string str() const;

  friend bool operator==(const InvariantExpr&, const InvariantExpr&) = default;

 private:
  Kind kind_ = Kind::constant;
  double value_ = 0.0;
  int index_ = 0;
  std::vector<InvariantExpr> args_;
};

InvariantExpr operator+(InvariantExpr a, InvariantExpr b);
InvariantExpr operator-(InvariantExpr a, InvariantExpr b);
InvariantExpr operator*(InvariantExpr a, InvariantExpr b);
InvariantExpr operator/(InvariantExpr a, InvariantExpr b);

const char* kind_name(InvariantExpr::Kind k);
// InvalidExpr for unknown names.
InvariantExpr::Kind kind_from_name(const std::string& s);

}  // namespace invpde
