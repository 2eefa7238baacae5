#include "invpde/invariant_expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "invpde/errors.hpp"

namespace invpde {

namespace {

InvariantExpr::Kind checked_leaf(InvariantExpr::Kind k, int i, int min_index) {
  if (i < min_index)
    throw InvalidExpr(std::string(kind_name(k)) + " index must be >= " + std::to_string(min_index) +
                      ", got " + std::to_string(i));
  return k;
}

}  // namespace

InvariantExpr InvariantExpr::constant(double v) {
  if (!std::isfinite(v)) throw InvalidExpr("constants must be finite");
  InvariantExpr e;
  e.kind_ = Kind::constant;
  e.value_ = v;
  return e;
}

#define INVPDE_INDEXED_LEAF(fn, K, MIN)            \
  InvariantExpr InvariantExpr::fn(int i) {         \
    InvariantExpr e;                               \
    e.kind_ = checked_leaf(Kind::K, i, MIN);       \
    e.index_ = i;                                  \
    return e;                                      \
  }

INVPDE_INDEXED_LEAF(lam, lam, 1)
INVPDE_INDEXED_LEAF(sigma, sigma, 1)
INVPDE_INDEXED_LEAF(tau, tau, 1)
INVPDE_INDEXED_LEAF(tauring, tauring, 2)
#undef INVPDE_INDEXED_LEAF

InvariantExpr InvariantExpr::pick() {
  InvariantExpr e;
  e.kind_ = Kind::pick;
  return e;
}

InvariantExpr InvariantExpr::binary(Kind k, InvariantExpr a, InvariantExpr b) {
  if (k != Kind::add && k != Kind::sub && k != Kind::mul && k != Kind::div)
    throw InvalidExpr(std::string("'") + kind_name(k) + "' is not a binary operator");
  InvariantExpr e;
  e.kind_ = k;
  e.args_.push_back(std::move(a));
  e.args_.push_back(std::move(b));
  return e;
}

InvariantExpr InvariantExpr::power(InvariantExpr a, int k) {
  InvariantExpr e;
  e.kind_ = Kind::pow;
  e.index_ = k;
  e.args_.push_back(std::move(a));
  return e;
}

bool InvariantExpr::is_leaf() const {
  switch (kind_) {
    case Kind::add:
    case Kind::sub:
    case Kind::mul:
    case Kind::div:
    case Kind::pow: return false;
    default: return true;
  }
}

double InvariantExpr::evaluate(const std::function<double(const InvariantExpr&)>& leaf) const {
  switch (kind_) {
    case Kind::constant: return value_;
    case Kind::add: return args_[0].evaluate(leaf) + args_[1].evaluate(leaf);
    case Kind::sub: return args_[0].evaluate(leaf) - args_[1].evaluate(leaf);
    case Kind::mul: return args_[0].evaluate(leaf) * args_[1].evaluate(leaf);
    case Kind::div: {
      const double den = args_[1].evaluate(leaf);
      if (den == 0.0) throw DivisionByZero("denominator " + args_[1].str() + " vanishes");
      return args_[0].evaluate(leaf) / den;
    }
    case Kind::pow: {
      const double base = args_[0].evaluate(leaf);
      if (index_ < 0 && base == 0.0) throw DivisionByZero("negative power of a vanishing " + args_[0].str());
      return std::pow(base, index_);
    }
    default: return leaf(*this);
  }
}

int InvariantExpr::degree() const {
  switch (kind_) {
    case Kind::constant: return 0;
    case Kind::lam: return 1;
    case Kind::sigma:
    case Kind::tau:
    case Kind::tauring: return index_;
    case Kind::pick: return 2;
    case Kind::add:
    case Kind::sub: return std::max(args_[0].degree(), args_[1].degree());
    case Kind::mul: return args_[0].degree() + args_[1].degree();
    case Kind::div: return std::max(args_[0].degree() - args_[1].degree(), 0);
    case Kind::pow: return std::max(args_[0].degree() * index_, 0);
  }
  return 0;
}

void InvariantExpr::for_each_leaf(const std::function<void(const InvariantExpr&)>& f) const {
  if (is_leaf()) {
    f(*this);
    return;
  }
  for (const auto& a : args_) a.for_each_leaf(f);
}

std::string InvariantExpr::str() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::constant: os << value_; break;
    case Kind::pick: os << "pick"; break;
    case Kind::lam:
    case Kind::sigma:
    case Kind::tau:
    case Kind::tauring: os << kind_name(kind_) << '(' << index_ << ')'; break;
    case Kind::add: os << '(' << args_[0].str() << " + " << args_[1].str() << ')'; break;
    case Kind::sub: os << '(' << args_[0].str() << " - " << args_[1].str() << ')'; break;
    case Kind::mul: os << '(' << args_[0].str() << " * " << args_[1].str() << ')'; break;
    case Kind::div: os << '(' << args_[0].str() << " / " << args_[1].str() << ')'; break;
    case Kind::pow: os << args_[0].str() << '^' << index_; break;
  }
  return os.str();
}

InvariantExpr operator+(InvariantExpr a, InvariantExpr b) {
  return InvariantExpr::binary(InvariantExpr::Kind::add, std::move(a), std::move(b));
}
InvariantExpr operator-(InvariantExpr a, InvariantExpr b) {
  return InvariantExpr::binary(InvariantExpr::Kind::sub, std::move(a), std::move(b));
}
InvariantExpr operator*(InvariantExpr a, InvariantExpr b) {
  return InvariantExpr::binary(InvariantExpr::Kind::mul, std::move(a), std::move(b));
}
InvariantExpr operator/(InvariantExpr a, InvariantExpr b) {
  return InvariantExpr::binary(InvariantExpr::Kind::div, std::move(a), std::move(b));
}

const char* kind_name(InvariantExpr::Kind k) {
  using K = InvariantExpr::Kind;
  switch (k) {
    case K::constant: return "const";
    case K::lam: return "lam";
    case K::sigma: return "sigma";
    case K::tau: return "tau";
    case K::tauring: return "tauring";
    case K::pick: return "pick";
    case K::add: return "add";
    case K::sub: return "sub";
    case K::mul: return "mul";
    case K::div: return "div";
    case K::pow: return "pow";
  }
  return "const";
}

InvariantExpr::Kind kind_from_name(const std::string& s) {
  using K = InvariantExpr::Kind;
  for (K k : {K::constant, K::lam, K::sigma, K::tau, K::tauring, K::pick, K::add, K::sub, K::mul, K::div, K::pow})
    if (s == kind_name(k)) return k;
  throw InvalidExpr("unknown expression node '" + s + "'");
}

}  // namespace invpde
