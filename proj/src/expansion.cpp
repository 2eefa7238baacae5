#include "invpde/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

#include "invpde/errors.hpp"

namespace invpde {

namespace {

// Sparse polynomial with exact-ish (small rational) double coefficients.
using Exps = std::vector<int>;
using Poly = std::map<Exps, double>;

constexpr int kVarsSecond = 5;   // u_x u_y u_xx u_xy u_yy
constexpr int kVarsThird = 9;    // ... u_xxx u_xxy u_xyy u_yyy
const char* const kVarNames[kVarsThird] = {"u_x", "u_y", "u_xx", "u_xy", "u_yy", "u_xxx", "u_xxy", "u_xyy", "u_yyy"};
const char* const kVarLatex[kVarsThird] = {"u_x", "u_y", "u_{xx}", "u_{xy}", "u_{yy}", "u_{xxx}", "u_{xxy}", "u_{xyy}", "u_{yyy}"};

void clean(Poly& p) {
  double big = 0.0;
  for (const auto& [e, c] : p) big = std::max(big, std::abs(c));
  for (auto it = p.begin(); it != p.end();) {
    if (std::abs(it->second) <= 1e-12 * big || it->second == 0.0) it = p.erase(it);
    else ++it;
  }
}

Poly constant(int nv, double c) {
  Poly p;
  if (c != 0.0) p[Exps(static_cast<std::size_t>(nv), 0)] = c;
  return p;
}

Poly var(int nv, int i) {
  Exps e(static_cast<std::size_t>(nv), 0);
  e[static_cast<std::size_t>(i)] = 1;
  return Poly{{e, 1.0}};
}

Poly add(Poly a, const Poly& b, double sb = 1.0) {
  for (const auto& [e, c] : b) a[e] += sb * c;
  clean(a);
  return a;
}

Poly mul(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exps e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r[e] += ca * cb;
    }
  clean(r);
  return r;
}

Poly scale(Poly a, double s) {
  for (auto& [e, c] : a) c *= s;
  clean(a);
  return a;
}

bool is_constant(const Poly& p, double& value) {
  value = 0.0;
  for (const auto& [e, c] : p) {
    if (std::any_of(e.begin(), e.end(), [](int x) { return x != 0; })) return false;
    value = c;
  }
  return true;
}

// A denominator D = lead * v^2 + rest, with rest free of v.
struct Denominator {
  Poly poly;
  int v = 0;
  double lead = 1.0;
};

// Exact division; returns false when D does not divide p.
bool divide_exact(const Poly& p, const Denominator& d, Poly& quotient) {
  Poly r = p;
  quotient.clear();
  double big = 0.0;
  for (const auto& [e, c] : p) big = std::max(big, std::abs(c));
  const auto v = static_cast<std::size_t>(d.v);
  while (true) {
    // Term of highest v-degree (>= 2).
    auto best = r.end();
    for (auto it = r.begin(); it != r.end(); ++it)
      if (it->first[v] >= 2 && (best == r.end() || it->first[v] > best->first[v])) best = it;
    if (best == r.end()) break;
    Exps e = best->first;
    e[v] -= 2;
    const Poly q{{e, best->second / d.lead}};
    quotient = add(quotient, q);
    r = add(r, mul(q, d.poly), -1.0);
  }
  for (const auto& [e, c] : r)
    if (std::abs(c) > 1e-9 * std::max(big, 1.0)) return false;
  return true;
}

struct Term {
  Poly p;
  int m = 0;  // power of the denominator
};

Poly power(const Poly& p, int k, int nv) {
  Poly r = constant(nv, 1.0);
  for (int i = 0; i < k; ++i) r = mul(r, p);
  return r;
}

Term align(const Term& t, int m, const Denominator& d, int nv) {
  return {mul(t.p, power(d.poly, m - t.m, nv)), m};
}

Term add_terms(const Term& a, const Term& b, double sb, const Denominator& d, int nv) {
  const int m = std::max(a.m, b.m);
  return {add(align(a, m, d, nv).p, align(b, m, d, nv).p, sb), m};
}

Term mul_terms(const Term& a, const Term& b) { return {mul(a.p, b.p), a.m + b.m}; }

using Matrix2 = std::array<std::array<Poly, 2>, 2>;

Matrix2 mat_mul(const Matrix2& a, const Matrix2& b) {
  Matrix2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = add(mul(a[i][0], b[0][j]), mul(a[i][1], b[1][j]));
  return r;
}

Poly trace(const Matrix2& a) { return add(a[0][0], a[1][1]); }

Poly trace_power(const Matrix2& a, int d) {
  Matrix2 p = a;
  for (int k = 1; k < d; ++k) p = mat_mul(p, a);
  return trace(p);
}

class Expander {
 public:
  explicit Expander(const PdeDescriptor& desc) : desc_(desc) {
    const bool third = desc.geometry == Geometry::affine || desc.geometry == Geometry::projective;
    nv_ = third ? kVarsThird : kVarsSecond;
    const Poly ux = var(nv_, 0), uy = var(nv_, 1);
    H_ = {{{var(nv_, 2), var(nv_, 3)}, {var(nv_, 3), var(nv_, 4)}}};
    if (third) {
      den_.poly = add(mul(H_[0][0], H_[1][1]), mul(H_[0][1], H_[0][1]), -1.0);
      den_.v = 3;
      den_.lead = -1.0;
    } else {
      den_.poly = add(add(constant(nv_, 1.0), mul(ux, ux)), mul(uy, uy));
      den_.v = 0;
      den_.lead = 1.0;
      // M = (rho I - grad grad^T) hess, so that S = rho^{-2} M.
      const std::array<Poly, 2> g{ux, uy};
      Matrix2 N;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) N[i][j] = add(i == j ? den_.poly : Poly{}, mul(g[i], g[j]), -1.0);
      M_ = mat_mul(N, H_);
      const Poly half_tr = scale(trace(M_), 0.5);
      Mring_ = M_;
      for (int i = 0; i < 2; ++i) Mring_[i][i] = add(Mring_[i][i], half_tr, -1.0);
    }
  }

  const Denominator& denominator() const { return den_; }
  int n_vars() const { return nv_; }

  Term expand(const InvariantExpr& e) {
    using K = InvariantExpr::Kind;
    switch (e.kind()) {
      case K::constant: return {constant(nv_, e.value()), 0};
      case K::lam: throw NotPolynomial("individual eigenvalues " + e.str() + " are not polynomial in the jet");
      case K::tau: return {trace_power(M_, e.index()), 2 * e.index()};
      case K::tauring: return {trace_power(Mring_, e.index()), 2 * e.index()};
      case K::sigma: return sigma(e.index());
      case K::pick: return pick();
      case K::add: return add_terms(expand(e.args()[0]), expand(e.args()[1]), 1.0, den_, nv_);
      case K::sub: return add_terms(expand(e.args()[0]), expand(e.args()[1]), -1.0, den_, nv_);
      case K::mul: return mul_terms(expand(e.args()[0]), expand(e.args()[1]));
      case K::div: {
        const Term den = expand(e.args()[1]);
        double c = 0.0;
        if (den.m != 0 || !is_constant(den.p, c))
          throw NotPolynomial("division by the non-constant " + e.args()[1].str());
        if (c == 0.0) throw DivisionByZero("division by zero constant");
        Term num = expand(e.args()[0]);
        num.p = scale(num.p, 1.0 / c);
        return num;
      }
      case K::pow: {
        if (e.index() < 0) throw NotPolynomial("negative power in " + e.str());
        const Term base = expand(e.args()[0]);
        Term r{constant(nv_, 1.0), 0};
        for (int k = 0; k < e.index(); ++k) r = mul_terms(r, base);
        return r;
      }
    }
    throw NotPolynomial("unsupported node");
  }

 private:
  // Newton's identities: k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i.
  Term sigma(int k) {
    std::vector<Term> e{{constant(nv_, 1.0), 0}};
    for (int j = 1; j <= k; ++j) {
      Term acc{Poly{}, 0};
      for (int i = 1; i <= j; ++i) {
        const Term pi{trace_power(M_, i), 2 * i};
        acc = add_terms(acc, mul_terms(e[static_cast<std::size_t>(j - i)], pi), (i % 2 == 1) ? 1.0 : -1.0, den_, nv_);
      }
      acc.p = scale(acc.p, 1.0 / j);
      e.push_back(std::move(acc));
    }
    return e[static_cast<std::size_t>(k)];
  }

  // Pick norm of the normalized jet in raw coordinates, with g = hess/2:
  //   a_k = adj(H)^{ij} C_ijk,  B = 4 det(H) C - sym(a . H),
  //   pick = (1/2) adj^{ii'} adj^{jj'} adj^{kk'} B_ijk B_i'j'k' / det^5.
  Term pick() {
    auto C = [&](int i, int j, int k) {
      const int ones = i + j + k;  // number of y-indices
      return var(nv_, 5 + ones);
    };
    Matrix2 adj;
    adj[0][0] = H_[1][1];
    adj[1][1] = H_[0][0];
    adj[0][1] = adj[1][0] = scale(H_[0][1], -1.0);
    std::array<Poly, 2> a;
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) a[k] = add(a[k], mul(adj[i][j], C(i, j, k)));
    Poly B[2][2][2];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          Poly s = mul(a[i], H_[j][k]);
          s = add(s, mul(a[j], H_[i][k]));
          s = add(s, mul(a[k], H_[i][j]));
          B[i][j][k] = add(scale(mul(den_.poly, C(i, j, k)), 4.0), s, -1.0);
        }
    // Raise all three indices with adj, then contract.
    Poly sum;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          Poly raised;
          for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q)
              for (int r = 0; r < 2; ++r)
                raised = add(raised, mul(mul(mul(adj[i][p], adj[j][q]), adj[k][r]), B[p][q][r]));
          sum = add(sum, mul(raised, B[i][j][k]));
        }
    return {scale(sum, 0.5), 5};
  }

  const PdeDescriptor& desc_;
  int nv_ = kVarsSecond;
  Denominator den_;
  Matrix2 H_, M_, Mring_;
};

long long gcd_ll(long long a, long long b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

// Divide out the positive rational content of p; returns the content.
double make_primitive(Poly& p) {
  if (p.empty()) return 1.0;
  for (long long q = 1; q <= 720; ++q) {
    bool ok = true;
    std::vector<long long> ints;
    for (const auto& [e, c] : p) {
      const double x = c * static_cast<double>(q);
      const double r = std::round(x);
      if (std::abs(x - r) > 1e-9 * std::max(1.0, std::abs(x)) || std::abs(r) > 1e15) {
        ok = false;
        break;
      }
      ints.push_back(static_cast<long long>(r));
    }
    if (!ok) continue;
    long long g = 0;
    for (long long v : ints) g = gcd_ll(g, v);
    if (g == 0) return 1.0;
    std::size_t k = 0;
    for (auto& [e, c] : p) c = static_cast<double>(ints[k++] / g);
    return static_cast<double>(g) / static_cast<double>(q);
  }
  return 1.0;
}

int top_start() { return 2; }

Exps top_part(const Exps& e) { return Exps(e.begin() + top_start(), e.end()); }
Exps low_part(const Exps& e) { return Exps(e.begin(), e.begin() + top_start()); }

int degree_of(const Exps& e) { return std::accumulate(e.begin(), e.end(), 0); }

// Higher-order parts lexicographically descending; inside a group the
// lower-order cofactors by ascending degree, then lexicographically descending.
bool print_order(const ExpandedPolynomial::Monomial& a, const ExpandedPolynomial::Monomial& b) {
  const Exps ta = top_part(a.exps), tb = top_part(b.exps);
  if (ta != tb) return ta > tb;
  const Exps la = low_part(a.exps), lb = low_part(b.exps);
  if (degree_of(la) != degree_of(lb)) return degree_of(la) < degree_of(lb);
  return la > lb;
}

}  // namespace

double ExpandedPolynomial::evaluate(const GraphJet& j) const {
  if (j.n != 2) throw WrongDimension("expanded polynomials are defined for n = 2");
  std::vector<double> x{j.grad[0], j.grad[1]};
  if (j.hess) {
    x.push_back((*j.hess)(0, 0));
    x.push_back((*j.hess)(1, 0));
    x.push_back((*j.hess)(1, 1));
  }
  if (j.cubic) {
    for (double c : j.cubic->lex()) x.push_back(c);
  }
  if (x.size() < vars.size()) throw OrderUnderflow("jet order is too low for this polynomial");
  double s = 0.0;
  for (const auto& m : monomials) {
    double t = m.coef;
    for (std::size_t i = 0; i < m.exps.size(); ++i)
      for (int k = 0; k < m.exps[i]; ++k) t *= x[i];
    s += t;
  }
  return s;
}

ExpandedPolynomial expand_polynomial(const PdeDescriptor& desc) {
  if (desc.n != 2) throw WrongDimension("polynomial expansion is provided for n = 2");
  Expander ex(desc);
  Term t = ex.expand(desc.expr);
  // Clear the denominator down to its minimal power.
  while (t.m > 0) {
    Poly q;
    if (!divide_exact(t.p, ex.denominator(), q)) break;
    t.p = std::move(q);
    --t.m;
  }
  ExpandedPolynomial out;
  for (int i = 0; i < ex.n_vars(); ++i) out.vars.emplace_back(kVarNames[i]);
  out.rho_power = t.m;
  out.denominator = ex.n_vars() == kVarsThird ? "det_hess" : "rho";
  out.factor = make_primitive(t.p);
  for (const auto& [e, c] : t.p) out.monomials.push_back({e, c});
  std::stable_sort(out.monomials.begin(), out.monomials.end(), print_order);
  return out;
}

namespace {

std::string number(double c) {
  char buf[64];
  if (c == std::round(c) && std::abs(c) < 1e15) std::snprintf(buf, sizeof buf, "%.0f", c);
  else std::snprintf(buf, sizeof buf, "%.17g", c);
  return buf;
}

std::string monomial_latex(const Exps& e, int offset) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    s += kVarLatex[i + static_cast<std::size_t>(offset)];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

// Signed term "c*mono" with the sign split off.
std::string magnitude(double c, const std::string& mono) {
  const double a = std::abs(c);
  if (mono.empty()) return number(a);
  if (a == 1.0) return mono;
  return number(a) + mono;
}

}  // namespace

std::string to_latex(const ExpandedPolynomial& p) {
  if (p.monomials.empty()) return "0";
  std::string out;
  auto append = [&](bool negative, const std::string& body) {
    if (out.empty()) out = (negative ? "-" : "") + body;
    else out += (negative ? " - " : " + ") + body;
  };
  std::size_t i = 0;
  while (i < p.monomials.size()) {
    const Exps top = top_part(p.monomials[i].exps);
    std::size_t j = i;
    while (j < p.monomials.size() && top_part(p.monomials[j].exps) == top) ++j;
    const std::string top_tex = monomial_latex(top, top_start());
    if (j - i == 1 || top_tex.empty()) {
      for (std::size_t k = i; k < j; ++k) {
        const auto& m = p.monomials[k];
        append(m.coef < 0, magnitude(m.coef, monomial_latex(low_part(m.exps), 0) + top_tex));
      }
    } else {
      std::string inner;
      for (std::size_t k = i; k < j; ++k) {
        const auto& m = p.monomials[k];
        const std::string body = magnitude(m.coef, monomial_latex(low_part(m.exps), 0));
        if (inner.empty()) inner = (m.coef < 0 ? "-" : "") + body;
        else inner += (m.coef < 0 ? "-" : "+") + body;
      }
      append(false, "(" + inner + ")" + top_tex);
    }
    i = j;
  }
  return out;
}

}  // namespace invpde
