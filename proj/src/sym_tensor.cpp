#include "invpde/sym_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "invpde/errors.hpp"

namespace invpde {

SymMatrix::SymMatrix(int n) : n_(n), v_(storage_size(n), 0.0) {}

SymMatrix::SymMatrix(int n, std::span<const double> lower) : n_(n), v_(lower.begin(), lower.end()) {
  if (v_.size() != storage_size(n))
    throw DimensionMismatch("SymMatrix of size " + std::to_string(n) + " needs " +
                            std::to_string(storage_size(n)) + " entries");
}

SymMatrix SymMatrix::identity(int n) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  SymMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.n(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

SymMatrix SymMatrix::from_matrix(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("matrix is not square");
  SymMatrix m(static_cast<int>(a.rows()));
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j <= i; ++j) m(i, j) = 0.5 * (a(i, j) + a(j, i));
  return m;
}

Eigen::MatrixXd SymMatrix::matrix() const {
  Eigen::MatrixXd m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  return m;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
  if (o.n_ != n_) throw DimensionMismatch("SymMatrix sizes differ");
  for (std::size_t p = 0; p < v_.size(); ++p) v_[p] += o.v_[p];
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
  if (o.n_ != n_) throw DimensionMismatch("SymMatrix sizes differ");
  for (std::size_t p = 0; p < v_.size(); ++p) v_[p] -= o.v_[p];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  for (double& x : v_) x *= s;
  return *this;
}

// --- SymCubic ---------------------------------------------------------------

SymCubic::SymCubic(int n) : n_(n), v_(storage_size(n), 0.0) {}

SymCubic::SymCubic(int n, std::span<const double> lex) : n_(n), v_(lex.begin(), lex.end()) {
  if (v_.size() != storage_size(n))
    throw DimensionMismatch("SymCubic of size " + std::to_string(n) + " needs " +
                            std::to_string(storage_size(n)) + " entries");
}

std::size_t SymCubic::index(int i, int j, int k) const {
  if (i > j) std::swap(i, j);
  if (j > k) std::swap(j, k);
  if (i > j) std::swap(i, j);
  // Triples whose first index is below i: sum over a < i of (n-a)(n-a+1)/2.
  std::size_t p = 0;
  for (int a = 0; a < i; ++a) p += static_cast<std::size_t>(n_ - a) * (n_ - a + 1) / 2;
  for (int b = i; b < j; ++b) p += static_cast<std::size_t>(n_ - b);
  return p + static_cast<std::size_t>(k - j);
}

void SymCubic::triple(std::size_t p, int& i, int& j, int& k) const {
  for (i = 0; i < n_; ++i) {
    const std::size_t block = static_cast<std::size_t>(n_ - i) * (n_ - i + 1) / 2;
    if (p < block) break;
    p -= block;
  }
  for (j = i; j < n_; ++j) {
    const auto row = static_cast<std::size_t>(n_ - j);
    if (p < row) break;
    p -= row;
  }
  k = j + static_cast<int>(p);
}

int SymCubic::multiplicity(int i, int j, int k) {
  if (i == j && j == k) return 1;
  if (i == j || j == k || i == k) return 3;
  return 6;
}

double SymCubic::max_abs() const {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  return m;
}

SymCubic& SymCubic::operator+=(const SymCubic& o) {
  if (o.n_ != n_) throw DimensionMismatch("SymCubic sizes differ");
  for (std::size_t p = 0; p < v_.size(); ++p) v_[p] += o.v_[p];
  return *this;
}

SymCubic& SymCubic::operator-=(const SymCubic& o) {
  if (o.n_ != n_) throw DimensionMismatch("SymCubic sizes differ");
  for (std::size_t p = 0; p < v_.size(); ++p) v_[p] -= o.v_[p];
  return *this;
}

SymCubic& SymCubic::operator*=(double s) {
  for (double& x : v_) x *= s;
  return *this;
}

SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
SymMatrix operator*(double s, SymMatrix a) { return a *= s; }
SymCubic operator+(SymCubic a, const SymCubic& b) { return a += b; }
SymCubic operator-(SymCubic a, const SymCubic& b) { return a -= b; }
SymCubic operator*(double s, SymCubic a) { return a *= s; }

SymMatrix congruence(const SymMatrix& m, const Eigen::MatrixXd& t) {
  if (t.rows() != m.n()) throw DimensionMismatch("congruence matrix has wrong row count");
  const Eigen::MatrixXd r = t.transpose() * m.matrix() * t;
  return SymMatrix::from_matrix(r);
}

SymCubic congruence(const SymCubic& c, const Eigen::MatrixXd& t) {
  const int n = c.n();
  if (t.rows() != n) throw DimensionMismatch("congruence matrix has wrong row count");
  const int m = static_cast<int>(t.cols());
  // Contract one slot at a time: n^3 m + n^2 m^2 + n m^3 work instead of n^3 m^3.
  std::vector<double> full(static_cast<std::size_t>(n * n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) full[static_cast<std::size_t>((i * n + j) * n + k)] = c(i, j, k);
  std::vector<double> s1(static_cast<std::size_t>(m * n * n), 0.0);
  for (int a = 0; a < m; ++a)
    for (int i = 0; i < n; ++i) {
      const double tia = t(i, a);
      if (tia == 0.0) continue;
      for (int jk = 0; jk < n * n; ++jk)
        s1[static_cast<std::size_t>(a * n * n + jk)] += tia * full[static_cast<std::size_t>(i * n * n + jk)];
    }
  std::vector<double> s2(static_cast<std::size_t>(m * m * n), 0.0);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int j = 0; j < n; ++j) {
        const double tjb = t(j, b);
        if (tjb == 0.0) continue;
        for (int k = 0; k < n; ++k)
          s2[static_cast<std::size_t>((a * m + b) * n + k)] += tjb * s1[static_cast<std::size_t>((a * n + j) * n + k)];
      }
  SymCubic out(m);
  for (std::size_t p = 0; p < out.lex().size(); ++p) {
    int a = 0, b = 0, cc = 0;
    out.triple(p, a, b, cc);
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += t(k, cc) * s2[static_cast<std::size_t>((a * m + b) * n + k)];
    out.lex()[p] = s;
  }
  return out;
}

SymCubic symmetric_product(std::span<const double> w, const SymMatrix& g) {
  const int n = g.n();
  if (static_cast<int>(w.size()) != n) throw DimensionMismatch("covector and metric sizes differ");
  SymCubic out(n);
  for (std::size_t p = 0; p < out.lex().size(); ++p) {
    int i = 0, j = 0, k = 0;
    out.triple(p, i, j, k);
    out.lex()[p] = w[static_cast<std::size_t>(i)] * g(j, k) + w[static_cast<std::size_t>(j)] * g(i, k) +
                   w[static_cast<std::size_t>(k)] * g(i, j);
  }
  return out;
}

}  // namespace invpde
