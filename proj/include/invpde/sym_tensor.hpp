#pragma once

// Dense symmetric 2- and 3-tensors over R^n.
//
// SymMatrix keeps the lower triangle row by row: (0,0), (1,0), (1,1), (2,0) ...
// so entry (i,j), i >= j, lives at i(i+1)/2 + j.  SymCubic keeps one slot per
// sorted triple i <= j <= k in lexicographic order.  Both accessors accept the
// indices in any order.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace invpde {

class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n);
  SymMatrix(int n, std::span<const double> lower);

  static SymMatrix identity(int n);
  static SymMatrix diagonal(std::span<const double> d);
  // Symmetric part of a square matrix.
  static SymMatrix from_matrix(const Eigen::MatrixXd& m);

  static std::size_t storage_size(int n) { return static_cast<std::size_t>(n) * (n + 1) / 2; }

  int n() const { return n_; }
  double operator()(int i, int j) const { return v_[index(i, j)]; }
  double& operator()(int i, int j) { return v_[index(i, j)]; }
  std::span<const double> lower() const { return v_; }
  std::span<double> lower() { return v_; }

  Eigen::MatrixXd matrix() const;
  double max_abs() const;

  SymMatrix& operator+=(const SymMatrix& o);
  SymMatrix& operator-=(const SymMatrix& o);
  SymMatrix& operator*=(double s);

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  std::size_t index(int i, int j) const {
    if (i < j) std::swap(i, j);
    return static_cast<std::size_t>(i) * (i + 1) / 2 + static_cast<std::size_t>(j);
  }

  int n_ = 0;
  std::vector<double> v_;
};

class SymCubic {
 public:
  SymCubic() = default;
  explicit SymCubic(int n);
  SymCubic(int n, std::span<const double> lex);

  static std::size_t storage_size(int n) {
    return static_cast<std::size_t>(n) * (n + 1) * (n + 2) / 6;
  }

  int n() const { return n_; }
  double operator()(int i, int j, int k) const { return v_[index(i, j, k)]; }
  double& operator()(int i, int j, int k) { return v_[index(i, j, k)]; }
  std::span<const double> lex() const { return v_; }
  std::span<double> lex() { return v_; }

  // Sorted triple stored at position p.
  void triple(std::size_t p, int& i, int& j, int& k) const;
  // Number of distinct permutations of (i,j,k): 1, 3 or 6.
  static int multiplicity(int i, int j, int k);

  double max_abs() const;

  SymCubic& operator+=(const SymCubic& o);
  SymCubic& operator-=(const SymCubic& o);
  SymCubic& operator*=(double s);

  friend bool operator==(const SymCubic&, const SymCubic&) = default;

 private:
  std::size_t index(int i, int j, int k) const;

  int n_ = 0;
  std::vector<double> v_;
};

SymMatrix operator+(SymMatrix a, const SymMatrix& b);
SymMatrix operator-(SymMatrix a, const SymMatrix& b);
SymMatrix operator*(double s, SymMatrix a);
SymCubic operator+(SymCubic a, const SymCubic& b);
SymCubic operator-(SymCubic a, const SymCubic& b);
SymCubic operator*(double s, SymCubic a);

// Congruence: (T^T M T)_{ab} and sum_{ijk} T_ia T_jb T_kc C_ijk.
SymMatrix congruence(const SymMatrix& m, const Eigen::MatrixXd& t);
SymCubic congruence(const SymCubic& c, const Eigen::MatrixXd& t);

// (w . g)_{ijk} = w_i g_jk + w_j g_ik + w_k g_ij
SymCubic symmetric_product(std::span<const double> w, const SymMatrix& g);

}  // namespace invpde
