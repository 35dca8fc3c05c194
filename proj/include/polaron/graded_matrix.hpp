#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "polaron/grassmann.hpp"

namespace polaron {

using Parities = std::vector<std::uint8_t>;

/// Ordered super tensor product of Z2-graded factors. The first factor is
/// the most significant digit of a composite basis index.
class GradedSpace {
 public:
  GradedSpace() = default;
  explicit GradedSpace(std::vector<Parities> factors);

  /// n copies of the (1|1) space with [|1>] = 0, [|2>] = 1.
  static GradedSpace uniform(int n_factors);

  int dim() const { return dim_; }
  int n_factors() const { return static_cast<int>(factors_.size()); }
  int factor_dim(int f) const { return static_cast<int>(factors_[f].size()); }
  const std::vector<Parities>& factors() const { return factors_; }

  /// Parity of a composite basis vector (mod-2 sum of factor parities).
  int parity(int index) const { return parity_[index]; }
  /// Index of the composite basis vector within factor f.
  int digit(int index, int f) const;
  int factor_parity(int index, int f) const { return factors_[f][digit(index, f)]; }
  /// Composite index with the digit of factor f replaced.
  int with_digit(int index, int f, int value) const;

  GradedSpace concat(const GradedSpace& other) const;
  GradedSpace without(int f) const;

  bool operator==(const GradedSpace& o) const { return factors_ == o.factors_; }

 private:
  std::vector<Parities> factors_;
  std::vector<int> stride_;
  Parities parity_;
  int dim_ = 1;
};

/// Square matrix over the Grassmann algebra, stored as one dense complex
/// block per basis monomial.
class GradedMatrix {
 public:
  GradedMatrix() = default;
  explicit GradedMatrix(GradedSpace space);

  static GradedMatrix identity(const GradedSpace& space);
  static GradedMatrix from_body(const GradedSpace& space, const Eigen::MatrixXcd& body);

  const GradedSpace& space() const { return space_; }
  int dim() const { return space_.dim(); }

  Grassmann at(int row, int col) const;
  void set(int row, int col, const Grassmann& value);
  void add_to(int row, int col, const Grassmann& value);

  const Eigen::MatrixXcd& component(int m) const { return comp_[m]; }
  Eigen::MatrixXcd& component(int m) { return comp_[m]; }
  const Eigen::MatrixXcd& body() const { return comp_[0]; }
  bool component_is_zero(int m) const;
  bool is_body_only() const;

  /// Max over entries of the max absolute monomial coefficient.
  double norm() const;
  double component_norm(int m) const;

  /// alpha, beta -> -alpha, -beta applied to every entry.
  GradedMatrix parity_flip() const;
  /// Keep only the selected degrees (0, 1, 2) of every entry.
  GradedMatrix grade(int deg) const;

  /// Inverse of a matrix with invertible body. Throws Error(SingularInverse).
  /// (B + S)^-1 = B^-1 - B^-1 S B^-1 + B^-1 S B^-1 S B^-1, exact since S^3 = 0.
  GradedMatrix inverse() const;

  GradedMatrix& operator+=(const GradedMatrix& o);
  GradedMatrix& operator-=(const GradedMatrix& o);
  GradedMatrix& operator*=(cplx s);

  friend GradedMatrix operator+(GradedMatrix a, const GradedMatrix& b) { return a += b; }
  friend GradedMatrix operator-(GradedMatrix a, const GradedMatrix& b) { return a -= b; }
  friend GradedMatrix operator*(GradedMatrix a, cplx s) { return a *= s; }
  friend GradedMatrix operator*(cplx s, GradedMatrix a) { return a *= s; }
  friend GradedMatrix operator*(GradedMatrix a, double s) { return a *= s; }
  friend GradedMatrix operator*(double s, GradedMatrix a) { return a *= s; }
  friend GradedMatrix operator*(const Grassmann& s, const GradedMatrix& a);
  friend GradedMatrix operator*(const GradedMatrix& a, const GradedMatrix& b);

 private:
  GradedSpace space_;
  std::array<Eigen::MatrixXcd, kMonomials> comp_;
};

/// Sparse counterpart used for operators embedded into a long chain.
class SparseGradedMatrix {
 public:
  using Sparse = Eigen::SparseMatrix<cplx, Eigen::ColMajor>;

  SparseGradedMatrix() = default;
  SparseGradedMatrix(GradedSpace space, std::array<Sparse, kMonomials> comp);

  const GradedSpace& space() const { return space_; }
  const Sparse& component(int m) const { return comp_[m]; }
  GradedMatrix to_dense() const;

  friend GradedMatrix operator*(const GradedMatrix& a, const SparseGradedMatrix& b);
  friend GradedMatrix operator*(const SparseGradedMatrix& a, const GradedMatrix& b);

 private:
  GradedSpace space_;
  std::array<Sparse, kMonomials> comp_;
};

GradedMatrix matmul(const GradedMatrix& a, const GradedMatrix& b);
GradedMatrix commutator(const GradedMatrix& a, const GradedMatrix& b);

/// (A (x) B)^{ik}_{jl} = (-1)^{([i]+[j])[k]} A^i_j B^k_l, entries multiplied A then B.
GradedMatrix super_tensor(const GradedMatrix& a, const GradedMatrix& b);

/// str A = sum_i (-1)^[i] A^i_i.
Grassmann supertrace(const GradedMatrix& a);

/// Signed partial trace over one factor; consistent with supertrace when
/// every factor is traced in turn. Throws Error(BadFactor).
GradedMatrix partial_supertrace(const GradedMatrix& a, int factor);

enum class Transpose { St, Ist };

/// Partial super transposition on one factor:
///   (A^{st_f})[r, c] = (-1)^{([r_f]+[c_f])([r_f] + s_f)} A[r', c']
/// where r', c' swap the f-digits of r and c and s_f is the total parity
/// change of the factors preceding f. Ist uses [c_f] in place of [r_f] and
/// is the inverse map.
GradedMatrix partial_supertranspose(const GradedMatrix& a, int factor, Transpose variant);

/// Graded permutation on F (x) F: P(x (x) y) = (-1)^{[x][y]} y (x) x.
GradedMatrix graded_permutation(const Parities& factor);

/// Embed a local operator acting on factors `legs` (strictly ascending) of
/// `target`, with the Koszul signs of the ordered super tensor product.
SparseGradedMatrix embed(const GradedMatrix& local, std::span<const int> legs,
                         const GradedSpace& target);

}  // namespace polaron
