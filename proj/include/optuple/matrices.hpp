#pragma once

#include <Eigen/Dense>
#include <vector>

// LAPACKE drags in C99 <complex.h>; its I macro would shadow ordinary
// identifiers downstream.
#ifdef I
#undef I
#endif

#include "optuple/errors.hpp"

namespace optuple {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

// Hard cap on matrix dimensions (desk scale), overridable via CLI.
int max_tuple_dim();
void set_max_tuple_dim(int d);

// A finite system of N complex d x d matrices acting on a common space.
// Entries are validated to be finite; d = 0 is the trivial tuple.
class MatrixTuple {
public:
  MatrixTuple() : MatrixTuple(1, 0) {}  // trivial single-operator tuple
  MatrixTuple(int n, int dim);          // zero tuple
  explicit MatrixTuple(std::vector<Matrix> entries);

  int length() const { return static_cast<int>(entries_.size()); }
  int dim() const { return dim_; }
  bool trivial() const { return dim_ == 0; }

  const Matrix& operator[](int j) const { return entries_[j]; }
  Matrix& operator[](int j) { return entries_[j]; }
  const std::vector<Matrix>& entries() const { return entries_; }

  double frobenius_norm() const;

private:
  int dim_;
  std::vector<Matrix> entries_;
};

// Blockwise direct sum per coordinate.  Lengths must agree.
MatrixTuple direct_sum(const MatrixTuple& a, const MatrixTuple& b);
MatrixTuple direct_sum(const std::vector<MatrixTuple>& tuples);

// m-fold direct sum of A with itself, m >= 1.
MatrixTuple ampl(int m, const MatrixTuple& a);

// Coordinatewise conjugate transpose.
MatrixTuple adjoint(const MatrixTuple& a);

// Coordinatewise |A_j| = (A_j^* A_j)^{1/2}, by Hermitian eigendecomposition
// with eigenvalues clamped at zero.
MatrixTuple abs(const MatrixTuple& a);

// Coordinatewise partial isometry Q_j with A_j = Q_j |A_j| and
// null(Q_j) = null(A_j).
MatrixTuple polar_isometry(const MatrixTuple& a);

// Coordinatewise T (I + |T|)^{-1}; every coordinate is a strict contraction.
MatrixTuple b_transform(const MatrixTuple& a);

// Coordinatewise S (I - |S|)^{-1}; rejects coordinates with operator norm
// >= 1 - 1e-10 (the unbounded regime is out of numeric scope).
MatrixTuple inverse_b_transform(const MatrixTuple& s);

// max over coordinates of the spectral norm.
double tuple_norm(const MatrixTuple& a);

// U A U^* for a d x d unitary U.
MatrixTuple conjugate(const MatrixTuple& a, const Matrix& u);

// A restricted to the range of a column isometry V (V^* A_j V).
MatrixTuple restrict_to(const MatrixTuple& a, const Matrix& v);

}  // namespace optuple
