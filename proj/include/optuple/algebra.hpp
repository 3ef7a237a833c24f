#pragma once

#include <cstdint>
#include <functional>

#include "optuple/matrices.hpp"

namespace optuple {

inline constexpr double kDefaultTol = 1e-8;

// Orthonormal basis (trace inner product) of the *-commutant W'(A): all T
// commuting with every A_j and A_j^*.  The span is closed under adjoints.
struct CommutantBasis {
  int dim = 0;                 // ambient d
  std::vector<Matrix> basis;   // orthonormal, spanning W'(A)
  std::vector<double> spectrum;  // singular values of the commutation map

  int size() const { return static_cast<int>(basis.size()); }
};

// Mutually orthogonal Hermitian idempotents summing to the identity; each
// commutes with the whole commutant (the minimal central projections).
struct CentralProjectionSet {
  std::vector<Matrix> projections;
};

// Null space of T -> (T A_j - A_j T, T A_j^* - A_j^* T)_j by eigenvalue
// thresholding of the associated PSD Gram operator; singular values within a
// decade of the cut tol*sigma_max*d raise ToleranceError.
CommutantBasis commutant_basis(const MatrixTuple& a, double tol = kDefaultTol);

// Orthonormal basis of the center Z(W'(A)) = {T in span C : TS = ST for all
// S in C}.
CommutantBasis center_basis(const CommutantBasis& c, double tol = kDefaultTol);

// Minimal central projections of W'(A): spectral projections of a random
// Hermitian center element, eigenvalues clustered at gaps > 10*tol*spread.
// Deterministic given seed; retries with fresh elements up to 8 times.
CentralProjectionSet minimal_central_projections(const MatrixTuple& a,
                                                 double tol = kDefaultTol,
                                                 std::uint64_t seed = 0);
CentralProjectionSet minimal_central_projections(const MatrixTuple& a,
                                                 const CommutantBasis& commutant,
                                                 double tol, std::uint64_t seed);

bool is_irreducible(const MatrixTuple& a, double tol = kDefaultTol);
bool is_factor(const MatrixTuple& a, double tol = kDefaultTol);

// True iff the Hermitian idempotent P commutes with every coordinate and its
// adjoint.  P failing P^2 = P = P^* raises InputError.
bool reduces(const MatrixTuple& a, const Matrix& p, double tol = kDefaultTol);

// Orthonormal basis of the range of a Hermitian projection (rank = trace).
Matrix range_basis(const Matrix& projection, double tol = kDefaultTol);

// Frobenius distance of the orthogonal projectors onto two operator spans;
// small iff the spans coincide.
double span_distance(const std::vector<Matrix>& a, const std::vector<Matrix>& b);

// The intertwiner space Hom(from, to) = {X : X from_j = to_j X, also for
// adjoints}, X of shape to.dim x from.dim.  With from == to this is the
// commutant.  The Gram operator acts on vec(X); its null space is the
// intertwiner space.
Matrix intertwiner_gram(const MatrixTuple& from, const MatrixTuple& to);
double intertwiner_residual(const MatrixTuple& from, const MatrixTuple& to,
                            const Matrix& x);
std::vector<Matrix> intertwiner_basis(const MatrixTuple& from,
                                      const MatrixTuple& to, double tol);

namespace detail {

struct NullSpace {
  std::vector<Eigen::VectorXcd> basis;
  std::vector<double> spectrum;  // refined singular values, ascending
};

// Null space of a linear map given through its PSD Gram operator, with the
// low end of the spectrum re-evaluated by the exact residual of the map
// (squaring through the Gram alone loses half the digits).  The rank cut is
// tol * max(sigma_max, ref_scale) * scale_dim; ref_scale keeps the cut
// meaningful when the whole map vanishes (everything commutes).  A singular
// value within a decade of the cut raises ToleranceError.
NullSpace gram_null_space(
    const Matrix& gram, double tol, int scale_dim, double ref_scale,
    const std::function<double(const Eigen::VectorXcd&)>& residual,
    const char* what);

}  // namespace detail

}  // namespace optuple
