#pragma once

#include <random>

#include "optuple/algebra.hpp"
#include "optuple/decomp.hpp"

namespace optuple::testing {

inline Matrix random_matrix(int d, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = scale * Complex(gauss(rng), gauss(rng));
  return m;
}

inline Matrix random_unitary(int d, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(d, rng));
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    Complex diag = r(i, i);
    q.col(i) *= diag == Complex(0, 0) ? 1.0 : diag / std::abs(diag);
  }
  return q;
}

inline MatrixTuple random_tuple(int n, int d, std::mt19937_64& rng,
                                double scale = 1.0) {
  std::vector<Matrix> entries;
  for (int j = 0; j < n; ++j) entries.push_back(random_matrix(d, rng, scale));
  return MatrixTuple(std::move(entries));
}

// Random irreducible tuple (a Gaussian draw, re-drawn in the unlikely
// reducible case).
inline MatrixTuple random_atom(int n, int d, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 32; ++attempt) {
    MatrixTuple a = random_tuple(n, d, rng);
    if (d == 1 || is_irreducible(a)) return a;
  }
  throw Error("failed to draw an irreducible tuple");
}

struct Planted {
  MatrixTuple tuple;           // U (sum of mult copies of atoms) U^*
  std::vector<MatrixTuple> atoms;
  std::vector<int> mults;
};

// Pairwise inequivalent atoms with multiplicities, block-assembled and
// conjugated by a Haar unitary.
inline Planted make_planted(int n, const std::vector<int>& atom_dims,
                            const std::vector<int>& mults, std::mt19937_64& rng) {
  Planted p;
  for (std::size_t i = 0; i < atom_dims.size(); ++i) {
    for (int attempt = 0; attempt < 32; ++attempt) {
      MatrixTuple cand = random_atom(n, atom_dims[i], rng);
      bool fresh = true;
      for (const auto& prev : p.atoms)
        if (prev.dim() == cand.dim() && atoms_equivalent(prev, cand, 1e-8))
          fresh = false;
      if (fresh) {
        p.atoms.push_back(std::move(cand));
        break;
      }
    }
  }
  p.mults = mults;
  std::vector<MatrixTuple> summands;
  for (std::size_t i = 0; i < p.atoms.size(); ++i)
    summands.push_back(ampl(mults[i], p.atoms[i]));
  MatrixTuple sum = direct_sum(summands);
  p.tuple = conjugate(sum, random_unitary(sum.dim(), rng));
  return p;
}

}  // namespace optuple::testing
