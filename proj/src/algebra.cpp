#include "optuple/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#ifdef EIGEN_USE_LAPACKE
#include <lapacke.h>
#endif

namespace optuple {

namespace {

constexpr int kRetries = 8;

// Full Hermitian eigendecomposition, ascending eigenvalues.  The
// divide-and-conquer driver is an order of magnitude faster than the QR
// driver Eigen binds, which matters for the d^2 x d^2 commutant Grams.
void hermitian_eig(const Matrix& h, Eigen::VectorXd& values, Matrix& vectors) {
#ifdef EIGEN_USE_LAPACKE
  const int n = static_cast<int>(h.rows());
  if (n > 64) {
    vectors = h;
    values.resize(n);
    lapack_int info = LAPACKE_zheevd(
        LAPACK_COL_MAJOR, 'V', 'L', n,
        reinterpret_cast<lapack_complex_double*>(vectors.data()), n,
        values.data());
    if (info == 0) return;
  }
#endif
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
  values = es.eigenvalues();
  vectors = es.eigenvectors();
}

Matrix kron(const Matrix& p, const Matrix& q) {
  Matrix out(p.rows() * q.rows(), p.cols() * q.cols());
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j)
      out.block(i * q.rows(), j * q.cols(), q.rows(), q.cols()) = p(i, j) * q;
  return out;
}

Matrix unvec(const Eigen::VectorXcd& v, int rows, int cols) {
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix random_hermitian_in_span(const std::vector<Matrix>& basis,
                                std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g = Matrix::Zero(basis.front().rows(), basis.front().cols());
  for (const auto& b : basis) g += Complex(gauss(rng), gauss(rng)) * b;
  return (g + g.adjoint()) / 2.0;
}

}  // namespace

namespace detail {

NullSpace gram_null_space(
    const Matrix& gram, double tol, int scale_dim, double ref_scale,
    const std::function<double(const Eigen::VectorXcd&)>& residual,
    const char* what) {
  const int n = static_cast<int>(gram.rows());
  NullSpace out;
  if (n == 0) return out;
  Eigen::VectorXd values;
  Matrix vectors;
  hermitian_eig((gram + gram.adjoint()) / 2.0, values, vectors);

  const double sigma_max = std::sqrt(std::max(0.0, values.maxCoeff()));
  const double thr = tol * std::max(sigma_max, ref_scale) * std::max(1, scale_dim);
  std::vector<double> sigmas(n);
  for (int i = 0; i < n; ++i) {
    double sigma = std::sqrt(std::max(0.0, values(i)));
    if (sigma <= 100.0 * thr) sigma = residual(vectors.col(i));
    sigmas[i] = sigma;
  }
  out.spectrum = sigmas;
  std::sort(out.spectrum.begin(), out.spectrum.end());
  for (double sigma : out.spectrum) {
    if (sigma > thr * 0.1 && sigma < thr * 10.0) {
      std::ostringstream os;
      os << what << ": singular value " << sigma
         << " within a decade of the rank cut " << thr
         << "; tighten or loosen tol";
      throw ToleranceError(os.str(), out.spectrum);
    }
  }
  for (int i = 0; i < n; ++i)
    if (sigmas[i] <= thr) out.basis.push_back(vectors.col(i));
  return out;
}

}  // namespace detail

namespace {

// Exact stacked map for modest sizes: rows hold the commutation defects of
// every unit coordinate.  An SVD of this stack decides ranks without the
// precision loss of the squared Gram, so the null spans come out at working
// accuracy.
detail::NullSpace stacked_null_space(const MatrixTuple& from,
                                     const MatrixTuple& to, double tol,
                                     double ref_scale, const char* what) {
  const int a = from.dim();
  const int r = to.dim();
  const int cols = a * r;
  const int n = from.length();
  Matrix stack(2 * n * cols, cols);
  for (int col = 0; col < cols; ++col) {
    Matrix e = Matrix::Zero(r, a);
    e(col % r, col / r) = 1.0;
    for (int j = 0; j < n; ++j) {
      Matrix c1 = e * from[j] - to[j] * e;
      Matrix c2 = e * from[j].adjoint() - to[j].adjoint() * e;
      stack.col(col).segment(2 * j * cols, cols) =
          Eigen::Map<Eigen::VectorXcd>(c1.data(), cols);
      stack.col(col).segment((2 * j + 1) * cols, cols) =
          Eigen::Map<Eigen::VectorXcd>(c2.data(), cols);
    }
  }
  Eigen::JacobiSVD<Matrix> svd(stack, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();  // descending
  const double sigma_max = sv.size() ? sv(0) : 0.0;
  const double thr =
      tol * std::max(sigma_max, ref_scale) * std::max(1, std::max(a, r));

  detail::NullSpace out;
  out.spectrum.assign(sv.data(), sv.data() + sv.size());
  std::sort(out.spectrum.begin(), out.spectrum.end());
  for (double sigma : out.spectrum) {
    if (sigma > thr * 0.1 && sigma < thr * 10.0) {
      std::ostringstream os;
      os << what << ": singular value " << sigma
         << " within a decade of the rank cut " << thr
         << "; tighten or loosen tol";
      throw ToleranceError(os.str(), out.spectrum);
    }
  }
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) <= thr) out.basis.push_back(svd.matrixV().col(i));
  return out;
}

constexpr int kStackedSvdLimit = 256;  // columns up to this size use the SVD

}  // namespace

Matrix intertwiner_gram(const MatrixTuple& from, const MatrixTuple& to) {
  if (from.length() != to.length())
    throw PreconditionError("intertwiners need tuples of equal length");
  const int a = from.dim();
  const int r = to.dim();
  const Matrix ia = Matrix::Identity(a, a);
  const Matrix ir = Matrix::Identity(r, r);
  Matrix gram = Matrix::Zero(a * r, a * r);
  for (int j = 0; j < from.length(); ++j) {
    const Matrix& f = from[j];
    const Matrix& t = to[j];
    Matrix fc = f.conjugate();
    Matrix ft = f.transpose();
    Matrix ta = t.adjoint();
    gram += kron(fc * ft + ft * fc, ir);
    gram += kron(ia, ta * t + t * ta);
    gram -= 2.0 * kron(fc, t);
    gram -= 2.0 * kron(ft, ta);
  }
  return gram;
}

double intertwiner_residual(const MatrixTuple& from, const MatrixTuple& to,
                            const Matrix& x) {
  double acc = 0.0;
  for (int j = 0; j < from.length(); ++j) {
    acc += (x * from[j] - to[j] * x).squaredNorm();
    acc += (x * from[j].adjoint() - to[j].adjoint() * x).squaredNorm();
  }
  return std::sqrt(acc);
}

std::vector<Matrix> intertwiner_basis(const MatrixTuple& from,
                                      const MatrixTuple& to, double tol) {
  const int a = from.dim();
  const int r = to.dim();
  if (a == 0 || r == 0) return {};
  double ref = std::sqrt(from.frobenius_norm() * from.frobenius_norm() +
                         to.frobenius_norm() * to.frobenius_norm());
  detail::NullSpace ns;
  if (a * r <= kStackedSvdLimit) {
    ns = stacked_null_space(from, to, tol, ref, "intertwiner");
  } else {
    Matrix gram = intertwiner_gram(from, to);
    auto residual = [&](const Eigen::VectorXcd& v) {
      return intertwiner_residual(from, to, unvec(v, r, a));
    };
    ns = detail::gram_null_space(gram, tol, std::max(a, r), ref, residual,
                                 "intertwiner");
  }
  std::vector<Matrix> out;
  out.reserve(ns.basis.size());
  for (const auto& v : ns.basis) out.push_back(unvec(v, r, a));
  return out;
}

CommutantBasis commutant_basis(const MatrixTuple& a, double tol) {
  const int d = a.dim();
  CommutantBasis out;
  out.dim = d;
  if (d == 0) return out;
  detail::NullSpace ns;
  if (d * d <= kStackedSvdLimit) {
    ns = stacked_null_space(a, a, tol, std::sqrt(2.0) * a.frobenius_norm(),
                            "commutant");
  } else {
    Matrix gram = intertwiner_gram(a, a);
    auto residual = [&](const Eigen::VectorXcd& v) {
      return intertwiner_residual(a, a, unvec(v, d, d));
    };
    ns = detail::gram_null_space(gram, tol, d,
                                 std::sqrt(2.0) * a.frobenius_norm(), residual,
                                 "commutant");
  }
  out.spectrum = std::move(ns.spectrum);
  out.basis.reserve(ns.basis.size());
  for (const auto& v : ns.basis) out.basis.push_back(unvec(v, d, d));
  return out;
}

namespace {

// Exact all-pairs constraint Gram for the center, affordable for small
// commutants: Gram_{kk'} = sum_l <[B_k, B_l], [B_k', B_l]>.
Matrix center_gram_exact(const std::vector<Matrix>& basis) {
  const int c = static_cast<int>(basis.size());
  std::vector<Matrix> comms(static_cast<std::size_t>(c) * c);
  for (int k = 0; k < c; ++k)
    for (int l = 0; l < c; ++l)
      comms[k * c + l] = basis[k] * basis[l] - basis[l] * basis[k];
  Matrix gram = Matrix::Zero(c, c);
  for (int k = 0; k < c; ++k)
    for (int kp = k; kp < c; ++kp) {
      Complex acc = 0.0;
      for (int l = 0; l < c; ++l)
        acc += (comms[k * c + l].adjoint() * comms[kp * c + l]).trace();
      gram(k, kp) = acc;
      gram(kp, k) = std::conj(acc);
    }
  return gram;
}

}  // namespace

CommutantBasis center_basis(const CommutantBasis& c, double tol) {
  CommutantBasis out;
  out.dim = c.dim;
  if (c.size() == 0) return out;
  const int n = c.size();
  const int d = c.dim;

  auto peel = [&](const std::vector<Eigen::VectorXcd>& coeffs) {
    std::vector<Matrix> zs;
    zs.reserve(coeffs.size());
    for (const auto& x : coeffs) {
      Matrix t = Matrix::Zero(d, d);
      for (int k = 0; k < n; ++k) t += x(k) * c.basis[k];
      zs.push_back(std::move(t));
    }
    return zs;
  };

  if (n <= 64) {
    Matrix gram = center_gram_exact(c.basis);
    auto residual = [&](const Eigen::VectorXcd& x) {
      Matrix t = Matrix::Zero(d, d);
      for (int k = 0; k < n; ++k) t += x(k) * c.basis[k];
      double acc = 0.0;
      for (const auto& b : c.basis) acc += (t * b - b * t).squaredNorm();
      return std::sqrt(acc);
    };
    auto ns = detail::gram_null_space(gram, tol, d, 1.0, residual, "center");
    out.spectrum = std::move(ns.spectrum);
    out.basis = peel(ns.basis);
    return out;
  }

  // Large commutant: the center is the joint centralizer of two generic
  // elements of the algebra.  Validated against the full basis below;
  // non-generic draws are retried.
  std::mt19937_64 rng(0x5eedc0de5eedc0deULL);
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    Matrix g1 = random_hermitian_in_span(c.basis, rng);
    Matrix g2 = random_hermitian_in_span(c.basis, rng);
    Matrix stack(2 * d * d, n);
    for (int k = 0; k < n; ++k) {
      Matrix c1 = c.basis[k] * g1 - g1 * c.basis[k];
      Matrix c2 = c.basis[k] * g2 - g2 * c.basis[k];
      stack.col(k).head(d * d) = Eigen::Map<Eigen::VectorXcd>(c1.data(), d * d);
      stack.col(k).tail(d * d) = Eigen::Map<Eigen::VectorXcd>(c2.data(), d * d);
    }
    Matrix gram = stack.adjoint() * stack;
    auto residual = [&](const Eigen::VectorXcd& x) { return (stack * x).norm(); };
    detail::NullSpace ns;
    try {
      ns = detail::gram_null_space(gram, tol, d, std::sqrt(double(n)), residual,
                                   "center");
    } catch (const ToleranceError&) {
      continue;
    }
    auto zs = peel(ns.basis);

    bool valid = true;
    double scale = 0.0;
    for (const auto& b : c.basis) scale = std::max(scale, b.norm());
    for (const auto& z : zs) {
      double acc = 0.0;
      for (const auto& b : c.basis) acc += (z * b - b * z).squaredNorm();
      if (std::sqrt(acc) > tol * d * (1.0 + scale) * 10.0) { valid = false; break; }
    }
    if (valid) {
      out.spectrum = std::move(ns.spectrum);
      out.basis = std::move(zs);
      return out;
    }
  }
  throw ToleranceError("center: generic-element reduction failed to validate", {});
}

CentralProjectionSet minimal_central_projections(const MatrixTuple& a, double tol,
                                                 std::uint64_t seed) {
  return minimal_central_projections(a, commutant_basis(a, tol), tol, seed);
}

CentralProjectionSet minimal_central_projections(const MatrixTuple& a,
                                                 const CommutantBasis& commutant,
                                                 double tol, std::uint64_t seed) {
  CentralProjectionSet out;
  const int d = a.dim();
  if (d == 0) return out;

  CommutantBasis center = center_basis(commutant, tol);
  const int z = center.size();
  if (z == 0) throw ConsistencyError("center of a nontrivial commutant is empty");
  if (z == 1) {
    out.projections.push_back(Matrix::Identity(d, d));
    return out;
  }

  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x6a09e667f3bcc909ULL);
  std::vector<double> last_vals;
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    Matrix h = random_hermitian_in_span(center.basis, rng);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
    Eigen::VectorXd vals = es.eigenvalues();
    last_vals.assign(vals.data(), vals.data() + vals.size());
    double spread = vals(d - 1) - vals(0);
    if (spread <= 0.0) continue;

    std::vector<int> starts{0};
    for (int i = 1; i < d; ++i)
      if (vals(i) - vals(i - 1) > 10.0 * tol * spread) starts.push_back(i);
    if (static_cast<int>(starts.size()) != z) continue;
    starts.push_back(d);

    std::vector<Matrix> projections;
    for (std::size_t k = 0; k + 1 < starts.size(); ++k) {
      int lo = starts[k], hi = starts[k + 1];
      Matrix block = es.eigenvectors().middleCols(lo, hi - lo);
      projections.push_back(block * block.adjoint());
    }

    // Central projections commute with the whole commutant.
    bool central = true;
    for (const auto& p : projections) {
      for (const auto& b : commutant.basis) {
        if ((p * b - b * p).norm() > tol * d * (1.0 + b.norm()) * 10.0) {
          central = false;
          break;
        }
      }
      if (!central) break;
    }
    if (!central) continue;

    out.projections = std::move(projections);
    return out;
  }
  throw ToleranceError(
      "minimal central projections: eigenvalue clustering stayed ambiguous "
      "after retries",
      last_vals);
}

bool is_irreducible(const MatrixTuple& a, double tol) {
  if (a.trivial()) return false;
  return commutant_basis(a, tol).size() == 1;
}

bool is_factor(const MatrixTuple& a, double tol) {
  if (a.trivial()) return false;
  return center_basis(commutant_basis(a, tol), tol).size() == 1;
}

bool reduces(const MatrixTuple& a, const Matrix& p, double tol) {
  if (p.rows() != a.dim() || p.cols() != a.dim())
    throw InputError("projection dimension does not match the tuple");
  double scale = 1.0 + p.norm();
  if ((p - p.adjoint()).norm() > tol * scale || (p * p - p).norm() > tol * scale)
    throw InputError("input is not a Hermitian idempotent at the tolerance");
  for (const auto& m : a.entries()) {
    double mscale = 1.0 + m.norm();
    if ((p * m - m * p).norm() > tol * mscale) return false;
    Matrix ms = m.adjoint();
    if ((p * ms - ms * p).norm() > tol * mscale) return false;
  }
  return true;
}

Matrix range_basis(const Matrix& projection, double tol) {
  (void)tol;
  Eigen::SelfAdjointEigenSolver<Matrix> es((projection + projection.adjoint()) / 2.0);
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
  int rank = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double v = es.eigenvalues()(i);
    if (v > 0.25 && v < 0.75)
      throw ToleranceError("range_basis: eigenvalue far from {0,1}",
                           {es.eigenvalues().data(),
                            es.eigenvalues().data() + es.eigenvalues().size()});
    if (v >= 0.75) ++rank;
  }
  return es.eigenvectors().rightCols(rank);
}

double span_distance(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  // |P_a - P_b|_F^2 = sum of squared residuals of either orthonormal family
  // against the other span; residuals are cancellation-free, so coinciding
  // spans come out at working accuracy.
  auto orthonormalize = [](const std::vector<Matrix>& fam) {
    std::vector<Eigen::VectorXcd> vs;
    for (const auto& m : fam) {
      Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
      for (const auto& u : vs) v -= u.dot(v) * u;
      double n = v.norm();
      if (n > 1e-12) vs.push_back(v / n);
    }
    return vs;
  };
  auto va = orthonormalize(a);
  auto vb = orthonormalize(b);
  auto residual_sq = [](const std::vector<Eigen::VectorXcd>& onto,
                        const std::vector<Eigen::VectorXcd>& from) {
    double acc = 0.0;
    for (const auto& y : from) {
      Eigen::VectorXcd r = y;
      for (const auto& x : onto) r -= x.dot(r) * x;
      acc += r.squaredNorm();
    }
    return acc;
  };
  return std::sqrt(residual_sq(va, vb) + residual_sq(vb, va));
}

}  // namespace optuple
