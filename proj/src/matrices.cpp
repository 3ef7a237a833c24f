#include "optuple/matrices.hpp"

#include <atomic>
#include <cmath>

namespace optuple {

namespace {

std::atomic<int> g_max_dim{256};

void check_finite(const Matrix& m) {
  if (!m.allFinite()) throw InputError("matrix has NaN or Inf entries");
}

// Hermitian square root with eigenvalue clamping at zero.
Matrix psd_sqrt(const Matrix& gram) {
  Matrix h = (gram + gram.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
  Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

// Largest singular value via the Gram matrix.
double spectral_norm(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  Matrix gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Matrix> es((gram + gram.adjoint()) / 2.0);
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

}  // namespace

int max_tuple_dim() { return g_max_dim.load(); }

void set_max_tuple_dim(int d) {
  if (d < 0) throw InputError("max dimension must be >= 0");
  g_max_dim.store(d);
}

MatrixTuple::MatrixTuple(int n, int dim) : dim_(dim) {
  if (n < 1) throw InputError("tuple length must be >= 1");
  if (dim < 0 || dim > max_tuple_dim())
    throw InputError("tuple dimension outside 0.." + std::to_string(max_tuple_dim()));
  entries_.assign(n, Matrix::Zero(dim, dim));
}

MatrixTuple::MatrixTuple(std::vector<Matrix> entries) {
  if (entries.empty()) throw InputError("tuple length must be >= 1");
  dim_ = static_cast<int>(entries.front().rows());
  if (dim_ > max_tuple_dim())
    throw InputError("tuple dimension outside 0.." + std::to_string(max_tuple_dim()));
  for (const auto& m : entries) {
    if (m.rows() != dim_ || m.cols() != dim_)
      throw InputError("tuple coordinates must share one square dimension");
    check_finite(m);
  }
  entries_ = std::move(entries);
}

double MatrixTuple::frobenius_norm() const {
  double acc = 0.0;
  for (const auto& m : entries_) acc += m.squaredNorm();
  return std::sqrt(acc);
}

MatrixTuple direct_sum(const MatrixTuple& a, const MatrixTuple& b) {
  if (a.length() != b.length())
    throw InputError("direct sum of tuples with different lengths");
  std::vector<Matrix> out;
  out.reserve(a.length());
  int d = a.dim() + b.dim();
  for (int j = 0; j < a.length(); ++j) {
    Matrix m = Matrix::Zero(d, d);
    m.topLeftCorner(a.dim(), a.dim()) = a[j];
    m.bottomRightCorner(b.dim(), b.dim()) = b[j];
    out.push_back(std::move(m));
  }
  return MatrixTuple(std::move(out));
}

MatrixTuple direct_sum(const std::vector<MatrixTuple>& tuples) {
  if (tuples.empty()) throw PreconditionError("direct sum of an empty family");
  MatrixTuple acc = tuples.front();
  for (std::size_t i = 1; i < tuples.size(); ++i) acc = direct_sum(acc, tuples[i]);
  return acc;
}

MatrixTuple ampl(int m, const MatrixTuple& a) {
  if (m < 1) throw PreconditionError("amplification factor must be >= 1");
  MatrixTuple acc = a;
  for (int i = 1; i < m; ++i) acc = direct_sum(acc, a);
  return acc;
}

MatrixTuple adjoint(const MatrixTuple& a) {
  std::vector<Matrix> out;
  out.reserve(a.length());
  for (const auto& m : a.entries()) out.push_back(m.adjoint());
  return MatrixTuple(std::move(out));
}

MatrixTuple abs(const MatrixTuple& a) {
  std::vector<Matrix> out;
  out.reserve(a.length());
  for (const auto& m : a.entries()) out.push_back(psd_sqrt(m.adjoint() * m));
  return MatrixTuple(std::move(out));
}

MatrixTuple polar_isometry(const MatrixTuple& a) {
  std::vector<Matrix> out;
  out.reserve(a.length());
  for (const auto& m : a.entries()) {
    if (m.rows() == 0) {
      out.push_back(m);
      continue;
    }
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    double thr = sv.size() ? sv(0) * m.rows() * 1e-14 : 0.0;
    Matrix q = Matrix::Zero(m.rows(), m.cols());
    for (int k = 0; k < sv.size(); ++k)
      if (sv(k) > thr)
        q += svd.matrixU().col(k) * svd.matrixV().col(k).adjoint();
    out.push_back(std::move(q));
  }
  return MatrixTuple(std::move(out));
}

MatrixTuple b_transform(const MatrixTuple& a) {
  std::vector<Matrix> out;
  out.reserve(a.length());
  for (const auto& m : a.entries()) {
    if (m.rows() == 0) {
      out.push_back(m);
      continue;
    }
    Matrix gram = m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<Matrix> es((gram + gram.adjoint()) / 2.0);
    if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
    Eigen::VectorXd s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    Eigen::VectorXd inv = (s.array() + 1.0).inverse();
    out.push_back(m * es.eigenvectors() * inv.asDiagonal() *
                  es.eigenvectors().adjoint());
  }
  return MatrixTuple(std::move(out));
}

MatrixTuple inverse_b_transform(const MatrixTuple& s) {
  std::vector<Matrix> out;
  out.reserve(s.length());
  for (const auto& m : s.entries()) {
    if (m.rows() == 0) {
      out.push_back(m);
      continue;
    }
    double norm = spectral_norm(m);
    if (norm >= 1.0 - 1e-10)
      throw DomainError("inverse B-transform requires operator norm < 1, got " +
                        std::to_string(norm));
    Matrix gram = m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<Matrix> es((gram + gram.adjoint()) / 2.0);
    if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
    Eigen::VectorXd sv = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    Eigen::VectorXd inv = (1.0 - sv.array()).inverse();
    out.push_back(m * es.eigenvectors() * inv.asDiagonal() *
                  es.eigenvectors().adjoint());
  }
  return MatrixTuple(std::move(out));
}

double tuple_norm(const MatrixTuple& a) {
  double norm = 0.0;
  for (const auto& m : a.entries()) norm = std::max(norm, spectral_norm(m));
  return norm;
}

MatrixTuple conjugate(const MatrixTuple& a, const Matrix& u) {
  std::vector<Matrix> out;
  out.reserve(a.length());
  for (const auto& m : a.entries()) out.push_back(u * m * u.adjoint());
  return MatrixTuple(std::move(out));
}

MatrixTuple restrict_to(const MatrixTuple& a, const Matrix& v) {
  std::vector<Matrix> out;
  out.reserve(a.length());
  for (const auto& m : a.entries()) out.push_back(v.adjoint() * m * v);
  return MatrixTuple(std::move(out));
}

}  // namespace optuple
