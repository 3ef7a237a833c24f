#include "optuple/decomp.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <random>
#include <sstream>

#include "optuple/json_io.hpp"

namespace optuple {

namespace {

constexpr int kRetries = 8;

double round_to(double x, double unit) {
  double r = std::round(x / unit) * unit;
  return r == 0.0 ? 0.0 : r;  // normalize -0
}

std::vector<Matrix> generators(const MatrixTuple& a) {
  std::vector<Matrix> gens;
  gens.reserve(2 * a.length());
  for (const auto& m : a.entries()) gens.push_back(m);
  for (const auto& m : a.entries()) gens.push_back(m.adjoint());
  return gens;
}

// Emits tr(prefix * w) for every word w of exactly `depth` generators, in
// lexicographic generator order.
void emit_level(const std::vector<Matrix>& gens, const Matrix& prefix, int depth,
                std::vector<Complex>& out) {
  for (const auto& g : gens) {
    if (depth == 1) {
      out.push_back((prefix * g).trace());
    } else {
      emit_level(gens, prefix * g, depth - 1, out);
    }
  }
}

bool key_close(const std::vector<Complex>& a, const std::vector<Complex>& b,
               double tol, double scale) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol * (1.0 + scale)) return false;
  return true;
}

bool key_lex_less(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return a.size() < b.size();
}

}  // namespace

std::vector<Complex> invariant_key(const MatrixTuple& a, double rounding,
                                   int max_len) {
  const int d = a.dim();
  std::vector<Complex> out;
  if (d == 0) return out;
  const int len = std::min(2 * d * d, max_len);
  auto gens = generators(a);
  Matrix id = Matrix::Identity(d, d);
  for (int l = 1; l <= len; ++l) emit_level(gens, id, l, out);
  for (auto& c : out)
    c = Complex(round_to(c.real(), rounding), round_to(c.imag(), rounding));
  return out;
}

std::string key_bucket_string(const std::vector<Complex>& key) {
  std::ostringstream os;
  os.precision(17);
  os << "n" << key.size();
  for (const auto& c : key) os << "|" << c.real() << "," << c.imag();
  return os.str();
}

namespace {

// One attempt at extracting the atom of an isotypic block: spectral
// projection of a minimal eigenvalue cluster of a random Hermitian
// commutant element.  All clusters must share one size that divides the
// block dimension.
struct AtomExtraction {
  MatrixTuple atom;
  int multiplicity;
};

std::optional<AtomExtraction> try_extract_atom(const MatrixTuple& block,
                                               const CommutantBasis& comm,
                                               double tol, std::mt19937_64& rng) {
  const int r = block.dim();
  const int c = comm.size();
  const int mult = static_cast<int>(std::lround(std::sqrt(double(c))));
  if (mult * mult != c) return std::nullopt;
  if (r % mult != 0) return std::nullopt;
  const int adim = r / mult;

  if (mult == 1)
    return AtomExtraction{block, 1};

  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix h = Matrix::Zero(r, r);
  for (const auto& b : comm.basis) h += Complex(gauss(rng), gauss(rng)) * b;
  h = (h + h.adjoint()) / 2.0;

  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
  Eigen::VectorXd vals = es.eigenvalues();
  double spread = vals(r - 1) - vals(0);
  if (spread <= 0.0) return std::nullopt;

  std::vector<int> starts{0};
  for (int i = 1; i < r; ++i)
    if (vals(i) - vals(i - 1) > 10.0 * tol * spread) starts.push_back(i);
  if (static_cast<int>(starts.size()) != mult) return std::nullopt;
  starts.push_back(r);
  for (std::size_t k = 0; k + 1 < starts.size(); ++k)
    if (starts[k + 1] - starts[k] != adim) return std::nullopt;

  Matrix q = es.eigenvectors().leftCols(adim);
  return AtomExtraction{restrict_to(block, q), mult};
}

// Orthonormal intertwiners from the atom into the block, stacked into the
// block isometry (copy-major).  Schur: X^*Y is a scalar multiple of the
// identity for intertwiners between copies of one irreducible.
Matrix block_isometry(const MatrixTuple& block, const MatrixTuple& atom,
                      int mult, double tol) {
  const int r = block.dim();
  const int a = atom.dim();
  auto xs = intertwiner_basis(atom, block, tol);
  if (static_cast<int>(xs.size()) != mult)
    throw ConsistencyError("intertwiner space dimension " +
                           std::to_string(xs.size()) + " != multiplicity " +
                           std::to_string(mult));
  Matrix v(r, mult * a);
  for (int p = 0; p < mult; ++p)
    v.middleCols(p * a, a) = xs[p] * std::sqrt(double(a));

  // Polar correction to the closest exact isometry.
  Matrix gram = v.adjoint() * v;
  Eigen::SelfAdjointEigenSolver<Matrix> es((gram + gram.adjoint()) / 2.0);
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
  Eigen::VectorXd inv_sqrt = es.eigenvalues().cwiseMax(1e-30).cwiseSqrt().cwiseInverse();
  return v * es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix identity_kron(int m, const Matrix& x) {
  Matrix out = Matrix::Zero(m * x.rows(), m * x.cols());
  for (int k = 0; k < m; ++k)
    out.block(k * x.rows(), k * x.cols(), x.rows(), x.cols()) = x;
  return out;
}

}  // namespace

DecompositionReport isotypic_decomposition(const MatrixTuple& a, double tol,
                                           std::uint64_t seed) {
  DecompositionReport report;
  const int d = a.dim();
  if (d == 0) return report;

  CommutantBasis comm = commutant_basis(a, tol);
  CentralProjectionSet centrals = minimal_central_projections(a, comm, tol, seed);

  std::mt19937_64 rng(seed * 0xd1342543de82ef95ULL + 0xaf251af3b0f025b5ULL);
  const bool single_block = centrals.projections.size() == 1;
  int mult_square_sum = 0;
  int dim_sum = 0;
  for (const auto& p : centrals.projections) {
    Matrix w = single_block ? Matrix::Identity(d, d) : range_basis(p, tol);
    MatrixTuple block = single_block ? a : restrict_to(a, w);
    CommutantBasis block_comm = single_block ? comm : commutant_basis(block, tol);

    std::optional<AtomExtraction> ext;
    for (int attempt = 0; attempt < kRetries && !ext; ++attempt)
      ext = try_extract_atom(block, block_comm, tol, rng);
    if (!ext)
      throw ToleranceError(
          "atom extraction: eigenvalue clusters of the block commutant stayed "
          "inconsistent after retries",
          block_comm.spectrum);
    if (ext->multiplicity > 1 && !is_irreducible(ext->atom, tol))
      throw ConsistencyError("extracted block representative is reducible");

    DecompositionBlock b;
    b.multiplicity = ext->multiplicity;
    b.atom = std::move(ext->atom);
    b.isometry = b.multiplicity == 1
                     ? w
                     : Matrix(w * block_isometry(block, b.atom, b.multiplicity, tol));
    mult_square_sum += b.multiplicity * b.multiplicity;
    dim_sum += b.multiplicity * b.atom.dim();
    report.blocks.push_back(std::move(b));
  }

  if (dim_sum != d)
    throw ConsistencyError("isotypic ranges do not fill the space");
  if (mult_square_sum != comm.size())
    throw ConsistencyError(
        "commutant dimension " + std::to_string(comm.size()) +
        " != sum of squared multiplicities " + std::to_string(mult_square_sum) +
        " (tol too loose)");

  // Deterministic block order: atom dim asc, multiplicity desc, key lex.
  std::vector<std::vector<Complex>> keys;
  keys.reserve(report.blocks.size());
  std::vector<int> order(report.blocks.size());
  for (std::size_t i = 0; i < report.blocks.size(); ++i) {
    keys.push_back(invariant_key(report.blocks[i].atom, tol));
    order[i] = static_cast<int>(i);
  }
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const auto& bx = report.blocks[x];
    const auto& by = report.blocks[y];
    if (bx.atom.dim() != by.atom.dim()) return bx.atom.dim() < by.atom.dim();
    if (bx.multiplicity != by.multiplicity) return bx.multiplicity > by.multiplicity;
    return key_lex_less(keys[x], keys[y]);
  });
  std::vector<DecompositionBlock> sorted;
  sorted.reserve(report.blocks.size());
  for (int i : order) sorted.push_back(std::move(report.blocks[i]));
  report.blocks = std::move(sorted);

  // Atoms of distinct isotypic blocks are pairwise inequivalent.
  for (std::size_t i = 0; i < report.blocks.size(); ++i)
    for (std::size_t k = i + 1; k < report.blocks.size(); ++k)
      if (report.blocks[i].atom.dim() == report.blocks[k].atom.dim() &&
          atoms_equivalent(report.blocks[i].atom, report.blocks[k].atom, tol))
        throw ConsistencyError("two isotypic blocks share one atom (tol too loose)");

  double residual = 0.0;
  for (int j = 0; j < a.length(); ++j) {
    Matrix rec = Matrix::Zero(d, d);
    for (const auto& b : report.blocks)
      rec += b.isometry * identity_kron(b.multiplicity, b.atom[j]) *
             b.isometry.adjoint();
    residual = std::max(residual, (a[j] - rec).norm());
  }
  report.residual = residual;
  if (residual > tol * (1.0 + a.frobenius_norm()))
    throw ConsistencyError("reconstruction residual " + std::to_string(residual) +
                           " above tolerance");
  return report;
}

bool atoms_equivalent(const MatrixTuple& a, const MatrixTuple& b, double tol) {
  if (a.length() != b.length())
    throw PreconditionError("equivalence of tuples with different lengths");
  if (a.dim() != b.dim()) return false;
  if (a.dim() == 0) return true;
  const int d = a.dim();
  auto ts = intertwiner_basis(a, b, tol);
  if (ts.empty()) return false;
  // Schur: any nonzero intertwiner between irreducibles is a scalar multiple
  // of a unitary.
  const Matrix& t = ts.front();
  double scale = std::sqrt(t.squaredNorm() / d);
  if (scale < tol) return false;
  Matrix u = t / scale;
  if ((u.adjoint() * u - Matrix::Identity(d, d)).norm() > 10.0 * tol * d)
    return false;
  for (int j = 0; j < a.length(); ++j)
    if ((u * a[j] - b[j] * u).norm() > 10.0 * tol * (1.0 + b[j].norm()))
      return false;
  return true;
}

bool are_equivalent(const MatrixTuple& a, const MatrixTuple& b, double tol) {
  if (a.length() != b.length())
    throw PreconditionError("equivalence of tuples with different lengths");
  if (a.dim() != b.dim()) return false;
  if (a.dim() == 0) return true;

  // Fast reject on the trace-word fingerprint; the margin bounds the size of
  // any word value so equivalent tuples are never rejected here.
  double scale = std::max(a.frobenius_norm(), b.frobenius_norm());
  double margin = a.dim() * std::pow(1.0 + scale, 4.0);
  auto ka = invariant_key(a, tol);
  auto kb = invariant_key(b, tol);
  if (!key_close(ka, kb, 100.0 * tol, margin)) return false;

  DecompositionReport ra = isotypic_decomposition(a, tol, 0);
  DecompositionReport rb = isotypic_decomposition(b, tol, 0);
  if (ra.blocks.size() != rb.blocks.size()) return false;

  std::vector<bool> used(rb.blocks.size(), false);
  for (const auto& ba : ra.blocks) {
    bool matched = false;
    for (std::size_t k = 0; k < rb.blocks.size(); ++k) {
      if (used[k]) continue;
      const auto& bb = rb.blocks[k];
      if (bb.atom.dim() != ba.atom.dim() || bb.multiplicity != ba.multiplicity)
        continue;
      if (atoms_equivalent(ba.atom, bb.atom, tol)) {
        used[k] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

AtomRegistry AtomRegistry::open(const std::string& dir) {
  AtomRegistry reg;
  reg.dir_ = dir;
  std::filesystem::create_directories(std::filesystem::path(dir) / "atoms");
  reg.reload();
  return reg;
}

void AtomRegistry::reload() {
  if (dir_.empty()) return;
  entries_.clear();
  buckets_.clear();
  next_id_ = 1;
  auto index_path = std::filesystem::path(dir_) / "index.json";
  if (!std::filesystem::exists(index_path)) return;
  Json index = load_json_file(index_path.string());
  next_id_ = index.value("next", 1);
  for (const auto& one : index.at("atoms")) {
    Entry e;
    e.id = one.at("id").get<std::string>();
    e.representative = tuple_from_json(
        load_json_file((std::filesystem::path(dir_) / "atoms" / (e.id + ".json"))
                           .string()));
    e.key = invariant_key(e.representative, kKeyRounding);
    buckets_[key_bucket_string(e.key)].push_back(e.id);
    entries_[e.id] = std::move(e);
  }
}

namespace {

// Exclusive advisory lock on <dir>/.lock for the lifetime of the object.
class DirLock {
public:
  explicit DirLock(const std::string& dir) {
    if (dir.empty()) return;
    std::string path = (std::filesystem::path(dir) / ".lock").string();
    fd_ = ::open(path.c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ >= 0) ::flock(fd_, LOCK_EX);
  }
  ~DirLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }

private:
  int fd_ = -1;
};

}  // namespace

void AtomRegistry::persist(const Entry& entry) {
  if (dir_.empty()) return;
  save_json_file(
      (std::filesystem::path(dir_) / "atoms" / (entry.id + ".json")).string(),
      tuple_to_json(entry.representative));
  Json atoms = Json::array();
  for (const auto& [id, e] : entries_) {
    Json one;
    one["id"] = id;
    one["n"] = e.representative.length();
    one["dim"] = e.representative.dim();
    atoms.push_back(std::move(one));
  }
  Json index;
  index["atoms"] = std::move(atoms);
  index["next"] = next_id_;
  save_json_file((std::filesystem::path(dir_) / "index.json").string(), index);
}

const AtomRegistry::Entry* AtomRegistry::find(const std::string& id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : &it->second;
}

PrimeLabel AtomRegistry::lookup_or_register(const MatrixTuple& atom, double tol) {
  auto key = invariant_key(atom, kKeyRounding);
  auto bucket = buckets_.find(key_bucket_string(key));
  if (bucket != buckets_.end()) {
    for (const auto& id : bucket->second) {
      const Entry& e = entries_.at(id);
      if (e.representative.dim() == atom.dim() &&
          e.representative.length() == atom.length() &&
          are_equivalent(e.representative, atom, tol))
        return PrimeLabel::atom(id, atom.dim());
    }
  }
  // Rounding may split one atom across adjacent buckets; scan same-shape
  // entries before registering a duplicate.
  for (const auto& [id, e] : entries_) {
    if (e.representative.dim() != atom.dim() ||
        e.representative.length() != atom.length())
      continue;
    if (are_equivalent(e.representative, atom, tol))
      return PrimeLabel::atom(id, atom.dim());
  }

  DirLock lock(dir_);
  if (!dir_.empty()) {
    reload();  // pick up concurrent registrations
    bucket = buckets_.find(key_bucket_string(key));
    if (bucket != buckets_.end()) {
      for (const auto& id : bucket->second) {
        const Entry& e = entries_.at(id);
        if (e.representative.dim() == atom.dim() &&
            e.representative.length() == atom.length() &&
            are_equivalent(e.representative, atom, tol))
          return PrimeLabel::atom(id, atom.dim());
      }
    }
  }

  std::ostringstream id;
  id << "atom-" << std::setw(6) << std::setfill('0') << next_id_++;
  Entry e{id.str(), atom, key};
  buckets_[key_bucket_string(key)].push_back(e.id);
  entries_[e.id] = e;
  persist(e);
  return PrimeLabel::atom(e.id, atom.dim());
}

TupleClass classify(const MatrixTuple& a, AtomRegistry& registry, double tol,
                    std::uint64_t seed) {
  DecompositionReport report = isotypic_decomposition(a, tol, seed);
  TupleClass out;
  for (const auto& b : report.blocks) {
    PrimeLabel label = registry.lookup_or_register(b.atom, tol);
    out.set(label, out.at(label) + ExtScalar::integer(b.multiplicity));
  }
  return out;
}

IdealSplit ideal_split(const MatrixTuple& a, const AtomPredicate& predicate,
                       double tol, std::uint64_t seed) {
  DecompositionReport report = isotypic_decomposition(a, tol, seed);
  const int d = a.dim();
  int part_cols = 0;
  for (const auto& b : report.blocks)
    if (predicate(b.atom)) part_cols += static_cast<int>(b.isometry.cols());

  Matrix vpart(d, part_cols);
  Matrix vcomp(d, d - part_cols);
  int ip = 0, ic = 0;
  for (const auto& b : report.blocks) {
    int w = static_cast<int>(b.isometry.cols());
    if (predicate(b.atom)) {
      vpart.middleCols(ip, w) = b.isometry;
      ip += w;
    } else {
      vcomp.middleCols(ic, w) = b.isometry;
      ic += w;
    }
  }

  IdealSplit split{restrict_to(a, vpart), vpart * vpart.adjoint(),
                   restrict_to(a, vcomp), vcomp * vcomp.adjoint()};
  if (d > 0 && !reduces(a, split.part_projection, 100.0 * tol * (1.0 + d)))
    throw ConsistencyError("ideal part projection is not reducing");
  return split;
}

AtomPredicate jointly_normal_predicate() {
  return [](const MatrixTuple& atom) { return atom.dim() == 1; };
}

AtomPredicate separately_normal_predicate(double tol) {
  return [tol](const MatrixTuple& atom) {
    for (const auto& m : atom.entries()) {
      double scale = 1.0 + m.squaredNorm();
      if ((m * m.adjoint() - m.adjoint() * m).norm() > tol * scale) return false;
    }
    return true;
  };
}

AtomPredicate norm_at_most_predicate(double r, double tol) {
  return [r, tol](const MatrixTuple& atom) {
    return tuple_norm(atom) <= r + tol * (1.0 + r);
  };
}

AtomPredicate predicate_by_name(const std::string& name, double tol) {
  if (name == "jointly-normal") return jointly_normal_predicate();
  if (name == "separately-normal") return separately_normal_predicate(tol);
  if (name.rfind("norm<=", 0) == 0) {
    double r;
    try {
      r = std::stod(name.substr(6));
    } catch (const std::exception&) {
      throw InputError("malformed norm bound in ideal name: " + name);
    }
    if (r < 0) throw InputError("norm bound must be non-negative");
    return norm_at_most_predicate(r, tol);
  }
  throw InputError("unknown ideal: " + name +
                   " (expected jointly-normal, separately-normal or norm<=R)");
}

ContractionSplit contraction_parts(const MatrixTuple& a, double tol,
                                   std::uint64_t seed) {
  double norm = tuple_norm(a);
  if (norm > 1.0 + tol * 10.0)
    throw PreconditionError("contraction split needs a contraction, norm = " +
                            std::to_string(norm));
  auto attains = [tol](const MatrixTuple& atom) {
    return tuple_norm(atom) >= 1.0 - 100.0 * tol;
  };
  IdealSplit split = ideal_split(
      a, [&](const MatrixTuple& atom) { return !attains(atom); }, tol, seed);

  ContractionSplit out{split.part, split.part_projection,
                       MatrixTuple(a.length(), 0), split.complement,
                       split.complement_projection};
  // In finite dimension the norm of every nontrivial tuple is attained, so
  // the "norm one, never attained" part is empty by construction.
  return out;
}

}  // namespace optuple
