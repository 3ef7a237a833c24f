#pragma once

#include <functional>
#include <optional>
#include <string>

#include "optuple/algebra.hpp"
#include "optuple/classes.hpp"

namespace optuple {

// One isotypic block: mult copies of an irreducible atom, reached through a
// column isometry onto the isotypic subspace (copy-major column order, so
// A_j ~ V (I_mult (x) atom_j) V^* on the block).
struct DecompositionBlock {
  MatrixTuple atom;
  int multiplicity = 0;
  Matrix isometry;
};

struct DecompositionReport {
  std::vector<DecompositionBlock> blocks;
  double residual = 0.0;
};

// Trace-word fingerprint: traces of all words in {A_j, A_j^*} up to length
// min(2 d^2, max_len) in length-lexicographic order, rounded to `rounding`.
// Invariant under unitary conjugation.
std::vector<Complex> invariant_key(const MatrixTuple& a, double rounding,
                                   int max_len = 4);
std::string key_bucket_string(const std::vector<Complex>& key);

// Prime (isotypic) decomposition of the tuple.  Deterministic given
// (input, tol, seed); cross-checks block dim = mult * atom dim and
// commutant dim = sum of mult^2.
DecompositionReport isotypic_decomposition(const MatrixTuple& a,
                                           double tol = kDefaultTol,
                                           std::uint64_t seed = 0);

// Unitary equivalence of irreducible tuples by the Schur intertwiner test.
bool atoms_equivalent(const MatrixTuple& a, const MatrixTuple& b, double tol);

// Unitary equivalence of arbitrary tuples: key fast-reject, then block
// matching of the two decompositions.
bool are_equivalent(const MatrixTuple& a, const MatrixTuple& b,
                    double tol = kDefaultTol);

// Persistent store of canonical atoms so classes are comparable across runs.
// In-memory by default; open(dir) attaches a directory with layout
// dir/index.json + dir/atoms/<id>.json.  Writes take an exclusive lock on
// dir/.lock and re-read the index first (single-writer contract).
class AtomRegistry {
public:
  struct Entry {
    std::string id;
    MatrixTuple representative;
    std::vector<Complex> key;  // rounded at kKeyRounding
  };

  static constexpr double kKeyRounding = 1e-6;

  AtomRegistry() = default;
  static AtomRegistry open(const std::string& dir);

  // Bucket lookup by rounded key, confirmation by are_equivalent; a miss
  // falls back to scanning same-shape entries before registering anew.
  PrimeLabel lookup_or_register(const MatrixTuple& atom, double tol);

  const Entry* find(const std::string& id) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, Entry>& entries() const { return entries_; }

private:
  void reload();
  void persist(const Entry& entry);

  std::string dir_;  // empty: in-memory only
  std::map<std::string, Entry> entries_;
  std::map<std::string, std::vector<std::string>> buckets_;
  int next_id_ = 1;
};

// Classify a concrete tuple against a registry: the multiplicity function
// over atom labels.  Unitary-conjugation invariant.
TupleClass classify(const MatrixTuple& a, AtomRegistry& registry,
                    double tol = kDefaultTol, std::uint64_t seed = 0);

// Split relative to an ideal given by a unitary-invariant atom predicate:
// part collects the isotypic ranges whose atoms satisfy it.  Projections are
// reducing and central.
struct IdealSplit {
  MatrixTuple part;
  Matrix part_projection;
  MatrixTuple complement;
  Matrix complement_projection;
};

using AtomPredicate = std::function<bool(const MatrixTuple&)>;

IdealSplit ideal_split(const MatrixTuple& a, const AtomPredicate& predicate,
                       double tol = kDefaultTol, std::uint64_t seed = 0);

// Built-in ideals of the splitting calculus.
AtomPredicate jointly_normal_predicate();
AtomPredicate separately_normal_predicate(double tol = kDefaultTol);
AtomPredicate norm_at_most_predicate(double r, double tol = kDefaultTol);

// Named lookup used by the CLI: "jointly-normal", "separately-normal",
// "norm<=R".
AtomPredicate predicate_by_name(const std::string& name, double tol = kDefaultTol);

// Three-way split of a contraction: parts whose reduced parts go below norm
// one, the norm-one-not-attained part (provably empty in finite dimension,
// asserted here) and the norm-one-attained part.
struct ContractionSplit {
  MatrixTuple below;        // H_0
  Matrix below_projection;
  MatrixTuple not_attained; // H_1, always zero-dimensional
  MatrixTuple attained;     // H_2
  Matrix attained_projection;
};

ContractionSplit contraction_parts(const MatrixTuple& a, double tol = kDefaultTol,
                                   std::uint64_t seed = 0);

}  // namespace optuple
