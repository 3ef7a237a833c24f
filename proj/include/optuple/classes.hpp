#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "optuple/scalars.hpp"

namespace optuple {

enum class LabelKind { AtomI, SemiprimeII1, SemiprimeIIInf, FractalIII };

std::string kind_name(LabelKind k);
LabelKind kind_from_name(const std::string& name);

// Abstract prime: a type-I atom (finite dimension tag n >= 1 or omega),
// a type-II semiprime (of kind II^1 or II^infinity) or a type-III fractal.
// Ids are unique within a registry; kind and dimension tag never change.
struct PrimeLabel {
  static constexpr int kOmega = 0;  // dimension tag "omega"

  std::string id;
  LabelKind kind = LabelKind::AtomI;
  int dim = 1;  // n >= 1 for finite atoms, kOmega otherwise

  static PrimeLabel atom(std::string id, int dim);
  static PrimeLabel atom_omega(std::string id);
  static PrimeLabel semiprime_ii1(std::string id);
  static PrimeLabel semiprime_ii_inf(std::string id);
  static PrimeLabel fractal(std::string id);

  bool is_atom() const { return kind == LabelKind::AtomI; }
  bool is_semiprime() const {
    return kind == LabelKind::SemiprimeII1 || kind == LabelKind::SemiprimeIIInf;
  }
  bool is_fractal() const { return kind == LabelKind::FractalIII; }

  // Dimension of the prime itself as an extended scalar (n or aleph_0).
  ExtScalar dim_scalar() const;

  friend bool operator==(const PrimeLabel& a, const PrimeLabel& b) {
    return a.id == b.id && a.kind == b.kind && a.dim == b.dim;
  }
};

// Unitary-equivalence class in the discrete model: a finite-support
// multiplicity function over prime labels.  Admissibility per kind:
// atoms carry cardinals, fractals carry alephs, semiprimes carry anything.
// Zero values are never stored.
class TupleClass {
public:
  TupleClass() = default;
  explicit TupleClass(std::vector<std::pair<PrimeLabel, ExtScalar>> entries);

  // Throws AdmissibilityError on a non-admissible (label, value) pair.
  void set(const PrimeLabel& label, const ExtScalar& value);
  ExtScalar at(const PrimeLabel& label) const;  // 0 when absent
  bool empty() const { return mults_.empty(); }
  std::size_t support_size() const { return mults_.size(); }

  const std::map<std::string, std::pair<PrimeLabel, ExtScalar>>& entries() const {
    return mults_;
  }

  std::vector<PrimeLabel> support() const;

  friend bool operator==(const TupleClass& a, const TupleClass& b);
  friend bool operator!=(const TupleClass& a, const TupleClass& b) { return !(a == b); }

private:
  // Keyed by label id (unique in a registry); the stored label carries
  // kind and dimension tag.
  std::map<std::string, std::pair<PrimeLabel, ExtScalar>> mults_;
};

bool admissible_value(const PrimeLabel& label, const ExtScalar& value);

// Direct-sum semigroup: pointwise addition of multiplicity functions.
TupleClass oplus(const TupleClass& a, const TupleClass& b);
TupleClass oplus(const std::vector<TupleClass>& classes);

// alpha (.) A, pointwise.  A non-integer rational factor requires purely
// semiprime support; violating that throws AdmissibilityError.
TupleClass scalar_mul(const ExtScalar& alpha, const TupleClass& a);

bool leq(const TupleClass& a, const TupleClass& b);    // pointwise <=
bool leq_s(const TupleClass& a, const TupleClass& b);  // restriction order
bool disjoint(const TupleClass& a, const TupleClass& b);
bool covers(const TupleClass& a, const TupleClass& b);  // A << B: supp A in supp B

TupleClass sup(const std::vector<TupleClass>& classes);  // pointwise max
TupleClass inf(const std::vector<TupleClass>& classes);  // pointwise min
TupleClass sup(const TupleClass& a, const TupleClass& b);
TupleClass inf(const TupleClass& a, const TupleClass& b);

// Complements of A inside B (requires leq(A, B)): A (+) X = B iff
// minus_delta(B,A) <= X <= minus_nabla(B,A).
TupleClass minus_delta(const TupleClass& b, const TupleClass& a);
TupleClass minus_nabla(const TupleClass& b, const TupleClass& a);

// Level-set partition of unity.  Keys are (type, level); the semiminimal
// part E_sm is reported separately.  The reconstruction identity
//   A = E_sm (+) sum over (i,alpha) of alpha (.) E^i_alpha
// holds exactly (the (II, 1) level is derived: E^II_1 = aleph_0 (.) E_sm).
enum class PartType { TypeI, TypeII, TypeIII };

struct PartKey {
  PartType type;
  ExtScalar level;
  friend bool operator<(const PartKey& a, const PartKey& b) {
    if (a.type != b.type) return a.type < b.type;
    return a.level < b.level;
  }
};

struct UnityPartition {
  std::map<PartKey, TupleClass> parts;  // nonzero level sets only
  TupleClass sm;                        // semiminimal part E_sm
  TupleClass e_ii_1() const;            // aleph_0 (.) E_sm
};

UnityPartition partition_of_unity(const TupleClass& a);
TupleClass recompose(const UnityPartition& p);  // right side of the identity

// Unity restricted to a registry of labels: 1 at atoms and II^1 semiprimes,
// aleph_0 at fractals and II^infinity semiprimes.
TupleClass unity_class(const std::vector<PrimeLabel>& registry);

// Discrete type predicates.
std::set<std::string> type_flags(const TupleClass& a);

// The scalar q with A = q (.) B, both supported on one common label.
// For equal infinite values returns 1 (the least admissible factor).
// Throws NotComparableError when no such scalar exists.
ExtScalar ratio(const TupleClass& a, const TupleClass& b);

// Sum over the support of mult * dim(label).
ExtScalar symbolic_dim(const TupleClass& a);

std::string to_string(const TupleClass& a);

}  // namespace optuple
