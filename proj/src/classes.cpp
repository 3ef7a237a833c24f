#include "optuple/classes.hpp"

#include <algorithm>
#include <sstream>

namespace optuple {

std::string kind_name(LabelKind k) {
  switch (k) {
    case LabelKind::AtomI: return "atom";
    case LabelKind::SemiprimeII1: return "semiprime-ii1";
    case LabelKind::SemiprimeIIInf: return "semiprime-ii-inf";
    case LabelKind::FractalIII: return "fractal";
  }
  throw Error("unreachable label kind");
}

LabelKind kind_from_name(const std::string& name) {
  if (name == "atom") return LabelKind::AtomI;
  if (name == "semiprime-ii1") return LabelKind::SemiprimeII1;
  if (name == "semiprime-ii-inf") return LabelKind::SemiprimeIIInf;
  if (name == "fractal") return LabelKind::FractalIII;
  throw InputError("unknown label kind: " + name);
}

PrimeLabel PrimeLabel::atom(std::string id, int dim) {
  if (dim < 1) throw InputError("atom dimension must be >= 1");
  return PrimeLabel{std::move(id), LabelKind::AtomI, dim};
}

PrimeLabel PrimeLabel::atom_omega(std::string id) {
  return PrimeLabel{std::move(id), LabelKind::AtomI, kOmega};
}

PrimeLabel PrimeLabel::semiprime_ii1(std::string id) {
  return PrimeLabel{std::move(id), LabelKind::SemiprimeII1, kOmega};
}

PrimeLabel PrimeLabel::semiprime_ii_inf(std::string id) {
  return PrimeLabel{std::move(id), LabelKind::SemiprimeIIInf, kOmega};
}

PrimeLabel PrimeLabel::fractal(std::string id) {
  return PrimeLabel{std::move(id), LabelKind::FractalIII, kOmega};
}

ExtScalar PrimeLabel::dim_scalar() const {
  if (is_atom() && dim != kOmega) return ExtScalar::integer(dim);
  return ExtScalar::aleph(0);
}

bool admissible_value(const PrimeLabel& label, const ExtScalar& value) {
  switch (label.kind) {
    case LabelKind::AtomI: return value.is_cardinal();
    case LabelKind::FractalIII: return value.is_zero() || value.is_aleph();
    case LabelKind::SemiprimeII1:
    case LabelKind::SemiprimeIIInf: return true;
  }
  return false;
}

TupleClass::TupleClass(std::vector<std::pair<PrimeLabel, ExtScalar>> entries) {
  for (auto& [label, value] : entries) set(label, value);
}

void TupleClass::set(const PrimeLabel& label, const ExtScalar& value) {
  if (!admissible_value(label, value))
    throw AdmissibilityError("value " + value.to_string() + " not admissible at " +
                             kind_name(label.kind) + " label '" + label.id + "'");
  auto it = mults_.find(label.id);
  if (it != mults_.end() && !(it->second.first == label))
    throw InputError("conflicting label data for id '" + label.id + "'");
  if (value.is_zero()) {
    if (it != mults_.end()) mults_.erase(it);
    return;
  }
  mults_[label.id] = {label, value};
}

ExtScalar TupleClass::at(const PrimeLabel& label) const {
  auto it = mults_.find(label.id);
  return it == mults_.end() ? ExtScalar::zero() : it->second.second;
}

std::vector<PrimeLabel> TupleClass::support() const {
  std::vector<PrimeLabel> out;
  out.reserve(mults_.size());
  for (const auto& [id, entry] : mults_) out.push_back(entry.first);
  return out;
}

bool operator==(const TupleClass& a, const TupleClass& b) {
  if (a.mults_.size() != b.mults_.size()) return false;
  auto ia = a.mults_.begin();
  auto ib = b.mults_.begin();
  for (; ia != a.mults_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (!(ia->second.first == ib->second.first)) return false;
    if (ia->second.second != ib->second.second) return false;
  }
  return true;
}

namespace {

// Applies fn pointwise over the union of supports; fn sees 0 for a missing
// side.  Zero results are dropped by TupleClass::set.
template <typename Fn>
TupleClass pointwise(const TupleClass& a, const TupleClass& b, Fn fn) {
  TupleClass out;
  const auto& ma = a.entries();
  const auto& mb = b.entries();
  auto ia = ma.begin();
  auto ib = mb.begin();
  while (ia != ma.end() || ib != mb.end()) {
    if (ib == mb.end() || (ia != ma.end() && ia->first < ib->first)) {
      out.set(ia->second.first, fn(ia->second.second, ExtScalar::zero()));
      ++ia;
    } else if (ia == ma.end() || ib->first < ia->first) {
      out.set(ib->second.first, fn(ExtScalar::zero(), ib->second.second));
      ++ib;
    } else {
      if (!(ia->second.first == ib->second.first))
        throw InputError("conflicting label data for id '" + ia->first + "'");
      out.set(ia->second.first, fn(ia->second.second, ib->second.second));
      ++ia;
      ++ib;
    }
  }
  return out;
}

}  // namespace

TupleClass oplus(const TupleClass& a, const TupleClass& b) {
  return pointwise(a, b, [](const ExtScalar& x, const ExtScalar& y) { return x + y; });
}

TupleClass oplus(const std::vector<TupleClass>& classes) {
  TupleClass acc;
  for (const auto& c : classes) acc = oplus(acc, c);
  return acc;
}

TupleClass scalar_mul(const ExtScalar& alpha, const TupleClass& a) {
  if (alpha.is_finite() && alpha.den() != 1) {
    for (const auto& [id, entry] : a.entries())
      if (!entry.first.is_semiprime())
        throw AdmissibilityError(
            "non-integer factor " + alpha.to_string() +
            " applies only to semiminimal classes; label '" + id + "' is " +
            kind_name(entry.first.kind));
  }
  TupleClass out;
  for (const auto& [id, entry] : a.entries())
    out.set(entry.first, alpha * entry.second);
  return out;
}

bool leq(const TupleClass& a, const TupleClass& b) {
  for (const auto& [id, entry] : a.entries())
    if (!(entry.second <= b.at(entry.first))) return false;
  return true;
}

bool leq_s(const TupleClass& a, const TupleClass& b) {
  for (const auto& [id, entry] : a.entries())
    if (entry.second != b.at(entry.first)) return false;
  return true;
}

bool disjoint(const TupleClass& a, const TupleClass& b) {
  for (const auto& [id, entry] : a.entries())
    if (!b.at(entry.first).is_zero()) return false;
  return true;
}

bool covers(const TupleClass& a, const TupleClass& b) {
  for (const auto& [id, entry] : a.entries())
    if (b.at(entry.first).is_zero()) return false;
  return true;
}

TupleClass sup(const TupleClass& a, const TupleClass& b) {
  return pointwise(a, b, [](const ExtScalar& x, const ExtScalar& y) {
    return x < y ? y : x;
  });
}

TupleClass inf(const TupleClass& a, const TupleClass& b) {
  return pointwise(a, b, [](const ExtScalar& x, const ExtScalar& y) {
    return x < y ? x : y;
  });
}

TupleClass sup(const std::vector<TupleClass>& classes) {
  if (classes.empty()) throw PreconditionError("sup of an empty family");
  TupleClass acc = classes.front();
  for (std::size_t i = 1; i < classes.size(); ++i) acc = sup(acc, classes[i]);
  return acc;
}

TupleClass inf(const std::vector<TupleClass>& classes) {
  if (classes.empty()) throw PreconditionError("inf of an empty family");
  TupleClass acc = classes.front();
  for (std::size_t i = 1; i < classes.size(); ++i) acc = inf(acc, classes[i]);
  return acc;
}

TupleClass minus_delta(const TupleClass& b, const TupleClass& a) {
  if (!leq(a, b)) throw PreconditionError("minus_delta requires A <= B");
  return pointwise(b, a, [](const ExtScalar& x, const ExtScalar& y) {
    return ExtScalar::sub_delta(x, y);
  });
}

TupleClass minus_nabla(const TupleClass& b, const TupleClass& a) {
  if (!leq(a, b)) throw PreconditionError("minus_nabla requires A <= B");
  return pointwise(b, a, [](const ExtScalar& x, const ExtScalar& y) {
    if (x.is_aleph() && x == y) return x;  // nabla keeps the full level
    return ExtScalar::sub_delta(x, y);
  });
}

TupleClass UnityPartition::e_ii_1() const {
  return scalar_mul(ExtScalar::aleph(0), sm);
}

UnityPartition partition_of_unity(const TupleClass& a) {
  UnityPartition p;
  for (const auto& [id, entry] : a.entries()) {
    const auto& [label, value] = entry;
    switch (label.kind) {
      case LabelKind::AtomI:
        p.parts[{PartType::TypeI, value}].set(label, ExtScalar::one());
        break;
      case LabelKind::FractalIII:
        p.parts[{PartType::TypeIII, value}].set(label, ExtScalar::aleph(0));
        break;
      case LabelKind::SemiprimeII1:
      case LabelKind::SemiprimeIIInf:
        if (value.is_finite())
          p.sm.set(label, value);
        else
          p.parts[{PartType::TypeII, value}].set(label, ExtScalar::aleph(0));
        break;
    }
  }
  return p;
}

TupleClass recompose(const UnityPartition& p) {
  TupleClass acc = p.sm;
  for (const auto& [key, part] : p.parts)
    acc = oplus(acc, scalar_mul(key.level, part));
  return acc;
}

TupleClass unity_class(const std::vector<PrimeLabel>& registry) {
  TupleClass j;
  for (const auto& label : registry) {
    switch (label.kind) {
      case LabelKind::AtomI:
      case LabelKind::SemiprimeII1:
        j.set(label, ExtScalar::one());
        break;
      case LabelKind::SemiprimeIIInf:
      case LabelKind::FractalIII:
        j.set(label, ExtScalar::aleph(0));
        break;
    }
  }
  return j;
}

std::set<std::string> type_flags(const TupleClass& a) {
  std::set<std::string> flags;
  bool only_atoms = true, only_semiprimes = true, only_fractals = true;
  bool only_ii1 = true, only_ii_inf = true;
  bool atom_mults_le_1 = true, fractal_mults_aleph0 = true;
  bool semiprime_positive_rational = true;
  bool all_finite = true;
  std::set<int> atom_dims;

  for (const auto& [id, entry] : a.entries()) {
    const auto& [label, value] = entry;
    if (!value.is_finite()) all_finite = false;
    switch (label.kind) {
      case LabelKind::AtomI:
        only_semiprimes = only_fractals = false;
        atom_dims.insert(label.dim);
        if (ExtScalar::one() < value) atom_mults_le_1 = false;
        break;
      case LabelKind::SemiprimeII1:
        only_atoms = only_fractals = false;
        only_ii_inf = false;
        if (!value.is_finite()) semiprime_positive_rational = false;
        break;
      case LabelKind::SemiprimeIIInf:
        only_atoms = only_fractals = false;
        only_ii1 = false;
        if (!value.is_finite()) semiprime_positive_rational = false;
        break;
      case LabelKind::FractalIII:
        only_atoms = only_semiprimes = false;
        if (value != ExtScalar::aleph(0)) fractal_mults_aleph0 = false;
        break;
    }
  }

  // The trivial class is of each type.
  if (only_atoms) {
    flags.insert("I");
    if (atom_dims.size() == 1) {
      int d = *atom_dims.begin();
      flags.insert(d == PrimeLabel::kOmega ? "I^omega" : "I^" + std::to_string(d));
    }
  }
  if (only_semiprimes) {
    flags.insert("II");
    if (only_ii1) flags.insert("II^1");
    if (only_ii_inf) flags.insert("II^inf");
  }
  if (only_fractals) flags.insert("III");

  if (only_atoms && atom_mults_le_1) flags.insert("multiplicity_free");
  if (only_semiprimes && semiprime_positive_rational) flags.insert("semiminimal");
  if (only_fractals) flags.insert("hereditary_idempotent");

  // Minimal: no semiprime content, atoms with multiplicity one and fractal
  // levels exactly aleph_0 (the restriction of J_I (+) J_III).
  bool no_semiprime = true;
  for (const auto& [id, entry] : a.entries())
    if (entry.first.is_semiprime()) no_semiprime = false;
  if (no_semiprime && atom_mults_le_1 && fractal_mults_aleph0)
    flags.insert("minimal");

  if (all_finite) flags.insert("finite");

  if (a.support_size() == 1) {
    flags.insert("factor");
    const auto& [label, value] = a.entries().begin()->second;
    if (label.is_atom() && value == ExtScalar::one()) flags.insert("atom");
    if (label.is_fractal() && value == ExtScalar::aleph(0)) flags.insert("fractal");
    if (label.is_semiprime() && value.is_finite()) flags.insert("semiprime");
  }
  return flags;
}

ExtScalar ratio(const TupleClass& a, const TupleClass& b) {
  if (b.empty()) throw PreconditionError("ratio with trivial divisor");
  if (b.support_size() != 1 || a.support_size() > 1)
    throw NotComparableError("ratio requires single-label classes");
  const auto& [blabel, bval] = b.entries().begin()->second;
  if (a.empty()) return ExtScalar::zero();
  const auto& [alabel, aval] = a.entries().begin()->second;
  if (!(alabel == blabel))
    throw NotComparableError("ratio of classes with different supports");

  if (aval.is_finite() && bval.is_finite()) {
    __int128 num = static_cast<__int128>(aval.num()) * bval.den();
    __int128 den = static_cast<__int128>(aval.den()) * bval.num();
    if (num > INT64_MAX || den > INT64_MAX)
      throw DomainError("rational overflow in ratio");
    return ExtScalar::rational(static_cast<std::int64_t>(num),
                               static_cast<std::int64_t>(den));
  }
  if (aval.is_aleph() && bval.is_finite()) return aval;
  if (aval.is_aleph() && bval.is_aleph()) {
    if (aval == bval) return ExtScalar::one();  // least admissible factor
    if (bval < aval) return aval;
    throw NotComparableError("no scalar q with A = q (.) B: " + aval.to_string() +
                             " < " + bval.to_string());
  }
  throw NotComparableError("no scalar q with A = q (.) B: finite vs infinite");
}

ExtScalar symbolic_dim(const TupleClass& a) {
  ExtScalar acc = ExtScalar::zero();
  for (const auto& [id, entry] : a.entries())
    acc = acc + entry.second * entry.first.dim_scalar();
  return acc;
}

std::string to_string(const TupleClass& a) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [id, entry] : a.entries()) {
    if (!first) os << ", ";
    first = false;
    os << id << ":" << entry.second;
  }
  os << "}";
  return os.str();
}

}  // namespace optuple
