#include "optuple/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

namespace optuple {

namespace {

Eigen::VectorXcd flatten(const Matrix& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

}  // namespace

bool specht_equivalent(const MatrixTuple& a, const MatrixTuple& b, double tol) {
  if (a.length() != b.length())
    throw PreconditionError("equivalence of tuples with different lengths");
  if (a.dim() > 4 || b.dim() > 4)
    throw DomainError("specht oracle limited to dimension <= 4");
  if (a.dim() != b.dim()) return false;
  const int d = a.dim();
  if (d == 0) return true;

  std::vector<Matrix> gens_a, gens_b;
  for (const auto& m : a.entries()) gens_a.push_back(m);
  for (const auto& m : a.entries()) gens_a.push_back(m.adjoint());
  for (const auto& m : b.entries()) gens_b.push_back(m);
  for (const auto& m : b.entries()) gens_b.push_back(m.adjoint());

  double scale = 1.0;
  for (const auto& g : gens_a) scale = std::max(scale, g.norm());
  for (const auto& g : gens_b) scale = std::max(scale, g.norm());

  // Lockstep filtration of the two word spaces.  ortho_a holds an
  // orthonormal basis of the A-word span; ortho_b carries the same linear
  // combinations of B-words.  Every projection coefficient and every norm
  // must agree on both sides, which is exactly equality of all trace words
  // (Gram entries of word values are themselves trace words).
  std::vector<Eigen::VectorXcd> ortho_a, ortho_b;
  std::vector<std::pair<Matrix, Matrix>> fresh;

  Matrix id = Matrix::Identity(d, d);
  ortho_a.push_back(flatten(id) / flatten(id).norm());
  ortho_b.push_back(flatten(id) / flatten(id).norm());
  fresh.push_back({id, id});

  const int max_rounds = 2 * d * d + 2;
  for (int round = 0; round < max_rounds && !fresh.empty(); ++round) {
    std::vector<std::pair<Matrix, Matrix>> next;
    for (const auto& [pa, pb] : fresh) {
      for (std::size_t g = 0; g < gens_a.size(); ++g) {
        Matrix wa = pa * gens_a[g];
        Matrix wb = pb * gens_b[g];
        Eigen::VectorXcd va = flatten(wa);
        Eigen::VectorXcd vb = flatten(wb);
        double wscale = 1.0 + std::max(va.norm(), vb.norm());
        if (std::abs(va.squaredNorm() - vb.squaredNorm()) >
            tol * wscale * wscale)
          return false;
        for (std::size_t k = 0; k < ortho_a.size(); ++k) {
          Complex ca = ortho_a[k].dot(va);
          Complex cb = ortho_b[k].dot(vb);
          if (std::abs(ca - cb) > tol * wscale) return false;
          va -= ca * ortho_a[k];
          vb -= ca * ortho_b[k];
        }
        double na = va.norm();
        double nb = vb.norm();
        if (std::abs(na - nb) > tol * wscale) return false;
        if (na > tol * wscale * d) {
          ortho_a.push_back(va / na);
          ortho_b.push_back(vb / na);
          next.push_back({wa, wb});
          if (static_cast<int>(ortho_a.size()) > d * d)
            throw ConsistencyError("word span exceeded the full matrix algebra");
        }
      }
    }
    fresh = std::move(next);
  }
  return true;
}

// ---------------------------------------------------------------------------
// Law suite
// ---------------------------------------------------------------------------

std::vector<ExtScalar> default_mult_set() {
  return {ExtScalar::integer(0),     ExtScalar::integer(1),
          ExtScalar::integer(2),     ExtScalar::integer(3),
          ExtScalar::rational(1, 2), ExtScalar::rational(3, 2),
          ExtScalar::aleph(0),       ExtScalar::aleph(1),
          ExtScalar::aleph(2)};
}

namespace {

std::vector<PrimeLabel> suite_registry(int size) {
  if (size < 1 || size > 3)
    throw PreconditionError("law suite registry size must be 1..3");
  std::vector<PrimeLabel> all{PrimeLabel::atom("P", 1), PrimeLabel::fractal("F"),
                              PrimeLabel::semiprime_ii1("S")};
  all.resize(size);
  return all;
}

std::vector<TupleClass> enumerate_classes(const std::vector<PrimeLabel>& registry,
                                          const std::vector<ExtScalar>& mult_set) {
  std::vector<std::vector<ExtScalar>> choices;
  for (const auto& label : registry) {
    std::vector<ExtScalar> vals;
    for (const auto& v : mult_set)
      if (admissible_value(label, v) &&
          std::find(vals.begin(), vals.end(), v) == vals.end())
        vals.push_back(v);
    choices.push_back(std::move(vals));
  }
  std::vector<TupleClass> out;
  std::vector<std::size_t> idx(registry.size(), 0);
  while (true) {
    TupleClass c;
    for (std::size_t i = 0; i < registry.size(); ++i)
      c.set(registry[i], choices[i][idx[i]]);
    out.push_back(std::move(c));
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == choices[pos].size()) {
      idx[pos] = 0;
      ++pos;
    }
    if (pos == idx.size()) break;
  }
  return out;
}

std::string case_string(std::initializer_list<const TupleClass*> classes) {
  std::ostringstream os;
  bool first = true;
  for (const auto* c : classes) {
    if (!first) os << " ; ";
    first = false;
    os << to_string(*c);
  }
  return os.str();
}

struct SuiteContext {
  std::vector<PrimeLabel> registry;
  std::vector<TupleClass> family;
  // Precomputed lattice tables over the family (closed under sup/inf).
  std::vector<std::vector<int>> sup_idx;
  std::vector<std::vector<int>> inf_idx;
  std::map<std::string, int> by_sig;
  std::vector<std::string> sig;

  int index_of(const TupleClass& c) const {
    auto it = by_sig.find(to_string(c));
    return it == by_sig.end() ? -1 : it->second;
  }
};

// scalar_mul when admissible, nullopt otherwise.
std::optional<TupleClass> try_scale(const ExtScalar& alpha, const TupleClass& a) {
  try {
    return scalar_mul(alpha, a);
  } catch (const AdmissibilityError&) {
    return std::nullopt;
  }
}

SuiteContext make_context(int registry_size,
                          const std::vector<ExtScalar>& mult_set) {
  SuiteContext ctx;
  ctx.registry = suite_registry(registry_size);
  ctx.family = enumerate_classes(ctx.registry, mult_set);
  const int f = static_cast<int>(ctx.family.size());
  ctx.sig.resize(f);
  for (int i = 0; i < f; ++i) {
    ctx.sig[i] = to_string(ctx.family[i]);
    ctx.by_sig[ctx.sig[i]] = i;
  }
  ctx.sup_idx.assign(f, std::vector<int>(f, -1));
  ctx.inf_idx.assign(f, std::vector<int>(f, -1));
  for (int i = 0; i < f; ++i)
    for (int j = i; j < f; ++j) {
      int s = ctx.index_of(sup(ctx.family[i], ctx.family[j]));
      int m = ctx.index_of(inf(ctx.family[i], ctx.family[j]));
      if (s < 0 || m < 0)
        throw ConsistencyError("family is not closed under sup/inf");
      ctx.sup_idx[i][j] = ctx.sup_idx[j][i] = s;
      ctx.inf_idx[i][j] = ctx.inf_idx[j][i] = m;
    }
  return ctx;
}

}  // namespace

LawSuiteReport exhaustive_law_suite(int registry_size,
                                    const std::vector<ExtScalar>& mult_set) {
  SuiteContext ctx = make_context(registry_size, mult_set);
  const int f = static_cast<int>(ctx.family.size());
  const auto& fam = ctx.family;

  LawSuiteReport report;
  report.registry_size = registry_size;
  auto& laws = report.laws;

  auto fail = [](LawResult& r, const std::string& text) {
    if (r.failures.size() < 10) r.failures.push_back(text);
  };

  // (AO1) n (.) A = n (.) B implies A = B, finite n >= 1.
  {
    LawResult r{"AO1-finite-cancellation"};
    for (int n = 1; n <= 3; ++n) {
      ExtScalar en = ExtScalar::integer(n);
      std::map<std::string, int> seen;
      for (int i = 0; i < f; ++i) {
        std::string s = to_string(scalar_mul(en, fam[i]));
        auto [it, inserted] = seen.emplace(s, i);
        ++r.cases;
        if (!inserted && !(fam[it->second] == fam[i]))
          fail(r, "n=" + std::to_string(n) + ": " +
                      case_string({&fam[it->second], &fam[i]}));
      }
    }
    laws.push_back(std::move(r));
  }

  // (AO2) n (.) A = m (.) B iff A = (m/g) (.) X and B = (n/g) (.) X for some
  // X; and for n != m, n (.) A = m (.) A iff A = aleph_0 (.) A.
  {
    LawResult r{"AO2-gcd-factorization"};
    const std::pair<int, int> nm[] = {{1, 2}, {2, 3}, {2, 4}, {3, 2}};
    for (auto [n, m] : nm) {
      int g = std::gcd(n, m);
      ExtScalar en = ExtScalar::integer(n), em = ExtScalar::integer(m);
      ExtScalar ek = ExtScalar::integer(m / g), el = ExtScalar::integer(n / g);
      std::vector<std::string> nA(f), mB(f);
      for (int i = 0; i < f; ++i) {
        nA[i] = to_string(scalar_mul(en, fam[i]));
        mB[i] = to_string(scalar_mul(em, fam[i]));
      }
      for (int i = 0; i < f; ++i)
        for (int j = 0; j < f; ++j) {
          ++r.cases;
          bool lhs = nA[i] == mB[j];
          bool rhs = false;
          for (int x = 0; x < f && !rhs; ++x)
            rhs = fam[i] == scalar_mul(ek, fam[x]) &&
                  fam[j] == scalar_mul(el, fam[x]);
          if (lhs != rhs)
            fail(r, "n=" + std::to_string(n) + ",m=" + std::to_string(m) + ": " +
                        case_string({&fam[i], &fam[j]}));
        }
    }
    ExtScalar a0 = ExtScalar::aleph(0);
    for (int i = 0; i < f; ++i) {
      ++r.cases;
      bool lhs = scalar_mul(ExtScalar::integer(2), fam[i]) ==
                 scalar_mul(ExtScalar::integer(3), fam[i]);
      bool rhs = fam[i] == scalar_mul(a0, fam[i]);
      if (lhs != rhs) fail(r, case_string({&fam[i]}));
    }
    laws.push_back(std::move(r));
  }

  // (AO3) alpha (.) A = beta (.) B with 0 < alpha < beta, beta infinite, iff
  // A = beta (.) B.  (Zero kills all information and is excluded, as in the
  // positive-cardinal amplification the statement quantifies over.)
  {
    LawResult r{"AO3-infinite-absorption"};
    for (const auto& alpha : mult_set)
      for (const auto& beta : mult_set) {
        if (!beta.is_aleph() || !(alpha < beta) || alpha.is_zero()) continue;
        std::vector<std::optional<TupleClass>> am(f), bm(f);
        for (int i = 0; i < f; ++i) {
          am[i] = try_scale(alpha, fam[i]);
          bm[i] = scalar_mul(beta, fam[i]);
        }
        for (int i = 0; i < f; ++i)
          for (int j = 0; j < f; ++j) {
            if (!am[i]) continue;  // inadmissible alpha on this support
            ++r.cases;
            bool lhs = *am[i] == *bm[j];
            bool rhs = fam[i] == *bm[j];
            if (lhs != rhs)
              fail(r, alpha.to_string() + "," + beta.to_string() + ": " +
                          case_string({&fam[i], &fam[j]}));
          }
      }
    laws.push_back(std::move(r));
  }

  // (ST2) A <= B iff A (+) X = B is solvable; the pointwise solution is the
  // Delta complement.
  {
    LawResult r{"ST2-order-from-oplus"};
    for (int i = 0; i < f; ++i)
      for (int j = 0; j < f; ++j) {
        ++r.cases;
        bool le = leq(fam[i], fam[j]);
        if (le) {
          TupleClass x = minus_delta(fam[j], fam[i]);
          if (!(oplus(fam[i], x) == fam[j]))
            fail(r, "delta does not solve: " + case_string({&fam[i], &fam[j]}));
        }
        // Any (+) witness forces <=.
        if (!le) {
          bool witness = false;
          for (int x = 0; x < f && !witness; ++x)
            witness = oplus(fam[i], fam[x]) == fam[j];
          if (witness) fail(r, "oplus witness without <=: " +
                                   case_string({&fam[i], &fam[j]}));
        }
      }
    laws.push_back(std::move(r));
  }

  // (ST3) disjointness is vanishing of the infimum.
  {
    LawResult r{"ST3-disjoint-from-inf"};
    for (int i = 0; i < f; ++i)
      for (int j = 0; j < f; ++j) {
        ++r.cases;
        if (disjoint(fam[i], fam[j]) != fam[ctx.inf_idx[i][j]].empty())
          fail(r, case_string({&fam[i], &fam[j]}));
      }
    laws.push_back(std::move(r));
  }

  // (ST4) A <=s B iff B = A (+) X with X disjoint from A.
  {
    LawResult r{"ST4-strong-order-from-oplus"};
    for (int i = 0; i < f; ++i)
      for (int j = 0; j < f; ++j) {
        ++r.cases;
        // The only candidate is B restricted off the support of A.
        TupleClass x;
        for (const auto& [id, entry] : fam[j].entries())
          if (fam[i].at(entry.first).is_zero()) x.set(entry.first, entry.second);
        bool rhs = disjoint(fam[i], x) && oplus(fam[i], x) == fam[j];
        if (leq_s(fam[i], fam[j]) != rhs) fail(r, case_string({&fam[i], &fam[j]}));
      }
    laws.push_back(std::move(r));
  }

  // (AO7) A (+) X = B iff Delta <= X <= Nabla.
  {
    LawResult r{"AO7-complement-interval"};
    for (int i = 0; i < f; ++i)
      for (int j = 0; j < f; ++j) {
        if (!leq(fam[i], fam[j])) continue;
        TupleClass delta = minus_delta(fam[j], fam[i]);
        TupleClass nabla = minus_nabla(fam[j], fam[i]);
        for (int x = 0; x < f; ++x) {
          ++r.cases;
          bool solves = oplus(fam[i], fam[x]) == fam[j];
          bool inside = leq(delta, fam[x]) && leq(fam[x], nabla);
          if (solves != inside)
            fail(r, case_string({&fam[i], &fam[x], &fam[j]}));
        }
      }
    laws.push_back(std::move(r));
  }

  // (AO10) Delta <=s Nabla; (AO11) Delta = Nabla iff no common label carries
  // equal infinite values on both sides.
  {
    LawResult r{"AO10-AO11-complement-gap"};
    for (int i = 0; i < f; ++i)
      for (int j = 0; j < f; ++j) {
        if (!leq(fam[i], fam[j])) continue;
        ++r.cases;
        TupleClass delta = minus_delta(fam[j], fam[i]);
        TupleClass nabla = minus_nabla(fam[j], fam[i]);
        if (!leq_s(delta, nabla)) fail(r, case_string({&fam[i], &fam[j]}));
        bool coincide = delta == nabla;
        bool no_common_infinite = true;
        for (const auto& [id, entry] : fam[i].entries()) {
          const ExtScalar& b = fam[j].at(entry.first);
          if (entry.second.is_aleph() && entry.second == b)
            no_common_infinite = false;
        }
        if (coincide != no_common_infinite)
          fail(r, "AO11: " + case_string({&fam[i], &fam[j]}));
      }
    laws.push_back(std::move(r));
  }

  // (AO9) and (AO12) on chains A <= X <= B.
  {
    LawResult r{"AO9-AO12-triangle"};
    for (int i = 0; i < f; ++i)
      for (int j = 0; j < f; ++j) {
        if (!leq(fam[i], fam[j])) continue;
        TupleClass dBA = minus_delta(fam[j], fam[i]);
        TupleClass nBA = minus_nabla(fam[j], fam[i]);
        for (int x = 0; x < f; ++x) {
          if (!leq(fam[i], fam[x]) || !leq(fam[x], fam[j])) continue;
          ++r.cases;
          TupleClass dBX = minus_delta(fam[j], fam[x]);
          TupleClass dXA = minus_delta(fam[x], fam[i]);
          TupleClass nBX = minus_nabla(fam[j], fam[x]);
          TupleClass nXA = minus_nabla(fam[x], fam[i]);
          TupleClass mid = oplus(dBX, dXA);
          TupleClass top = oplus(nBX, nXA);
          if (!leq(dBA, mid) || !leq(mid, top) || !leq(top, nBA))
            fail(r, "AO9: " + case_string({&fam[i], &fam[x], &fam[j]}));
          if (!leq(sup(dBX, dXA), dBA))
            fail(r, "AO12: " + case_string({&fam[i], &fam[x], &fam[j]}));
        }
      }
    laws.push_back(std::move(r));
  }

  // (AO13) binary distributivity of the lattice operations.
  {
    LawResult r{"AO13-distributivity"};
    for (int b = 0; b < f; ++b)
      for (int i = 0; i < f; ++i)
        for (int j = i; j < f; ++j) {
          ++r.cases;
          int lhs = ctx.inf_idx[b][ctx.sup_idx[i][j]];
          int rhs = ctx.sup_idx[ctx.inf_idx[b][i]][ctx.inf_idx[b][j]];
          if (lhs != rhs) fail(r, case_string({&fam[b], &fam[i], &fam[j]}));
          int lhs2 = ctx.sup_idx[b][ctx.inf_idx[i][j]];
          int rhs2 = ctx.inf_idx[ctx.sup_idx[b][i]][ctx.sup_idx[b][j]];
          if (lhs2 != rhs2) fail(r, case_string({&fam[b], &fam[i], &fam[j]}));
        }
    laws.push_back(std::move(r));
  }

  // (AO14) scalar multiplication distributes over binary inf and sup.
  {
    LawResult r{"AO14-scalar-lattice"};
    for (const auto& alpha : mult_set) {
      std::vector<std::optional<TupleClass>> am(f);
      for (int i = 0; i < f; ++i) am[i] = try_scale(alpha, fam[i]);
      for (int i = 0; i < f; ++i)
        for (int j = i; j < f; ++j) {
          if (!am[i] || !am[j]) continue;
          ++r.cases;
          const TupleClass& ij_inf = fam[ctx.inf_idx[i][j]];
          const TupleClass& ij_sup = fam[ctx.sup_idx[i][j]];
          if (!(scalar_mul(alpha, ij_inf) == inf(*am[i], *am[j])))
            fail(r, alpha.to_string() + " inf: " + case_string({&fam[i], &fam[j]}));
          if (!(scalar_mul(alpha, ij_sup) == sup(*am[i], *am[j])))
            fail(r, alpha.to_string() + " sup: " + case_string({&fam[i], &fam[j]}));
        }
    }
    laws.push_back(std::move(r));
  }

  // Example "inf" negative case: for the dividing sequence (1/n) (.) S of a
  // semiprime S, the pointwise infimum over the whole sequence vanishes, so
  // aleph_0 (.) inf = 0 while inf over n of aleph_0 (.) (1/n (.) S) stays
  // the full level aleph_0.
  const PrimeLabel* semiprime_label = nullptr;
  for (const auto& l : ctx.registry)
    if (l.is_semiprime()) semiprime_label = &l;
  if (semiprime_label != nullptr) {
    LawResult r{"AO14-infinite-family-counterexample"};
    r.expected_counterexample = true;
    const PrimeLabel* sp = semiprime_label;
    {
      TupleClass s;
      s.set(*sp, ExtScalar::one());
      ExtScalar a0 = ExtScalar::aleph(0);
      // Every finite truncation still distributes...
      bool truncations_agree = true;
      TupleClass running = s;
      TupleClass rhs = scalar_mul(a0, s);
      for (int n = 1; n <= 6; ++n) {
        TupleClass an = scalar_mul(ExtScalar::rational(1, n), s);
        running = inf(running, an);
        rhs = inf(rhs, scalar_mul(a0, an));
        ++r.cases;
        if (!(scalar_mul(a0, running) == rhs)) truncations_agree = false;
      }
      // ...but the infimum of the whole dividing sequence is the zero class
      // while every aleph_0 (.) (1/n (.) S) keeps the full level.
      TupleClass limit_inf;  // pointwise infimum over all n
      TupleClass lhs = scalar_mul(a0, limit_inf);
      r.counterexample_reproduced =
          truncations_agree && lhs.empty() && rhs == scalar_mul(a0, s) &&
          !(lhs == rhs);
      ++r.cases;
    }
    laws.push_back(std::move(r));
  }

  // Prop leqsl-leqsls (A): A <= B1 (+) B2 with B1, B2 disjoint forces
  // A = (A and B1) (+) (A and B2).
  {
    LawResult r{"leqsl-regular-splitting"};
    for (int b1 = 0; b1 < f; ++b1)
      for (int b2 = b1; b2 < f; ++b2) {
        if (!disjoint(fam[b1], fam[b2])) continue;
        TupleClass sum = oplus(fam[b1], fam[b2]);
        for (int i = 0; i < f; ++i) {
          if (!leq(fam[i], sum)) continue;
          ++r.cases;
          TupleClass split = oplus(fam[ctx.inf_idx[i][b1]], fam[ctx.inf_idx[i][b2]]);
          if (!(split == fam[i]))
            fail(r, case_string({&fam[i], &fam[b1], &fam[b2]}));
        }
      }
    laws.push_back(std::move(r));
  }

  // Prop luboplus: sup(A (+) B over families) = sup A (+) sup B, dually for
  // inf.  Exhaustive at scalar level (the class law is pointwise), strided
  // at class level.
  {
    LawResult r{"luboplus"};
    for (const auto& a1 : mult_set)
      for (const auto& a2 : mult_set)
        for (const auto& b1 : mult_set)
          for (const auto& b2 : mult_set) {
            ++r.cases;
            ExtScalar sa = a1 < a2 ? a2 : a1;
            ExtScalar ia = a1 < a2 ? a1 : a2;
            ExtScalar sb = b1 < b2 ? b2 : b1;
            ExtScalar ib = b1 < b2 ? b1 : b2;
            ExtScalar sums[] = {a1 + b1, a1 + b2, a2 + b1, a2 + b2};
            ExtScalar smax = sums[0], smin = sums[0];
            for (const auto& sv : sums) {
              if (smax < sv) smax = sv;
              if (sv < smin) smin = sv;
            }
            if (!(smax == sa + sb))
              fail(r, "sup: " + a1.to_string() + "," + a2.to_string() + "," +
                          b1.to_string() + "," + b2.to_string());
            if (!(smin == ia + ib))
              fail(r, "inf: " + a1.to_string() + "," + a2.to_string() + "," +
                          b1.to_string() + "," + b2.to_string());
          }
    const int stride = std::max(1, f / 24);
    for (int i = 0; i < f; i += stride)
      for (int j = 0; j < f; j += stride)
        for (int k = 0; k < f; k += stride)
          for (int l = 0; l < f; l += stride) {
            ++r.cases;
            TupleClass lhs_sup = sup(sup(oplus(fam[i], fam[k]), oplus(fam[i], fam[l])),
                                     sup(oplus(fam[j], fam[k]), oplus(fam[j], fam[l])));
            TupleClass rhs_sup = oplus(fam[ctx.sup_idx[i][j]], fam[ctx.sup_idx[k][l]]);
            if (!(lhs_sup == rhs_sup))
              fail(r, "class sup: " + case_string({&fam[i], &fam[j], &fam[k], &fam[l]}));
            TupleClass lhs_inf = inf(inf(oplus(fam[i], fam[k]), oplus(fam[i], fam[l])),
                                     inf(oplus(fam[j], fam[k]), oplus(fam[j], fam[l])));
            TupleClass rhs_inf = oplus(fam[ctx.inf_idx[i][j]], fam[ctx.inf_idx[k][l]]);
            if (!(lhs_inf == rhs_inf))
              fail(r, "class inf: " + case_string({&fam[i], &fam[j], &fam[k], &fam[l]}));
          }
    laws.push_back(std::move(r));
  }

  // Thm ords (C): {A,B} is strong-order bounded iff A and B split as
  // E (+) X, E (+) Y with X, Y disjoint; equivalently both lie strongly
  // under A v B.  (D): on bounded pairs the two orders agree.
  {
    LawResult r{"ords-strong-upper-bounds"};
    for (int i = 0; i < f; ++i)
      for (int j = 0; j < f; ++j) {
        ++r.cases;
        const TupleClass& a = fam[i];
        const TupleClass& b = fam[j];
        const TupleClass& join = fam[ctx.sup_idx[i][j]];
        bool via_join = leq_s(a, join) && leq_s(b, join);

        // Brute-force split search: E is a restriction of A to a
        // sub-support, X and Y the complements.
        auto supp = a.support();
        bool split_exists = false;
        for (std::size_t mask = 0; mask < (1u << supp.size()) && !split_exists;
             ++mask) {
          TupleClass e, x;
          for (std::size_t t = 0; t < supp.size(); ++t) {
            if (mask & (1u << t))
              e.set(supp[t], a.at(supp[t]));
            else
              x.set(supp[t], a.at(supp[t]));
          }
          if (!leq_s(e, b)) continue;
          TupleClass y;
          for (const auto& [id, entry] : b.entries())
            if (e.at(entry.first).is_zero()) y.set(entry.first, entry.second);
          if (!(oplus(e, y) == b)) continue;
          if (!disjoint(e, x) || !disjoint(e, y)) continue;
          if (disjoint(x, y)) split_exists = true;
        }
        if (via_join != split_exists)
          fail(r, "ords(C): " + case_string({&a, &b}));
        if (via_join && leq(a, b) != leq_s(a, b))
          fail(r, "ords(D): " + case_string({&a, &b}));
      }
    laws.push_back(std::move(r));
  }

  // Partition of unity reconstruction.
  {
    LawResult r{"partition-reconstruction"};
    for (int i = 0; i < f; ++i) {
      ++r.cases;
      UnityPartition p = partition_of_unity(fam[i]);
      if (!(recompose(p) == fam[i])) fail(r, case_string({&fam[i]}));
      if (!(p.e_ii_1() == scalar_mul(ExtScalar::aleph(0), p.sm)))
        fail(r, "E^II_1: " + case_string({&fam[i]}));
    }
    laws.push_back(std::move(r));
  }

  return report;
}

Json law_suite_to_json(const LawSuiteReport& report) {
  Json laws = Json::array();
  for (const auto& l : report.laws) {
    Json one;
    one["law"] = l.law;
    one["cases"] = l.cases;
    one["failures"] = l.failures;
    if (l.expected_counterexample) {
      one["expected_counterexample"] = true;
      one["counterexample_reproduced"] = l.counterexample_reproduced;
    }
    one["ok"] = l.ok();
    laws.push_back(std::move(one));
  }
  Json j;
  j["registry_size"] = report.registry_size;
  j["laws"] = std::move(laws);
  j["passed"] = report.passed();
  return j;
}

}  // namespace optuple
