#include <doctest.h>

#include <unistd.h>

#include <filesystem>

#include "optuple/json_io.hpp"
#include "support.hpp"

using namespace optuple;
using namespace optuple::testing;

namespace {

MatrixTuple j2_tuple() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return MatrixTuple({m});
}

MatrixTuple scalar_tuple(double v) {
  Matrix m(1, 1);
  m(0, 0) = v;
  return MatrixTuple({m});
}

MatrixTuple diag_tuple(std::initializer_list<double> values) {
  Matrix m = Matrix::Zero(values.size(), values.size());
  int i = 0;
  for (double v : values) m(i, i) = v, ++i;
  return MatrixTuple({m});
}

void check_report_invariants(const MatrixTuple& a, const DecompositionReport& r,
                             double tol) {
  int total = 0;
  for (const auto& b : r.blocks) {
    CHECK((b.isometry.adjoint() * b.isometry -
           Matrix::Identity(b.isometry.cols(), b.isometry.cols()))
              .norm() < 1e-10);
    total += static_cast<int>(b.isometry.cols());
  }
  CHECK(total == a.dim());
  for (std::size_t i = 0; i < r.blocks.size(); ++i)
    for (std::size_t k = i + 1; k < r.blocks.size(); ++k)
      CHECK((r.blocks[i].isometry.adjoint() * r.blocks[k].isometry).norm() < 1e-9);
  CHECK(r.residual <= tol * (1.0 + a.frobenius_norm()));
}

}  // namespace

TEST_CASE("planted two copies of the nilpotent atom") {
  std::mt19937_64 rng(2);
  MatrixTuple a = conjugate(ampl(2, j2_tuple()), random_unitary(4, rng));
  DecompositionReport r = isotypic_decomposition(a);
  REQUIRE(r.blocks.size() == 1);
  CHECK(r.blocks[0].multiplicity == 2);
  CHECK(r.blocks[0].atom.dim() == 2);
  CHECK(atoms_equivalent(r.blocks[0].atom, j2_tuple(), 1e-8));
  check_report_invariants(a, r, 1e-8);
}

TEST_CASE("diagonal example splits into two isotypic blocks") {
  DecompositionReport r = isotypic_decomposition(diag_tuple({1, 1, 2}));
  REQUIRE(r.blocks.size() == 2);
  // Order: dims equal, multiplicity descending.
  CHECK(r.blocks[0].multiplicity == 2);
  CHECK(r.blocks[1].multiplicity == 1);
  CHECK(atoms_equivalent(r.blocks[0].atom, scalar_tuple(1), 1e-8));
  CHECK(atoms_equivalent(r.blocks[1].atom, scalar_tuple(2), 1e-8));
  check_report_invariants(diag_tuple({1, 1, 2}), r, 1e-8);
}

TEST_CASE("irreducible input is its own single block") {
  DecompositionReport r = isotypic_decomposition(j2_tuple());
  REQUIRE(r.blocks.size() == 1);
  CHECK(r.blocks[0].multiplicity == 1);
  CHECK((r.blocks[0].atom[0] - j2_tuple()[0]).norm() == 0.0);
  CHECK((r.blocks[0].isometry - Matrix::Identity(2, 2)).norm() == 0.0);

  CHECK(isotypic_decomposition(MatrixTuple(2, 0)).blocks.empty());
}

TEST_CASE("decomposition report invariants on random planted instances") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    int blocks = 1 + static_cast<int>(rng() % 3);
    std::vector<int> dims, mults;
    for (int b = 0; b < blocks; ++b) {
      dims.push_back(1 + static_cast<int>(rng() % 3));
      mults.push_back(1 + static_cast<int>(rng() % 3));
    }
    Planted p = make_planted(2, dims, mults, rng);
    DecompositionReport r = isotypic_decomposition(p.tuple, 1e-8, trial);
    check_report_invariants(p.tuple, r, 1e-8);

    // Round trip: planted blocks recovered exactly.
    REQUIRE(r.blocks.size() == p.atoms.size());
    for (std::size_t i = 0; i < p.atoms.size(); ++i) {
      bool found = false;
      for (const auto& b : r.blocks)
        if (b.atom.dim() == p.atoms[i].dim() &&
            atoms_equivalent(b.atom, p.atoms[i], 1e-8)) {
          CHECK(b.multiplicity == p.mults[i]);
          found = true;
        }
      CHECK(found);
    }
  }
}

TEST_CASE("invariant key") {
  std::mt19937_64 rng(37);
  MatrixTuple a = random_tuple(2, 3, rng);
  Matrix u = random_unitary(3, rng);
  auto ka = invariant_key(a, 1e-9);
  auto kb = invariant_key(conjugate(a, u), 1e-9);
  REQUIRE(ka.size() == kb.size());
  for (std::size_t i = 0; i < ka.size(); ++i)
    CHECK(std::abs(ka[i] - kb[i]) < 1e-6 * (1.0 + std::abs(ka[i])));

  CHECK(invariant_key(diag_tuple({1, 2}), 1e-8) !=
        invariant_key(diag_tuple({1, 3}), 1e-8));
  CHECK(invariant_key(a, 1e-8).size() ==
        invariant_key(random_tuple(2, 3, rng), 1e-8).size());
}

TEST_CASE("are_equivalent") {
  std::mt19937_64 rng(41);
  MatrixTuple a = random_tuple(2, 3, rng);
  CHECK(are_equivalent(a, a));
  CHECK(are_equivalent(diag_tuple({1, 2}), diag_tuple({2, 1})));
  CHECK_FALSE(are_equivalent(diag_tuple({1, 2}), diag_tuple({1, 3})));
  CHECK_FALSE(are_equivalent(a, random_tuple(2, 3, rng)));
  CHECK(are_equivalent(a, conjugate(a, random_unitary(3, rng))));
  CHECK_FALSE(are_equivalent(a, direct_sum(a, a)));
  CHECK_THROWS_AS(are_equivalent(a, random_tuple(3, 3, rng)), PreconditionError);

  // Multiplicity matters.
  MatrixTuple p = random_atom(2, 2, rng);
  MatrixTuple q = random_atom(2, 2, rng);
  CHECK_FALSE(are_equivalent(direct_sum(ampl(2, p), q), direct_sum(p, ampl(2, q))));
  CHECK(are_equivalent(direct_sum(p, q), direct_sum(q, p)));
}

TEST_CASE("classify against an in-memory registry") {
  AtomRegistry registry;
  MatrixTuple a = direct_sum(direct_sum(j2_tuple(), j2_tuple()), scalar_tuple(7));
  TupleClass c = classify(a, registry);
  CHECK(registry.size() == 2);
  REQUIRE(c.support_size() == 2);
  ExtScalar two = ExtScalar::integer(2);
  bool saw_mult2 = false, saw_mult1 = false;
  for (const auto& [id, entry] : c.entries()) {
    if (entry.second == two) {
      CHECK(entry.first.dim == 2);
      saw_mult2 = true;
    }
    if (entry.second == ExtScalar::one()) {
      CHECK(entry.first.dim == 1);
      saw_mult1 = true;
    }
  }
  CHECK(saw_mult2);
  CHECK(saw_mult1);

  // classify is a unitary invariant and a semigroup morphism.
  std::mt19937_64 rng(43);
  Planted p = make_planted(2, {1, 2}, {2, 1}, rng);
  TupleClass ca = classify(p.tuple, registry);
  CHECK(classify(conjugate(p.tuple, random_unitary(p.tuple.dim(), rng)), registry) ==
        ca);
  Planted q = make_planted(2, {2}, {1}, rng);
  TupleClass direct = classify(direct_sum(p.tuple, q.tuple), registry);
  CHECK(direct == oplus(ca, classify(q.tuple, registry)));

  CHECK(classify(MatrixTuple(1, 0), registry).empty());
}

TEST_CASE("registry persists across reopen") {
  auto dir = std::filesystem::temp_directory_path() /
             ("optuple-registry-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  {
    AtomRegistry registry = AtomRegistry::open(dir.string());
    classify(diag_tuple({1, 1, 2}), registry);
    CHECK(registry.size() == 2);
  }
  CHECK(std::filesystem::exists(dir / "index.json"));
  {
    AtomRegistry registry = AtomRegistry::open(dir.string());
    CHECK(registry.size() == 2);
    std::mt19937_64 rng(3);
    TupleClass c = classify(conjugate(diag_tuple({2, 1, 1}), random_unitary(3, rng)),
                            registry);
    CHECK(registry.size() == 2);  // same atoms found, none registered anew
    CHECK(c.support_size() == 2);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("decompositions are seed independent") {
  std::mt19937_64 rng(47);
  Planted p = make_planted(2, {1, 2, 2}, {2, 1, 3}, rng);
  DecompositionReport r0 = isotypic_decomposition(p.tuple, 1e-8, 0);
  DecompositionReport r1 = isotypic_decomposition(p.tuple, 1e-8, 1);
  REQUIRE(r0.blocks.size() == r1.blocks.size());
  for (std::size_t i = 0; i < r0.blocks.size(); ++i) {
    // Isotypic projections are canonical; isometries are basis choices.
    Matrix p0 = r0.blocks[i].isometry * r0.blocks[i].isometry.adjoint();
    Matrix p1 = r1.blocks[i].isometry * r1.blocks[i].isometry.adjoint();
    CHECK((p0 - p1).norm() < 1e-8);
    CHECK(r0.blocks[i].multiplicity == r1.blocks[i].multiplicity);
    CHECK(atoms_equivalent(r0.blocks[i].atom, r1.blocks[i].atom, 1e-8));
  }
}

TEST_CASE("jointly normal split") {
  MatrixTuple mixed = direct_sum(j2_tuple(), scalar_tuple(5));
  IdealSplit split = ideal_split(mixed, jointly_normal_predicate());
  CHECK(split.part.dim() == 1);
  CHECK(split.complement.dim() == 2);
  CHECK(are_equivalent(split.part, scalar_tuple(5)));
  CHECK(are_equivalent(split.complement, j2_tuple()));
  CHECK((split.part_projection + split.complement_projection -
         Matrix::Identity(3, 3))
            .norm() < 1e-10);

  // A normal single matrix is all part; the nilpotent atom is all complement.
  Matrix normal(2, 2);
  normal << Complex(1, 0), Complex(0, 1), Complex(0, -1), Complex(2, 0);
  IdealSplit all = ideal_split(MatrixTuple({normal}), jointly_normal_predicate());
  CHECK(all.complement.dim() == 0);
  IdealSplit none = ideal_split(j2_tuple(), jointly_normal_predicate());
  CHECK(none.part.dim() == 0);

  // Re-splitting the complement yields a zero part.
  IdealSplit again = ideal_split(split.complement, jointly_normal_predicate());
  CHECK(again.part.dim() == 0);
}

TEST_CASE("three way separately normal split") {
  // Jointly normal pair, separately normal non-commuting pair (two Paulis),
  // and a non-normal pair.
  Matrix sx(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sz << 1, 0, 0, -1;
  MatrixTuple pauli({sx, sz});
  Matrix d1(1, 1), d2(1, 1);
  d1 << Complex(1, 1);
  d2 << Complex(2, 0);
  MatrixTuple jointly({d1, d2});
  MatrixTuple nonnormal({j2_tuple()[0], Matrix::Zero(2, 2)});

  std::mt19937_64 rng(53);
  MatrixTuple mixed = conjugate(direct_sum({jointly, pauli, nonnormal}),
                                random_unitary(5, rng));

  IdealSplit sep = ideal_split(mixed, separately_normal_predicate());
  CHECK(sep.part.dim() == 3);   // jointly + pauli
  CHECK(sep.complement.dim() == 2);
  IdealSplit joint = ideal_split(sep.part, jointly_normal_predicate());
  CHECK(joint.part.dim() == 1);        // the jointly normal pair
  CHECK(joint.complement.dim() == 2);  // purely separately normal
}

TEST_CASE("norm filtration split") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 0.5;
  m(1, 1) = 2.0;
  IdealSplit split = ideal_split(MatrixTuple({m}), norm_at_most_predicate(1.0));
  CHECK(split.part.dim() == 1);
  CHECK(std::abs(split.part[0](0, 0).real() - 0.5) < 1e-12);
  CHECK_THROWS_AS(predicate_by_name("norm<=x"), InputError);
  CHECK_THROWS_AS(predicate_by_name("bogus"), InputError);
}

TEST_CASE("contraction split leaves no unattained part") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 5; ++trial) {
    MatrixTuple raw = random_tuple(2, 4, rng);
    double norm = tuple_norm(raw);
    std::vector<Matrix> scaled;
    for (const auto& e : raw.entries()) scaled.push_back(e / (norm * (1.0 + 0.2 * trial)));
    MatrixTuple contraction(std::move(scaled));
    ContractionSplit split = contraction_parts(contraction);
    CHECK(split.not_attained.dim() == 0);
    CHECK(split.below.dim() + split.attained.dim() == 4);
    if (trial == 0) CHECK(split.attained.dim() > 0);  // scaled to norm one
  }
  CHECK_THROWS_AS(contraction_parts(scalar_tuple(3)), PreconditionError);
}
