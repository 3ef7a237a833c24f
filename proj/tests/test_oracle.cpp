#include <doctest.h>

#include "optuple/oracle.hpp"
#include "support.hpp"

using namespace optuple;
using namespace optuple::testing;

namespace {

MatrixTuple diag_tuple(std::initializer_list<double> values) {
  Matrix m = Matrix::Zero(values.size(), values.size());
  int i = 0;
  for (double v : values) m(i, i) = v, ++i;
  return MatrixTuple({m});
}

}  // namespace

TEST_CASE("specht oracle basics") {
  std::mt19937_64 rng(5);
  MatrixTuple a = random_tuple(2, 3, rng);
  CHECK(specht_equivalent(a, a));
  CHECK(specht_equivalent(a, conjugate(a, random_unitary(3, rng))));
  CHECK_FALSE(specht_equivalent(diag_tuple({1, 2}), diag_tuple({1, 3})));
  CHECK_FALSE(specht_equivalent(a, random_tuple(2, 3, rng)));
  CHECK_FALSE(specht_equivalent(a, random_tuple(2, 2, rng)));

  // The transposed shift is the reflected shift: unitarily equivalent.
  Matrix j2 = Matrix::Zero(2, 2);
  j2(1, 0) = 1.0;
  CHECK(specht_equivalent(MatrixTuple({j2}), MatrixTuple({Matrix(j2.transpose())})));

  CHECK_THROWS_AS(specht_equivalent(random_tuple(1, 5, rng), random_tuple(1, 5, rng)),
                  DomainError);
  CHECK_THROWS_AS(specht_equivalent(a, random_tuple(3, 3, rng)), PreconditionError);
}

TEST_CASE("specht distinguishes multiplicity patterns") {
  std::mt19937_64 rng(7);
  MatrixTuple p = random_atom(2, 2, rng);
  MatrixTuple q = random_atom(2, 2, rng);
  CHECK(specht_equivalent(direct_sum(p, q), direct_sum(q, p)));
  CHECK_FALSE(specht_equivalent(direct_sum(p, p), direct_sum(p, q)));
}

TEST_CASE("oracle and decomposition-based equivalence agree on random pairs") {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + static_cast<int>(rng() % 3);
    int d = 1 + static_cast<int>(rng() % 3);
    MatrixTuple a = random_tuple(n, d, rng);
    MatrixTuple b;
    switch (trial % 3) {
      case 0: b = conjugate(a, random_unitary(d, rng)); break;
      case 1: b = random_tuple(n, d, rng); break;
      default: b = adjoint(a); break;
    }
    CHECK(specht_equivalent(a, b) == are_equivalent(a, b));
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("law suite passes at every registry size") {
  for (int size = 1; size <= 3; ++size) {
    LawSuiteReport report = exhaustive_law_suite(size);
    INFO("registry size ", size);
    for (const auto& law : report.laws) {
      INFO(law.law, " failures: ",
           law.failures.empty() ? "" : law.failures.front());
      CHECK(law.ok());
      CHECK(law.cases > 0);
    }
    CHECK(report.passed());
  }
}

TEST_CASE("law suite reproduces the dividing-sequence counterexample") {
  LawSuiteReport report = exhaustive_law_suite(3);
  bool found = false;
  for (const auto& law : report.laws)
    if (law.expected_counterexample) {
      found = true;
      CHECK(law.counterexample_reproduced);
    }
  CHECK(found);

  Json j = law_suite_to_json(report);
  CHECK(j["passed"] == true);
  CHECK(j["laws"].size() == report.laws.size());
}
