#pragma once

#include <string>
#include <vector>

#include "optuple/classes.hpp"
#include "optuple/json_io.hpp"
#include "optuple/matrices.hpp"

namespace optuple {

// Independent unitary-equivalence oracle: equality of all trace words in
// {A_j, A_j^*}.  Realized by a lockstep Gram-Schmidt filtration of the two
// word spaces, which compares every trace word of every length (so in
// particular all lengths up to 2 d^2) without enumerating the exponentially
// many words.  Dimensions above 4 are rejected (cost-control contract).
bool specht_equivalent(const MatrixTuple& a, const MatrixTuple& b,
                       double tol = 1e-8);

struct LawResult {
  std::string law;
  long cases = 0;
  std::vector<std::string> failures;
  // The documented negative case (scalar multiplication by an infinite
  // cardinal does not distribute over infima of infinite dividing
  // sequences); the suite passes only when it is reproduced.
  bool expected_counterexample = false;
  bool counterexample_reproduced = false;

  bool ok() const {
    return expected_counterexample ? counterexample_reproduced
                                   : failures.empty();
  }
};

struct LawSuiteReport {
  int registry_size = 0;
  std::vector<LawResult> laws;
  bool passed() const {
    for (const auto& l : laws)
      if (!l.ok()) return false;
    return true;
  }
};

std::vector<ExtScalar> default_mult_set();

// Enumerates every admissible class over a mixed registry of at most three
// labels and the given multiplicity values, and asserts the algebraic and
// order laws of the direct-sum semigroup on all of them.
LawSuiteReport exhaustive_law_suite(
    int registry_size, const std::vector<ExtScalar>& mult_set = default_mult_set());

Json law_suite_to_json(const LawSuiteReport& report);

}  // namespace optuple
