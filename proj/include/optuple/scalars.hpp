#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "optuple/errors.hpp"

namespace optuple {

// Height K of the aleph tower aleph_0 .. aleph_K.  Indices above the
// configured height are rejected by ExtScalar::aleph and by the JSON reader.
int aleph_tower_height();
void set_aleph_tower_height(int k);

// Element of Q_+ \cup {aleph_0, ..., aleph_K}: either an exact non-negative
// rational (lowest terms, den > 0) or an infinite cardinal of the truncated
// tower.  Total order: all rationals < aleph_0 < aleph_1 < ...
//
// Arithmetic: rationals add/multiply exactly; t + a = a and t * a = a for
// finite t > 0 and infinite a; 0 * a = 0; a_i + a_j = a_i * a_j =
// a_max(i,j).
class ExtScalar {
public:
  ExtScalar() : num_(0), den_(1), aleph_(kFinite) {}

  static ExtScalar rational(std::int64_t num, std::int64_t den = 1);
  static ExtScalar integer(std::int64_t n) { return rational(n, 1); }
  static ExtScalar zero() { return integer(0); }
  static ExtScalar one() { return integer(1); }
  static ExtScalar aleph(int index);

  bool is_finite() const { return aleph_ == kFinite; }
  bool is_aleph() const { return aleph_ != kFinite; }
  bool is_zero() const { return is_finite() && num_ == 0; }
  // Finite non-negative integer (a cardinal) or an aleph.
  bool is_cardinal() const { return is_aleph() || den_ == 1; }
  bool is_positive() const { return !is_zero(); }

  std::int64_t num() const;
  std::int64_t den() const;
  int aleph_index() const;

  friend ExtScalar operator+(const ExtScalar& a, const ExtScalar& b);
  friend ExtScalar operator*(const ExtScalar& a, const ExtScalar& b);

  friend bool operator==(const ExtScalar& a, const ExtScalar& b);
  friend bool operator!=(const ExtScalar& a, const ExtScalar& b) { return !(a == b); }
  friend bool operator<(const ExtScalar& a, const ExtScalar& b);
  friend bool operator<=(const ExtScalar& a, const ExtScalar& b) { return a < b || a == b; }
  friend bool operator>(const ExtScalar& a, const ExtScalar& b) { return b < a; }
  friend bool operator>=(const ExtScalar& a, const ExtScalar& b) { return b <= a; }

  // Least x with a + x = b, for a <= b.  Finite case is exact subtraction;
  // b infinite gives b when a < b and 0 when a == b (the Delta complement).
  // Throws PreconditionError when a > b.
  static ExtScalar sub_delta(const ExtScalar& b, const ExtScalar& a);

  std::string to_string() const;

private:
  static constexpr int kFinite = -1;
  ExtScalar(std::int64_t num, std::int64_t den, int aleph)
      : num_(num), den_(den), aleph_(aleph) {}

  std::int64_t num_, den_;  // valid when aleph_ == kFinite
  int aleph_;               // kFinite, or tower index >= 0
};

std::ostream& operator<<(std::ostream& os, const ExtScalar& s);

// Parses "3", "7/2", "aleph0", "aleph2".
ExtScalar parse_ext_scalar(const std::string& text);

}  // namespace optuple
