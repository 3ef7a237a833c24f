#include "optuple/scalars.hpp"

#include <atomic>
#include <numeric>
#include <ostream>
#include <sstream>

namespace optuple {

namespace {

std::atomic<int> g_tower_height{3};

std::int64_t checked(__int128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN)
    throw DomainError(std::string("rational overflow in ") + what);
  return static_cast<std::int64_t>(v);
}

}  // namespace

int aleph_tower_height() { return g_tower_height.load(); }

void set_aleph_tower_height(int k) {
  if (k < 0) throw InputError("aleph tower height must be >= 0");
  g_tower_height.store(k);
}

ExtScalar ExtScalar::rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InputError("rational with zero denominator");
  if (den < 0) { num = -num; den = -den; }
  if (num < 0) throw InputError("negative rational is not an extended scalar");
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  return ExtScalar(num / g, den / g, kFinite);
}

ExtScalar ExtScalar::aleph(int index) {
  if (index < 0 || index > aleph_tower_height()) {
    std::ostringstream os;
    os << "aleph index " << index << " outside tower 0.." << aleph_tower_height();
    throw InputError(os.str());
  }
  return ExtScalar(0, 1, index);
}

std::int64_t ExtScalar::num() const {
  if (!is_finite()) throw PreconditionError("num() of an infinite scalar");
  return num_;
}

std::int64_t ExtScalar::den() const {
  if (!is_finite()) throw PreconditionError("den() of an infinite scalar");
  return den_;
}

int ExtScalar::aleph_index() const {
  if (is_finite()) throw PreconditionError("aleph_index() of a finite scalar");
  return aleph_;
}

ExtScalar operator+(const ExtScalar& a, const ExtScalar& b) {
  if (a.is_finite() && b.is_finite()) {
    std::int64_t g = std::gcd(a.den_, b.den_);
    __int128 num = static_cast<__int128>(a.num_) * (b.den_ / g) +
                   static_cast<__int128>(b.num_) * (a.den_ / g);
    __int128 den = static_cast<__int128>(a.den_ / g) * b.den_;
    return ExtScalar::rational(checked(num, "add"), checked(den, "add"));
  }
  if (a.is_finite()) return b;
  if (b.is_finite()) return a;
  return ExtScalar::aleph(std::max(a.aleph_, b.aleph_));
}

ExtScalar operator*(const ExtScalar& a, const ExtScalar& b) {
  if (a.is_finite() && b.is_finite()) {
    std::int64_t g1 = std::gcd(a.num_, b.den_);
    std::int64_t g2 = std::gcd(b.num_, a.den_);
    __int128 num = static_cast<__int128>(a.num_ / g1) * (b.num_ / g2);
    __int128 den = static_cast<__int128>(a.den_ / g2) * (b.den_ / g1);
    return ExtScalar::rational(checked(num, "mul"), checked(den, "mul"));
  }
  if (a.is_zero() || b.is_zero()) return ExtScalar::zero();
  if (a.is_finite()) return b;
  if (b.is_finite()) return a;
  return ExtScalar::aleph(std::max(a.aleph_, b.aleph_));
}

bool operator==(const ExtScalar& a, const ExtScalar& b) {
  if (a.is_finite() != b.is_finite()) return false;
  if (a.is_finite()) return a.num_ == b.num_ && a.den_ == b.den_;
  return a.aleph_ == b.aleph_;
}

bool operator<(const ExtScalar& a, const ExtScalar& b) {
  if (a.is_finite() && b.is_finite()) {
    return static_cast<__int128>(a.num_) * b.den_ <
           static_cast<__int128>(b.num_) * a.den_;
  }
  if (a.is_finite()) return true;
  if (b.is_finite()) return false;
  return a.aleph_ < b.aleph_;
}

ExtScalar ExtScalar::sub_delta(const ExtScalar& b, const ExtScalar& a) {
  if (b < a)
    throw PreconditionError("sub_delta requires a <= b, got " + a.to_string() +
                            " > " + b.to_string());
  if (b.is_finite()) {
    __int128 num = static_cast<__int128>(b.num_) * a.den_ -
                   static_cast<__int128>(a.num_) * b.den_;
    __int128 den = static_cast<__int128>(b.den_) * a.den_;
    return rational(checked(num, "sub_delta"), checked(den, "sub_delta"));
  }
  if (a == b) return zero();
  return b;
}

std::string ExtScalar::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ExtScalar& s) {
  if (s.is_aleph()) return os << "aleph" << s.aleph_index();
  if (s.den() == 1) return os << s.num();
  return os << s.num() << "/" << s.den();
}

ExtScalar parse_ext_scalar(const std::string& text) {
  if (text.rfind("aleph", 0) == 0) {
    try {
      return ExtScalar::aleph(std::stoi(text.substr(5)));
    } catch (const std::invalid_argument&) {
      throw InputError("malformed aleph literal: " + text);
    }
  }
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos)
      return ExtScalar::integer(std::stoll(text));
    return ExtScalar::rational(std::stoll(text.substr(0, slash)),
                               std::stoll(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw InputError("malformed scalar literal: " + text);
  } catch (const std::out_of_range&) {
    throw InputError("scalar literal out of range: " + text);
  }
}

}  // namespace optuple
