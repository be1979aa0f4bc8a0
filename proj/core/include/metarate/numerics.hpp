#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace metarate {

/// Raised when a computation passes one of the configured resource caps
/// (value bit-length, loop count, horizon). Callers downgrade the affected
/// scenario to a "bound too large to verify" outcome instead of failing.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a value violates a type invariant (negative Nat, rational
/// outside [0,1], malformed input string, sequence too short, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Resource limits shared by every calculator and generator. All arithmetic
/// stays exact; the caps only bound how far we are willing to compute.
struct Caps {
  unsigned nat_bits = 4096;          // bit-length cap on computed bounds
  std::uint64_t iter_cap = 1000000;  // cap on internal loop counts
  std::uint64_t horizon = 500000;    // max generated sequence length
  std::uint64_t search = 1000000;    // max oracle search index
};

/// Arbitrary-precision natural number. Closed under +, *, max; subtraction
/// only through checked_sub, which refuses negative results.
class Nat {
 public:
  Nat() : v_(0) {}
  Nat(unsigned long n) : v_(static_cast<unsigned long>(n)) {}
  explicit Nat(mpz_class v) : v_(std::move(v)) {
    if (sgn(v_) < 0) throw DomainError("Nat: negative value");
  }

  static Nat from_decimal(const std::string& s);

  const mpz_class& raw() const { return v_; }

  Nat operator+(const Nat& o) const { return Nat(mpz_class(v_ + o.v_)); }
  Nat operator*(const Nat& o) const { return Nat(mpz_class(v_ * o.v_)); }
  Nat& operator+=(const Nat& o) {
    v_ += o.v_;
    return *this;
  }

  /// this - o; throws DomainError if the result would be negative.
  Nat checked_sub(const Nat& o) const {
    if (v_ < o.v_) throw DomainError("Nat: subtraction would be negative");
    return Nat(mpz_class(v_ - o.v_));
  }

  bool operator==(const Nat& o) const { return v_ == o.v_; }
  bool operator!=(const Nat& o) const { return v_ != o.v_; }
  bool operator<(const Nat& o) const { return v_ < o.v_; }
  bool operator<=(const Nat& o) const { return v_ <= o.v_; }
  bool operator>(const Nat& o) const { return v_ > o.v_; }
  bool operator>=(const Nat& o) const { return v_ >= o.v_; }

  std::size_t bit_length() const {
    return v_ == 0 ? 0 : mpz_sizeinbase(v_.get_mpz_t(), 2);
  }

  bool fits_u64() const { return mpz_fits_ulong_p(v_.get_mpz_t()) != 0; }

  /// Conversion for use as a loop bound or container index.
  std::uint64_t to_u64() const {
    if (!fits_u64()) throw CapExceeded("Nat: value exceeds machine index range");
    return mpz_get_ui(v_.get_mpz_t());
  }

  /// Throws CapExceeded once the value outgrows caps.nat_bits.
  const Nat& checked(const Caps& caps) const {
    if (bit_length() > caps.nat_bits)
      throw CapExceeded("Nat: value exceeds " + std::to_string(caps.nat_bits) +
                        "-bit cap");
    return *this;
  }

  std::string str() const { return v_.get_str(); }

 private:
  mpz_class v_;
};

inline const Nat& max(const Nat& a, const Nat& b) { return a < b ? b : a; }
inline const Nat& min(const Nat& a, const Nat& b) { return a < b ? a : b; }

/// Exact rational, always kept in lowest terms with positive denominator.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}
  Rational(const Nat& n) : v_(n.raw()) {}
  Rational(const Nat& num, const Nat& den) : v_(num.raw(), den.raw()) {
    if (sgn(den.raw()) == 0) throw DomainError("Rational: zero denominator");
    v_.canonicalize();
  }
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw DomainError("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses "p/q" or a bare integer "p".
  static Rational parse(const std::string& s);

  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  Rational operator+(const Rational& o) const { return wrap(v_ + o.v_); }
  Rational operator-(const Rational& o) const { return wrap(v_ - o.v_); }
  Rational operator*(const Rational& o) const { return wrap(v_ * o.v_); }
  Rational operator/(const Rational& o) const {
    if (sgn(o.v_) == 0) throw DomainError("Rational: division by zero");
    return wrap(v_ / o.v_);
  }
  Rational operator-() const { return wrap(-v_); }

  bool operator==(const Rational& o) const { return v_ == o.v_; }
  bool operator!=(const Rational& o) const { return v_ != o.v_; }
  bool operator<(const Rational& o) const { return v_ < o.v_; }
  bool operator<=(const Rational& o) const { return v_ <= o.v_; }
  bool operator>(const Rational& o) const { return v_ > o.v_; }
  bool operator>=(const Rational& o) const { return v_ >= o.v_; }

  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }

  /// Canonical "num/den" form, e.g. "1/2", "0/1", "-3/4".
  std::string str() const;

 private:
  static Rational wrap(mpq_class q) {
    Rational r;
    r.v_ = std::move(q);  // arithmetic on canonical operands stays canonical
    return r;
  }
  mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// Strictly positive rational.
class PosRational {
 public:
  explicit PosRational(Rational r) : r_(std::move(r)) {
    if (r_.sign() <= 0) throw DomainError("PosRational: value must be > 0");
  }
  PosRational(long num, long den) : PosRational(Rational(num, den)) {}

  const Rational& value() const { return r_; }

  PosRational operator+(const PosRational& o) const {
    return PosRational(r_ + o.r_);
  }
  PosRational operator*(const PosRational& o) const {
    return PosRational(r_ * o.r_);
  }
  PosRational operator/(const PosRational& o) const {
    return PosRational(r_ / o.r_);
  }
  PosRational reciprocal() const { return PosRational(Rational(1L) / r_); }

  bool operator==(const PosRational& o) const { return r_ == o.r_; }
  bool operator<(const PosRational& o) const { return r_ < o.r_; }
  bool operator<=(const PosRational& o) const { return r_ <= o.r_; }
  bool operator>(const PosRational& o) const { return r_ > o.r_; }
  bool operator>=(const PosRational& o) const { return r_ >= o.r_; }

  std::string str() const { return r_.str(); }

 private:
  Rational r_;
};

inline const PosRational& min(const PosRational& a, const PosRational& b) {
  return a < b ? a : b;
}

/// Rational confined to [0,1]; the type of every sequence point and
/// parameter value.
class UnitRational {
 public:
  UnitRational() : r_(0) {}
  explicit UnitRational(Rational r) : r_(std::move(r)) {
    if (r_.sign() < 0 || r_ > Rational(1L))
      throw DomainError("UnitRational: value must lie in [0,1]");
  }
  UnitRational(long num, long den) : UnitRational(Rational(num, den)) {}

  static UnitRational zero() { return UnitRational(); }
  static UnitRational one() { return UnitRational(Rational(1L)); }

  const Rational& value() const { return r_; }
  UnitRational one_minus() const { return UnitRational(Rational(1L) - r_); }

  bool operator==(const UnitRational& o) const { return r_ == o.r_; }
  bool operator!=(const UnitRational& o) const { return r_ != o.r_; }
  bool operator<(const UnitRational& o) const { return r_ < o.r_; }
  bool operator<=(const UnitRational& o) const { return r_ <= o.r_; }
  bool operator>(const UnitRational& o) const { return r_ > o.r_; }
  bool operator>=(const UnitRational& o) const { return r_ >= o.r_; }

  std::string str() const { return r_.str(); }

 private:
  Rational r_;
};

/// Least Nat n with n >= q.
Nat ceil_to_nat(const PosRational& q);

/// Least integer k with base^k <= value, for base in (0,1). Exact: repeated
/// rational multiplication, no floating point. May be negative when
/// value >= 1. Loop length is bounded by caps.iter_cap.
std::int64_t ceil_log_base_lt1(const PosRational& base, const PosRational& value,
                               const Caps& caps);

}  // namespace metarate
