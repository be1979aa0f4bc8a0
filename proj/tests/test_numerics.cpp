#include <doctest.h>

#include "metarate/numerics.hpp"

using namespace metarate;

namespace {

// Hand-rolled generator for property checks (SplitMix64).
struct Gen {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

}  // namespace

TEST_CASE("Nat construction and arithmetic") {
  CHECK(Nat(0).str() == "0");
  CHECK((Nat(3) + Nat(4)).str() == "7");
  CHECK((Nat(3) * Nat(4)).str() == "12");
  CHECK(Nat::from_decimal("123456789012345678901234567890").str() ==
        "123456789012345678901234567890");
  CHECK_THROWS_AS(Nat::from_decimal("12x"), DomainError);
  CHECK_THROWS_AS(Nat::from_decimal(""), DomainError);
  CHECK_THROWS_AS(Nat(mpz_class(-1)), DomainError);
  CHECK(Nat(7).checked_sub(Nat(3)) == Nat(4));
  CHECK_THROWS_AS(Nat(3).checked_sub(Nat(7)), DomainError);
  CHECK(max(Nat(3), Nat(9)) == Nat(9));
  CHECK(min(Nat(3), Nat(9)) == Nat(3));
}

TEST_CASE("Nat bit cap") {
  Caps caps;
  caps.nat_bits = 8;
  CHECK_NOTHROW(Nat(255).checked(caps));
  CHECK_THROWS_AS(Nat(256).checked(caps), CapExceeded);
}

TEST_CASE("Rational canonical form and parsing") {
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(-2, 4).str() == "-1/2");
  CHECK(Rational(0, 7).str() == "0/1");
  CHECK(Rational::parse("6/8").str() == "3/4");
  CHECK(Rational::parse("5").str() == "5/1");
  CHECK(Rational::parse("-7/2").str() == "-7/2");
  CHECK_THROWS_AS(Rational::parse("1/0"), DomainError);
  CHECK_THROWS_AS(Rational::parse("a/b"), DomainError);
  CHECK_THROWS_AS(Rational::parse("1/-2"), DomainError);
  CHECK_THROWS_AS(Rational(1, 0), DomainError);
}

TEST_CASE("rational arithmetic is exact") {
  Gen gen{42};
  for (int i = 0; i < 200; ++i) {
    const Rational a(static_cast<long>(gen.below(2000)) - 1000,
                     static_cast<long>(1 + gen.below(999)));
    const Rational b(static_cast<long>(gen.below(2000)) - 1000,
                     static_cast<long>(1 + gen.below(999)));
    CHECK((a + b) - b == a);
    if (b.sign() != 0) CHECK((a / b) * b == a);
  }
}

TEST_CASE("PosRational and UnitRational invariants") {
  CHECK_THROWS_AS(PosRational(Rational(0L)), DomainError);
  CHECK_THROWS_AS(PosRational(Rational(-1, 2)), DomainError);
  CHECK(PosRational(1, 2).reciprocal().str() == "2/1");
  CHECK_THROWS_AS(UnitRational(Rational(3, 2)), DomainError);
  CHECK_THROWS_AS(UnitRational(Rational(-1, 2)), DomainError);
  CHECK(UnitRational(1, 4).one_minus() == UnitRational(3, 4));
}

TEST_CASE("ceil_to_nat") {
  CHECK(ceil_to_nat(PosRational(12, 1)) == Nat(12));  // 6/(1/2)
  CHECK(ceil_to_nat(PosRational(1, 1)) == Nat(1));
  CHECK(ceil_to_nat(PosRational(7, 3)) == Nat(3));
}

TEST_CASE("ceil_to_nat sandwich property") {
  Gen gen{7};
  for (int i = 0; i < 300; ++i) {
    const PosRational p(static_cast<long>(1 + gen.below(5000)),
                        static_cast<long>(1 + gen.below(500)));
    const Nat n = ceil_to_nat(p);
    CHECK(Rational(n) >= p.value());
    CHECK(Rational(n) - Rational(1L) < p.value());
  }
}

TEST_CASE("ceil_log_base_lt1 examples") {
  const Caps caps;
  CHECK(ceil_log_base_lt1(PosRational(3, 4), PosRational(1, 2), caps) == 3);
  CHECK(ceil_log_base_lt1(PosRational(1, 2), PosRational(1, 1), caps) == 0);
  CHECK(ceil_log_base_lt1(PosRational(1, 2), PosRational(1, 8), caps) == 3);
  CHECK(ceil_log_base_lt1(PosRational(1, 2), PosRational(4, 1), caps) == -2);
  CHECK_THROWS_AS(
      ceil_log_base_lt1(PosRational(3, 2), PosRational(1, 2), caps),
      DomainError);
}

TEST_CASE("ceil_log_base_lt1 characterization") {
  const Caps caps;
  Gen gen{99};
  auto pow_rat = [](const Rational& b, std::int64_t k) {
    Rational out(1L);
    const Rational base = k >= 0 ? b : Rational(1L) / b;
    for (std::int64_t i = 0; i < (k >= 0 ? k : -k); ++i) out = out * base;
    return out;
  };
  for (int i = 0; i < 200; ++i) {
    const long bn = static_cast<long>(1 + gen.below(63));
    const long bd = bn + static_cast<long>(1 + gen.below(64));
    const PosRational base(bn, bd);
    const PosRational value(static_cast<long>(1 + gen.below(300)),
                            static_cast<long>(1 + gen.below(300)));
    const std::int64_t k = ceil_log_base_lt1(base, value, caps);
    CHECK(pow_rat(base.value(), k) <= value.value());
    CHECK(pow_rat(base.value(), k - 1) > value.value());
  }
}

TEST_CASE("ceil_log_base_lt1 honors the iteration cap") {
  Caps caps;
  caps.iter_cap = 10;
  CHECK_THROWS_AS(
      ceil_log_base_lt1(PosRational(999999, 1000000), PosRational(1, 1000000), caps),
      CapExceeded);
}
