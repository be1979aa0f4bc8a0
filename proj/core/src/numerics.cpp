#include "metarate/numerics.hpp"

namespace metarate {

Nat Nat::from_decimal(const std::string& s) {
  if (s.empty()) throw DomainError("Nat: empty string");
  for (char c : s)
    if (c < '0' || c > '9') throw DomainError("Nat: not a decimal string: " + s);
  return Nat(mpz_class(s, 10));
}

Rational Rational::parse(const std::string& s) {
  if (s.empty()) throw DomainError("Rational: empty string");
  const auto slash = s.find('/');
  auto parse_int = [](const std::string& part) {
    if (part.empty()) throw DomainError("Rational: empty integer part");
    std::size_t i = part[0] == '-' ? 1 : 0;
    if (i == part.size()) throw DomainError("Rational: bare sign");
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9')
        throw DomainError("Rational: malformed number: " + part);
    return mpz_class(part, 10);
  };
  mpz_class num = parse_int(slash == std::string::npos ? s : s.substr(0, slash));
  mpz_class den = 1;
  if (slash != std::string::npos) {
    den = parse_int(s.substr(slash + 1));
    if (sgn(den) <= 0) throw DomainError("Rational: denominator must be positive");
  }
  mpq_class q(num, den);
  q.canonicalize();
  return Rational(std::move(q));
}

std::string Rational::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Nat ceil_to_nat(const PosRational& q) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), q.value().num().get_mpz_t(),
             q.value().den().get_mpz_t());
  return Nat(std::move(out));
}

std::int64_t ceil_log_base_lt1(const PosRational& base, const PosRational& value,
                               const Caps& caps) {
  const Rational one(1L);
  if (base.value() >= one)
    throw DomainError("ceil_log_base_lt1: base must lie in (0,1)");
  const Rational& e = value.value();

  if (e >= one) {
    // Largest j >= 0 with (1/base)^j <= value; the answer is -j.
    const Rational inv = one / base.value();
    Rational p = one;
    std::int64_t j = 0;
    while (p * inv <= e) {
      p = p * inv;
      if (static_cast<std::uint64_t>(++j) > caps.iter_cap)
        throw CapExceeded("ceil_log_base_lt1: iteration cap exceeded");
    }
    return -j;
  }

  Rational p = one;
  std::int64_t k = 0;
  while (p > e) {
    p = p * base.value();
    if (static_cast<std::uint64_t>(++k) > caps.iter_cap)
      throw CapExceeded("ceil_log_base_lt1: iteration cap exceeded");
  }
  return k;
}

}  // namespace metarate
