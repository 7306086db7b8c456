#include "metalie/field.hpp"

#include <sstream>

namespace metalie {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(u128(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 0; i + 1 < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace

FieldSpec FieldSpec::prime_field(std::uint64_t p) {
  if (p > (1ull << 62))
    throw DomainError("prime field modulus too large");
  if (!is_prime(p))
    throw DomainError("prime field modulus must be prime, got " +
                      std::to_string(p));
  return FieldSpec(Kind::prime_field, p);
}

std::string FieldSpec::str() const {
  if (is_rationals()) return "q";
  return "gf:" + std::to_string(p_);
}

FieldSpec FieldSpec::parse(const std::string& text) {
  if (text == "q" || text == "Q") return rationals();
  if (text.rfind("gf:", 0) == 0) {
    std::uint64_t p = 0;
    try {
      p = std::stoull(text.substr(3));
    } catch (const std::exception&) {
      throw DomainError("bad field spec '" + text + "'");
    }
    return prime_field(p);
  }
  throw DomainError("bad field spec '" + text + "' (expected q or gf:<p>)");
}

Scalar Scalar::of_int(const FieldSpec& f, long long v) {
  if (f.is_rationals()) return Scalar(f, mpq_class(static_cast<long>(v)));
  std::uint64_t p = f.modulus();
  long long m = v % static_cast<long long>(p);
  if (m < 0) m += static_cast<long long>(p);
  return Scalar(f, static_cast<std::uint64_t>(m));
}

Scalar Scalar::of_fraction(const FieldSpec& f, long long num, long long den) {
  if (den == 0) throw DomainError("zero denominator");
  if (f.is_rationals()) {
    mpq_class q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return Scalar(f, std::move(q));
  }
  return of_int(f, num) / of_int(f, den);
}

Scalar Scalar::of_mpq(mpq_class q) {
  q.canonicalize();
  return Scalar(FieldSpec::rationals(), std::move(q));
}

Scalar Scalar::of_residue(const FieldSpec& f, std::uint64_t v) {
  if (f.is_rationals())
    throw DomainError("of_residue requires a prime field");
  return Scalar(f, v % f.modulus());
}

bool Scalar::is_zero() const {
  return field_.is_rationals() ? rat_ == 0 : res_ == 0;
}

bool Scalar::is_one() const {
  return field_.is_rationals() ? rat_ == 1 : res_ == 1 % field_.modulus();
}

void Scalar::check_same_field(const Scalar& o) const {
  if (field_ != o.field_)
    throw DomainError("scalar arithmetic across different fields");
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(o);
  if (field_.is_rationals()) return Scalar(field_, mpq_class(rat_ + o.rat_));
  std::uint64_t p = field_.modulus();
  std::uint64_t s = res_ + o.res_;
  if (s >= p) s -= p;
  return Scalar(field_, s);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(o);
  if (field_.is_rationals()) return Scalar(field_, mpq_class(rat_ * o.rat_));
  return Scalar(field_, mulmod(res_, o.res_, field_.modulus()));
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
  if (field_.is_rationals()) return Scalar(field_, mpq_class(-rat_));
  return Scalar(field_, res_ == 0 ? 0 : field_.modulus() - res_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DomainError("division by zero scalar");
  if (field_.is_rationals()) return Scalar(field_, mpq_class(1 / rat_));
  return Scalar(field_, powmod(res_, field_.modulus() - 2, field_.modulus()));
}

Scalar Scalar::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar r = one(field_);
  Scalar b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool Scalar::operator==(const Scalar& o) const {
  if (field_ != o.field_) return false;
  return field_.is_rationals() ? rat_ == o.rat_ : res_ == o.res_;
}

const mpq_class& Scalar::rational() const {
  if (!field_.is_rationals())
    throw DomainError("rational() on a prime field scalar");
  return rat_;
}

std::uint64_t Scalar::residue() const {
  if (field_.is_rationals())
    throw DomainError("residue() on a rational scalar");
  return res_;
}

std::string Scalar::str() const {
  if (field_.is_rationals()) return rat_.get_str();
  return std::to_string(res_);
}

}  // namespace metalie
