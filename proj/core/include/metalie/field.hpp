#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "metalie/errors.hpp"

namespace metalie {

/// Coefficient field of a session: the rationals or a prime field GF(p).
class FieldSpec {
public:
  enum class Kind { rationals, prime_field };

  static FieldSpec rationals() { return FieldSpec(Kind::rationals, 0); }
  /// Throws DomainError unless p is prime.
  static FieldSpec prime_field(std::uint64_t p);

  Kind kind() const { return kind_; }
  bool is_rationals() const { return kind_ == Kind::rationals; }
  /// 0 for the rationals, p for GF(p).
  std::uint64_t characteristic() const { return p_; }
  std::uint64_t modulus() const { return p_; }

  bool operator==(const FieldSpec& o) const = default;

  /// "q" or "gf:<p>"; parse() accepts the same notation.
  std::string str() const;
  static FieldSpec parse(const std::string& text);

private:
  FieldSpec(Kind k, std::uint64_t p) : kind_(k), p_(p) {}
  Kind kind_;
  std::uint64_t p_;
};

/// An exact element of the session field.  Rationals are kept fully reduced
/// with positive denominator; GF(p) values are canonical representatives in
/// [0, p).  All arithmetic is exact.
class Scalar {
public:
  Scalar() : field_(FieldSpec::rationals()), rat_(0) {}

  static Scalar zero(const FieldSpec& f) { return of_int(f, 0); }
  static Scalar one(const FieldSpec& f) { return of_int(f, 1); }
  static Scalar of_int(const FieldSpec& f, long long v);
  /// num/den in the field; in GF(p) the denominator is inverted mod p.
  static Scalar of_fraction(const FieldSpec& f, long long num, long long den);
  static Scalar of_mpq(mpq_class q);
  static Scalar of_residue(const FieldSpec& f, std::uint64_t v);

  const FieldSpec& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inverse() const;
  Scalar pow(long long e) const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// The reduced rational value (rationals only).
  const mpq_class& rational() const;
  /// The canonical representative in [0, p) (prime fields only).
  std::uint64_t residue() const;

  /// Canonical text: "p/q" or "p" over the rationals, the representative
  /// over GF(p).
  std::string str() const;

private:
  Scalar(FieldSpec f, mpq_class q) : field_(f), rat_(std::move(q)), res_(0) {}
  Scalar(FieldSpec f, std::uint64_t r) : field_(f), rat_(0), res_(r) {}
  void check_same_field(const Scalar& o) const;

  FieldSpec field_;
  mpq_class rat_;
  std::uint64_t res_;
};

}  // namespace metalie
