#pragma once

#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "metalie/field.hpp"

namespace metalie {

/// Session parameters: number of generators n (2 <= n <= 16) and the
/// coefficient field.  Every value carries its context; operations across
/// mismatched contexts throw DomainError.
struct Context {
  int n;
  FieldSpec field;

  Context(int n_, FieldSpec field_) : n(n_), field(std::move(field_)) {
    if (n < 2 || n > 16)
      throw DomainError("generator count must be in [2, 16], got " +
                        std::to_string(n));
  }
  bool operator==(const Context& o) const = default;
};

inline void check_same_context(const Context& a, const Context& b) {
  if (!(a == b)) throw DomainError("mixed session contexts");
}

/// deg(0) sentinel.
inline constexpr int kDegOfZero = std::numeric_limits<int>::min();
/// ldeg(0) sentinel.
inline constexpr int kLdegOfZero = std::numeric_limits<int>::max();

/// (ldeg, deg) of a value, with the zero-value sentinels above.
struct DegreePair {
  int ldeg = kLdegOfZero;
  int deg = kDegOfZero;
  bool operator==(const DegreePair&) const = default;
};

/// Commutative monomial in y_1..y_n, stored as a dense exponent vector.
class Monomial {
public:
  explicit Monomial(int nvars) : exps_(static_cast<size_t>(nvars), 0) {}
  static Monomial variable(int nvars, int i, int power = 1);
  static Monomial of_exponents(std::vector<int> exps);

  int vars() const { return static_cast<int>(exps_.size()); }
  int exponent(int i) const;  // i is 1-based
  int total_degree() const;
  bool is_constant() const { return total_degree() == 0; }

  Monomial times(const Monomial& o) const;
  bool divisible_by_variable(int i) const { return exponent(i) > 0; }
  Monomial divided_by_variable(int i) const;
  bool divides(const Monomial& o) const;
  Monomial divided_by(const Monomial& o) const;
  bool contains_variable(int i) const { return exponent(i) > 0; }

  /// Graded lexicographic order (y1 > y2 > ... > yn); returns <0, 0, >0.
  static int compare(const Monomial& a, const Monomial& b);
  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }

  std::span<const int> exponents() const { return exps_; }

private:
  std::vector<int> exps_;
};

/// Sparse multivariate polynomial over the session field, in canonical form:
/// terms sorted in descending graded-lex order, no zero coefficients.
class Poly {
public:
  using Term = std::pair<Monomial, Scalar>;

  explicit Poly(Context ctx) : ctx_(std::move(ctx)) {}
  static Poly zero(const Context& ctx) { return Poly(ctx); }
  static Poly constant(const Context& ctx, const Scalar& c);
  static Poly constant(const Context& ctx, long long c);
  static Poly variable(const Context& ctx, int i);
  static Poly of_monomial(const Context& ctx, const Monomial& m,
                          const Scalar& c);
  /// Builds canonical form from arbitrary (monomial, coefficient) pairs.
  static Poly of_terms(const Context& ctx, std::vector<Term> terms);

  const Context& context() const { return ctx_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_term() const;
  /// Coefficient of m (zero scalar if absent).
  Scalar coefficient(const Monomial& m) const;

  int degree() const;        // kDegOfZero for the zero polynomial
  int lower_degree() const;  // kLdegOfZero for the zero polynomial
  DegreePair degrees() const { return {lower_degree(), degree()}; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Scalar& c) const;
  Poly pow(int e) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Simultaneous substitution y_i -> images[i-1], exactly expanded.
  Poly substitute(std::span<const Poly> images) const;

  /// Unique decomposition p = y_i * q + r with r free of y_i; returns (q, r).
  std::pair<Poly, Poly> split_by_variable(int i) const;
  /// The quotient part of split_by_variable.
  Poly variable_quotient(int i) const { return split_by_variable(i).first; }
  bool contains_variable(int i) const;

  /// Restriction of the terms whose y_i-exponent is exactly e (the y_i power
  /// is kept in the result).
  Poly part_with_exponent(int i, int e) const;
  /// The terms of exact total degree d.
  Poly homogeneous_part(int d) const;

  /// Exact division; throws DomainError when o does not divide *this.
  Poly divide_exact(const Poly& o) const;

  std::string str() const;

private:
  void check_var(int i) const;
  Context ctx_;
  std::vector<Term> terms_;
};

}  // namespace metalie
