#pragma once

#include <vector>

#include "metalie/poly.hpp"

namespace metalie {

/// Dense n x n matrix over the session field.  Indices are 1-based to match
/// generator numbering.
class ScalarMatrix {
public:
  ScalarMatrix(int n, const FieldSpec& field);
  static ScalarMatrix identity(int n, const FieldSpec& field);

  int size() const { return n_; }
  const FieldSpec& field() const { return field_; }
  const Scalar& at(int i, int j) const;
  void set(int i, int j, const Scalar& v);

  ScalarMatrix operator*(const ScalarMatrix& o) const;
  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;
  Scalar determinant() const;
  bool invertible() const { return !determinant().is_zero(); }
  /// Exact Gauss-Jordan inverse; throws DomainError when singular.
  ScalarMatrix inverse() const;
  bool operator==(const ScalarMatrix& o) const;
  bool is_identity() const;

private:
  int n_;
  FieldSpec field_;
  std::vector<Scalar> e_;
};

/// Dense n x n matrix over U = K[y_1..y_n].
class PolyMatrix {
public:
  explicit PolyMatrix(const Context& ctx);
  static PolyMatrix identity(const Context& ctx);

  const Context& context() const { return ctx_; }
  int size() const { return ctx_.n; }
  const Poly& at(int i, int j) const;
  void set(int i, int j, Poly v);

  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix operator-(const PolyMatrix& o) const;
  /// Entrywise substitution y_i -> images[i-1].
  PolyMatrix substitute(std::span<const Poly> images) const;

  /// Fraction-free (Bareiss) determinant; every intermediate division is
  /// exact over the polynomial ring.
  Poly determinant() const;
  /// Adjugate via cofactors; satisfies A * adj(A) = det(A) * I.
  PolyMatrix adjugate() const;

  bool operator==(const PolyMatrix& o) const;

private:
  Poly minor_determinant(int skip_row, int skip_col) const;
  Context ctx_;
  std::vector<Poly> e_;
};

}  // namespace metalie
