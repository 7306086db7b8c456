#pragma once

#include <vector>

#include "metalie/poly.hpp"

namespace metalie {

struct JacobianColumn;

/// Element of the free metabelian Lie algebra in Magnus coordinates: a
/// linear part (coefficients of y_i) plus a free-module part with polynomial
/// coordinates d_i (the coefficient of t_i).
///
/// Membership in the subalgebra generated by x_i = y_i + t_i is equivalent
/// to sum_i y_i * (d_i - lambda_i) = 0; the public factory enforces it.
class MagnusElement {
public:
  static MagnusElement zero(const Context& ctx);
  static MagnusElement generator(const Context& ctx, int i);  // x_i
  /// Validates the membership relation; throws DomainError otherwise.
  static MagnusElement make(const Context& ctx, std::vector<Scalar> linear,
                            std::vector<Poly> module);
  /// An element of the derived subalgebra with the given Fox column, which
  /// must satisfy Y * column = 0 (checked).
  static MagnusElement derived(const Context& ctx, std::vector<Poly> column);

  const Context& context() const { return ctx_; }
  const Scalar& linear_coefficient(int i) const;   // 1-based
  const Poly& module_coordinate(int i) const;      // 1-based
  const std::vector<Poly>& module_coordinates() const { return module_; }

  bool is_zero() const;
  /// True when the element lies in the derived subalgebra (all lambda_i = 0).
  bool in_derived() const;
  /// Linear part as the degree-<=1 polynomial sum lambda_i y_i.
  Poly linear_form() const;
  /// Coordinates of the commutator component: d_i - lambda_i.
  std::vector<Poly> commutator_coordinates() const;

  MagnusElement operator+(const MagnusElement& o) const;
  MagnusElement operator-(const MagnusElement& o) const;
  MagnusElement operator-() const;
  MagnusElement scaled(const Scalar& c) const;
  bool operator==(const MagnusElement& o) const;
  bool operator!=(const MagnusElement& o) const { return !(*this == o); }

private:
  MagnusElement(Context ctx, std::vector<Scalar> linear,
                std::vector<Poly> module)
      : ctx_(std::move(ctx)), linear_(std::move(linear)),
        module_(std::move(module)) {}

  friend MagnusElement bracket(const MagnusElement&, const MagnusElement&);
  friend MagnusElement module_scale(const MagnusElement&, const Poly&);

  Context ctx_;
  std::vector<Scalar> linear_;
  std::vector<Poly> module_;
};

/// [a+t, b+s] = t*b - s*a.  The result always lies in the derived part.
MagnusElement bracket(const MagnusElement& u, const MagnusElement& v);

/// m * u for m in the derived subalgebra; equals iterated bracketing with
/// generators when u is a monomial (m y_i = [m, x_i]).
MagnusElement module_scale(const MagnusElement& m, const Poly& u);

/// Fox-derivative column of an element: entry i is the t_i-coordinate.
struct JacobianColumn {
  Context ctx;
  std::vector<Poly> entries;  // entry i-1 = d/dx_i

  /// Y * a = y_1 a_1 + ... + y_n a_n; zero exactly for columns of derived
  /// elements.
  Poly pairing_with_variables() const;
  bool is_derivative_of_commutator() const {
    return pairing_with_variables().is_zero();
  }
  bool operator==(const JacobianColumn& o) const {
    return ctx == o.ctx && entries == o.entries;
  }
};

JacobianColumn fox_derivatives(const MagnusElement& f);

/// One summand of a standard form sum_{i<j} [x_i, x_j] a_{ij}.
struct CommutatorTerm {
  int i;
  int j;  // i < j
  Poly coeff;
};

/// Rewrites a column with Y*a = 0 as sum (e_i y_j - e_j y_i) a_{ij} by the
/// variable-elimination argument, eliminating y_n, y_{n-1}, ..., y_2 in that
/// order.  Throws DomainError when Y*a != 0.
std::vector<CommutatorTerm> commutator_form(const JacobianColumn& a);

/// Inverse of fox_derivatives on the derived subalgebra: rebuilds the unique
/// f with fox_derivatives(f) = a from the standard form produced by
/// commutator_form, and certifies the round trip.
MagnusElement lift_column(const JacobianColumn& a);

/// Degrees in the generator grading: a module monomial of y-degree k
/// contributes k+1, the linear part contributes 1.
DegreePair element_degrees(const MagnusElement& f);

/// One right-normed basis monomial [...[[x_head, x_{t1}], x_{t2}], ..., x_{tk}]
/// with head > t1 <= t2 <= ... <= tk.
struct BasisTerm {
  Scalar coeff;
  int head;
  std::vector<int> tail;  // non-decreasing, non-empty
  bool operator==(const BasisTerm& o) const {
    return coeff == o.coeff && head == o.head && tail == o.tail;
  }
};

/// A linear part plus a combination of right-normed basis monomials.
struct BasisCombination {
  Context ctx;
  std::vector<Scalar> linear;
  std::vector<BasisTerm> terms;  // sorted, distinct, nonzero coefficients
  bool operator==(const BasisCombination& o) const {
    return ctx == o.ctx && linear == o.linear && terms == o.terms;
  }
};

/// Straightens an element into the right-normed basis; the round trip
/// eval_basis(to_basis(f)) == f holds exactly.
BasisCombination to_basis(const MagnusElement& f);
MagnusElement eval_basis(const BasisCombination& b);

}  // namespace metalie
