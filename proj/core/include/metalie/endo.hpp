#pragma once

#include <optional>
#include <vector>

#include "metalie/element.hpp"
#include "metalie/matrix.hpp"

namespace metalie {

/// Invertible-or-not linear self-map; column i holds the coordinates of the
/// image of x_i in the generator basis.
class LinearMap {
public:
  explicit LinearMap(ScalarMatrix m) : m_(std::move(m)) {}
  static LinearMap identity(int n, const FieldSpec& f) {
    return LinearMap(ScalarMatrix::identity(n, f));
  }
  static LinearMap transposition(int n, const FieldSpec& f, int s, int t);
  /// x_target -> x_target + c * x_source, fixing the rest.
  static LinearMap transvection(int n, const FieldSpec& f, int target,
                                int source, const Scalar& c);
  static LinearMap dilation(int n, const FieldSpec& f, int i, const Scalar& c);
  /// A permutation sending x_k to x_{perm[k-1]}.
  static LinearMap permutation(int n, const FieldSpec& f,
                               const std::vector<int>& perm);

  const ScalarMatrix& matrix() const { return m_; }
  int size() const { return m_.size(); }
  bool invertible() const { return m_.invertible(); }
  LinearMap inverse() const { return LinearMap(m_.inverse()); }
  LinearMap operator*(const LinearMap& o) const { return LinearMap(m_ * o.m_); }
  bool operator==(const LinearMap& o) const { return m_ == o.m_; }

private:
  ScalarMatrix m_;
};

/// Endomorphism of the free metabelian algebra, stored as the ordered tuple
/// of generator images in Magnus coordinates.
class Endomorphism {
public:
  static Endomorphism identity(const Context& ctx);
  static Endomorphism of_images(const Context& ctx,
                                std::vector<MagnusElement> images);

  const Context& context() const { return ctx_; }
  const MagnusElement& image(int i) const;  // 1-based
  const std::vector<MagnusElement>& images() const { return images_; }

  /// Images of the variables under the induced endomorphism of the
  /// polynomial ring: y_i -> linear form of image(i).
  const std::vector<Poly>& induced_variable_images() const;
  /// f^phi: substitution by the induced endomorphism of U.
  Poly induced(const Poly& f) const;

  /// Matrix of the linear parts (column i = linear coefficients of image(i)).
  LinearMap linear_part() const;
  bool is_identity() const;
  bool operator==(const Endomorphism& o) const;
  bool operator!=(const Endomorphism& o) const { return !(*this == o); }

private:
  Endomorphism(Context ctx, std::vector<MagnusElement> images);
  Context ctx_;
  std::vector<MagnusElement> images_;
  std::vector<Poly> induced_;  // linear forms, precomputed
};

/// phi(g), computed by writing g = sum lambda_i x_i + sum [x_i,x_j] a_{ij}
/// and mapping it to sum lambda_i f_i + sum [f_i,f_j] a_{ij}^phi.
MagnusElement apply(const Endomorphism& phi, const MagnusElement& g);

/// The product phi psi: x_i -> apply(phi, psi(x_i)).
Endomorphism compose(const Endomorphism& phi, const Endomorphism& psi);

/// Column j is the Fox column of image j.
PolyMatrix jacobian(const Endomorphism& phi);

/// True iff det J(phi) is a nonzero constant (the units of the polynomial
/// ring are the nonzero field elements).
bool is_automorphism(const Endomorphism& phi);

/// Exact inverse: factors out the linear part, inverts the Jacobian of the
/// reduced map by adjugate/determinant, lifts the columns, and certifies
/// both compositions against the identity.
Endomorphism invert(const Endomorphism& phi);

/// phi^psi = psi phi psi^{-1}.
Endomorphism conjugate(const Endomorphism& phi, const Endomorphism& psi);
/// [phi, psi] = phi psi phi^{-1} psi^{-1}.
Endomorphism commutator(const Endomorphism& phi, const Endomorphism& psi);

// Named automorphism builders; each certifies is_automorphism on
// construction.

/// x_i -> alpha x_i + f with f free of x_i, fixing the other generators.
Endomorphism elementary_map(const Context& ctx, int i, const Scalar& alpha,
                            const MagnusElement& f);
Endomorphism linear_endomorphism(const Context& ctx, const LinearMap& m);
Endomorphism transposition_map(const Context& ctx, int s, int t);
/// C(a) = (x_1 + [x_2,x_3] a, x_2, ..., x_n).
Endomorphism chein_map(const Poly& a);
/// D(a) = (x_1 + [x_1,x_2] y_1 a, x_2 + [x_1,x_2] y_2 a, x_3, ..., x_n).
Endomorphism d_map(const Poly& a);
/// exp(ad m) = (x_1 + [m,x_1], ..., x_n + [m,x_n]) for m in the derived part.
Endomorphism exponential_map(const MagnusElement& m);
/// A(h,g) = (x_1 + [x_1,x_n]hg + [x_2,x_n]hg^2,
///           x_2 - [x_1,x_n]h  - [x_2,x_n]hg, x_3, ..., x_n).
Endomorphism a_map(const Poly& h, const Poly& g);
/// B(h,f,g) = (x_1 + [x_1,x_n]hfg + [x_2,x_n]hg^2,
///             x_2 - [x_1,x_n]hf^2 - [x_2,x_n]hfg, x_3, ..., x_n).
Endomorphism b_map(const Poly& h, const Poly& f, const Poly& g);
/// The quadratic generator (x_1 + [x_2,x_3], x_2, ..., x_n).
Endomorphism quadratic_map(const Context& ctx);
/// The irreducible cubic (x_1 + [[x_2,x_3],x_1], x_2, ..., x_n).
Endomorphism cubic_map(const Context& ctx);

/// Row index when phi fixes every generator but one (1 for the identity);
/// nullopt when two or more generators move.
std::optional<int> one_row_index(const Endomorphism& phi);

/// Whether x_i -> x_i + f is an automorphism: f lies in the derived part and
/// its i-th Fox derivative vanishes.
bool is_chein_valid(int i, const MagnusElement& f);

/// Whether f is admissible for an elementary map in row i: additionally the
/// coordinates must not involve y_i (f does not contain x_i at all).
bool is_elementary_valid(int i, const MagnusElement& f);

/// (ldeg, deg) over the nonlinear parts of the images; linear endomorphisms
/// give the zero-value sentinels.
DegreePair endo_degrees(const Endomorphism& phi);

}  // namespace metalie
