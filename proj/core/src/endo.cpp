#include "metalie/endo.hpp"

#include <algorithm>

#include "metalie/errors.hpp"

namespace metalie {

LinearMap LinearMap::transposition(int n, const FieldSpec& f, int s, int t) {
  if (s < 1 || s > n || t < 1 || t > n || s == t)
    throw DomainError("bad transposition indices");
  ScalarMatrix m = ScalarMatrix::identity(n, f);
  m.set(s, s, Scalar::zero(f));
  m.set(t, t, Scalar::zero(f));
  m.set(s, t, Scalar::one(f));
  m.set(t, s, Scalar::one(f));
  return LinearMap(std::move(m));
}

LinearMap LinearMap::transvection(int n, const FieldSpec& f, int target,
                                  int source, const Scalar& c) {
  if (target == source) throw DomainError("transvection needs distinct rows");
  ScalarMatrix m = ScalarMatrix::identity(n, f);
  m.set(source, target, c);
  return LinearMap(std::move(m));
}

LinearMap LinearMap::dilation(int n, const FieldSpec& f, int i,
                              const Scalar& c) {
  if (c.is_zero()) throw DomainError("dilation by zero");
  ScalarMatrix m = ScalarMatrix::identity(n, f);
  m.set(i, i, c);
  return LinearMap(std::move(m));
}

LinearMap LinearMap::permutation(int n, const FieldSpec& f,
                                 const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != n)
    throw DomainError("permutation length mismatch");
  std::vector<bool> seen(static_cast<size_t>(n), false);
  ScalarMatrix m(n, f);
  for (int k = 1; k <= n; ++k) {
    int img = perm[static_cast<size_t>(k - 1)];
    if (img < 1 || img > n || seen[static_cast<size_t>(img - 1)])
      throw DomainError("not a permutation");
    seen[static_cast<size_t>(img - 1)] = true;
    m.set(img, k, Scalar::one(f));
  }
  return LinearMap(std::move(m));
}

Endomorphism::Endomorphism(Context ctx, std::vector<MagnusElement> images)
    : ctx_(std::move(ctx)), images_(std::move(images)) {
  induced_.reserve(images_.size());
  for (const MagnusElement& e : images_) induced_.push_back(e.linear_form());
}

Endomorphism Endomorphism::identity(const Context& ctx) {
  std::vector<MagnusElement> images;
  images.reserve(static_cast<size_t>(ctx.n));
  for (int i = 1; i <= ctx.n; ++i)
    images.push_back(MagnusElement::generator(ctx, i));
  return Endomorphism(ctx, std::move(images));
}

Endomorphism Endomorphism::of_images(const Context& ctx,
                                     std::vector<MagnusElement> images) {
  if (static_cast<int>(images.size()) != ctx.n)
    throw DomainError("an endomorphism needs one image per generator");
  for (const MagnusElement& e : images) check_same_context(ctx, e.context());
  return Endomorphism(ctx, std::move(images));
}

const MagnusElement& Endomorphism::image(int i) const {
  if (i < 1 || i > ctx_.n) throw DomainError("index out of range");
  return images_[static_cast<size_t>(i - 1)];
}

const std::vector<Poly>& Endomorphism::induced_variable_images() const {
  return induced_;
}

Poly Endomorphism::induced(const Poly& f) const {
  check_same_context(ctx_, f.context());
  return f.substitute(induced_variable_images());
}

LinearMap Endomorphism::linear_part() const {
  ScalarMatrix m(ctx_.n, ctx_.field);
  for (int j = 1; j <= ctx_.n; ++j)
    for (int i = 1; i <= ctx_.n; ++i)
      m.set(i, j, image(j).linear_coefficient(i));
  return LinearMap(std::move(m));
}

bool Endomorphism::is_identity() const {
  return *this == identity(ctx_);
}

bool Endomorphism::operator==(const Endomorphism& o) const {
  if (!(ctx_ == o.ctx_)) return false;
  for (size_t k = 0; k < images_.size(); ++k)
    if (images_[k] != o.images_[k]) return false;
  return true;
}

MagnusElement apply(const Endomorphism& phi, const MagnusElement& g) {
  const Context& ctx = phi.context();
  check_same_context(ctx, g.context());
  MagnusElement out = MagnusElement::zero(ctx);
  for (int i = 1; i <= ctx.n; ++i) {
    const Scalar& li = g.linear_coefficient(i);
    if (!li.is_zero()) out = out + phi.image(i).scaled(li);
  }
  JacobianColumn column{ctx, g.commutator_coordinates()};
  for (const CommutatorTerm& t : commutator_form(column))
    out = out + module_scale(bracket(phi.image(t.i), phi.image(t.j)),
                             phi.induced(t.coeff));
  return out;
}

Endomorphism compose(const Endomorphism& phi, const Endomorphism& psi) {
  const Context& ctx = phi.context();
  check_same_context(ctx, psi.context());
  std::vector<MagnusElement> images;
  images.reserve(static_cast<size_t>(ctx.n));
  for (int i = 1; i <= ctx.n; ++i) images.push_back(apply(phi, psi.image(i)));
  return Endomorphism::of_images(ctx, std::move(images));
}

PolyMatrix jacobian(const Endomorphism& phi) {
  const Context& ctx = phi.context();
  PolyMatrix j(ctx);
  for (int col = 1; col <= ctx.n; ++col)
    for (int row = 1; row <= ctx.n; ++row)
      j.set(row, col, phi.image(col).module_coordinate(row));
  return j;
}

bool is_automorphism(const Endomorphism& phi) {
  Poly det = jacobian(phi).determinant();
  return !det.is_zero() && det.is_constant();
}

Endomorphism invert(const Endomorphism& phi) {
  const Context& ctx = phi.context();
  if (!is_automorphism(phi))
    throw DomainError("endomorphism is not an automorphism");
  LinearMap lin = phi.linear_part();
  LinearMap lin_inv = lin.inverse();
  Endomorphism lin_inv_endo = linear_endomorphism(ctx, lin_inv);
  Endomorphism reduced = compose(lin_inv_endo, phi);
  if (!(reduced.linear_part().matrix().is_identity()))
    throw CertificationError("linear-part reduction failed");

  PolyMatrix j = jacobian(reduced);
  Poly det = j.determinant();
  if (det.is_zero() || !det.is_constant())
    throw CertificationError("reduced Jacobian is not invertible");
  Scalar det_inv = det.constant_term().inverse();
  PolyMatrix inv = j.adjugate();
  for (int r = 1; r <= ctx.n; ++r)
    for (int c = 1; c <= ctx.n; ++c) inv.set(r, c, inv.at(r, c).scaled(det_inv));

  std::vector<MagnusElement> images;
  images.reserve(static_cast<size_t>(ctx.n));
  for (int col = 1; col <= ctx.n; ++col) {
    JacobianColumn b{ctx, {}};
    b.entries.reserve(static_cast<size_t>(ctx.n));
    for (int row = 1; row <= ctx.n; ++row) {
      Poly entry = inv.at(row, col);
      if (row == col) entry = entry - Poly::constant(ctx, 1);
      b.entries.push_back(std::move(entry));
    }
    if (!b.is_derivative_of_commutator())
      throw CertificationError("inverse Jacobian column violates Y*B = 0");
    images.push_back(MagnusElement::generator(ctx, col) + lift_column(b));
  }
  Endomorphism reduced_inv = Endomorphism::of_images(ctx, std::move(images));
  Endomorphism result = compose(reduced_inv, lin_inv_endo);
  if (!compose(phi, result).is_identity() ||
      !compose(result, phi).is_identity())
    throw CertificationError("inverse failed recomposition check");
  return result;
}

Endomorphism conjugate(const Endomorphism& phi, const Endomorphism& psi) {
  Endomorphism psi_inv = invert(psi);
  return compose(compose(psi, phi), psi_inv);
}

Endomorphism commutator(const Endomorphism& phi, const Endomorphism& psi) {
  return compose(compose(compose(phi, psi), invert(phi)), invert(psi));
}

namespace {

Endomorphism certified(Endomorphism e, const char* name) {
  if (!is_automorphism(e))
    throw CertificationError(std::string(name) +
                             " construction produced a non-automorphism");
  return e;
}

MagnusElement generator_bracket(const Context& ctx, int i, int j) {
  return bracket(MagnusElement::generator(ctx, i),
                 MagnusElement::generator(ctx, j));
}

}  // namespace

Endomorphism elementary_map(const Context& ctx, int i, const Scalar& alpha,
                            const MagnusElement& f) {
  check_same_context(ctx, f.context());
  if (alpha.is_zero())
    throw DomainError("elementary map needs a nonzero diagonal coefficient");
  if (!is_elementary_valid(i, f))
    throw DomainError("elementary image must not contain x" +
                      std::to_string(i));
  Endomorphism e = Endomorphism::identity(ctx);
  std::vector<MagnusElement> images = e.images();
  images[static_cast<size_t>(i - 1)] =
      MagnusElement::generator(ctx, i).scaled(alpha) + f;
  return certified(Endomorphism::of_images(ctx, std::move(images)),
                   "elementary");
}

Endomorphism linear_endomorphism(const Context& ctx, const LinearMap& m) {
  if (m.size() != ctx.n) throw DomainError("linear map size mismatch");
  if (!m.invertible()) throw DomainError("linear map is singular");
  std::vector<MagnusElement> images;
  images.reserve(static_cast<size_t>(ctx.n));
  for (int j = 1; j <= ctx.n; ++j) {
    MagnusElement img = MagnusElement::zero(ctx);
    for (int i = 1; i <= ctx.n; ++i) {
      const Scalar& c = m.matrix().at(i, j);
      if (!c.is_zero())
        img = img + MagnusElement::generator(ctx, i).scaled(c);
    }
    images.push_back(std::move(img));
  }
  return Endomorphism::of_images(ctx, std::move(images));
}

Endomorphism transposition_map(const Context& ctx, int s, int t) {
  return linear_endomorphism(
      ctx, LinearMap::transposition(ctx.n, ctx.field, s, t));
}

Endomorphism chein_map(const Poly& a) {
  const Context& ctx = a.context();
  if (ctx.n < 3) throw DomainError("chein map needs n >= 3");
  std::vector<MagnusElement> images = Endomorphism::identity(ctx).images();
  images[0] = images[0] + module_scale(generator_bracket(ctx, 2, 3), a);
  return certified(Endomorphism::of_images(ctx, std::move(images)), "chein");
}

Endomorphism d_map(const Poly& a) {
  const Context& ctx = a.context();
  MagnusElement b12 = generator_bracket(ctx, 1, 2);
  std::vector<MagnusElement> images = Endomorphism::identity(ctx).images();
  images[0] = images[0] + module_scale(b12, Poly::variable(ctx, 1) * a);
  images[1] = images[1] + module_scale(b12, Poly::variable(ctx, 2) * a);
  return certified(Endomorphism::of_images(ctx, std::move(images)), "d_map");
}

Endomorphism exponential_map(const MagnusElement& m) {
  const Context& ctx = m.context();
  if (!m.in_derived())
    throw DomainError("exponential argument must lie in the derived part");
  std::vector<MagnusElement> images;
  images.reserve(static_cast<size_t>(ctx.n));
  for (int i = 1; i <= ctx.n; ++i)
    images.push_back(MagnusElement::generator(ctx, i) +
                     bracket(m, MagnusElement::generator(ctx, i)));
  return certified(Endomorphism::of_images(ctx, std::move(images)),
                   "exponential");
}

Endomorphism a_map(const Poly& h, const Poly& g) {
  const Context& ctx = h.context();
  check_same_context(ctx, g.context());
  if (ctx.n < 3) throw DomainError("a_map needs n >= 3");
  const int n = ctx.n;
  MagnusElement b1n = generator_bracket(ctx, 1, n);
  MagnusElement b2n = generator_bracket(ctx, 2, n);
  std::vector<MagnusElement> images = Endomorphism::identity(ctx).images();
  images[0] = images[0] + module_scale(b1n, h * g) + module_scale(b2n, h * g * g);
  images[1] = images[1] - module_scale(b1n, h) - module_scale(b2n, h * g);
  return certified(Endomorphism::of_images(ctx, std::move(images)), "a_map");
}

Endomorphism b_map(const Poly& h, const Poly& f, const Poly& g) {
  const Context& ctx = h.context();
  check_same_context(ctx, f.context());
  check_same_context(ctx, g.context());
  if (ctx.n < 3) throw DomainError("b_map needs n >= 3");
  const int n = ctx.n;
  MagnusElement b1n = generator_bracket(ctx, 1, n);
  MagnusElement b2n = generator_bracket(ctx, 2, n);
  std::vector<MagnusElement> images = Endomorphism::identity(ctx).images();
  images[0] =
      images[0] + module_scale(b1n, h * f * g) + module_scale(b2n, h * g * g);
  images[1] =
      images[1] - module_scale(b1n, h * f * f) - module_scale(b2n, h * f * g);
  return certified(Endomorphism::of_images(ctx, std::move(images)), "b_map");
}

Endomorphism quadratic_map(const Context& ctx) {
  return chein_map(Poly::constant(ctx, 1));
}

Endomorphism cubic_map(const Context& ctx) {
  return chein_map(Poly::variable(ctx, 1));
}

std::optional<int> one_row_index(const Endomorphism& phi) {
  const Context& ctx = phi.context();
  std::optional<int> moved;
  for (int i = 1; i <= ctx.n; ++i) {
    if (phi.image(i) == MagnusElement::generator(ctx, i)) continue;
    if (moved) return std::nullopt;
    moved = i;
  }
  if (!moved) return 1;  // the identity moves no row; report the first
  return moved;
}

bool is_chein_valid(int i, const MagnusElement& f) {
  if (i < 1 || i > f.context().n) throw DomainError("row index out of range");
  return f.in_derived() && f.module_coordinate(i).is_zero();
}

bool is_elementary_valid(int i, const MagnusElement& f) {
  if (i < 1 || i > f.context().n) throw DomainError("row index out of range");
  if (!f.linear_coefficient(i).is_zero()) return false;
  if (!f.module_coordinate(i).is_zero()) return false;
  for (int k = 1; k <= f.context().n; ++k)
    if (f.module_coordinate(k).contains_variable(i)) return false;
  return true;
}

DegreePair endo_degrees(const Endomorphism& phi) {
  DegreePair d;
  for (int i = 1; i <= phi.context().n; ++i) {
    for (const Poly& c : phi.image(i).commutator_coordinates()) {
      if (c.is_zero()) continue;
      d.ldeg = std::min(d.ldeg, c.lower_degree() + 1);
      d.deg = std::max(d.deg, c.degree() + 1);
    }
  }
  return d;
}

}  // namespace metalie
