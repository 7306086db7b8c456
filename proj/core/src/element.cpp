#include "metalie/element.hpp"

#include <algorithm>
#include <map>

#include "metalie/errors.hpp"

namespace metalie {

MagnusElement MagnusElement::zero(const Context& ctx) {
  return MagnusElement(ctx,
                       std::vector<Scalar>(static_cast<size_t>(ctx.n),
                                           Scalar::zero(ctx.field)),
                       std::vector<Poly>(static_cast<size_t>(ctx.n),
                                         Poly::zero(ctx)));
}

MagnusElement MagnusElement::generator(const Context& ctx, int i) {
  if (i < 1 || i > ctx.n)
    throw DomainError("generator index out of range: x" + std::to_string(i));
  MagnusElement e = zero(ctx);
  e.linear_[static_cast<size_t>(i - 1)] = Scalar::one(ctx.field);
  e.module_[static_cast<size_t>(i - 1)] = Poly::constant(ctx, 1);
  return e;
}

MagnusElement MagnusElement::make(const Context& ctx,
                                  std::vector<Scalar> linear,
                                  std::vector<Poly> module) {
  if (static_cast<int>(linear.size()) != ctx.n ||
      static_cast<int>(module.size()) != ctx.n)
    throw DomainError("coordinate vectors must have length n");
  for (const Scalar& s : linear)
    if (s.field() != ctx.field) throw DomainError("scalar field mismatch");
  for (const Poly& p : module) check_same_context(ctx, p.context());
  Poly rel = Poly::zero(ctx);
  for (int i = 1; i <= ctx.n; ++i) {
    Poly di = module[static_cast<size_t>(i - 1)] -
              Poly::constant(ctx, linear[static_cast<size_t>(i - 1)]);
    rel = rel + Poly::variable(ctx, i) * di;
  }
  if (!rel.is_zero())
    throw DomainError(
        "coordinates violate the membership relation of the metabelian "
        "subalgebra");
  return MagnusElement(ctx, std::move(linear), std::move(module));
}

MagnusElement MagnusElement::derived(const Context& ctx,
                                     std::vector<Poly> column) {
  return make(ctx,
              std::vector<Scalar>(static_cast<size_t>(ctx.n),
                                  Scalar::zero(ctx.field)),
              std::move(column));
}

const Scalar& MagnusElement::linear_coefficient(int i) const {
  if (i < 1 || i > ctx_.n) throw DomainError("index out of range");
  return linear_[static_cast<size_t>(i - 1)];
}

const Poly& MagnusElement::module_coordinate(int i) const {
  if (i < 1 || i > ctx_.n) throw DomainError("index out of range");
  return module_[static_cast<size_t>(i - 1)];
}

bool MagnusElement::is_zero() const {
  for (const Poly& p : module_)
    if (!p.is_zero()) return false;
  for (const Scalar& s : linear_)
    if (!s.is_zero()) return false;
  return true;
}

bool MagnusElement::in_derived() const {
  for (const Scalar& s : linear_)
    if (!s.is_zero()) return false;
  return true;
}

Poly MagnusElement::linear_form() const {
  Poly r = Poly::zero(ctx_);
  for (int i = 1; i <= ctx_.n; ++i) {
    const Scalar& c = linear_[static_cast<size_t>(i - 1)];
    if (!c.is_zero()) r = r + Poly::variable(ctx_, i).scaled(c);
  }
  return r;
}

std::vector<Poly> MagnusElement::commutator_coordinates() const {
  std::vector<Poly> r;
  r.reserve(module_.size());
  for (int i = 1; i <= ctx_.n; ++i)
    r.push_back(module_[static_cast<size_t>(i - 1)] -
                Poly::constant(ctx_, linear_[static_cast<size_t>(i - 1)]));
  return r;
}

MagnusElement MagnusElement::operator+(const MagnusElement& o) const {
  check_same_context(ctx_, o.ctx_);
  MagnusElement r = *this;
  for (size_t k = 0; k < linear_.size(); ++k) {
    r.linear_[k] = r.linear_[k] + o.linear_[k];
    r.module_[k] = r.module_[k] + o.module_[k];
  }
  return r;
}

MagnusElement MagnusElement::operator-() const { return scaled(
    -Scalar::one(ctx_.field)); }

MagnusElement MagnusElement::operator-(const MagnusElement& o) const {
  return *this + (-o);
}

MagnusElement MagnusElement::scaled(const Scalar& c) const {
  MagnusElement r = *this;
  for (size_t k = 0; k < linear_.size(); ++k) {
    r.linear_[k] = r.linear_[k] * c;
    r.module_[k] = r.module_[k].scaled(c);
  }
  return r;
}

bool MagnusElement::operator==(const MagnusElement& o) const {
  if (!(ctx_ == o.ctx_)) return false;
  for (size_t k = 0; k < linear_.size(); ++k)
    if (!(linear_[k] == o.linear_[k] && module_[k] == o.module_[k]))
      return false;
  return true;
}

MagnusElement bracket(const MagnusElement& u, const MagnusElement& v) {
  check_same_context(u.ctx_, v.ctx_);
  const Context& ctx = u.ctx_;
  Poly lu = u.linear_form();
  Poly lv = v.linear_form();
  MagnusElement r = MagnusElement::zero(ctx);
  for (size_t k = 0; k < r.module_.size(); ++k)
    r.module_[k] = u.module_[k] * lv - v.module_[k] * lu;
  return r;
}

MagnusElement module_scale(const MagnusElement& m, const Poly& u) {
  check_same_context(m.ctx_, u.context());
  if (!m.in_derived())
    throw DomainError(
        "module action is defined only on the derived subalgebra");
  MagnusElement r = m;
  for (Poly& d : r.module_) d = d * u;
  return r;
}

Poly JacobianColumn::pairing_with_variables() const {
  Poly r = Poly::zero(ctx);
  for (int i = 1; i <= ctx.n; ++i)
    r = r + Poly::variable(ctx, i) * entries[static_cast<size_t>(i - 1)];
  return r;
}

JacobianColumn fox_derivatives(const MagnusElement& f) {
  return JacobianColumn{f.context(), f.module_coordinates()};
}

std::vector<CommutatorTerm> commutator_form(const JacobianColumn& a) {
  const Context& ctx = a.ctx;
  if (static_cast<int>(a.entries.size()) != ctx.n)
    throw DomainError("column length mismatch");
  if (!a.is_derivative_of_commutator())
    throw DomainError(
        "column is not the derivative of a commutator element (Y*a != 0)");
  std::vector<CommutatorTerm> out;
  std::vector<Poly> col = a.entries;
  // Eliminate variables n, n-1, ..., 2.  At stage k the active entries are
  // col[0..k-1] over K[y_1..y_k]; split a_i = y_k q_i + a_i^0 and subtract
  // the column of sum_i [x_i, x_k] q_i, after which the relation forces the
  // k-th entry to vanish.
  for (int k = ctx.n; k >= 2; --k) {
    for (int i = 1; i < k; ++i) {
      auto [q, rem] = col[static_cast<size_t>(i - 1)].split_by_variable(k);
      if (!q.is_zero()) out.push_back({i, k, q});
      col[static_cast<size_t>(i - 1)] = rem;
    }
    col[static_cast<size_t>(k - 1)] = Poly::zero(ctx);
  }
  if (!col[0].is_zero())
    throw CertificationError("commutator-form elimination left a residue");
  return out;
}

MagnusElement lift_column(const JacobianColumn& a) {
  const Context& ctx = a.ctx;
  std::vector<CommutatorTerm> terms = commutator_form(a);
  MagnusElement f = MagnusElement::zero(ctx);
  for (const CommutatorTerm& t : terms)
    f = f + module_scale(bracket(MagnusElement::generator(ctx, t.i),
                                 MagnusElement::generator(ctx, t.j)),
                         t.coeff);
  if (!(fox_derivatives(f) == a))
    throw CertificationError("lifted element does not reproduce its column");
  return f;
}

DegreePair element_degrees(const MagnusElement& f) {
  DegreePair d;
  for (int i = 1; i <= f.context().n; ++i) {
    const Poly& p = f.module_coordinate(i);
    if (p.is_zero()) continue;
    d.ldeg = std::min(d.ldeg, p.lower_degree() + 1);
    d.deg = std::max(d.deg, p.degree() + 1);
  }
  return d;
}

namespace {

struct BasisKey {
  int head;
  std::vector<int> tail;
  bool operator<(const BasisKey& o) const {
    if (head != o.head) return head < o.head;
    return tail < o.tail;
  }
};

// [[x_p,x_q],x_r] = [[x_p,x_r],x_q] - [[x_q,x_r],x_p]: rewrites a bracket
// pair times a sorted multiset of module multipliers into basis terms.
void normalize_term(int p, int q, std::vector<int> multipliers, Scalar coeff,
                    std::map<BasisKey, Scalar>& acc) {
  if (coeff.is_zero()) return;
  if (p < q) {
    normalize_term(q, p, std::move(multipliers), -coeff, acc);
    return;
  }
  // p > q here; p == q would be a zero bracket and never reaches this point.
  if (multipliers.empty() || q <= multipliers.front()) {
    BasisKey key{p, {}};
    key.tail.reserve(multipliers.size() + 1);
    key.tail.push_back(q);
    key.tail.insert(key.tail.end(), multipliers.begin(), multipliers.end());
    auto [it, inserted] = acc.emplace(key, coeff);
    if (!inserted) {
      it->second = it->second + coeff;
      if (it->second.is_zero()) acc.erase(it);
    }
    return;
  }
  int k = multipliers.front();
  std::vector<int> rest(multipliers.begin() + 1, multipliers.end());
  std::vector<int> with_q = rest;
  with_q.insert(std::upper_bound(with_q.begin(), with_q.end(), q), q);
  std::vector<int> with_p = rest;
  with_p.insert(std::upper_bound(with_p.begin(), with_p.end(), p), p);
  normalize_term(p, k, std::move(with_q), coeff, acc);
  normalize_term(q, k, std::move(with_p), -coeff, acc);
}

}  // namespace

BasisCombination to_basis(const MagnusElement& f) {
  const Context& ctx = f.context();
  BasisCombination out{ctx, {}, {}};
  out.linear.reserve(static_cast<size_t>(ctx.n));
  for (int i = 1; i <= ctx.n; ++i) out.linear.push_back(f.linear_coefficient(i));

  JacobianColumn column{ctx, f.commutator_coordinates()};
  std::map<BasisKey, Scalar> acc;
  for (const CommutatorTerm& t : commutator_form(column)) {
    for (const auto& [mono, c] : t.coeff.terms()) {
      std::vector<int> multipliers;
      for (int v = 1; v <= ctx.n; ++v)
        for (int e = 0; e < mono.exponent(v); ++e) multipliers.push_back(v);
      normalize_term(t.i, t.j, std::move(multipliers), c, acc);
    }
  }
  for (auto& [key, c] : acc)
    out.terms.push_back(BasisTerm{c, key.head, key.tail});
  return out;
}

MagnusElement eval_basis(const BasisCombination& b) {
  const Context& ctx = b.ctx;
  if (static_cast<int>(b.linear.size()) != ctx.n)
    throw DomainError("linear part must have length n");
  MagnusElement r = MagnusElement::zero(ctx);
  for (int i = 1; i <= ctx.n; ++i)
    r = r + MagnusElement::generator(ctx, i).scaled(
                b.linear[static_cast<size_t>(i - 1)]);
  for (const BasisTerm& t : b.terms) {
    if (t.tail.empty()) throw DomainError("basis term needs a tail");
    if (t.head <= t.tail.front())
      throw DomainError("basis term violates head > first-tail");
    if (!std::is_sorted(t.tail.begin(), t.tail.end()))
      throw DomainError("basis term tail must be non-decreasing");
    MagnusElement m = bracket(MagnusElement::generator(ctx, t.head),
                              MagnusElement::generator(ctx, t.tail.front()));
    Poly mult = Poly::constant(ctx, 1);
    for (size_t k = 1; k < t.tail.size(); ++k)
      mult = mult * Poly::variable(ctx, t.tail[k]);
    r = r + module_scale(m, mult.scaled(t.coeff));
  }
  return r;
}

}  // namespace metalie
