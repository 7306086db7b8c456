#include "metalie/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace metalie {

namespace {
constexpr int kMaxExponent = 1 << 20;
}

Monomial Monomial::variable(int nvars, int i, int power) {
  Monomial m(nvars);
  if (i < 1 || i > nvars)
    throw DomainError("variable index out of range: y" + std::to_string(i));
  if (power < 0) throw DomainError("negative exponent");
  m.exps_[static_cast<size_t>(i - 1)] = power;
  return m;
}

Monomial Monomial::of_exponents(std::vector<int> exps) {
  Monomial m(static_cast<int>(exps.size()));
  for (int e : exps)
    if (e < 0 || e > kMaxExponent) throw DomainError("exponent out of range");
  m.exps_ = std::move(exps);
  return m;
}

int Monomial::exponent(int i) const {
  if (i < 1 || i > vars())
    throw DomainError("variable index out of range: y" + std::to_string(i));
  return exps_[static_cast<size_t>(i - 1)];
}

int Monomial::total_degree() const {
  int d = 0;
  for (int e : exps_) d += e;
  return d;
}

Monomial Monomial::times(const Monomial& o) const {
  if (vars() != o.vars()) throw DomainError("monomial arity mismatch");
  Monomial r(vars());
  for (size_t k = 0; k < exps_.size(); ++k) {
    r.exps_[k] = exps_[k] + o.exps_[k];
    if (r.exps_[k] > kMaxExponent) throw DomainError("exponent overflow");
  }
  return r;
}

Monomial Monomial::divided_by_variable(int i) const {
  if (!divisible_by_variable(i))
    throw DomainError("monomial not divisible by y" + std::to_string(i));
  Monomial r = *this;
  r.exps_[static_cast<size_t>(i - 1)] -= 1;
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (vars() != o.vars()) return false;
  for (size_t k = 0; k < exps_.size(); ++k)
    if (exps_[k] > o.exps_[k]) return false;
  return true;
}

Monomial Monomial::divided_by(const Monomial& o) const {
  if (!o.divides(*this)) throw DomainError("monomial division not exact");
  Monomial r(vars());
  for (size_t k = 0; k < exps_.size(); ++k) r.exps_[k] = exps_[k] - o.exps_[k];
  return r;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
  int da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  for (size_t k = 0; k < a.exps_.size(); ++k)
    if (a.exps_[k] != b.exps_[k]) return a.exps_[k] < b.exps_[k] ? -1 : 1;
  return 0;
}

Poly Poly::constant(const Context& ctx, const Scalar& c) {
  if (c.field() != ctx.field) throw DomainError("scalar field mismatch");
  Poly p(ctx);
  if (!c.is_zero()) p.terms_.emplace_back(Monomial(ctx.n), c);
  return p;
}

Poly Poly::constant(const Context& ctx, long long c) {
  return constant(ctx, Scalar::of_int(ctx.field, c));
}

Poly Poly::variable(const Context& ctx, int i) {
  return of_monomial(ctx, Monomial::variable(ctx.n, i),
                     Scalar::one(ctx.field));
}

Poly Poly::of_monomial(const Context& ctx, const Monomial& m, const Scalar& c) {
  if (m.vars() != ctx.n) throw DomainError("monomial arity mismatch");
  if (c.field() != ctx.field) throw DomainError("scalar field mismatch");
  Poly p(ctx);
  if (!c.is_zero()) p.terms_.emplace_back(m, c);
  return p;
}

Poly Poly::of_terms(const Context& ctx, std::vector<Term> terms) {
  Poly p(ctx);
  for (auto& [m, c] : terms) {
    if (m.vars() != ctx.n) throw DomainError("monomial arity mismatch");
    if (c.field() != ctx.field) throw DomainError("scalar field mismatch");
  }
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return Monomial::compare(a.first, b.first) > 0;
  });
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      Scalar s = p.terms_.back().second + t.second;
      if (s.is_zero())
        p.terms_.pop_back();
      else
        p.terms_.back().second = s;
    } else if (!t.second.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_constant());
}

Scalar Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().first.is_constant())
    return terms_.back().second;
  return Scalar::zero(ctx_.field);
}

Scalar Poly::coefficient(const Monomial& m) const {
  for (const auto& [mon, c] : terms_)
    if (mon == m) return c;
  return Scalar::zero(ctx_.field);
}

int Poly::degree() const {
  if (terms_.empty()) return kDegOfZero;
  return terms_.front().first.total_degree();
}

int Poly::lower_degree() const {
  if (terms_.empty()) return kLdegOfZero;
  return terms_.back().first.total_degree();
}

Poly Poly::operator+(const Poly& o) const {
  check_same_context(ctx_, o.ctx_);
  Poly r(ctx_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = Monomial::compare(terms_[i].first, o.terms_[j].first);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Scalar s = terms_[i].second + o.terms_[j].second;
      if (!s.is_zero()) r.terms_.emplace_back(terms_[i].first, s);
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

Poly Poly::operator-() const {
  Poly r(ctx_);
  r.terms_.reserve(terms_.size());
  for (const auto& [m, c] : terms_) r.terms_.emplace_back(m, -c);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  check_same_context(ctx_, o.ctx_);
  std::vector<Term> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_)
      acc.emplace_back(ma.times(mb), ca * cb);
  return of_terms(ctx_, std::move(acc));
}

Poly Poly::scaled(const Scalar& c) const {
  if (c.field() != ctx_.field) throw DomainError("scalar field mismatch");
  Poly r(ctx_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& [m, a] : terms_) r.terms_.emplace_back(m, a * c);
  return r;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw DomainError("negative polynomial power");
  Poly r = constant(ctx_, 1);
  Poly b = *this;
  while (e) {
    if (e & 1) r = r * b;
    if (e >>= 1) b = b * b;
  }
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (!(ctx_ == o.ctx_)) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t k = 0; k < terms_.size(); ++k)
    if (!(terms_[k].first == o.terms_[k].first &&
          terms_[k].second == o.terms_[k].second))
      return false;
  return true;
}

Poly Poly::substitute(std::span<const Poly> images) const {
  if (static_cast<int>(images.size()) != ctx_.n)
    throw DomainError("substitution needs one image per variable");
  for (const Poly& im : images) check_same_context(ctx_, im.context());
  // Cache powers of each image up to the largest exponent that occurs.
  std::vector<std::vector<Poly>> powers(static_cast<size_t>(ctx_.n));
  auto power_of = [&](int var, int e) -> const Poly& {
    auto& cache = powers[static_cast<size_t>(var)];
    if (cache.empty()) cache.push_back(constant(ctx_, 1));
    while (static_cast<int>(cache.size()) <= e)
      cache.push_back(cache.back() * images[static_cast<size_t>(var)]);
    return cache[static_cast<size_t>(e)];
  };
  Poly r(ctx_);
  for (const auto& [m, c] : terms_) {
    Poly t = constant(ctx_, c);
    for (int v = 0; v < ctx_.n; ++v) {
      int e = m.exponents()[static_cast<size_t>(v)];
      if (e > 0) t = t * power_of(v, e);
    }
    r = r + t;
  }
  return r;
}

void Poly::check_var(int i) const {
  if (i < 1 || i > ctx_.n)
    throw DomainError("variable index out of range: y" + std::to_string(i));
}

std::pair<Poly, Poly> Poly::split_by_variable(int i) const {
  check_var(i);
  Poly q(ctx_), r(ctx_);
  for (const auto& [m, c] : terms_) {
    if (m.divisible_by_variable(i))
      q.terms_.emplace_back(m.divided_by_variable(i), c);
    else
      r.terms_.emplace_back(m, c);
  }
  // Dividing every monomial by the same variable preserves graded-lex order,
  // so both halves are already canonical.
  return {std::move(q), std::move(r)};
}

bool Poly::contains_variable(int i) const {
  check_var(i);
  for (const auto& [m, c] : terms_)
    if (m.contains_variable(i)) return true;
  return false;
}

Poly Poly::part_with_exponent(int i, int e) const {
  check_var(i);
  Poly r(ctx_);
  for (const auto& [m, c] : terms_)
    if (m.exponent(i) == e) r.terms_.emplace_back(m, c);
  return r;
}

Poly Poly::homogeneous_part(int d) const {
  Poly r(ctx_);
  for (const auto& [m, c] : terms_)
    if (m.total_degree() == d) r.terms_.emplace_back(m, c);
  return r;
}

Poly Poly::divide_exact(const Poly& o) const {
  check_same_context(ctx_, o.ctx_);
  if (o.is_zero()) throw DomainError("division by the zero polynomial");
  Poly rem = *this;
  Poly quot(ctx_);
  const Monomial& dlead = o.terms_.front().first;
  const Scalar& dcoef = o.terms_.front().second;
  while (!rem.is_zero()) {
    const Monomial& rlead = rem.terms_.front().first;
    if (!dlead.divides(rlead))
      throw DomainError("polynomial division not exact");
    Poly t = of_monomial(ctx_, rlead.divided_by(dlead),
                         rem.terms_.front().second / dcoef);
    quot = quot + t;
    rem = rem - t * o;
  }
  return quot;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (first) {
      if (neg) out << "-";
      first = false;
    } else {
      out << (neg ? " - " : " + ");
    }
    if (neg) cs = cs.substr(1);
    bool wrote_coeff = false;
    if (m.is_constant() || cs != "1") {
      out << cs;
      wrote_coeff = true;
    }
    bool first_var = true;
    for (int v = 1; v <= ctx_.n; ++v) {
      int e = m.exponent(v);
      if (e == 0) continue;
      if (wrote_coeff || !first_var) out << "*";
      out << "y" << v;
      if (e > 1) out << "^" << e;
      first_var = false;
    }
  }
  return out.str();
}

}  // namespace metalie
