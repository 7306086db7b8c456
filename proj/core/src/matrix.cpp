#include "metalie/matrix.hpp"

namespace metalie {

ScalarMatrix::ScalarMatrix(int n, const FieldSpec& field)
    : n_(n), field_(field),
      e_(static_cast<size_t>(n) * static_cast<size_t>(n),
         Scalar::zero(field)) {
  if (n < 1) throw DomainError("matrix size must be positive");
}

ScalarMatrix ScalarMatrix::identity(int n, const FieldSpec& field) {
  ScalarMatrix m(n, field);
  for (int i = 1; i <= n; ++i) m.set(i, i, Scalar::one(field));
  return m;
}

const Scalar& ScalarMatrix::at(int i, int j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_)
    throw DomainError("matrix index out of range");
  return e_[static_cast<size_t>(i - 1) * n_ + (j - 1)];
}

void ScalarMatrix::set(int i, int j, const Scalar& v) {
  if (i < 1 || i > n_ || j < 1 || j > n_)
    throw DomainError("matrix index out of range");
  if (v.field() != field_) throw DomainError("scalar field mismatch");
  e_[static_cast<size_t>(i - 1) * n_ + (j - 1)] = v;
}

ScalarMatrix ScalarMatrix::operator*(const ScalarMatrix& o) const {
  if (n_ != o.n_ || field_ != o.field_)
    throw DomainError("matrix shape mismatch");
  ScalarMatrix r(n_, field_);
  for (int i = 1; i <= n_; ++i)
    for (int j = 1; j <= n_; ++j) {
      Scalar s = Scalar::zero(field_);
      for (int k = 1; k <= n_; ++k) s = s + at(i, k) * o.at(k, j);
      r.set(i, j, s);
    }
  return r;
}

std::vector<Scalar> ScalarMatrix::apply(const std::vector<Scalar>& v) const {
  if (static_cast<int>(v.size()) != n_)
    throw DomainError("vector length mismatch");
  std::vector<Scalar> r(static_cast<size_t>(n_), Scalar::zero(field_));
  for (int i = 1; i <= n_; ++i) {
    Scalar s = Scalar::zero(field_);
    for (int k = 1; k <= n_; ++k) s = s + at(i, k) * v[static_cast<size_t>(k - 1)];
    r[static_cast<size_t>(i - 1)] = s;
  }
  return r;
}

Scalar ScalarMatrix::determinant() const {
  ScalarMatrix a = *this;
  Scalar det = Scalar::one(field_);
  for (int c = 1; c <= n_; ++c) {
    int pivot = 0;
    for (int r = c; r <= n_; ++r)
      if (!a.at(r, c).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot == 0) return Scalar::zero(field_);
    if (pivot != c) {
      for (int j = 1; j <= n_; ++j) {
        Scalar t = a.at(c, j);
        a.set(c, j, a.at(pivot, j));
        a.set(pivot, j, t);
      }
      det = -det;
    }
    det = det * a.at(c, c);
    Scalar inv = a.at(c, c).inverse();
    for (int r = c + 1; r <= n_; ++r) {
      Scalar f = a.at(r, c) * inv;
      if (f.is_zero()) continue;
      for (int j = c; j <= n_; ++j) a.set(r, j, a.at(r, j) - f * a.at(c, j));
    }
  }
  return det;
}

ScalarMatrix ScalarMatrix::inverse() const {
  ScalarMatrix a = *this;
  ScalarMatrix inv = identity(n_, field_);
  for (int c = 1; c <= n_; ++c) {
    int pivot = 0;
    for (int r = c; r <= n_; ++r)
      if (!a.at(r, c).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot == 0) throw DomainError("matrix is singular");
    if (pivot != c) {
      for (int j = 1; j <= n_; ++j) {
        Scalar t = a.at(c, j);
        a.set(c, j, a.at(pivot, j));
        a.set(pivot, j, t);
        t = inv.at(c, j);
        inv.set(c, j, inv.at(pivot, j));
        inv.set(pivot, j, t);
      }
    }
    Scalar f = a.at(c, c).inverse();
    for (int j = 1; j <= n_; ++j) {
      a.set(c, j, a.at(c, j) * f);
      inv.set(c, j, inv.at(c, j) * f);
    }
    for (int r = 1; r <= n_; ++r) {
      if (r == c) continue;
      Scalar g = a.at(r, c);
      if (g.is_zero()) continue;
      for (int j = 1; j <= n_; ++j) {
        a.set(r, j, a.at(r, j) - g * a.at(c, j));
        inv.set(r, j, inv.at(r, j) - g * inv.at(c, j));
      }
    }
  }
  return inv;
}

bool ScalarMatrix::operator==(const ScalarMatrix& o) const {
  if (n_ != o.n_ || field_ != o.field_) return false;
  for (size_t k = 0; k < e_.size(); ++k)
    if (!(e_[k] == o.e_[k])) return false;
  return true;
}

bool ScalarMatrix::is_identity() const {
  return *this == identity(n_, field_);
}

PolyMatrix::PolyMatrix(const Context& ctx)
    : ctx_(ctx),
      e_(static_cast<size_t>(ctx.n) * static_cast<size_t>(ctx.n),
         Poly::zero(ctx)) {}

PolyMatrix PolyMatrix::identity(const Context& ctx) {
  PolyMatrix m(ctx);
  for (int i = 1; i <= ctx.n; ++i) m.set(i, i, Poly::constant(ctx, 1));
  return m;
}

const Poly& PolyMatrix::at(int i, int j) const {
  if (i < 1 || i > ctx_.n || j < 1 || j > ctx_.n)
    throw DomainError("matrix index out of range");
  return e_[static_cast<size_t>(i - 1) * ctx_.n + (j - 1)];
}

void PolyMatrix::set(int i, int j, Poly v) {
  if (i < 1 || i > ctx_.n || j < 1 || j > ctx_.n)
    throw DomainError("matrix index out of range");
  check_same_context(ctx_, v.context());
  e_[static_cast<size_t>(i - 1) * ctx_.n + (j - 1)] = std::move(v);
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  check_same_context(ctx_, o.ctx_);
  PolyMatrix r(ctx_);
  for (int i = 1; i <= ctx_.n; ++i)
    for (int j = 1; j <= ctx_.n; ++j) {
      Poly s = Poly::zero(ctx_);
      for (int k = 1; k <= ctx_.n; ++k) s = s + at(i, k) * o.at(k, j);
      r.set(i, j, std::move(s));
    }
  return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
  check_same_context(ctx_, o.ctx_);
  PolyMatrix r(ctx_);
  for (int i = 1; i <= ctx_.n; ++i)
    for (int j = 1; j <= ctx_.n; ++j) r.set(i, j, at(i, j) - o.at(i, j));
  return r;
}

PolyMatrix PolyMatrix::substitute(std::span<const Poly> images) const {
  PolyMatrix r(ctx_);
  for (int i = 1; i <= ctx_.n; ++i)
    for (int j = 1; j <= ctx_.n; ++j) r.set(i, j, at(i, j).substitute(images));
  return r;
}

Poly PolyMatrix::determinant() const {
  const int n = ctx_.n;
  std::vector<Poly> a = e_;
  auto at0 = [&](int i, int j) -> Poly& {
    return a[static_cast<size_t>(i) * n + j];
  };
  bool negate = false;
  Poly prev = Poly::constant(ctx_, 1);
  for (int k = 0; k + 1 < n; ++k) {
    if (at0(k, k).is_zero()) {
      int pivot = -1;
      for (int r = k + 1; r < n; ++r)
        if (!at0(r, k).is_zero()) {
          pivot = r;
          break;
        }
      if (pivot < 0) return Poly::zero(ctx_);
      for (int j = 0; j < n; ++j) std::swap(at0(k, j), at0(pivot, j));
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        at0(i, j) =
            (at0(k, k) * at0(i, j) - at0(i, k) * at0(k, j)).divide_exact(prev);
      at0(i, k) = Poly::zero(ctx_);
    }
    prev = at0(k, k);
  }
  Poly det = at0(n - 1, n - 1);
  return negate ? -det : det;
}

Poly PolyMatrix::minor_determinant(int skip_row, int skip_col) const {
  const int n = ctx_.n;
  if (n == 1) return Poly::constant(ctx_, 1);
  // The minor lives in the same polynomial ring; only its shape shrinks, so
  // build it in a temporary (n-1)-sized Bareiss run over flat storage.
  std::vector<Poly> a;
  a.reserve(static_cast<size_t>(n - 1) * (n - 1));
  for (int i = 1; i <= n; ++i) {
    if (i == skip_row) continue;
    for (int j = 1; j <= n; ++j) {
      if (j == skip_col) continue;
      a.push_back(at(i, j));
    }
  }
  const int m = n - 1;
  auto at0 = [&](int i, int j) -> Poly& {
    return a[static_cast<size_t>(i) * m + j];
  };
  bool negate = false;
  Poly prev = Poly::constant(ctx_, 1);
  for (int k = 0; k + 1 < m; ++k) {
    if (at0(k, k).is_zero()) {
      int pivot = -1;
      for (int r = k + 1; r < m; ++r)
        if (!at0(r, k).is_zero()) {
          pivot = r;
          break;
        }
      if (pivot < 0) return Poly::zero(ctx_);
      for (int j = 0; j < m; ++j) std::swap(at0(k, j), at0(pivot, j));
      negate = !negate;
    }
    for (int i = k + 1; i < m; ++i) {
      for (int j = k + 1; j < m; ++j)
        at0(i, j) =
            (at0(k, k) * at0(i, j) - at0(i, k) * at0(k, j)).divide_exact(prev);
      at0(i, k) = Poly::zero(ctx_);
    }
    prev = at0(k, k);
  }
  Poly det = at0(m - 1, m - 1);
  return negate ? -det : det;
}

PolyMatrix PolyMatrix::adjugate() const {
  const int n = ctx_.n;
  PolyMatrix adj(ctx_);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      Poly c = minor_determinant(j, i);
      if ((i + j) % 2 != 0) c = -c;
      adj.set(i, j, std::move(c));
    }
  return adj;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
  if (!(ctx_ == o.ctx_)) return false;
  for (size_t k = 0; k < e_.size(); ++k)
    if (!(e_[k] == o.e_[k])) return false;
  return true;
}

}  // namespace metalie
