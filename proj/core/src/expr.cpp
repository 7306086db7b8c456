#include "metalie/expr.hpp"

#include "metalie/errors.hpp"

namespace metalie {

LieExpr LieExpr::generator(int index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::generator;
  n->index = index;
  return LieExpr(std::move(n));
}

LieExpr LieExpr::bracket(LieExpr lhs, LieExpr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::bracket;
  n->a = std::move(lhs.node_);
  n->b = std::move(rhs.node_);
  return LieExpr(std::move(n));
}

LieExpr LieExpr::sum(LieExpr lhs, LieExpr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::sum;
  n->a = std::move(lhs.node_);
  n->b = std::move(rhs.node_);
  return LieExpr(std::move(n));
}

LieExpr LieExpr::scaled(Scalar c, LieExpr e) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::scalar_multiple;
  n->a = std::move(e.node_);
  n->c = std::make_unique<Scalar>(std::move(c));
  return LieExpr(std::move(n));
}

LieExpr LieExpr::module_scaled(LieExpr e, Poly p) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::module_multiple;
  n->a = std::move(e.node_);
  n->p = std::make_unique<Poly>(std::move(p));
  return LieExpr(std::move(n));
}

MagnusElement eval_lie_expr(const Context& ctx, const LieExpr& e) {
  struct Eval {
    const Context& ctx;
    MagnusElement run(const LieExpr::Node& n) const {
      switch (n.kind) {
        case LieExpr::Kind::generator:
          if (n.index < 1 || n.index > ctx.n)
            throw DomainError("generator index out of range: x" +
                              std::to_string(n.index));
          return MagnusElement::generator(ctx, n.index);
        case LieExpr::Kind::bracket:
          return bracket(run(*n.a), run(*n.b));
        case LieExpr::Kind::sum:
          return run(*n.a) + run(*n.b);
        case LieExpr::Kind::scalar_multiple:
          return run(*n.a).scaled(*n.c);
        case LieExpr::Kind::module_multiple: {
          MagnusElement m = run(*n.a);
          if (!m.in_derived())
            throw DomainError(
                "polynomial multiplier requires a commutator-valued "
                "subexpression");
          return module_scale(m, *n.p);
        }
      }
      throw DomainError("malformed expression tree");
    }
  };
  return Eval{ctx}.run(*e.node_);
}

}  // namespace metalie
