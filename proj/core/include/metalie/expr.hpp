#pragma once

#include <memory>

#include "metalie/element.hpp"

namespace metalie {

/// Immutable expression tree over generators, brackets, sums, scalar
/// multiples and module (polynomial) multiples.  This is the parsed shape of
/// an element before evaluation into Magnus coordinates.
class LieExpr {
public:
  enum class Kind { generator, bracket, sum, scalar_multiple, module_multiple };

  static LieExpr generator(int index);
  static LieExpr bracket(LieExpr lhs, LieExpr rhs);
  static LieExpr sum(LieExpr lhs, LieExpr rhs);
  static LieExpr scaled(Scalar c, LieExpr e);
  static LieExpr module_scaled(LieExpr e, Poly p);

  Kind kind() const { return node_->kind; }

private:
  struct Node {
    Kind kind;
    int index = 0;
    std::shared_ptr<const Node> a, b;
    std::unique_ptr<Scalar> c;
    std::unique_ptr<Poly> p;
  };
  explicit LieExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;

  friend MagnusElement eval_lie_expr(const Context&, const LieExpr&);
};

/// Evaluates the expression in Magnus coordinates.  Generator indices are
/// checked against the context; module multiples require the subexpression
/// to lie in the derived subalgebra.
MagnusElement eval_lie_expr(const Context& ctx, const LieExpr& e);

}  // namespace metalie
