#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "metalie/endo.hpp"
#include "metalie/expr.hpp"

namespace metalie {

struct SourcePos {
  int line = 1;
  int col = 1;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, SourcePos pos)
      : Error(what + " at line " + std::to_string(pos.line) + ", column " +
              std::to_string(pos.col)),
        pos_(pos) {}
  SourcePos pos() const { return pos_; }

private:
  SourcePos pos_;
};

/// Scalar literal: an integer or "p/q".
Scalar parse_scalar(const FieldSpec& field, std::string_view src);

/// Polynomial in y_1..y_n, e.g. "3*y1^2*y4 - 1/2*y2 + 7".
Poly parse_poly(const Context& ctx, std::string_view src);

/// Expression over generators, brackets, sums and polynomial multipliers,
/// e.g. "[x2,x3]*y1^2*y4" or "x1 + [[x2,x3],x1]"; returned unevaluated.
LieExpr parse_lie_expr(const Context& ctx, std::string_view src);

/// parse_lie_expr followed by evaluation into Magnus coordinates.
MagnusElement parse_element(const Context& ctx, std::string_view src);

/// One "xi -> expression" entry per generator, separated by ';' or newlines.
Endomorphism parse_endomorphism(const Context& ctx, std::string_view src);

/// Either a polynomial (no generators involved) or an element.
std::variant<Poly, MagnusElement> parse_poly_or_element(const Context& ctx,
                                                        std::string_view src);

}  // namespace metalie
