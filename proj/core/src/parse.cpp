#include "metalie/parse.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace metalie {

namespace {

enum class Tok {
  number,
  xvar,
  yvar,
  plus,
  minus,
  star,
  slash,
  caret,
  lbracket,
  rbracket,
  lparen,
  rparen,
  comma,
  semicolon,
  arrow,
  end,
};

struct Token {
  Tok kind;
  SourcePos pos;
  std::string text;  // digits of a number
  int index = 0;     // generator/variable index
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t = next();
      bool done = t.kind == Tok::end;
      out.push_back(std::move(t));
      if (done) return out;
    }
  }

private:
  void skip_space() {
    while (i_ < src_.size() &&
           (src_[i_] == ' ' || src_[i_] == '\t' || src_[i_] == '\r')) {
      ++i_;
      ++col_;
    }
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, {line_, col_});
  }

  Token next() {
    SourcePos pos{line_, col_};
    while (i_ < src_.size() && src_[i_] == '\n' && depth_ > 0) {
      ++i_;
      ++line_;
      col_ = 1;
      skip_space();
      pos = {line_, col_};
    }
    if (i_ >= src_.size()) return {Tok::end, pos, "", 0};
    char c = src_[i_];
    if (c == '\n') {
      ++i_;
      ++line_;
      col_ = 1;
      // Top-level newlines act as entry separators in endomorphism input;
      // inside brackets or parentheses they are plain whitespace.
      return {Tok::semicolon, pos, "\n", 0};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (i_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[i_]))) {
        digits.push_back(src_[i_]);
        ++i_;
        ++col_;
      }
      return {Tok::number, pos, std::move(digits), 0};
    }
    if (c == 'x' || c == 'y') {
      ++i_;
      ++col_;
      if (i_ >= src_.size() ||
          !std::isdigit(static_cast<unsigned char>(src_[i_])))
        fail(std::string("expected an index after '") + c + "'");
      int idx = 0;
      while (i_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[i_]))) {
        idx = idx * 10 + (src_[i_] - '0');
        if (idx > 1000) fail("index too large");
        ++i_;
        ++col_;
      }
      return {c == 'x' ? Tok::xvar : Tok::yvar, pos, "", idx};
    }
    ++i_;
    ++col_;
    switch (c) {
      case '+': return {Tok::plus, pos, "", 0};
      case '-':
        if (i_ < src_.size() && src_[i_] == '>') {
          ++i_;
          ++col_;
          return {Tok::arrow, pos, "", 0};
        }
        return {Tok::minus, pos, "", 0};
      case '*': return {Tok::star, pos, "", 0};
      case '/': return {Tok::slash, pos, "", 0};
      case '^': return {Tok::caret, pos, "", 0};
      case '[':
        ++depth_;
        return {Tok::lbracket, pos, "", 0};
      case ']':
        if (depth_ > 0) --depth_;
        return {Tok::rbracket, pos, "", 0};
      case '(':
        ++depth_;
        return {Tok::lparen, pos, "", 0};
      case ')':
        if (depth_ > 0) --depth_;
        return {Tok::rparen, pos, "", 0};
      case ',': return {Tok::comma, pos, "", 0};
      case ';': return {Tok::semicolon, pos, ";", 0};
      default: fail(std::string("unexpected character '") + c + "'");
    }
  }

  std::string_view src_;
  size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
  int depth_ = 0;
};

// Parsed value before typing: a polynomial or an unevaluated Lie expression.
// Scalars travel as constant polynomials.
struct Value {
  std::variant<Poly, LieExpr> v;
  SourcePos pos;
  bool is_poly() const { return std::holds_alternative<Poly>(v); }
  const Poly& poly() const { return std::get<Poly>(v); }
  const LieExpr& lie() const { return std::get<LieExpr>(v); }
};

class Parser {
public:
  Parser(const Context& ctx, std::vector<Token> toks)
      : ctx_(ctx), toks_(std::move(toks)) {}

  Value parse_expression() {
    Value v = expr();
    expect_end();
    return v;
  }

  Endomorphism parse_endo() {
    std::vector<std::optional<MagnusElement>> images(
        static_cast<size_t>(ctx_.n));
    bool saw_entry = false;
    for (;;) {
      while (peek().kind == Tok::semicolon) ++pos_;
      if (peek().kind == Tok::end) break;
      Token head = peek();
      if (head.kind != Tok::xvar)
        throw ParseError("expected 'x<i> ->' entry", head.pos);
      ++pos_;
      int idx = head.index;
      if (idx < 1 || idx > ctx_.n)
        throw ParseError("generator index out of range: x" +
                             std::to_string(idx),
                         head.pos);
      if (peek().kind != Tok::arrow)
        throw ParseError("expected '->'", peek().pos);
      ++pos_;
      Value v = expr();
      if (images[static_cast<size_t>(idx - 1)])
        throw ParseError("duplicate entry for x" + std::to_string(idx),
                         head.pos);
      images[static_cast<size_t>(idx - 1)] = to_element(v);
      saw_entry = true;
      if (peek().kind == Tok::semicolon) {
        ++pos_;
        continue;
      }
      break;
    }
    expect_end();
    if (!saw_entry)
      throw ParseError("empty endomorphism", peek().pos);
    std::vector<MagnusElement> out;
    out.reserve(images.size());
    for (int i = 1; i <= ctx_.n; ++i) {
      if (!images[static_cast<size_t>(i - 1)])
        throw ParseError("missing entry for x" + std::to_string(i),
                         peek().pos);
      out.push_back(std::move(*images[static_cast<size_t>(i - 1)]));
    }
    return Endomorphism::of_images(ctx_, std::move(out));
  }

  MagnusElement to_element(const Value& v) {
    if (!v.is_poly()) return eval_lie_expr(ctx_, v.lie());
    if (v.poly().is_zero()) return MagnusElement::zero(ctx_);
    throw ParseError("expected a Lie element, found a polynomial", v.pos);
  }

  Poly to_poly(const Value& v) {
    if (v.is_poly()) return v.poly();
    throw ParseError("expected a polynomial, found a Lie element", v.pos);
  }

private:
  const Token& peek() const { return toks_[pos_]; }

  void expect_end() {
    while (peek().kind == Tok::semicolon && peek().text != ";") ++pos_;
    if (peek().kind != Tok::end)
      throw ParseError("unexpected trailing input", peek().pos);
  }

  Value expr() {
    bool negate = false;
    if (peek().kind == Tok::minus) {
      negate = true;
      ++pos_;
    } else if (peek().kind == Tok::plus) {
      ++pos_;
    }
    Value acc = term();
    if (negate) acc = negated(acc);
    for (;;) {
      if (peek().kind == Tok::plus) {
        ++pos_;
        acc = add(acc, term(), false);
      } else if (peek().kind == Tok::minus) {
        ++pos_;
        acc = add(acc, term(), true);
      } else {
        return acc;
      }
    }
  }

  Value term() {
    Value acc = power();
    while (peek().kind == Tok::star) {
      ++pos_;
      acc = multiply(acc, power());
    }
    return acc;
  }

  Value power() {
    Value base = atom();
    if (peek().kind != Tok::caret) return base;
    SourcePos cpos = peek().pos;
    ++pos_;
    if (peek().kind != Tok::number)
      throw ParseError("expected an integer exponent", peek().pos);
    long e = std::stol(peek().text);
    ++pos_;
    if (!base.is_poly())
      throw ParseError("powers apply to polynomials only", cpos);
    if (e > 512) throw ParseError("exponent too large", cpos);
    return {base.poly().pow(static_cast<int>(e)), base.pos};
  }

  Value atom() {
    Token t = peek();
    switch (t.kind) {
      case Tok::number: {
        ++pos_;
        long long num = std::stoll(t.text);
        if (peek().kind == Tok::slash) {
          ++pos_;
          if (peek().kind != Tok::number)
            throw ParseError("expected a denominator", peek().pos);
          long long den = std::stoll(peek().text);
          ++pos_;
          if (den == 0) throw ParseError("zero denominator", t.pos);
          return {Poly::constant(ctx_,
                                 Scalar::of_fraction(ctx_.field, num, den)),
                  t.pos};
        }
        return {Poly::constant(ctx_, num), t.pos};
      }
      case Tok::yvar:
        ++pos_;
        if (t.index < 1 || t.index > ctx_.n)
          throw ParseError("variable index out of range: y" +
                               std::to_string(t.index),
                           t.pos);
        return {Poly::variable(ctx_, t.index), t.pos};
      case Tok::xvar:
        ++pos_;
        if (t.index < 1 || t.index > ctx_.n)
          throw ParseError("generator index out of range: x" +
                               std::to_string(t.index),
                           t.pos);
        return {LieExpr::generator(t.index), t.pos};
      case Tok::lparen: {
        ++pos_;
        Value v = expr();
        if (peek().kind != Tok::rparen)
          throw ParseError("expected ')'", peek().pos);
        ++pos_;
        return v;
      }
      case Tok::lbracket: {
        ++pos_;
        Value a = expr();
        if (peek().kind != Tok::comma)
          throw ParseError("expected ',' inside bracket", peek().pos);
        ++pos_;
        Value b = expr();
        if (peek().kind != Tok::rbracket)
          throw ParseError("expected ']'", peek().pos);
        ++pos_;
        if (a.is_poly() || b.is_poly())
          throw ParseError("bracket arguments must be Lie elements", t.pos);
        return {LieExpr::bracket(a.lie(), b.lie()), t.pos};
      }
      case Tok::end:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected token", t.pos);
    }
  }

  Value negated(const Value& v) {
    if (v.is_poly()) return {-v.poly(), v.pos};
    return {LieExpr::scaled(-Scalar::one(ctx_.field), v.lie()), v.pos};
  }

  Value add(const Value& a, const Value& b, bool subtract) {
    if (a.is_poly() && b.is_poly())
      return {subtract ? a.poly() - b.poly() : a.poly() + b.poly(), a.pos};
    if (!a.is_poly() && !b.is_poly()) {
      LieExpr rhs = subtract
                        ? LieExpr::scaled(-Scalar::one(ctx_.field), b.lie())
                        : b.lie();
      return {LieExpr::sum(a.lie(), std::move(rhs)), a.pos};
    }
    throw ParseError("cannot add a polynomial to a Lie element", b.pos);
  }

  Value multiply(const Value& a, const Value& b) {
    if (a.is_poly() && b.is_poly()) return {a.poly() * b.poly(), a.pos};
    if (!a.is_poly() && !b.is_poly())
      throw ParseError(
          "cannot multiply two Lie elements; use a bracket", b.pos);
    const Value& lie = a.is_poly() ? b : a;
    const Value& poly = a.is_poly() ? a : b;
    if (poly.poly().is_constant())
      return {LieExpr::scaled(poly.poly().constant_term(), lie.lie()), a.pos};
    return {LieExpr::module_scaled(lie.lie(), poly.poly()), a.pos};
  }

  const Context& ctx_;
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

std::vector<Token> lex(std::string_view src) { return Lexer(src).run(); }

}  // namespace

Scalar parse_scalar(const FieldSpec& field, std::string_view src) {
  Context ctx(2, field);  // scalar literals never mention variables
  Parser p(ctx, lex(src));
  Value v = p.parse_expression();
  Poly c = p.to_poly(v);
  if (!c.is_constant())
    throw DomainError("expected a scalar literal, got '" + std::string(src) +
                      "'");
  return c.constant_term();
}

Poly parse_poly(const Context& ctx, std::string_view src) {
  Parser p(ctx, lex(src));
  Value v = p.parse_expression();
  return p.to_poly(v);
}

LieExpr parse_lie_expr(const Context& ctx, std::string_view src) {
  Parser p(ctx, lex(src));
  Value v = p.parse_expression();
  if (v.is_poly()) {
    if (v.poly().is_zero()) return LieExpr::scaled(
        Scalar::zero(ctx.field), LieExpr::generator(1));
    throw DomainError("expected a Lie expression, got a polynomial");
  }
  return v.lie();
}

MagnusElement parse_element(const Context& ctx, std::string_view src) {
  Parser p(ctx, lex(src));
  Value v = p.parse_expression();
  return p.to_element(v);
}

Endomorphism parse_endomorphism(const Context& ctx, std::string_view src) {
  Parser p(ctx, lex(src));
  return p.parse_endo();
}

std::variant<Poly, MagnusElement> parse_poly_or_element(
    const Context& ctx, std::string_view src) {
  Parser p(ctx, lex(src));
  Value v = p.parse_expression();
  if (v.is_poly()) return v.poly();
  return eval_lie_expr(ctx, v.lie());
}

}  // namespace metalie
