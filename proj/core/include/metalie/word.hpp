#pragma once

#include <optional>
#include <string>
#include <vector>

#include "metalie/endo.hpp"

namespace metalie {

enum class LetterKind { elementary, linear, chein, cubic_residue };
enum class Alphabet { tame, almost_tame };

std::string to_text(LetterKind k);
std::string to_text(Alphabet a);

/// One generator letter of a decomposition word.  Every letter is validated
/// on construction so that it evaluates to an automorphism:
///  - elementary: x_row -> alpha x_row + f with f free of x_row;
///  - linear: an invertible matrix;
///  - chein: x_row -> x_row + f with vanishing row-th Fox derivative;
///  - cubic_residue: x_row -> x_row + alpha [[x_s,x_t],x_row], s,t != row.
class Letter {
public:
  static Letter elementary(const Context& ctx, int row, Scalar alpha,
                           MagnusElement f);
  static Letter linear(const Context& ctx, LinearMap m);
  static Letter chein(const Context& ctx, int row, MagnusElement f);
  static Letter cubic_residue(const Context& ctx, int row, int s, int t,
                              Scalar alpha);

  LetterKind kind() const { return kind_; }
  const Context& context() const { return ctx_; }
  bool inverted() const { return inverted_; }
  bool is_tame_kind() const {
    return kind_ == LetterKind::elementary || kind_ == LetterKind::linear;
  }

  int row() const;
  const Scalar& alpha() const;
  const MagnusElement& payload() const;
  const LinearMap& matrix() const;
  int bracket_s() const;
  int bracket_t() const;

  /// Same letter with the inversion flag toggled.
  Letter toggled() const;
  /// Folds the inversion flag into the payload (closed-form inverses).
  Letter normalized() const;
  bool is_identity() const;
  Endomorphism endomorphism() const;

  bool operator==(const Letter& o) const;

private:
  Letter(Context ctx) : ctx_(std::move(ctx)) {}
  Context ctx_;
  LetterKind kind_ = LetterKind::elementary;
  bool inverted_ = false;
  int row_ = 0;
  int s_ = 0, t_ = 0;
  std::optional<Scalar> alpha_;
  std::optional<MagnusElement> payload_;
  std::optional<LinearMap> matrix_;
};

/// Ordered sequence of letters whose left-to-right product certifies a
/// decomposition.  Tame words contain only elementary and linear letters.
class GeneratorWord {
public:
  GeneratorWord(Context ctx, Alphabet alphabet)
      : ctx_(std::move(ctx)), alphabet_(alphabet) {}

  const Context& context() const { return ctx_; }
  Alphabet alphabet() const { return alphabet_; }
  const std::vector<Letter>& letters() const { return letters_; }
  size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  void append(Letter l);
  void append(const GeneratorWord& w);
  /// Appends the inverse of w (reversed letters, inversion flags toggled).
  void append_inverse(const GeneratorWord& w);

  GeneratorWord inverse() const;
  /// Drops identity letters, merges adjacent same-row one-row letters of the
  /// same kind, and cancels adjacent mutually-inverse letters.
  GeneratorWord simplified() const;

  bool operator==(const GeneratorWord& o) const;

private:
  Context ctx_;
  Alphabet alphabet_;
  std::vector<Letter> letters_;
};

/// Left-to-right product of the letters under composition; the empty word
/// evaluates to the identity.
Endomorphism word_evaluate(const GeneratorWord& w);

/// Exact coordinatewise equality of the recomposed word and the target.
bool verify_word(const GeneratorWord& w, const Endomorphism& target);

/// Lossless JSON round trip for words.
std::string serialize_word(const GeneratorWord& w);
GeneratorWord parse_word(const std::string& json_text);

}  // namespace metalie
