#include "metalie/word.hpp"

#include <json.hpp>

#include "metalie/errors.hpp"
#include "metalie/parse.hpp"
#include "metalie/print.hpp"

namespace metalie {

using nlohmann::json;

std::string to_text(LetterKind k) {
  switch (k) {
    case LetterKind::elementary: return "elementary";
    case LetterKind::linear: return "linear";
    case LetterKind::chein: return "chein";
    case LetterKind::cubic_residue: return "cubic_residue";
  }
  return "?";
}

std::string to_text(Alphabet a) {
  return a == Alphabet::tame ? "tame" : "almost_tame";
}

Letter Letter::elementary(const Context& ctx, int row, Scalar alpha,
                          MagnusElement f) {
  check_same_context(ctx, f.context());
  if (alpha.field() != ctx.field) throw DomainError("scalar field mismatch");
  if (alpha.is_zero())
    throw DomainError("elementary letter needs a nonzero coefficient");
  if (!is_elementary_valid(row, f))
    throw DomainError("elementary letter payload contains x" +
                      std::to_string(row));
  Letter l(ctx);
  l.kind_ = LetterKind::elementary;
  l.row_ = row;
  l.alpha_ = std::move(alpha);
  l.payload_ = std::move(f);
  return l;
}

Letter Letter::linear(const Context& ctx, LinearMap m) {
  if (m.size() != ctx.n) throw DomainError("linear letter size mismatch");
  if (!m.invertible()) throw DomainError("linear letter must be invertible");
  Letter l(ctx);
  l.kind_ = LetterKind::linear;
  l.matrix_ = std::move(m);
  return l;
}

Letter Letter::chein(const Context& ctx, int row, MagnusElement f) {
  check_same_context(ctx, f.context());
  if (!is_chein_valid(row, f))
    throw DomainError("chein letter payload has a nonzero d/dx" +
                      std::to_string(row));
  Letter l(ctx);
  l.kind_ = LetterKind::chein;
  l.row_ = row;
  l.payload_ = std::move(f);
  return l;
}

Letter Letter::cubic_residue(const Context& ctx, int row, int s, int t,
                             Scalar alpha) {
  if (alpha.field() != ctx.field) throw DomainError("scalar field mismatch");
  if (row < 1 || row > ctx.n || s < 1 || s > ctx.n || t < 1 || t > ctx.n)
    throw DomainError("cubic residue index out of range");
  if (s == t || s == row || t == row)
    throw DomainError("cubic residue needs distinct indices avoiding its row");
  if (s > t) {
    std::swap(s, t);
    alpha = -alpha;
  }
  Letter l(ctx);
  l.kind_ = LetterKind::cubic_residue;
  l.row_ = row;
  l.s_ = s;
  l.t_ = t;
  l.alpha_ = std::move(alpha);
  return l;
}

int Letter::row() const {
  if (kind_ == LetterKind::linear) throw DomainError("linear letters have no row");
  return row_;
}

const Scalar& Letter::alpha() const {
  if (!alpha_) throw DomainError("letter has no scalar");
  return *alpha_;
}

const MagnusElement& Letter::payload() const {
  if (!payload_) throw DomainError("letter has no element payload");
  return *payload_;
}

const LinearMap& Letter::matrix() const {
  if (!matrix_) throw DomainError("letter has no matrix");
  return *matrix_;
}

int Letter::bracket_s() const {
  if (kind_ != LetterKind::cubic_residue)
    throw DomainError("not a cubic residue letter");
  return s_;
}

int Letter::bracket_t() const {
  if (kind_ != LetterKind::cubic_residue)
    throw DomainError("not a cubic residue letter");
  return t_;
}

Letter Letter::toggled() const {
  Letter l = *this;
  l.inverted_ = !l.inverted_;
  return l;
}

Letter Letter::normalized() const {
  if (!inverted_) return *this;
  switch (kind_) {
    case LetterKind::elementary: {
      Scalar ai = alpha_->inverse();
      return elementary(ctx_, row_, ai, payload_->scaled(-ai));
    }
    case LetterKind::linear:
      return linear(ctx_, matrix_->inverse());
    case LetterKind::chein:
      return chein(ctx_, row_, -*payload_);
    case LetterKind::cubic_residue:
      return cubic_residue(ctx_, row_, s_, t_, -*alpha_);
  }
  throw DomainError("malformed letter");
}

bool Letter::is_identity() const {
  switch (kind_) {
    case LetterKind::elementary:
      return alpha_->is_one() && payload_->is_zero();
    case LetterKind::linear:
      return matrix_->matrix().is_identity();
    case LetterKind::chein:
      return payload_->is_zero();
    case LetterKind::cubic_residue:
      return alpha_->is_zero();
  }
  return false;
}

Endomorphism Letter::endomorphism() const {
  const Letter l = normalized();
  const Context& ctx = l.ctx_;
  switch (l.kind_) {
    case LetterKind::elementary:
      return elementary_map(ctx, l.row_, *l.alpha_, *l.payload_);
    case LetterKind::linear:
      return linear_endomorphism(ctx, *l.matrix_);
    case LetterKind::chein: {
      std::vector<MagnusElement> images =
          Endomorphism::identity(ctx).images();
      images[static_cast<size_t>(l.row_ - 1)] =
          images[static_cast<size_t>(l.row_ - 1)] + *l.payload_;
      return Endomorphism::of_images(ctx, std::move(images));
    }
    case LetterKind::cubic_residue: {
      MagnusElement f = module_scale(
          bracket(MagnusElement::generator(ctx, l.s_),
                  MagnusElement::generator(ctx, l.t_)),
          Poly::variable(ctx, l.row_).scaled(*l.alpha_));
      std::vector<MagnusElement> images =
          Endomorphism::identity(ctx).images();
      images[static_cast<size_t>(l.row_ - 1)] =
          images[static_cast<size_t>(l.row_ - 1)] + f;
      return Endomorphism::of_images(ctx, std::move(images));
    }
  }
  throw DomainError("malformed letter");
}

bool Letter::operator==(const Letter& o) const {
  if (!(ctx_ == o.ctx_) || kind_ != o.kind_ || inverted_ != o.inverted_)
    return false;
  switch (kind_) {
    case LetterKind::elementary:
      return row_ == o.row_ && *alpha_ == *o.alpha_ && *payload_ == *o.payload_;
    case LetterKind::linear:
      return *matrix_ == *o.matrix_;
    case LetterKind::chein:
      return row_ == o.row_ && *payload_ == *o.payload_;
    case LetterKind::cubic_residue:
      return row_ == o.row_ && s_ == o.s_ && t_ == o.t_ && *alpha_ == *o.alpha_;
  }
  return false;
}

void GeneratorWord::append(Letter l) {
  check_same_context(ctx_, l.context());
  if (alphabet_ == Alphabet::tame && !l.is_tame_kind())
    throw DomainError("tame words admit only elementary and linear letters");
  letters_.push_back(std::move(l));
}

void GeneratorWord::append(const GeneratorWord& w) {
  for (const Letter& l : w.letters_) append(l);
}

void GeneratorWord::append_inverse(const GeneratorWord& w) {
  for (auto it = w.letters_.rbegin(); it != w.letters_.rend(); ++it)
    append(it->toggled());
}

GeneratorWord GeneratorWord::inverse() const {
  GeneratorWord w(ctx_, alphabet_);
  w.append_inverse(*this);
  return w;
}

namespace {

std::optional<Letter> try_merge(const Letter& a, const Letter& b) {
  if (a.kind() != b.kind()) return std::nullopt;
  const Context& ctx = a.context();
  switch (a.kind()) {
    case LetterKind::elementary: {
      if (a.row() != b.row()) return std::nullopt;
      // compose(a, b): x_i -> (alpha beta) x_i + beta f + g.
      return Letter::elementary(ctx, a.row(), a.alpha() * b.alpha(),
                                a.payload().scaled(b.alpha()) + b.payload());
    }
    case LetterKind::chein:
      if (a.row() != b.row()) return std::nullopt;
      return Letter::chein(ctx, a.row(), a.payload() + b.payload());
    case LetterKind::cubic_residue:
      if (a.row() != b.row() || a.bracket_s() != b.bracket_s() ||
          a.bracket_t() != b.bracket_t())
        return std::nullopt;
      return Letter::cubic_residue(ctx, a.row(), a.bracket_s(), a.bracket_t(),
                                   a.alpha() + b.alpha());
    case LetterKind::linear: {
      // Only cancel exact inverses; collapsing arbitrary products would
      // erase the conjugator structure of the word.
      LinearMap prod = a.matrix() * b.matrix();
      if (prod.matrix().is_identity())
        return Letter::linear(ctx, std::move(prod));
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

GeneratorWord GeneratorWord::simplified() const {
  GeneratorWord out(ctx_, alphabet_);
  std::vector<Letter> stack;
  for (const Letter& raw : letters_) {
    Letter l = raw.normalized();
    if (l.is_identity()) continue;
    stack.push_back(std::move(l));
    while (stack.size() >= 2) {
      auto merged =
          try_merge(stack[stack.size() - 2], stack[stack.size() - 1]);
      if (!merged) break;
      stack.pop_back();
      stack.pop_back();
      if (!merged->is_identity()) stack.push_back(std::move(*merged));
    }
  }
  for (Letter& l : stack) out.append(std::move(l));
  return out;
}

bool GeneratorWord::operator==(const GeneratorWord& o) const {
  return ctx_ == o.ctx_ && alphabet_ == o.alphabet_ && letters_ == o.letters_;
}

Endomorphism word_evaluate(const GeneratorWord& w) {
  Endomorphism acc = Endomorphism::identity(w.context());
  for (const Letter& l : w.letters()) acc = compose(acc, l.endomorphism());
  return acc;
}

bool verify_word(const GeneratorWord& w, const Endomorphism& target) {
  check_same_context(w.context(), target.context());
  return word_evaluate(w) == target;
}

namespace {

json scalar_json(const Scalar& s) { return s.str(); }

json matrix_json(const LinearMap& m) {
  json rows = json::array();
  for (int i = 1; i <= m.size(); ++i) {
    json row = json::array();
    for (int j = 1; j <= m.size(); ++j) row.push_back(m.matrix().at(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

json letter_json(const Letter& l) {
  json j;
  j["kind"] = to_text(l.kind());
  j["inverted"] = l.inverted();
  switch (l.kind()) {
    case LetterKind::elementary:
      j["row"] = l.row();
      j["alpha"] = scalar_json(l.alpha());
      j["f"] = to_text(l.payload());
      break;
    case LetterKind::linear:
      j["matrix"] = matrix_json(l.matrix());
      break;
    case LetterKind::chein:
      j["row"] = l.row();
      j["f"] = to_text(l.payload());
      break;
    case LetterKind::cubic_residue:
      j["row"] = l.row();
      j["s"] = l.bracket_s();
      j["t"] = l.bracket_t();
      j["alpha"] = scalar_json(l.alpha());
      break;
  }
  return j;
}

Letter letter_from_json(const Context& ctx, const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const bool inverted = j.at("inverted").get<bool>();
  Letter l = [&]() {
    if (kind == "elementary")
      return Letter::elementary(
          ctx, j.at("row").get<int>(),
          parse_scalar(ctx.field, j.at("alpha").get<std::string>()),
          parse_element(ctx, j.at("f").get<std::string>()));
    if (kind == "linear") {
      const json& rows = j.at("matrix");
      ScalarMatrix m(ctx.n, ctx.field);
      if (static_cast<int>(rows.size()) != ctx.n)
        throw DomainError("matrix row count mismatch");
      for (int i = 1; i <= ctx.n; ++i) {
        const json& row = rows.at(static_cast<size_t>(i - 1));
        if (static_cast<int>(row.size()) != ctx.n)
          throw DomainError("matrix column count mismatch");
        for (int c = 1; c <= ctx.n; ++c)
          m.set(i, c,
                parse_scalar(ctx.field,
                             row.at(static_cast<size_t>(c - 1))
                                 .get<std::string>()));
      }
      return Letter::linear(ctx, LinearMap(std::move(m)));
    }
    if (kind == "chein")
      return Letter::chein(ctx, j.at("row").get<int>(),
                           parse_element(ctx, j.at("f").get<std::string>()));
    if (kind == "cubic_residue")
      return Letter::cubic_residue(
          ctx, j.at("row").get<int>(), j.at("s").get<int>(),
          j.at("t").get<int>(),
          parse_scalar(ctx.field, j.at("alpha").get<std::string>()));
    throw DomainError("unknown letter kind '" + kind + "'");
  }();
  return inverted ? l.toggled() : l;
}

}  // namespace

std::string serialize_word(const GeneratorWord& w) {
  json j;
  j["format"] = "metalie-word";
  j["version"] = 1;
  j["n"] = w.context().n;
  j["field"] = w.context().field.str();
  j["alphabet"] = to_text(w.alphabet());
  json letters = json::array();
  for (const Letter& l : w.letters()) letters.push_back(letter_json(l));
  j["letters"] = std::move(letters);
  return j.dump(2);
}

GeneratorWord parse_word(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("bad word JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "metalie-word")
      throw DomainError("not a metalie word document");
    Context ctx(j.at("n").get<int>(),
                FieldSpec::parse(j.at("field").get<std::string>()));
    const std::string alpha_text = j.at("alphabet").get<std::string>();
    Alphabet alphabet;
    if (alpha_text == "tame")
      alphabet = Alphabet::tame;
    else if (alpha_text == "almost_tame")
      alphabet = Alphabet::almost_tame;
    else
      throw DomainError("unknown alphabet '" + alpha_text + "'");
    GeneratorWord w(ctx, alphabet);
    for (const json& lj : j.at("letters")) w.append(letter_from_json(ctx, lj));
    return w;
  } catch (const json::exception& e) {
    throw DomainError(std::string("bad word JSON: ") + e.what());
  }
}

}  // namespace metalie
