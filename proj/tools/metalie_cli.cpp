// Command-line front end for the metabelian Lie algebra kernel: normal
// forms, Fox derivatives, Jacobians, inversion, and certified tame /
// almost-tame decompositions.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "metalie/decompose.hpp"
#include "metalie/parse.hpp"
#include "metalie/print.hpp"
#include "metalie/selftest.hpp"

using namespace metalie;
using nlohmann::json;

namespace {

// Positional inputs are expressions; "@path" reads a file, "-" reads stdin.
std::string read_input(const std::string& arg) {
  if (arg == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw DomainError("cannot open file '" + arg.substr(1) + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  return arg;
}

struct Options {
  int n = 4;
  std::string field = "q";
  bool as_json = false;
  std::uint64_t seed = 0;

  Context context() const { return Context(n, FieldSpec::parse(field)); }
};

json scalar_vector_json(const std::vector<Scalar>& v) {
  json a = json::array();
  for (const Scalar& s : v) a.push_back(s.str());
  return a;
}

json basis_json(const BasisCombination& b) {
  json j;
  j["linear"] = scalar_vector_json(b.linear);
  json terms = json::array();
  for (const BasisTerm& t : b.terms) {
    json tj;
    tj["coeff"] = t.coeff.str();
    tj["head"] = t.head;
    tj["tail"] = t.tail;
    terms.push_back(std::move(tj));
  }
  j["terms"] = std::move(terms);
  return j;
}

json endo_json(const Endomorphism& phi) {
  json j;
  j["n"] = phi.context().n;
  j["field"] = phi.context().field.str();
  json images = json::array();
  for (int i = 1; i <= phi.context().n; ++i)
    images.push_back(basis_json(to_basis(phi.image(i))));
  j["images"] = std::move(images);
  return j;
}

std::string degree_pair_text(const DegreePair& d) { return to_text(d); }

int run(int argc, char** argv) {
  CLI::App app{
      "metalie: exact computation in free metabelian Lie algebras\n"
      "(Fox derivatives, Jacobians, automorphisms, certified tame and\n"
      "almost-tame decompositions)"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  Options opt;
  app.add_option("--n", opt.n, "number of generators (2..16)")
      ->capture_default_str();
  app.add_option("--field", opt.field, "coefficient field: q or gf:<p>")
      ->capture_default_str();
  app.add_flag("--json", opt.as_json, "machine-readable output");
  app.add_option("--seed", opt.seed, "seed for randomized commands")
      ->capture_default_str();

  std::string in1, in2, in3;
  std::string mode_text = "tame", family;

  auto* normal_form = app.add_subcommand(
      "normal-form", "rewrite an element into the right-normed basis");
  normal_form->add_option("expr", in1, "element expression")->required();

  auto* fox = app.add_subcommand("fox", "Fox derivative column of an element");
  fox->add_option("expr", in1)->required();

  auto* lift = app.add_subcommand(
      "lift", "element of the derived subalgebra with the given column");
  lift->add_option("column", in1, "n polynomials separated by ';'")
      ->required();

  auto* jac = app.add_subcommand("jacobian", "Jacobian matrix");
  jac->add_option("endo", in1)->required();

  auto* isaut = app.add_subcommand("is-aut", "automorphism test");
  isaut->add_option("endo", in1)->required();

  auto* inv = app.add_subcommand("invert", "exact inverse automorphism");
  inv->add_option("endo", in1)->required();

  auto* comp = app.add_subcommand("compose", "composition of two maps");
  comp->add_option("first", in1)->required();
  comp->add_option("second", in2)->required();

  auto* ischein = app.add_subcommand(
      "is-chein", "one-row detection and validity of the moved row");
  ischein->add_option("endo", in1)->required();

  auto* ldeg = app.add_subcommand(
      "ldeg", "lower degree and degree of an element or an endomorphism");
  ldeg->add_option("input", in1)->required();

  auto* dec = app.add_subcommand("decompose", "certified decomposition");
  dec->add_option("--mode", mode_text, "tame | almost-tame")
      ->capture_default_str();
  dec->add_option("--family", family, "chein | one-row | d | exp | a | b")
      ->required();
  dec->add_option("input", in1, "family input")->required();
  dec->add_option("input2", in2, "second polynomial (families a, b)");
  dec->add_option("input3", in3, "third polynomial (family b)");

  auto* verify = app.add_subcommand("verify-word",
                                    "recompose a word and compare exactly");
  verify->add_option("word", in1, "word JSON")->required();
  verify->add_option("target", in2, "target endomorphism")->required();

  auto* selftest =
      app.add_subcommand("selftest", "run the full verification suite");

  CLI11_PARSE(app, argc, argv);
  Context ctx = opt.context();

  if (normal_form->parsed()) {
    BasisCombination b = to_basis(parse_element(ctx, read_input(in1)));
    if (opt.as_json)
      std::cout << basis_json(b).dump(2) << "\n";
    else
      std::cout << to_text(b) << "\n";
    return 0;
  }

  if (fox->parsed()) {
    JacobianColumn col = fox_derivatives(parse_element(ctx, read_input(in1)));
    if (opt.as_json) {
      json a = json::array();
      for (const Poly& p : col.entries) a.push_back(p.str());
      std::cout << a.dump(2) << "\n";
    } else {
      std::cout << to_text(col) << "\n";
    }
    return 0;
  }

  if (lift->parsed()) {
    std::string src = read_input(in1);
    JacobianColumn col{ctx, {}};
    std::stringstream ss(src);
    std::string part;
    while (std::getline(ss, part, ';'))
      col.entries.push_back(parse_poly(ctx, part));
    if (static_cast<int>(col.entries.size()) != ctx.n)
      throw DomainError("expected " + std::to_string(ctx.n) +
                        " column entries");
    std::cout << to_text(lift_column(col)) << "\n";
    return 0;
  }

  if (jac->parsed()) {
    PolyMatrix m = jacobian(parse_endomorphism(ctx, read_input(in1)));
    if (opt.as_json) {
      json rows = json::array();
      for (int i = 1; i <= ctx.n; ++i) {
        json row = json::array();
        for (int j = 1; j <= ctx.n; ++j) row.push_back(m.at(i, j).str());
        rows.push_back(std::move(row));
      }
      std::cout << rows.dump(2) << "\n";
    } else {
      std::cout << to_text(m) << "\n";
    }
    return 0;
  }

  if (isaut->parsed()) {
    bool ok = is_automorphism(parse_endomorphism(ctx, read_input(in1)));
    std::cout << (ok ? "true" : "false") << "\n";
    return 0;
  }

  if (inv->parsed()) {
    Endomorphism phi = parse_endomorphism(ctx, read_input(in1));
    Endomorphism psi = invert(phi);
    if (opt.as_json)
      std::cout << endo_json(psi).dump(2) << "\n";
    else
      std::cout << to_text(psi) << "\n";
    return 0;
  }

  if (comp->parsed()) {
    Endomorphism a = parse_endomorphism(ctx, read_input(in1));
    Endomorphism b = parse_endomorphism(ctx, read_input(in2));
    Endomorphism r = compose(a, b);
    if (opt.as_json)
      std::cout << endo_json(r).dump(2) << "\n";
    else
      std::cout << to_text(r) << "\n";
    return 0;
  }

  if (ischein->parsed()) {
    Endomorphism phi = parse_endomorphism(ctx, read_input(in1));
    std::optional<int> row = one_row_index(phi);
    if (!row) {
      std::cout << "not a one-row endomorphism\n";
      return 0;
    }
    MagnusElement f =
        phi.image(*row) - MagnusElement::generator(ctx, *row);
    bool valid = f.in_derived() && is_chein_valid(*row, f);
    if (opt.as_json) {
      json j;
      j["row"] = *row;
      j["valid"] = valid;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "one-row at x" << *row << ": "
                << (valid ? "valid" : "invalid") << "\n";
    }
    return 0;
  }

  if (ldeg->parsed()) {
    std::string src = read_input(in1);
    if (src.find("->") != std::string::npos) {
      std::cout << degree_pair_text(
                       endo_degrees(parse_endomorphism(ctx, src)))
                << "\n";
    } else {
      auto v = parse_poly_or_element(ctx, src);
      if (std::holds_alternative<Poly>(v))
        std::cout << degree_pair_text(std::get<Poly>(v).degrees()) << "\n";
      else
        std::cout << degree_pair_text(
                         element_degrees(std::get<MagnusElement>(v)))
                  << "\n";
    }
    return 0;
  }

  if (dec->parsed()) {
    Mode mode;
    if (mode_text == "tame")
      mode = Mode::tame;
    else if (mode_text == "almost-tame" || mode_text == "almost_tame")
      mode = Mode::almost_tame;
    else
      throw DomainError("unknown mode '" + mode_text + "'");
    HypothesisContext hc{ctx};
    DecomposeStats stats;
    GeneratorWord w(ctx, Alphabet::tame);
    Endomorphism target = Endomorphism::identity(ctx);

    if (family == "chein") {
      Poly a = parse_poly(ctx, read_input(in1));
      target = chein_map(a);
      if (mode == Mode::tame && !a.is_zero() && a.lower_degree() >= 2 &&
          a.terms().size() == 1) {
        w = decompose_chein_monomial(a.terms()[0].second, a.terms()[0].first,
                                     hc, &stats);
      } else {
        // General C(a) is the one-row map at row 1 with payload [x2,x3]a.
        MagnusElement f = module_scale(
            bracket(MagnusElement::generator(ctx, 2),
                    MagnusElement::generator(ctx, 3)),
            a);
        w = decompose_one_row(1, f, mode, hc, &stats);
      }
    } else if (family == "one-row") {
      Endomorphism phi = parse_endomorphism(ctx, read_input(in1));
      std::optional<int> row = one_row_index(phi);
      if (!row) throw DomainError("input is not a one-row endomorphism");
      target = phi;
      MagnusElement moved = phi.image(*row);
      Scalar diag = moved.linear_coefficient(*row);
      if (diag.is_zero())
        throw DomainError("one-row endomorphism with zero diagonal "
                          "coefficient is not an automorphism");
      // Peel the linear part of the moved image as an elementary letter:
      // phi = (x_row -> x_row + m') followed by the elementary linear map.
      MagnusElement linear_rest = MagnusElement::zero(ctx);
      for (int k = 1; k <= ctx.n; ++k) {
        if (k == *row) continue;
        const Scalar& c = moved.linear_coefficient(k);
        if (!c.is_zero())
          linear_rest =
              linear_rest + MagnusElement::generator(ctx, k).scaled(c);
      }
      MagnusElement derived_part =
          moved - MagnusElement::generator(ctx, *row).scaled(diag) -
          linear_rest;
      MagnusElement payload = derived_part.scaled(diag.inverse());
      if (!is_chein_valid(*row, payload))
        throw DomainError("moved image is not a Chein automorphism");
      w = decompose_one_row(*row, payload, mode, hc, &stats);
      if (!(diag.is_one() && linear_rest.is_zero())) {
        GeneratorWord full(ctx, w.alphabet());
        full.append(w);
        full.append(Letter::elementary(ctx, *row, diag, linear_rest));
        w = full.simplified();
      }
    } else if (family == "d") {
      Poly a = parse_poly(ctx, read_input(in1));
      target = d_map(a);
      w = decompose_d(a, mode, hc, &stats);
    } else if (family == "exp") {
      MagnusElement m = parse_element(ctx, read_input(in1));
      target = exponential_map(m);
      w = decompose_exponential(m, mode, hc, &stats);
    } else if (family == "a") {
      if (in2.empty()) throw DomainError("family a needs two polynomials");
      Poly h = parse_poly(ctx, read_input(in1));
      Poly g = parse_poly(ctx, read_input(in2));
      target = a_map(h, g);
      w = reduce_a(h, g, hc, &stats);
    } else if (family == "b") {
      if (in2.empty() || in3.empty())
        throw DomainError("family b needs three polynomials");
      Poly h = parse_poly(ctx, read_input(in1));
      Poly f = parse_poly(ctx, read_input(in2));
      Poly g = parse_poly(ctx, read_input(in3));
      target = b_map(h, f, g);
      w = decompose_b(h, f, g, hc, &stats);
    } else {
      throw DomainError("unknown family '" + family + "'");
    }

    bool certified = verify_word(w, target);
    if (!certified)
      throw CertificationError("emitted word failed final verification");
    if (opt.as_json) {
      json j = json::parse(serialize_word(w));
      j["length"] = w.size();
      j["depth"] = stats.max_depth;
      j["certified"] = true;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << serialize_word(w) << "\n";
      std::cout << "letters: " << w.size() << "\n";
      std::cout << "recursion depth: " << stats.max_depth << "\n";
      std::cout << "certified: true\n";
    }
    return 0;
  }

  if (verify->parsed()) {
    GeneratorWord w = parse_word(read_input(in1));
    Endomorphism target =
        parse_endomorphism(w.context(), read_input(in2));
    bool ok = verify_word(w, target);
    std::cout << (ok ? "true" : "false") << "\n";
    return 0;
  }

  if (selftest->parsed()) {
    auto results = run_acceptance_criteria(opt.seed);
    if (opt.as_json) {
      json arr = json::array();
      for (const auto& r : results) {
        json j;
        j["criterion"] = r.index;
        j["name"] = r.name;
        j["passed"] = r.passed;
        j["detail"] = r.detail;
        arr.push_back(std::move(j));
      }
      std::cout << arr.dump(2) << "\n";
    } else {
      for (const auto& r : results)
        std::cout << "criterion " << r.index << " (" << r.name
                  << "): " << (r.passed ? "PASS" : "FAIL") << " — "
                  << r.detail << "\n";
    }
    return all_passed(results) ? 0 : 2;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CertificationError& e) {
    std::cerr << "certification error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
