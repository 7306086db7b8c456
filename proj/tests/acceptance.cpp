// Acceptance suite: runs every criterion of the verification matrix and
// prints one pass/fail line each.  The CLI checks at the end exercise the
// installed front end through a pipe.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "metalie/decompose.hpp"
#include "metalie/parse.hpp"
#include "metalie/print.hpp"
#include "metalie/selftest.hpp"

using namespace metalie;
using nlohmann::json;

namespace {

constexpr std::uint64_t kSeed = 20240817;

struct CommandResult {
  int status = -1;
  std::string output;
};

CommandResult run_command(const std::string& cmd) {
  CommandResult r;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.output.append(buf.data(), got);
  int rc = pclose(pipe);
  if (WIFEXITED(rc)) r.status = WEXITSTATUS(rc);
  return r;
}

const char* cli_path() { return std::getenv("METALIE_CLI"); }

// Minimal structural validator for the subset of JSON Schema the shipped
// schema uses: type, enum, required, properties, additionalProperties,
// items, minimum, maximum, pattern (only the field pattern, checked ad hoc).
bool validate_against_schema(const json& schema, const json& value,
                             std::string& err) {
  if (schema.contains("type")) {
    const std::string t = schema["type"].get<std::string>();
    bool ok = (t == "object" && value.is_object()) ||
              (t == "array" && value.is_array()) ||
              (t == "string" && value.is_string()) ||
              (t == "integer" && value.is_number_integer()) ||
              (t == "boolean" && value.is_boolean());
    if (!ok) {
      err = "expected type " + t;
      return false;
    }
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const json& cand : schema["enum"])
      if (cand == value) found = true;
    if (!found) {
      err = "value not in enum";
      return false;
    }
  }
  if (value.is_number_integer()) {
    if (schema.contains("minimum") &&
        value.get<long long>() < schema["minimum"].get<long long>()) {
      err = "below minimum";
      return false;
    }
    if (schema.contains("maximum") &&
        value.get<long long>() > schema["maximum"].get<long long>()) {
      err = "above maximum";
      return false;
    }
  }
  if (value.is_object()) {
    if (schema.contains("required"))
      for (const json& key : schema["required"])
        if (!value.contains(key.get<std::string>())) {
          err = "missing required key " + key.get<std::string>();
          return false;
        }
    if (schema.contains("properties")) {
      const json& props = schema["properties"];
      for (auto it = value.begin(); it != value.end(); ++it) {
        if (props.contains(it.key())) {
          if (!validate_against_schema(props[it.key()], it.value(), err))
            return false;
        } else if (schema.contains("additionalProperties") &&
                   schema["additionalProperties"].is_boolean() &&
                   !schema["additionalProperties"].get<bool>()) {
          err = "unexpected key " + it.key();
          return false;
        }
      }
    }
  }
  if (value.is_array() && schema.contains("items")) {
    for (const json& item : value)
      if (!validate_against_schema(schema["items"], item, err)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("acceptance criteria 1-11") {
  auto results = run_acceptance_criteria(kSeed);
  for (const auto& r : results) {
    std::cout << "criterion " << r.index << " (" << r.name
              << "): " << (r.passed ? "PASS" : "FAIL") << " — " << r.detail
              << "\n";
    std::cout.flush();
    CHECK_MESSAGE(r.passed,
                  "criterion " << r.index << " failed: " << r.detail);
  }
}

TEST_CASE("criterion 11b: the command line selftest runs criteria 1-10") {
  const char* cli = cli_path();
  REQUIRE_MESSAGE(cli != nullptr, "METALIE_CLI not set");
  CommandResult r =
      run_command(std::string(cli) + " --seed 7 selftest");
  bool pass = r.status == 0 && r.output.find("FAIL") == std::string::npos;
  std::cout << "criterion 11b (cli selftest): " << (pass ? "PASS" : "FAIL")
            << " — exit " << r.status << "\n";
  CHECK_MESSAGE(r.status == 0, r.output);
  CHECK(r.output.find("criterion 10") != std::string::npos);
}

TEST_CASE("cli determinism and exit codes") {
  const char* cli = cli_path();
  REQUIRE(cli != nullptr);
  std::string base = std::string(cli) + " --n 4 --field q ";

  CommandResult id1 = run_command(
      base + "is-aut 'x1 -> x1; x2 -> x2; x3 -> x3; x4 -> x4'");
  CHECK(id1.status == 0);
  CHECK(id1.output == "true\n");

  // Identical invocations produce byte-identical output.
  std::string cmd = base +
                    "decompose --family chein --mode tame 'y1*y2' --json";
  CommandResult a = run_command(cmd);
  CommandResult b = run_command(cmd);
  CHECK(a.status == 0);
  CHECK(a.output == b.output);

  // Certified decomposition through the text path.
  CommandResult c = run_command(
      base + "decompose --family chein --mode tame 'y1*y2'");
  CHECK(c.status == 0);
  CHECK(c.output.find("certified: true") != std::string::npos);

  // The cubic obstruction exits with a domain failure.
  CommandResult d = run_command(
      base + "decompose --family one-row --mode tame "
             "'x1 -> x1 + [[x2,x3],x1]; x2 -> x2; x3 -> x3; x4 -> x4'");
  CHECK(d.status == 1);
  CHECK(d.output.find("cubic obstruction") != std::string::npos);

  // Syntax errors exit 1 with a located message.
  CommandResult e = run_command(base + "fox '[x1,x2'");
  CHECK(e.status == 1);
  CHECK(e.output.find("syntax error") != std::string::npos);

  CommandResult f = run_command(base + "ldeg 'x1 + [[x2,x3],x1]'");
  CHECK(f.status == 0);
  CHECK(f.output == "(1, 3)\n");
}

TEST_CASE("decompose JSON output validates against the shipped schema") {
  const char* cli = cli_path();
  const char* schema_path = std::getenv("METALIE_SCHEMA");
  REQUIRE(cli != nullptr);
  REQUIRE_MESSAGE(schema_path != nullptr, "METALIE_SCHEMA not set");
  std::ifstream in(schema_path);
  REQUIRE_MESSAGE(in.good(), "cannot open schema file");
  json schema = json::parse(in);

  for (const char* cmd :
       {" --n 4 --field q decompose --family chein --mode tame 'y1^2*y2' "
        "--json",
        " --n 4 --field gf:5 decompose --family one-row --mode almost-tame "
        "'x1 -> x1 + [[x2,x3],x1]; x2 -> x2; x3 -> x3; x4 -> x4' --json",
        " --n 5 --field gf:3 decompose --family a 'y2' 'y1' --json"}) {
    CommandResult r = run_command(std::string(cli) + cmd);
    REQUIRE_MESSAGE(r.status == 0, r.output);
    json doc = json::parse(r.output);
    std::string err;
    bool ok = validate_against_schema(schema, doc, err);
    CHECK_MESSAGE(ok, "schema violation: " << err);
    CHECK(doc["certified"].get<bool>());
  }

  // The library serializer emits schema-conforming documents too.
  Context ctx(4, FieldSpec::rationals());
  HypothesisContext hc{ctx};
  GeneratorWord w = decompose_chein_monomial(
      Scalar::one(ctx.field), Monomial::of_exponents({1, 1, 0, 0}), hc);
  json doc = json::parse(serialize_word(w));
  std::string err;
  CHECK_MESSAGE(validate_against_schema(schema, doc, err), err);
}

TEST_CASE("verify-word round trip through the CLI") {
  const char* cli = cli_path();
  REQUIRE(cli != nullptr);
  std::string tmp = "/tmp/metalie_word_test.json";
  CommandResult gen = run_command(
      std::string(cli) +
      " --n 4 --field q decompose --family d --mode tame 'y3*y4' > " + tmp +
      " && cat " + tmp + " | head -1");
  REQUIRE(gen.status == 0);

  // Reconstruct the word, evaluate it, and hand both back to verify-word.
  std::ifstream in(tmp);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string word_text = buf.str();
  // The text output has trailing summary lines after the JSON; trim to the
  // closing brace.
  size_t end = word_text.rfind('}');
  REQUIRE(end != std::string::npos);
  word_text = word_text.substr(0, end + 1);
  {
    std::ofstream out(tmp);
    out << word_text;
  }
  GeneratorWord w = parse_word(word_text);
  Endomorphism target = word_evaluate(w);
  std::string target_text;
  {
    std::ostringstream o;
    for (int i = 1; i <= 4; ++i) {
      if (i > 1) o << "; ";
      o << "x" << i << " -> " << to_text(to_basis(target.image(i)));
    }
    target_text = o.str();
  }
  CommandResult ver = run_command(std::string(cli) +
                                  " --n 4 --field q verify-word @" + tmp +
                                  " '" + target_text + "'");
  CHECK(ver.status == 0);
  CHECK(ver.output == "true\n");
}
