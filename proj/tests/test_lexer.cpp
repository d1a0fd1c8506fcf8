#include <catch2/catch_amalgamated.hpp>

#include "gcgs/lexer.hpp"

using namespace gcgs;

namespace {
std::vector<std::string> texts(const std::string& src, Language lang,
                               TokKind kind) {
  TokenStream ts = tokenize(src, lang);
  std::vector<std::string> out;
  for (const Token& t : ts.tokens)
    if (t.kind == kind) out.emplace_back(t.text(src));
  return out;
}
}  // namespace

TEST_CASE("python identifiers and keywords split correctly") {
  auto ids = texts("def foo(x):\n    return x + y\n", Language::python,
                   TokKind::identifier);
  REQUIRE(ids == std::vector<std::string>{"foo", "x", "x", "y"});
  auto kws = texts("def foo(x):\n    return x\n", Language::python,
                   TokKind::keyword);
  REQUIRE(kws == std::vector<std::string>{"def", "return"});
}

TEST_CASE("python strings swallow hash and quotes") {
  auto ids = texts("s = \"# not a comment\"  # real comment x\n",
                   Language::python, TokKind::identifier);
  REQUIRE(ids == std::vector<std::string>{"s"});
  auto strs = texts("s = '''tri\nple'''\n", Language::python, TokKind::str);
  REQUIRE(strs.size() == 1);
  REQUIRE(strs[0] == "'''tri\nple'''");
}

TEST_CASE("string prefixes lex as one literal") {
  auto strs = texts("a = r'\\d+'\nb = rb\"x\"\n", Language::python, TokKind::str);
  REQUIRE(strs == std::vector<std::string>{"r'\\d+'", "rb\"x\""});
}

TEST_CASE("f-string interpolations surface embedded code tokens") {
  TokenStream ts = tokenize("msg = f\"value={total + 1}\"\n", Language::python);
  std::string src = "msg = f\"value={total + 1}\"\n";
  std::vector<std::string> inner;
  for (const Token& t : ts.embedded)
    if (t.kind == TokKind::identifier) inner.emplace_back(t.text(src));
  REQUIRE(inner == std::vector<std::string>{"total"});
}

TEST_CASE("unterminated string raises at its start") {
  REQUIRE_THROWS_AS(tokenize("x = 'oops\n", Language::python), SyntaxError);
}

TEST_CASE("unbalanced brackets rejected") {
  REQUIRE_THROWS_AS(tokenize("f(1, 2", Language::python), SyntaxError);
  REQUIRE_THROWS_AS(tokenize("f 1)", Language::python), SyntaxError);
  REQUIRE_THROWS_AS(tokenize("a = [1, 2)", Language::python), SyntaxError);
}

TEST_CASE("newline tokens appear only at bracket depth zero") {
  std::string src = "a = (1 +\n 2)\nb = 3\n";
  TokenStream ts = tokenize(src, Language::python);
  int newlines = 0;
  for (const Token& t : ts.tokens)
    if (t.kind == TokKind::newline) ++newlines;
  REQUIRE(newlines == 3);  // two physical line ends at depth 0 plus EOF marker
}

TEST_CASE("c comments and char literals") {
  std::string src = "int f(int a) { /* x */ return a + 'c'; } // y\n";
  auto ids = texts(src, Language::c, TokKind::identifier);
  REQUIRE(ids == std::vector<std::string>{"f", "a", "a"});
  REQUIRE_THROWS_AS(tokenize("/* open", Language::c), SyntaxError);
}

TEST_CASE("c include lines are opaque, other directives lex") {
  std::string src = "#include <stdio.h>\n#define LIM 4\nint g(void){return LIM;}\n";
  auto ids = texts(src, Language::c, TokKind::identifier);
  REQUIRE(std::count(ids.begin(), ids.end(), "stdio") == 0);
  REQUIRE(std::count(ids.begin(), ids.end(), "LIM") == 2);
}

TEST_CASE("identifier validity excludes keywords") {
  REQUIRE(is_valid_identifier("total_2", Language::python));
  REQUIRE_FALSE(is_valid_identifier("lambda", Language::python));
  REQUIRE_FALSE(is_valid_identifier("2x", Language::python));
  REQUIRE_FALSE(is_valid_identifier("a-b", Language::python));
  REQUIRE_FALSE(is_valid_identifier("while", Language::c));
  REQUIRE_FALSE(is_valid_identifier("", Language::java));
}
