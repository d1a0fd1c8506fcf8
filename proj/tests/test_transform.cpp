#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <fstream>
#include <set>

#include "gcgs/transform.hpp"
#include "helpers.hpp"

using namespace gcgs;

namespace {
CodeSnippet py(const std::string& src) {
  return CodeSnippet::parse(src, Language::python);
}
}  // namespace

TEST_CASE("apply_rename substitutes every occurrence") {
  CodeSnippet c = py("def foo(x): return x");
  CodeSnippet out = apply_rename(c, {"foo", "bar"});
  CHECK(out.source == "def bar(x): return x");
  CodeSnippet out2 = apply_rename(c, {"x", "y"});
  CHECK(out2.source == "def foo(y): return y");
}

TEST_CASE("apply_rename rejects unknown and colliding names") {
  CodeSnippet c = py("def foo(x): return x");
  REQUIRE_THROWS_AS(apply_rename(c, {"baz", "qux"}), NoSuchIdentifier);
  REQUIRE_THROWS_AS(apply_rename(c, {"foo", "x"}), CollisionError);
  REQUIRE_THROWS_AS(apply_rename(c, {"foo", "return"}), CollisionError);
  REQUIRE_THROWS_AS(apply_rename(c, {"foo", "2bad"}), CollisionError);
  // unbound but mentioned names still capture
  CodeSnippet d = py("def f(x):\n    return len(x)\n");
  REQUIRE_THROWS_AS(apply_rename(d, {"x", "len"}), CollisionError);
}

TEST_CASE("rename reaches docstring assertions") {
  std::string src =
      "def string_xor(a, b):\n"
      "    \"\"\">>> string_xor('010', '110')\n"
      "    '100'\n"
      "    \"\"\"\n"
      "    return a\n";
  CodeSnippet out = apply_rename(py(src), {"string_xor", "bit_mix"});
  CHECK(out.source.find("string_xor") == std::string::npos);
  CHECK(out.source.find(">>> bit_mix('010', '110')") != std::string::npos);
}

TEST_CASE("invert is an involution and composes to identity") {
  RenameTransform g{"foo", "bar"};
  CHECK(invert(g) == RenameTransform{"bar", "foo"});
  CHECK(invert(invert(g)) == g);
  CodeSnippet c = py("def foo(x): return x");
  CodeSnippet round = apply_rename(apply_rename(c, g), invert(g));
  CHECK(round.source == c.source);
}

TEST_CASE("compose reduces trailing inverse pairs only") {
  RenameTransform g{"a", "b"};
  CompositeTransform w = compose({}, g);
  REQUIRE(w.word == std::vector<RenameTransform>{g});
  CompositeTransform e = compose(w, invert(g));
  CHECK(e.identity());
  CompositeTransform two = compose(compose({}, RenameTransform{"a", "b"}),
                                   RenameTransform{"c", "d"});
  REQUIRE(two.length() == 2);
  CHECK(two.reduced());
}

TEST_CASE("reducing a reduced word is a no-op") {
  gcgs::Rng rng(11);
  std::vector<std::string> names = {"a", "b", "c", "d", "e", "f"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<RenameTransform> seq;
    std::size_t len = rng.below(8);
    for (std::size_t i = 0; i < len; ++i) {
      RenameTransform g{names[rng.below(names.size())],
                        names[rng.below(names.size())]};
      if (g.old_name == g.new_name) continue;
      // bias towards cancellations
      if (!seq.empty() && rng.below(3) == 0) g = invert(seq.back());
      seq.push_back(g);
    }
    CompositeTransform once = reduce(seq);
    REQUIRE(once.reduced());
    CompositeTransform twice = reduce(once.word);
    CHECK(once == twice);
  }
}

TEST_CASE("composition is associative under reduction") {
  gcgs::Rng rng(13);
  std::vector<std::string> names = {"a", "b", "c", "d"};
  for (int trial = 0; trial < 200; ++trial) {
    auto draw = [&](std::size_t len) {
      std::vector<RenameTransform> seq;
      for (std::size_t i = 0; i < len; ++i) {
        RenameTransform g{names[rng.below(names.size())],
                          names[rng.below(names.size())]};
        if (g.old_name != g.new_name) seq.push_back(g);
      }
      return seq;
    };
    auto u = draw(rng.below(5)), v = draw(rng.below(5));
    std::vector<RenameTransform> uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    CompositeTransform direct = reduce(uv);
    // reduce(u · v) == fold of v onto reduce(u)
    CompositeTransform staged = reduce(u);
    for (const RenameTransform& g : v) staged = compose(staged, g);
    CHECK(direct == staged);
  }
}

TEST_CASE("apply_composite identity and fold equivalence") {
  CodeSnippet c = py("def foo(x): return x");
  CHECK(apply_composite(c, {}).source == c.source);

  // brute-force fold oracle on random small snippets
  gcgs::Rng rng(17);
  auto pool_names = testutil::small_pool_names();
  for (int trial = 0; trial < 40; ++trial) {
    CodeSnippet snip =
        py(testutil::random_python_snippet(rng));
    ReplacementPool pool = ReplacementPool::from_names(pool_names, "test");
    auto gens = sample_generators(snip, pool, 2, rng.next());
    if (gens.size() < 2) continue;
    CompositeTransform w;
    for (const auto& g : gens) w = compose(w, g);
    CodeSnippet via_fold = snip;
    bool ok = true;
    for (const auto& g : w.word) {
      if (!applicable(via_fold, g)) { ok = false; break; }
      via_fold = apply_rename(via_fold, g);
    }
    if (!ok) continue;  // later step collides with an earlier replacement
    CodeSnippet via_composite = apply_composite(snip, w);
    CHECK(via_composite.source == via_fold.source);
  }
}

TEST_CASE("apply_composite annotates failures with the word index") {
  CodeSnippet c = py("def foo(x): return x");
  CompositeTransform w;
  w.word = {{"foo", "bar"}, {"ghost", "y"}};
  try {
    apply_composite(c, w);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("word[1]") != std::string::npos);
  }
}

TEST_CASE("round-trip is byte-exact across a random corpus") {
  auto corpus = testutil::random_corpus(23, 30);
  ReplacementPool pool =
      ReplacementPool::from_names(testutil::small_pool_names(), "test");
  gcgs::Rng rng(29);
  int checked = 0;
  for (const CodeSnippet& c : corpus) {
    auto gens = sample_generators(c, pool, 4, rng.next());
    for (const auto& g : gens) {
      CodeSnippet fwd = apply_rename(c, g);
      CodeSnippet back = apply_rename(fwd, invert(g));
      REQUIRE(back.source == c.source);
      ++checked;
    }
  }
  REQUIRE(checked > 50);
}

TEST_CASE("parse stability: renames preserve identifier cardinality") {
  auto corpus = testutil::random_corpus(31, 20);
  ReplacementPool pool =
      ReplacementPool::from_names(testutil::small_pool_names(), "test");
  gcgs::Rng rng(37);
  for (const CodeSnippet& c : corpus) {
    auto gens = sample_generators(c, pool, 3, rng.next());
    for (const auto& g : gens) {
      CodeSnippet out = apply_rename(c, g);
      CHECK(out.identifiers.size() == c.identifiers.size());
      CHECK(out.find(g.new_name) != nullptr);
      CHECK(out.find(g.old_name) == nullptr);
    }
  }
}

TEST_CASE("doc consistency: old function name gone from strings") {
  std::string src =
      "def is_not_prime(n):\n"
      "    \"\"\"assert is_not_prime(2) == False\"\"\"\n"
      "    return n % 2 == 0\n";
  CodeSnippet out = apply_rename(py(src), {"is_not_prime", "check_units"});
  CHECK(out.source.find("is_not_prime") == std::string::npos);
}

TEST_CASE("sample_generators respects the cross-product bound") {
  CodeSnippet c = py("def foo(x): return x");  // 2 identifiers
  ReplacementPool pool = ReplacementPool::from_names({"aa", "bb", "cc"}, "t");
  auto gens = sample_generators(c, pool, 100, 5);
  CHECK(gens.size() <= 6);
  CHECK(gens.size() >= 1);
  std::set<std::string> uniq;
  for (const auto& g : gens) uniq.insert(g.key());
  CHECK(uniq.size() == gens.size());
}

TEST_CASE("sample_generators is deterministic in the seed") {
  CodeSnippet c = py("def merge(a, b):\n    out = a + b\n    return out\n");
  ReplacementPool pool =
      ReplacementPool::from_names(testutil::small_pool_names(), "t");
  auto g1 = sample_generators(c, pool, 5, 123);
  auto g2 = sample_generators(c, pool, 5, 123);
  REQUIRE(g1.size() == g2.size());
  for (std::size_t i = 0; i < g1.size(); ++i) CHECK(g1[i] == g2[i]);
  auto g3 = sample_generators(c, pool, 5, 124);
  bool same = g1.size() == g3.size();
  if (same)
    for (std::size_t i = 0; i < g1.size(); ++i)
      if (!(g1[i] == g3[i])) same = false;
  CHECK_FALSE(same);
}

TEST_CASE("sampled pairs form a subset of the enumerated applicable set") {
  CodeSnippet c = py("def f(a, b):\n    return a + b\n");
  ReplacementPool pool = ReplacementPool::from_names({"u", "v", "w"}, "t");
  // oracle: full cross product, filtered
  std::set<std::string> all_applicable;
  for (const Identifier& id : c.identifiers)
    for (const std::string& cand : pool.candidates) {
      RenameTransform g{id.name, cand};
      if (applicable(c, g)) all_applicable.insert(g.key());
    }
  auto gens = sample_generators(c, pool, 3, 99);
  REQUIRE(gens.size() == 3);
  for (const auto& g : gens) CHECK(all_applicable.count(g.key()) == 1);
}

TEST_CASE("empty search space raises") {
  CodeSnippet c = py("def f(x): return x");
  ReplacementPool empty_pool = ReplacementPool::from_names({}, "t");
  REQUIRE_THROWS_AS(sample_generators(c, empty_pool, 3, 1), EmptySearchSpace);
  // pool entirely colliding with existing names
  ReplacementPool bad = ReplacementPool::from_names({"f", "x", "return"}, "t");
  REQUIRE_THROWS_AS(sample_generators(c, bad, 3, 1), EmptySearchSpace);
}

TEST_CASE("replacement pool file format") {
  std::string path = "/tmp/gcgs_pool_test.txt";
  {
    std::ofstream out(path);
    out << "# corpus names\n"
        << "alpha\n"
        << "  beta  # trailing comment\n"
        << "\n"
        << "alpha\n"   // duplicate dropped
        << "9bad\n";   // invalid dropped
  }
  ReplacementPool pool = ReplacementPool::load(path);
  REQUIRE(pool.candidates == std::vector<std::string>{"alpha", "beta"});
  CHECK(pool.provenance == path);
  std::remove(path.c_str());
}

TEST_CASE("rename_tokens rewrites call sites in plain text") {
  CompositeTransform w;
  w.word = {{"foo", "bar"}};
  std::string out = rename_tokens("assert foo(1) == foo(2)", Language::python, w);
  CHECK(out == "assert bar(1) == bar(2)");
  // identifier boundaries respected
  std::string out2 = rename_tokens("foobar = foo(1)", Language::python, w);
  CHECK(out2 == "foobar = bar(1)");
}
