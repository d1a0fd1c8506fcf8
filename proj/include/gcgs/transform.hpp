#pragma once

#include <algorithm>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "gcgs/errors.hpp"
#include "gcgs/rng.hpp"
#include "gcgs/snippet.hpp"

namespace gcgs {

// One generator: rename `old_name` to `new_name` everywhere in a snippet.
struct RenameTransform {
  std::string old_name;
  std::string new_name;

  bool operator==(const RenameTransform&) const = default;

  std::string key() const { return old_name + "\x1f" + new_name; }
};

inline RenameTransform invert(const RenameTransform& g) {
  return {g.new_name, g.old_name};
}

inline bool are_inverse(const RenameTransform& a, const RenameTransform& b) {
  return b.old_name == a.new_name && b.new_name == a.old_name;
}

// A reduced word over the rename generators. The empty word is the identity.
struct CompositeTransform {
  std::vector<RenameTransform> word;

  bool identity() const { return word.empty(); }
  std::size_t length() const { return word.size(); }
  bool operator==(const CompositeTransform&) const = default;

  bool reduced() const {
    for (std::size_t i = 1; i < word.size(); ++i)
      if (are_inverse(word[i - 1], word[i])) return false;
    return true;
  }
};

// Appends g and cancels a trailing inverse pair. The free group has no other
// relations, so appending to a reduced word needs at most one cancellation.
inline CompositeTransform compose(CompositeTransform w, const RenameTransform& g) {
  if (!w.word.empty() && are_inverse(w.word.back(), g))
    w.word.pop_back();
  else
    w.word.push_back(g);
  return w;
}

inline CompositeTransform reduce(const std::vector<RenameTransform>& seq) {
  CompositeTransform w;
  for (const RenameTransform& g : seq) w = compose(w, g);
  return w;
}

// Applicability without throwing: g.old is bound in the snippet and g.new is
// a fresh, lexically valid name there.
inline bool applicable(const CodeSnippet& snippet, const RenameTransform& g) {
  if (g.old_name == g.new_name) return false;
  if (!is_valid_identifier(g.new_name, snippet.language)) return false;
  if (snippet.find(g.old_name) == nullptr) return false;
  if (snippet.mentions(g.new_name)) return false;
  return true;
}

// Replaces every occurrence of g.old (code positions plus, for functions,
// docstring call positions) with g.new and reparses. All other bytes are
// untouched.
inline CodeSnippet apply_rename(const CodeSnippet& snippet,
                                const RenameTransform& g) {
  const Identifier* id = snippet.find(g.old_name);
  if (id == nullptr) throw NoSuchIdentifier(g.old_name);
  if (g.old_name == g.new_name || !is_valid_identifier(g.new_name, snippet.language) ||
      snippet.mentions(g.new_name))
    throw CollisionError(g.new_name);

  std::vector<ByteRange> spans = id->occurrences;
  spans.insert(spans.end(), id->doc_occurrences.begin(),
               id->doc_occurrences.end());
  std::sort(spans.begin(), spans.end());

  std::string out;
  out.reserve(snippet.source.size() + spans.size() * g.new_name.size());
  std::size_t cursor = 0;
  for (const ByteRange& r : spans) {
    out.append(snippet.source, cursor, r.begin - cursor);
    out.append(g.new_name);
    cursor = r.end;
  }
  out.append(snippet.source, cursor, snippet.source.size() - cursor);
  return CodeSnippet::parse(std::move(out), snippet.language);
}

// Left-to-right application; equivalent to folding apply_rename.
inline CodeSnippet apply_composite(const CodeSnippet& snippet,
                                   const CompositeTransform& w) {
  CodeSnippet cur = snippet;
  for (std::size_t i = 0; i < w.word.size(); ++i) {
    try {
      cur = apply_rename(cur, w.word[i]);
    } catch (const Error& e) {
      throw Error("word[" + std::to_string(i) + "] (" + w.word[i].old_name +
                  " -> " + w.word[i].new_name + "): " + e.what());
    }
  }
  return cur;
}

// Token-exact rename over free-standing code text (e.g. a test suite that
// calls a renamed entry point). No binding analysis: every identifier token
// equal to old_name is replaced.
inline std::string rename_tokens(const std::string& text, Language lang,
                                 const CompositeTransform& w) {
  std::string cur = text;
  for (const RenameTransform& g : w.word) {
    TokenStream ts = tokenize(cur, lang);
    std::vector<ByteRange> spans;
    auto collect = [&](const std::vector<Token>& toks) {
      for (const Token& t : toks)
        if (t.kind == TokKind::identifier && t.text(cur) == g.old_name)
          spans.push_back({t.begin, t.end});
    };
    collect(ts.tokens);
    collect(ts.embedded);
    std::sort(spans.begin(), spans.end());
    std::string out;
    std::size_t cursor = 0;
    for (const ByteRange& r : spans) {
      out.append(cur, cursor, r.begin - cursor);
      out.append(g.new_name);
      cursor = r.end;
    }
    out.append(cur, cursor, cur.size() - cursor);
    cur = std::move(out);
  }
  return cur;
}

// Candidate replacement names, typically harvested from a code corpus.
struct ReplacementPool {
  std::vector<std::string> candidates;  // unique, lexically valid
  std::string provenance;

  static ReplacementPool from_names(std::vector<std::string> names,
                                    std::string provenance) {
    ReplacementPool pool;
    pool.provenance = std::move(provenance);
    std::unordered_set<std::string> seen;
    for (std::string& n : names) {
      if (n.empty() || !is_ident_start(n[0])) continue;
      bool ok = true;
      for (char c : n)
        if (!is_ident_char(c)) ok = false;
      if (ok && seen.insert(n).second) pool.candidates.push_back(std::move(n));
    }
    return pool;
  }

  // Newline-delimited names; '#' starts a comment.
  static ReplacementPool load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open replacement pool: " + path);
    std::vector<std::string> names;
    std::string line;
    while (std::getline(in, line)) {
      std::size_t hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      std::size_t b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      std::size_t e = line.find_last_not_of(" \t\r");
      names.push_back(line.substr(b, e - b + 1));
    }
    return from_names(std::move(names), path);
  }
};

// Up to R applicable (identifier, replacement) pairs, uniform without
// replacement over the identifier x pool cross product. `exclude` filters
// already-scored generators when sampling across search rounds.
inline std::vector<RenameTransform> sample_generators(
    const CodeSnippet& snippet, const ReplacementPool& pool, std::size_t R,
    std::uint64_t rng_seed,
    const std::unordered_set<std::string>& exclude = {}) {
  if (R < 1) throw Error("R must be >= 1");
  if (snippet.identifiers.empty()) throw EmptySearchSpace();

  const std::size_t n_ids = snippet.identifiers.size();
  const std::size_t n_cand = pool.candidates.size();
  const std::size_t total = n_ids * n_cand;
  if (total == 0) throw EmptySearchSpace();

  std::vector<std::size_t> index(total);
  for (std::size_t i = 0; i < total; ++i) index[i] = i;

  Rng rng(rng_seed);
  std::vector<RenameTransform> out;
  for (std::size_t i = 0; i < total && out.size() < R; ++i) {
    std::size_t j = i + rng.below(total - i);
    std::swap(index[i], index[j]);
    const std::size_t id_ix = index[i] / n_cand;
    const std::size_t cand_ix = index[i] % n_cand;
    RenameTransform g{snippet.identifiers[id_ix].name,
                      pool.candidates[cand_ix]};
    if (!applicable(snippet, g)) continue;
    if (exclude.count(g.key())) continue;
    out.push_back(std::move(g));
  }
  if (out.empty() && exclude.empty()) throw EmptySearchSpace();
  return out;
}

}  // namespace gcgs
