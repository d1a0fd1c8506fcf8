#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gcgs/digest.hpp"
#include "gcgs/errors.hpp"
#include "gcgs/lexer.hpp"

namespace gcgs {

struct ByteRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool operator==(const ByteRange&) const = default;
  bool operator<(const ByteRange& o) const {
    return begin != o.begin ? begin < o.begin : end < o.end;
  }
};

enum class IdentKind { function, parameter, variable, class_member };

inline std::string_view ident_kind_name(IdentKind k) {
  switch (k) {
    case IdentKind::function: return "function";
    case IdentKind::parameter: return "parameter";
    case IdentKind::variable: return "variable";
    case IdentKind::class_member: return "class_member";
  }
  return "?";
}

struct Identifier {
  std::string name;
  IdentKind kind = IdentKind::variable;
  std::vector<ByteRange> occurrences;      // code positions, ascending, disjoint
  std::vector<ByteRange> doc_occurrences;  // inside string literals (functions)
  std::vector<std::size_t> def_indices;    // occurrences that bind the name

  std::size_t total_positions() const {
    return occurrences.size() + doc_occurrences.size();
  }
};

namespace detail {

// Accumulates binding sites found by the per-language walkers; occurrence
// assignment happens in a single shared pass afterwards.
struct Bindings {
  struct Entry {
    IdentKind kind;
    std::vector<std::size_t> def_begins;
    std::size_t first_begin;
  };
  std::unordered_map<std::string, Entry> by_name;

  static int kind_rank(IdentKind k) {
    switch (k) {
      case IdentKind::function: return 0;
      case IdentKind::parameter: return 1;
      case IdentKind::class_member: return 2;
      case IdentKind::variable: return 3;
    }
    return 3;
  }

  void declare(std::string_view name, IdentKind kind, std::size_t begin) {
    auto [it, fresh] = by_name.try_emplace(std::string(name),
                                           Entry{kind, {begin}, begin});
    if (!fresh) {
      if (kind_rank(kind) < kind_rank(it->second.kind)) it->second.kind = kind;
      it->second.def_begins.push_back(begin);
      it->second.first_begin = std::min(it->second.first_begin, begin);
    }
  }
};

inline bool tok_is(const Token& t, std::string_view src, std::string_view s) {
  return t.text(src) == s;
}

// --- python ------------------------------------------------------------

class PythonWalker {
 public:
  PythonWalker(std::string_view src, const std::vector<Token>& toks)
      : src_(src), toks_(toks) {}

  void run(Bindings& out) {
    out_ = &out;
    walk_defs();
    walk_statements();
  }

 private:
  std::string_view src_;
  const std::vector<Token>& toks_;
  Bindings* out_ = nullptr;

  const Token& at(std::size_t i) const { return toks_[i]; }
  bool is_op(std::size_t i, std::string_view s) const {
    return i < toks_.size() && at(i).kind == TokKind::op && tok_is(at(i), src_, s);
  }
  bool is_kw(std::size_t i, std::string_view s) const {
    return i < toks_.size() && at(i).kind == TokKind::keyword &&
           tok_is(at(i), src_, s);
  }

  std::size_t match_group(std::size_t open) const {
    int base = at(open).depth;
    for (std::size_t j = open + 1; j < toks_.size(); ++j) {
      if (at(j).kind == TokKind::op && at(j).depth < base) return j;
    }
    throw SyntaxError(at(open).begin, "unbalanced bracket");
  }

  void walk_defs() {
    for (std::size_t i = 0; i < toks_.size(); ++i) {
      if (is_kw(i, "def")) {
        if (i + 1 >= toks_.size() || at(i + 1).kind != TokKind::identifier)
          throw SyntaxError(at(i).begin, "'def' without a function name");
        const Token& name = at(i + 1);
        if (!is_op(i + 2, "("))
          throw SyntaxError(name.begin, "function definition without '('");
        out_->declare(name.text(src_), IdentKind::function, name.begin);
        extract_params(i + 2, match_group(i + 2));
      } else if (is_kw(i, "class")) {
        if (i + 1 >= toks_.size() || at(i + 1).kind != TokKind::identifier)
          throw SyntaxError(at(i).begin, "'class' without a name");
        // class names are not part of the rename surface
      } else if (is_kw(i, "lambda")) {
        extract_lambda_params(i);
      }
    }
  }

  void extract_params(std::size_t open, std::size_t close) {
    int inner = at(open).depth;
    bool expecting = true;
    bool skipping = false;  // inside annotation or default value
    for (std::size_t j = open + 1; j < close; ++j) {
      const Token& t = at(j);
      if (t.depth > inner) continue;
      if (skipping) {
        if (t.kind == TokKind::op && tok_is(t, src_, ",")) {
          skipping = false;
          expecting = true;
        }
        continue;
      }
      if (t.kind == TokKind::op) {
        std::string_view s = t.text(src_);
        if (s == "," || s == "*" || s == "**" || s == "/") {
          expecting = true;
        } else if (s == ":" || s == "=") {
          skipping = true;
        }
        continue;
      }
      if (t.kind == TokKind::identifier && expecting) {
        out_->declare(t.text(src_), IdentKind::parameter, t.begin);
        expecting = false;
      }
    }
  }

  void extract_lambda_params(std::size_t lam) {
    int d = at(lam).depth;
    bool expecting = true, skipping = false;
    for (std::size_t j = lam + 1; j < toks_.size(); ++j) {
      const Token& t = at(j);
      if (t.depth < d || t.kind == TokKind::newline) break;
      if (t.kind == TokKind::op && t.depth == d && tok_is(t, src_, ":")) break;
      if (t.depth > d) continue;
      if (skipping) {
        if (t.kind == TokKind::op && tok_is(t, src_, ",")) {
          skipping = false;
          expecting = true;
        }
        continue;
      }
      if (t.kind == TokKind::op) {
        std::string_view s = t.text(src_);
        if (s == "," || s == "*" || s == "**") expecting = true;
        else if (s == "=") skipping = true;
        continue;
      }
      if (t.kind == TokKind::identifier && expecting) {
        out_->declare(t.text(src_), IdentKind::parameter, t.begin);
        expecting = false;
      }
    }
  }

  // Statement-level walk: assignment targets, for/as bindings, walrus,
  // self.<attr> members.
  void walk_statements() {
    for (std::size_t i = 0; i < toks_.size(); ++i) {
      const Token& t = at(i);
      if (t.kind == TokKind::keyword && tok_is(t, src_, "for")) {
        // targets run until the matching 'in'
        std::size_t j = i + 1;
        std::size_t start = j;
        while (j < toks_.size() && !(at(j).kind == TokKind::keyword &&
                                     at(j).depth == t.depth &&
                                     tok_is(at(j), src_, "in")) &&
               at(j).kind != TokKind::newline)
          ++j;
        extract_targets(start, j, t.depth);
      } else if (t.kind == TokKind::keyword && tok_is(t, src_, "as")) {
        if (i + 1 < toks_.size() && at(i + 1).kind == TokKind::identifier)
          out_->declare(at(i + 1).text(src_), IdentKind::variable,
                        at(i + 1).begin);
      } else if (t.kind == TokKind::op && tok_is(t, src_, ":=")) {
        if (i > 0 && at(i - 1).kind == TokKind::identifier)
          out_->declare(at(i - 1).text(src_), IdentKind::variable,
                        at(i - 1).begin);
      } else if (t.kind == TokKind::op && t.depth == 0 && is_assign_op(t)) {
        handle_assignment(i);
      }
    }
  }

  bool is_assign_op(const Token& t) const {
    std::string_view s = t.text(src_);
    if (s == "=") return true;
    static const char* augs[] = {"+=", "-=", "*=", "/=", "//=", "%=", "**=",
                                 ">>=", "<<=", "&=", "|=", "^=", "@="};
    for (auto* a : augs)
      if (s == a) return true;
    return false;
  }

  void handle_assignment(std::size_t eq) {
    // self.attr = ...
    if (eq >= 3 && at(eq - 1).kind == TokKind::identifier &&
        is_op(eq - 2, ".") && at(eq - 3).kind == TokKind::identifier &&
        tok_is(at(eq - 3), src_, "self")) {
      out_->declare(at(eq - 1).text(src_), IdentKind::class_member,
                    at(eq - 1).begin);
      return;
    }
    // walk back to the statement start
    std::size_t start = eq;
    while (start > 0) {
      const Token& p = at(start - 1);
      if (p.kind == TokKind::newline) break;
      if (p.kind == TokKind::op && p.depth == 0 && tok_is(p, src_, ";")) break;
      if (p.kind == TokKind::op && p.depth == 0 && tok_is(p, src_, "=")) break;
      if (p.kind == TokKind::keyword) {
        std::string_view s = p.text(src_);
        // inline compound body: `if c: x = 1` — the ':' ends the header
        if (s == "else" || s == "try" || s == "finally") break;
      }
      --start;
    }
    // annotated form `x: int = 5` — the target ends at the ':'
    std::size_t end = eq;
    for (std::size_t j = start; j < eq; ++j) {
      if (is_op(j, ":") && at(j).depth == 0) {
        end = j;
        break;
      }
    }
    extract_targets(start, end, 0);
  }

  // Extracts bare names from a target list span: `a`, `a, b`, `(a, b)`,
  // `[a, *b]`. Subscripted/attributed targets (`d[k]`, `o.x`) bind nothing
  // new and are skipped.
  void extract_targets(std::size_t begin, std::size_t end, int base_depth) {
    std::size_t j = begin;
    while (j < end) {
      const Token& t = at(j);
      if (t.kind == TokKind::identifier) {
        bool trailer = j + 1 < end &&
                       at(j + 1).kind == TokKind::op &&
                       (tok_is(at(j + 1), src_, "[") ||
                        tok_is(at(j + 1), src_, "(") ||
                        tok_is(at(j + 1), src_, "."));
        bool attr = j > begin && is_op(j - 1, ".");
        if (!trailer && !attr)
          out_->declare(t.text(src_), IdentKind::variable, t.begin);
        if (trailer) {
          // consume the whole trailer chain
          ++j;
          while (j < end) {
            if (at(j).kind == TokKind::op &&
                (tok_is(at(j), src_, "[") || tok_is(at(j), src_, "("))) {
              std::size_t close = match_group(j);
              j = close + 1;
            } else if (is_op(j, ".")) {
              j += 2;
            } else {
              break;
            }
          }
          continue;
        }
      }
      ++j;
    }
    (void)base_depth;
  }
};

// --- c / java ----------------------------------------------------------

class CFamilyWalker {
 public:
  CFamilyWalker(std::string_view src, const std::vector<Token>& toks,
                Language lang)
      : src_(src), toks_(toks), lang_(lang) {
    brace_.resize(toks_.size(), 0);
    int depth = 0;
    for (std::size_t i = 0; i < toks_.size(); ++i) {
      std::string_view s = toks_[i].text(src_);
      if (toks_[i].kind == TokKind::op && s == "}") --depth;
      brace_[i] = depth;
      if (toks_[i].kind == TokKind::op && s == "{") ++depth;
    }
  }

  void run(Bindings& out) {
    out_ = &out;
    collect_type_names();
    walk_functions();
    if (lang_ == Language::java) walk_fields();
  }

 private:
  std::string_view src_;
  const std::vector<Token>& toks_;
  Language lang_;
  std::vector<int> brace_;
  Bindings* out_ = nullptr;
  std::unordered_set<std::string> type_names_;  // struct/class/enum tags

  const Token& at(std::size_t i) const { return toks_[i]; }
  bool is_op(std::size_t i, std::string_view s) const {
    return i < toks_.size() && at(i).kind == TokKind::op && tok_is(at(i), src_, s);
  }
  bool is_kw(std::size_t i, std::string_view s) const {
    return i < toks_.size() && at(i).kind == TokKind::keyword &&
           tok_is(at(i), src_, s);
  }

  std::size_t match_paren(std::size_t open) const {
    int base = at(open).depth;
    for (std::size_t j = open + 1; j < toks_.size(); ++j)
      if (at(j).kind == TokKind::op && at(j).depth < base) return j;
    throw SyntaxError(at(open).begin, "unbalanced '('");
  }

  void collect_type_names() {
    for (std::size_t i = 0; i + 1 < toks_.size(); ++i) {
      if ((is_kw(i, "struct") || is_kw(i, "union") || is_kw(i, "enum") ||
           is_kw(i, "class") || is_kw(i, "interface")) &&
          at(i + 1).kind == TokKind::identifier) {
        type_names_.insert(std::string(at(i + 1).text(src_)));
      }
    }
  }

  static bool is_type_kw(std::string_view s) {
    static const std::unordered_set<std::string> kws = {
        "void",   "char",  "short",    "int",    "long",   "float",
        "double", "signed", "unsigned", "_Bool",  "bool",   "struct",
        "union",  "enum",  "const",    "static", "register", "volatile",
        "auto",   "inline", "byte",    "boolean", "final"};
    return kws.count(std::string(s)) > 0;
  }

  // Function definitions: NAME ( ... ) { at the expected brace depth.
  void walk_functions() {
    int def_depth = (lang_ == Language::java) ? 1 : 0;
    for (std::size_t i = 1; i < toks_.size(); ++i) {
      if (!is_op(i, "(") || brace_[i] != def_depth) continue;
      const Token& prev = at(i - 1);
      if (prev.kind != TokKind::identifier) continue;
      std::size_t close;
      try {
        close = match_paren(i);
      } catch (const SyntaxError&) {
        continue;
      }
      std::size_t j = close + 1;
      // java: `throws A, B` between ')' and '{'
      while (j < toks_.size() && !is_op(j, "{") && !is_op(j, ";") &&
             !is_op(j, "(") && j < close + 8)
        ++j;
      if (!is_op(j, "{")) continue;
      std::string name(prev.text(src_));
      if (!type_names_.count(name))  // java constructors stay fixed
        out_->declare(name, IdentKind::function, prev.begin);
      extract_params(i, close);
      extract_locals(j);
      i = close;
    }
  }

  void extract_params(std::size_t open, std::size_t close) {
    int inner = at(open).depth;
    std::size_t slice_start = open + 1;
    for (std::size_t j = open + 1; j <= close; ++j) {
      bool at_comma = is_op(j, ",") && at(j).depth == inner;
      if (j == close || at_comma) {
        declare_param(slice_start, j);
        slice_start = j + 1;
      }
    }
  }

  void declare_param(std::size_t begin, std::size_t end) {
    // rightmost identifier outside nested groups is the declarator name
    for (std::size_t j = end; j-- > begin;) {
      const Token& t = at(j);
      if (t.kind == TokKind::identifier && t.depth == at(begin).depth &&
          !type_names_.count(std::string(t.text(src_)))) {
        // `Type name` needs something type-like before it, or a keyword type
        bool has_type_before = false;
        for (std::size_t k = begin; k < j; ++k) {
          if (at(k).kind == TokKind::keyword || at(k).kind == TokKind::identifier) {
            has_type_before = true;
            break;
          }
        }
        if (has_type_before)
          out_->declare(t.text(src_), IdentKind::parameter, t.begin);
        return;
      }
    }
  }

  // Local declarations inside a function body.
  void extract_locals(std::size_t body_open) {
    int body_depth = brace_[body_open] + 1;
    std::size_t j = body_open + 1;
    bool stmt_start = true;
    while (j < toks_.size() && brace_[j] >= body_depth) {
      const Token& t = at(j);
      if (t.kind == TokKind::op) {
        std::string_view s = t.text(src_);
        if (s == ";" || s == "{" || s == "}") {
          stmt_start = true;
          ++j;
          continue;
        }
      }
      if (stmt_start && is_kw(j, "for") && is_op(j + 1, "(")) {
        // for-init declaration
        j += 2;
        stmt_start = true;
        continue;
      }
      if (stmt_start) {
        std::size_t consumed = try_declaration(j);
        if (consumed > 0) {
          j += consumed;
          stmt_start = false;
          continue;
        }
      }
      stmt_start = false;
      ++j;
    }
  }

  // Returns tokens consumed if the statement starting at i is a declaration.
  std::size_t try_declaration(std::size_t i) {
    std::size_t j = i;
    bool saw_type = false;
    while (j < toks_.size() && at(j).kind == TokKind::keyword &&
           is_type_kw(at(j).text(src_))) {
      std::string_view s = at(j).text(src_);
      saw_type = true;
      ++j;
      if ((s == "struct" || s == "union" || s == "enum") &&
          j < toks_.size() && at(j).kind == TokKind::identifier)
        ++j;  // tag name is the type, not a variable
    }
    if (!saw_type) {
      // typedef'd type: IDENT [<...>] [*]* IDENT
      if (j < toks_.size() && at(j).kind == TokKind::identifier) {
        std::size_t k = j + 1;
        if (lang_ == Language::java && is_op(k, "<")) {
          int angle = 1;
          ++k;
          while (k < toks_.size() && angle > 0 && k < j + 24) {
            if (is_op(k, "<")) ++angle;
            else if (is_op(k, ">")) --angle;
            else if (is_op(k, ">>")) angle -= 2;
            else if (is_op(k, ";") || is_op(k, "(")) return 0;
            ++k;
          }
          if (angle > 0) return 0;
        }
        while (is_op(k, "*") || (is_op(k, "[") && is_op(k + 1, "]")))
          k += is_op(k, "*") ? 1 : 2;
        if (k < toks_.size() && at(k).kind == TokKind::identifier &&
            !is_op(k + 1, "(")) {
          saw_type = true;
          j = k;  // declarators start at the name itself
        } else {
          return 0;
        }
      } else {
        return 0;
      }
    }
    // declarators until ';' at this brace depth
    std::size_t start = j;
    bool expecting = true;
    bool in_init = false;
    while (j < toks_.size()) {
      const Token& t = at(j);
      if (t.kind == TokKind::op) {
        std::string_view s = t.text(src_);
        if (s == ";" && t.depth == at(start).depth) break;
        if (s == "{" || s == "}") break;
        if (s == "," && t.depth == at(start).depth) {
          expecting = true;
          in_init = false;
          ++j;
          continue;
        }
        if (s == "=") in_init = true;
        if (s == "(" && !in_init) {
          // function declarator or call: not a simple local
          std::size_t close = match_paren(j);
          j = close + 1;
          continue;
        }
      }
      if (!in_init && expecting && t.kind == TokKind::identifier &&
          t.depth == at(start).depth) {
        bool next_ok = j + 1 >= toks_.size() || is_op(j + 1, "=") ||
                       is_op(j + 1, ",") || is_op(j + 1, ";") ||
                       is_op(j + 1, "[") || is_op(j + 1, ")") ||
                       is_op(j + 1, ":");
        if (next_ok) {
          out_->declare(t.text(src_), IdentKind::variable, t.begin);
          expecting = false;
        }
      }
      ++j;
    }
    return j > i ? j - i : 1;
  }

  // Java fields at class-body depth: [modifiers] Type name [= ...] ;
  void walk_fields() {
    std::size_t j = 0;
    bool stmt_start = true;
    while (j < toks_.size()) {
      if (brace_[j] != 1) {
        ++j;
        continue;
      }
      const Token& t = at(j);
      if (t.kind == TokKind::op) {
        std::string_view s = t.text(src_);
        if (s == ";" || s == "{" || s == "}") {
          stmt_start = true;
          ++j;
          continue;
        }
      }
      if (stmt_start) {
        std::size_t k = j;
        while (k < toks_.size() && at(k).kind == TokKind::keyword &&
               !is_type_kw(at(k).text(src_)) &&
               at(k).text(src_) != "class")
          ++k;  // access modifiers
        std::size_t before = out_->by_name.size();
        std::size_t consumed = try_declaration(k);
        if (consumed > 0) {
          // retag anything the declaration pass just added as a member
          for (auto& [name, entry] : out_->by_name) {
            if (entry.first_begin >= at(k).begin &&
                entry.first_begin < at(std::min(k + consumed, toks_.size() - 1)).end &&
                entry.kind == IdentKind::variable)
              entry.kind = IdentKind::class_member;
          }
          (void)before;
          j = k + consumed;
          stmt_start = false;
          continue;
        }
      }
      stmt_start = false;
      ++j;
    }
  }
};

}  // namespace detail

// Full identifier table for a source snippet: every function, parameter,
// variable, and class-member name bound in the snippet, with the byte ranges
// of all its code occurrences. Function names also carry occurrences inside
// string literals where the name is immediately followed by '(' — docstring
// usage examples and inline assertions.
inline std::vector<Identifier> parse_identifiers(std::string_view source,
                                                 Language lang) {
  TokenStream ts = tokenize(source, lang);
  detail::Bindings bind;
  if (lang == Language::python) {
    detail::PythonWalker(source, ts.tokens).run(bind);
    // f-string fields can contain walrus bindings; rare, but cheap to cover
    for (const Token& t : ts.embedded) (void)t;
  } else {
    detail::CFamilyWalker(source, ts.tokens, lang).run(bind);
  }

  // occurrence assignment: every identifier token whose text is a bound name
  std::vector<Token> code = ts.tokens;
  code.insert(code.end(), ts.embedded.begin(), ts.embedded.end());
  std::sort(code.begin(), code.end(),
            [](const Token& a, const Token& b) { return a.begin < b.begin; });

  std::map<std::string, Identifier> table;  // deterministic while building
  for (auto& [name, entry] : bind.by_name) {
    Identifier id;
    id.name = name;
    id.kind = entry.kind;
    table.emplace(name, std::move(id));
  }
  for (const Token& t : code) {
    if (t.kind != TokKind::identifier) continue;
    auto it = table.find(std::string(t.text(source)));
    if (it == table.end()) continue;
    it->second.occurrences.push_back({t.begin, t.end});
  }
  for (auto& [name, id] : table) {
    const auto& defs = bind.by_name.at(name).def_begins;
    std::unordered_set<std::size_t> def_set(defs.begin(), defs.end());
    for (std::size_t k = 0; k < id.occurrences.size(); ++k)
      if (def_set.count(id.occurrences[k].begin)) id.def_indices.push_back(k);
  }

  // doc occurrences: NAME( inside string literals, for function names
  std::vector<ByteRange> embedded_ranges;
  for (const Token& t : ts.embedded) embedded_ranges.push_back({t.begin, t.end});
  for (auto& [name, id] : table) {
    if (id.kind != IdentKind::function) continue;
    for (const Token& t : ts.tokens) {
      if (t.kind != TokKind::str) continue;
      std::string_view body = source.substr(t.begin, t.end - t.begin);
      std::size_t p = 0;
      while ((p = body.find(name, p)) != std::string_view::npos) {
        std::size_t abs = t.begin + p;
        bool left_ok = p == 0 || !is_ident_char(body[p - 1]);
        bool right_ok = p + name.size() < body.size() &&
                        body[p + name.size()] == '(';
        bool in_field = false;
        for (const ByteRange& r : embedded_ranges)
          if (abs >= r.begin && abs < r.end) in_field = true;
        if (left_ok && right_ok && !in_field)
          id.doc_occurrences.push_back({abs, abs + name.size()});
        p += name.size();
      }
    }
  }

  std::vector<Identifier> out;
  out.reserve(table.size());
  for (auto& [name, id] : table)
    if (!id.occurrences.empty()) out.push_back(std::move(id));
  // table order: by first occurrence in the source
  std::sort(out.begin(), out.end(), [](const Identifier& a, const Identifier& b) {
    return a.occurrences.front().begin < b.occurrences.front().begin;
  });
  return out;
}

// A parsed code snippet: source text plus its cached identifier table and
// content digest. Immutable after construction.
struct CodeSnippet {
  std::string source;
  Language language = Language::python;
  std::vector<Identifier> identifiers;
  std::string digest;

  static CodeSnippet parse(std::string source, Language lang) {
    CodeSnippet s;
    s.language = lang;
    s.identifiers = parse_identifiers(source, lang);
    s.digest = digest_hex(source);
    TokenStream ts = tokenize(source, lang);
    for (const Token& t : ts.tokens)
      if (t.kind == TokKind::identifier)
        s.code_names_.insert(std::string(t.text(source)));
    for (const Token& t : ts.embedded)
      if (t.kind == TokKind::identifier)
        s.code_names_.insert(std::string(t.text(source)));
    s.source = std::move(source);
    return s;
  }

  const Identifier* find(std::string_view name) const {
    for (const Identifier& id : identifiers)
      if (id.name == name) return &id;
    return nullptr;
  }

  // True if the name appears as any identifier token in the code, bound or
  // not. Used for collision checks: renaming onto such a name would capture.
  bool mentions(std::string_view name) const {
    return code_names_.count(std::string(name)) > 0;
  }

 private:
  std::unordered_set<std::string> code_names_;
};

}  // namespace gcgs
