#pragma once

#include <array>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "gcgs/errors.hpp"

namespace gcgs {

enum class Language { python, c, java };

inline std::string_view language_name(Language lang) {
  switch (lang) {
    case Language::python: return "python";
    case Language::c: return "c";
    case Language::java: return "java";
  }
  return "?";
}

inline Language language_from_name(std::string_view name) {
  if (name == "python") return Language::python;
  if (name == "c") return Language::c;
  if (name == "java") return Language::java;
  throw Error("unknown language: " + std::string(name));
}

enum class TokKind { identifier, keyword, number, str, op, newline };

struct Token {
  TokKind kind;
  std::size_t begin = 0;
  std::size_t end = 0;  // half-open byte range
  int depth = 0;        // ()[]{} nesting at token start

  std::string_view text(std::string_view src) const {
    return src.substr(begin, end - begin);
  }
};

struct TokenStream {
  std::vector<Token> tokens;    // code tokens; comments dropped
  std::vector<Token> embedded;  // code tokens inside f-string interpolations
};

inline const std::unordered_set<std::string>& keywords(Language lang) {
  static const std::unordered_set<std::string> py = {
      "False",  "None",   "True",    "and",   "as",     "assert", "async",
      "await",  "break",  "class",   "continue", "def",  "del",   "elif",
      "else",   "except", "finally", "for",   "from",   "global", "if",
      "import", "in",     "is",      "lambda", "nonlocal", "not", "or",
      "pass",   "raise",  "return",  "try",   "while",  "with",   "yield"};
  static const std::unordered_set<std::string> cc = {
      "auto",     "break",   "case",     "char",   "const",    "continue",
      "default",  "do",      "double",   "else",   "enum",     "extern",
      "float",    "for",     "goto",     "if",     "inline",   "int",
      "long",     "register", "restrict", "return", "short",   "signed",
      "sizeof",   "static",  "struct",   "switch", "typedef",  "union",
      "unsigned", "void",    "volatile", "while",  "_Bool",    "bool",
      "true",     "false",   "NULL"};
  static const std::unordered_set<std::string> jv = {
      "abstract", "assert",  "boolean",    "break",     "byte",      "case",
      "catch",    "char",    "class",      "const",     "continue",  "default",
      "do",       "double",  "else",       "enum",      "extends",   "final",
      "finally",  "float",   "for",        "goto",      "if",        "implements",
      "import",   "instanceof", "int",     "interface", "long",      "native",
      "new",      "package", "private",    "protected", "public",    "return",
      "short",    "static",  "strictfp",   "super",     "switch",    "synchronized",
      "this",     "throw",   "throws",     "transient", "try",       "void",
      "volatile", "while",   "true",       "false",     "null"};
  switch (lang) {
    case Language::python: return py;
    case Language::c: return cc;
    case Language::java: return jv;
  }
  return py;
}

inline bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Lexically valid, non-keyword identifier in the given language.
inline bool is_valid_identifier(std::string_view name, Language lang) {
  if (name.empty() || !is_ident_start(name[0])) return false;
  for (char c : name)
    if (!is_ident_char(c)) return false;
  return !keywords(lang).count(std::string(name));
}

namespace detail {

struct Lexer {
  std::string_view src;
  Language lang;
  std::size_t pos = 0;
  std::vector<char> bracket_stack;
  TokenStream out;

  explicit Lexer(std::string_view s, Language l) : src(s), lang(l) {}

  [[noreturn]] void fail(std::size_t at, const std::string& what) const {
    throw SyntaxError(at, what);
  }

  char peek(std::size_t off = 0) const {
    return pos + off < src.size() ? src[pos + off] : '\0';
  }

  int depth() const { return static_cast<int>(bracket_stack.size()); }

  void push(TokKind kind, std::size_t begin, std::size_t end) {
    out.tokens.push_back({kind, begin, end, depth()});
  }

  static char closer_for(char open) {
    return open == '(' ? ')' : open == '[' ? ']' : '}';
  }

  void bracket(char c, std::size_t at) {
    if (c == '(' || c == '[' || c == '{') {
      bracket_stack.push_back(c);
    } else {
      if (bracket_stack.empty() || closer_for(bracket_stack.back()) != c)
        fail(at, std::string("unbalanced '") + c + "'");
      bracket_stack.pop_back();
    }
  }

  void lex_word() {
    std::size_t begin = pos;
    while (pos < src.size() && is_ident_char(src[pos])) ++pos;
    std::string_view word = src.substr(begin, pos - begin);
    if (lang == Language::python && pos < src.size() &&
        (src[pos] == '"' || src[pos] == '\'') && is_string_prefix(word)) {
      bool fstr = word.find('f') != std::string_view::npos ||
                  word.find('F') != std::string_view::npos;
      bool raw = word.find('r') != std::string_view::npos ||
                 word.find('R') != std::string_view::npos;
      lex_string(begin, raw, fstr);
      return;
    }
    TokKind kind = keywords(lang).count(std::string(word)) ? TokKind::keyword
                                                           : TokKind::identifier;
    push(kind, begin, pos);
  }

  static bool is_string_prefix(std::string_view word) {
    if (word.size() > 2) return false;
    for (char c : word) {
      char l = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      if (l != 'r' && l != 'b' && l != 'u' && l != 'f') return false;
    }
    return true;
  }

  void lex_number() {
    std::size_t begin = pos;
    while (pos < src.size()) {
      char c = src[pos];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.') {
        ++pos;
        // exponent sign: 1e-5, 0x1p+3
        if ((c == 'e' || c == 'E' || c == 'p' || c == 'P') && pos < src.size() &&
            (src[pos] == '+' || src[pos] == '-') && pos + 1 < src.size() &&
            std::isdigit(static_cast<unsigned char>(src[pos + 1]))) {
          ++pos;
        }
      } else {
        break;
      }
    }
    push(TokKind::number, begin, pos);
  }

  // begin = start of prefix (python) or of the quote itself.
  void lex_string(std::size_t begin, bool raw, bool fstr) {
    char quote = src[pos];
    bool triple = peek(1) == quote && peek(2) == quote;
    pos += triple ? 3 : 1;
    std::size_t body_begin = pos;
    std::size_t body_end = 0;
    while (true) {
      if (pos >= src.size()) fail(begin, "unterminated string literal");
      char c = src[pos];
      if (c == '\\') {
        pos += 2;  // backslash never terminates, raw or not
        continue;
      }
      if (!triple && c == '\n') fail(begin, "unterminated string literal");
      if (c == quote) {
        if (!triple) {
          body_end = pos;
          ++pos;
          break;
        }
        if (peek(1) == quote && peek(2) == quote) {
          body_end = pos;
          pos += 3;
          break;
        }
      }
      ++pos;
    }
    push(TokKind::str, begin, pos);
    if (fstr) lex_fstring_fields(body_begin, body_end);
    (void)raw;
  }

  // Tokenizes {expr} fields of an f-string so renames reach interpolations.
  void lex_fstring_fields(std::size_t body_begin, std::size_t body_end) {
    std::size_t i = body_begin;
    while (i < body_end) {
      char c = src[i];
      if (c == '{') {
        if (i + 1 < body_end && src[i + 1] == '{') {
          i += 2;
          continue;
        }
        std::size_t expr_begin = i + 1;
        int brace = 1, inner = 0;
        char in_str = 0;
        std::size_t j = expr_begin;
        std::size_t expr_end = body_end;
        for (; j < body_end; ++j) {
          char d = src[j];
          if (in_str) {
            if (d == '\\') ++j;
            else if (d == in_str) in_str = 0;
            continue;
          }
          if (d == '"' || d == '\'') { in_str = d; continue; }
          if (d == '(' || d == '[') ++inner;
          else if (d == ')' || d == ']') --inner;
          else if (d == '{') ++brace;
          else if (d == '}') {
            if (--brace == 0) { expr_end = j; break; }
          } else if (brace == 1 && inner == 0 && (d == ':' || d == '!')) {
            // format spec / conversion: expression ends here
            expr_end = j;
            while (j < body_end && brace > 0) {
              if (src[j] == '{') ++brace;
              if (src[j] == '}') --brace;
              ++j;
            }
            break;
          }
        }
        if (brace > 0 && expr_end == body_end)
          fail(i, "unterminated f-string field");
        Lexer sub(src.substr(0, expr_end), lang);
        sub.pos = expr_begin;
        sub.run();
        for (Token& t : sub.out.tokens)
          if (t.kind != TokKind::newline) out.embedded.push_back(t);
        i = j + 1;
      } else if (c == '}') {
        i += (i + 1 < body_end && src[i + 1] == '}') ? 2 : 1;
      } else {
        ++i;
      }
    }
  }

  void lex_operator() {
    static const char* py_ops[] = {"**=", "//=", ">>=", "<<=", "...", "->",
                                   ":=",  "**",  "//",  ">>",  "<<",  "<=",
                                   ">=",  "==",  "!=",  "+=",  "-=",  "*=",
                                   "/=",  "%=",  "&=",  "|=",  "^=",  "@="};
    static const char* c_ops[] = {"<<=", ">>=", "...", "->", "++", "--", "<<",
                                  ">>",  "<=",  ">=",  "==", "!=", "&&", "||",
                                  "+=",  "-=",  "*=",  "/=", "%=", "&=", "|=",
                                  "^=",  "##"};
    static const char* jv_ops[] = {">>>=", "<<=", ">>=", ">>>", "...", "->",
                                   "::",   "++",  "--",  "<<",  "<=",  ">=",
                                   "==",   "!=",  "&&",  "||",  "+=",  "-=",
                                   "*=",   "/=",  "%=",  "&=",  "|=",  "^="};
    std::size_t begin = pos;
    auto try_table = [&](const char* const* table, std::size_t n) {
      for (std::size_t k = 0; k < n; ++k) {
        std::string_view op = table[k];
        if (src.substr(pos, op.size()) == op) {
          pos += op.size();
          return true;
        }
      }
      return false;
    };
    bool matched = false;
    switch (lang) {
      case Language::python: matched = try_table(py_ops, std::size(py_ops)); break;
      case Language::c: matched = try_table(c_ops, std::size(c_ops)); break;
      case Language::java: matched = try_table(jv_ops, std::size(jv_ops)); break;
    }
    if (!matched) {
      char c = src[pos];
      if (c == '(' || c == ')' || c == '[' || c == ']' || c == '{' || c == '}')
        bracket(c, pos);
      ++pos;
    }
    push(TokKind::op, begin, pos);
  }

  void run() {
    bool at_line_start = true;
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '\n') {
        if (depth() == 0 && lang == Language::python)
          push(TokKind::newline, pos, pos + 1);
        ++pos;
        at_line_start = true;
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
        ++pos;
        continue;
      }
      if (c == '\\' && peek(1) == '\n') {
        pos += 2;
        continue;
      }
      if (lang == Language::python && c == '#') {
        while (pos < src.size() && src[pos] != '\n') ++pos;
        continue;
      }
      if (lang != Language::python && c == '/' && peek(1) == '/') {
        while (pos < src.size() && src[pos] != '\n') ++pos;
        continue;
      }
      if (lang != Language::python && c == '/' && peek(1) == '*') {
        std::size_t begin = pos;
        pos += 2;
        while (pos + 1 < src.size() && !(src[pos] == '*' && src[pos + 1] == '/'))
          ++pos;
        if (pos + 1 >= src.size()) fail(begin, "unterminated block comment");
        pos += 2;
        continue;
      }
      if (lang == Language::c && c == '#' && at_line_start) {
        // #include payloads are opaque; other directives lex normally so
        // macro bodies participate in renames.
        std::size_t line_end = src.find('\n', pos);
        if (line_end == std::string_view::npos) line_end = src.size();
        std::string_view line = src.substr(pos, line_end - pos);
        if (line.find("include") != std::string_view::npos) {
          pos = line_end;
          at_line_start = true;
          continue;
        }
        push(TokKind::op, pos, pos + 1);
        ++pos;
        at_line_start = false;
        continue;
      }
      at_line_start = false;
      if (is_ident_start(c)) {
        lex_word();
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
        lex_number();
      } else if (c == '"' || c == '\'') {
        if (lang != Language::python && c == '\'') {
          // char literal
          std::size_t begin = pos++;
          while (pos < src.size() && src[pos] != '\'') {
            if (src[pos] == '\\') ++pos;
            ++pos;
          }
          if (pos >= src.size()) fail(begin, "unterminated character literal");
          ++pos;
          push(TokKind::str, begin, pos);
        } else {
          lex_string(pos, false, false);
        }
      } else {
        lex_operator();
      }
    }
    if (!bracket_stack.empty())
      fail(src.size(), std::string("unclosed '") + bracket_stack.back() + "'");
    if (lang == Language::python)
      push(TokKind::newline, src.size(), src.size());
  }
};

}  // namespace detail

// Throws SyntaxError on lexical problems (unterminated literals, unbalanced
// brackets). Grammar checks beyond the lexical level live in parse_identifiers.
inline TokenStream tokenize(std::string_view src, Language lang) {
  detail::Lexer lx(src, lang);
  lx.run();
  return std::move(lx.out);
}

}  // namespace gcgs
