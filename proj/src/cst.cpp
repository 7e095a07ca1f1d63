#include "accmine/cst.hpp"

#include <algorithm>
#include <cctype>

#include "accmine/util.hpp"

namespace accmine::cst {
namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

struct Tok {
  enum Kind { ident, number, str, chr, punct, directive, eof } kind = eof;
  size_t begin = 0;
  size_t end = 0;
  char ch = 0;  // for punct
};

struct Lexer {
  const std::string& src;
  Lang lang;
  size_t pos = 0;
  bool at_line_start = true;

  explicit Lexer(const std::string& s, Lang l) : src(s), lang(l) {}

  char peek(size_t off = 0) const {
    return pos + off < src.size() ? src[pos + off] : '\0';
  }

  void skip_block_comment() {
    pos += 2;
    while (pos < src.size()) {
      if (src[pos] == '*' && peek(1) == '/') {
        pos += 2;
        return;
      }
      ++pos;
    }
  }

  void skip_line_comment() {
    while (pos < src.size() && src[pos] != '\n') ++pos;
  }

  void consume_string(char quote) {
    ++pos;
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '\\' && pos + 1 < src.size()) {
        pos += 2;
        continue;
      }
      ++pos;
      if (c == quote || c == '\n') return;  // unterminated: stop at EOL
    }
  }

  void consume_raw_string() {
    // at opening quote of R"delim( ... )delim"
    ++pos;
    size_t dbegin = pos;
    while (pos < src.size() && src[pos] != '(' && src[pos] != '"' &&
           src[pos] != '\n')
      ++pos;
    if (pos >= src.size() || src[pos] != '(') return;  // malformed
    std::string closer = ")" + src.substr(dbegin, pos - dbegin) + "\"";
    ++pos;
    size_t found = src.find(closer, pos);
    pos = found == std::string::npos ? src.size() : found + closer.size();
  }

  // Consume a full preprocessor logical line (continuations, comments).
  // Leaves pos at the terminating newline (not consumed) or EOF.
  void consume_directive() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '\n') {
        // backslash continuation? look back past \r
        size_t back = pos;
        if (back > 0 && src[back - 1] == '\r') --back;
        if (back > 0 && src[back - 1] == '\\') {
          ++pos;
          continue;
        }
        return;
      }
      if (c == '/' && peek(1) == '*') {
        skip_block_comment();
        continue;
      }
      if (c == '/' && peek(1) == '/') {
        skip_line_comment();
        return;
      }
      if (c == '"' || c == '\'') {
        consume_string(c);
        continue;
      }
      ++pos;
    }
  }

  std::vector<Tok> run() {
    std::vector<Tok> out;
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '\n') {
        at_line_start = true;
        ++pos;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
        continue;
      }
      if (c == '/' && peek(1) == '/') {
        skip_line_comment();
        continue;
      }
      if (c == '/' && peek(1) == '*') {
        skip_block_comment();
        continue;
      }
      if (c == '#' && at_line_start) {
        Tok t;
        t.kind = Tok::directive;
        t.begin = pos;
        ++pos;
        consume_directive();
        t.end = pos;
        out.push_back(t);
        continue;
      }
      at_line_start = false;
      if (c == '"') {
        Tok t{Tok::str, pos, 0, 0};
        consume_string('"');
        t.end = pos;
        out.push_back(t);
        continue;
      }
      if (c == '\'') {
        Tok t{Tok::chr, pos, 0, 0};
        consume_string('\'');
        t.end = pos;
        out.push_back(t);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
        Tok t{Tok::number, pos, 0, 0};
        ++pos;
        while (pos < src.size()) {
          char d = src[pos];
          if (ident_char(d) || d == '.' || d == '\'') {
            if ((d == 'e' || d == 'E' || d == 'p' || d == 'P') &&
                (peek(1) == '+' || peek(1) == '-'))
              ++pos;
            ++pos;
            continue;
          }
          break;
        }
        t.end = pos;
        out.push_back(t);
        continue;
      }
      if (ident_start(c)) {
        Tok t{Tok::ident, pos, 0, 0};
        ++pos;
        while (pos < src.size() && ident_char(src[pos])) ++pos;
        t.end = pos;
        // raw string literal prefix (C++ only)
        if (lang == Lang::cpp && pos < src.size() && src[pos] == '"') {
          std::string_view name(src.data() + t.begin, pos - t.begin);
          if (name == "R" || name == "LR" || name == "uR" || name == "UR" ||
              name == "u8R") {
            consume_raw_string();
            t.kind = Tok::str;
            t.end = pos;
          }
        }
        out.push_back(t);
        continue;
      }
      Tok t{Tok::punct, pos, pos + 1, c};
      ++pos;
      out.push_back(t);
    }
    Tok end_tok;
    end_tok.kind = Tok::eof;
    end_tok.begin = end_tok.end = src.size();
    out.push_back(end_tok);
    return out;
  }
};

struct Parser {
  const std::string& src;
  std::vector<Tok> toks;
  size_t pos = 0;
  int errors = 0;
  Lang lang;

  Parser(const std::string& s, Lang l) : src(s), lang(l) {
    toks = Lexer(s, l).run();
  }

  const Tok& cur() const { return toks[pos]; }
  const Tok& peek(size_t off) const {
    size_t i = pos + off;
    return i < toks.size() ? toks[i] : toks.back();
  }
  bool at_end() const { return cur().kind == Tok::eof; }

  std::string_view tok_text(const Tok& t) const {
    return std::string_view(src).substr(t.begin, t.end - t.begin);
  }
  bool is_word(const Tok& t, std::string_view w) const {
    return t.kind == Tok::ident && tok_text(t) == w;
  }
  bool is_punct(const Tok& t, char c) const {
    return t.kind == Tok::punct && t.ch == c;
  }

  Node make(NodeKind k, size_t b) {
    Node n;
    n.kind = k;
    n.begin = b;
    n.end = b;
    return n;
  }

  std::vector<Node> parse_stmts(bool stop_at_rbrace) {
    std::vector<Node> out;
    while (!at_end()) {
      if (stop_at_rbrace && is_punct(cur(), '}')) break;
      out.push_back(parse_stmt());
    }
    return out;
  }

  Node parse_stmt() {
    const Tok& t = cur();
    if (t.kind == Tok::directive) {
      Node n = make(directive_is_pragma(t) ? NodeKind::pragma
                                           : NodeKind::preproc,
                    t.begin);
      n.end = t.end;
      ++pos;
      return n;
    }
    if (is_punct(t, '{')) return parse_compound();
    if (is_punct(t, '}')) {
      // stray closer at this level
      ++errors;
      Node n = make(NodeKind::error, t.begin);
      n.end = t.end;
      ++pos;
      return n;
    }
    if (is_punct(t, ';')) {
      Node n = make(NodeKind::empty_stmt, t.begin);
      n.end = t.end;
      ++pos;
      return n;
    }
    if (t.kind == Tok::ident) {
      std::string_view w = tok_text(t);
      if (w == "for") return parse_for();
      if (w == "while") return parse_while();
      if (w == "do") return parse_do();
      if (w == "if") return parse_if();
      if (w == "switch") return parse_switch();
      if (w == "break") return parse_jump(NodeKind::break_stmt);
      if (w == "continue") return parse_jump(NodeKind::continue_stmt);
      if (w == "return") return parse_return();
      if (w == "goto") return parse_goto();
      if (w == "case") return parse_case();
      if (w == "default" && is_punct(peek(1), ':')) return parse_case();
      if (w == "else") {
        // dangling else: record and move on
        ++errors;
        Node n = make(NodeKind::error, t.begin);
        n.end = t.end;
        ++pos;
        return n;
      }
      if (is_punct(peek(1), ':') && !is_punct(peek(2), ':'))
        return parse_label();
    }
    return parse_generic();
  }

  bool directive_is_pragma(const Tok& t) const {
    size_t i = t.begin + 1;  // past '#'
    while (i < t.end &&
           std::isspace(static_cast<unsigned char>(src[i])))
      ++i;
    return std::string_view(src).substr(i, 6) == "pragma";
  }

  Node parse_compound() {
    Node n = make(NodeKind::compound, cur().begin);
    ++pos;  // '{'
    n.children = parse_stmts(true);
    if (is_punct(cur(), '}')) {
      n.end = cur().end;
      ++pos;
    } else {
      ++errors;  // unclosed block
      n.end = cur().begin;
    }
    return n;
  }

  // Consume a balanced ( ... ) group; returns false if cur is not '('.
  // On success inner_begin/inner_end bound the text inside the parens.
  bool consume_parens(size_t& inner_begin, size_t& inner_end) {
    if (!is_punct(cur(), '(')) return false;
    inner_begin = cur().end;
    ++pos;
    int depth = 1;
    while (!at_end()) {
      const Tok& t = cur();
      if (t.kind == Tok::punct) {
        if (t.ch == '(' || t.ch == '[' || t.ch == '{') ++depth;
        if (t.ch == ')' || t.ch == ']' || t.ch == '}') {
          --depth;
          if (depth == 0) {
            inner_end = t.begin;
            ++pos;
            return true;
          }
        }
      }
      ++pos;
    }
    ++errors;
    inner_end = cur().begin;
    return true;
  }

  Node parse_for() {
    Node n = make(NodeKind::for_stmt, cur().begin);
    n.end = cur().end;
    ++pos;  // 'for'
    if (is_punct(cur(), '(')) {
      size_t header_tok_begin = pos + 1;
      size_t ib = 0, ie = 0;
      consume_parens(ib, ie);
      n.header_begin = ib;
      n.header_end = ie;
      n.end = ie;
      classify_for_header(n, header_tok_begin, pos > 0 ? pos - 1 : 0);
    }
    if (!at_end() && !is_punct(cur(), '}')) {
      n.children.push_back(parse_stmt());
      n.end = n.children.back().end;
    }
    return n;
  }

  // Token range [first, last) covers the header interior (last indexes the
  // closing paren token). Finds top-level ';' / ':' to classify.
  void classify_for_header(Node& n, size_t first, size_t last) {
    int depth = 0;
    std::vector<size_t> semis;  // token indices of top-level ';'
    bool top_colon = false;
    for (size_t i = first; i < last; ++i) {
      const Tok& t = toks[i];
      if (t.kind != Tok::punct) continue;
      if (t.ch == '(' || t.ch == '[' || t.ch == '{') ++depth;
      else if (t.ch == ')' || t.ch == ']' || t.ch == '}') --depth;
      else if (depth == 0 && t.ch == ';') semis.push_back(i);
      else if (depth == 0 && t.ch == ':' && !is_punct(toks[i + 1], ':') &&
               (i == first || !is_punct(toks[i - 1], ':')))
        top_colon = true;
    }
    if (semis.empty()) {
      n.range_for = lang == Lang::cpp && top_colon;
      return;
    }
    size_t cond_first = semis[0] + 1;
    size_t cond_last = semis.size() > 1 ? semis[1] : last;
    n.empty_condition = cond_first >= cond_last;
  }

  Node parse_while() {
    Node n = make(NodeKind::while_stmt, cur().begin);
    n.end = cur().end;
    ++pos;
    size_t ib, ie;
    if (consume_parens(ib, ie)) n.end = ie;
    if (!at_end() && !is_punct(cur(), '}')) {
      n.children.push_back(parse_stmt());
      n.end = n.children.back().end;
    }
    return n;
  }

  Node parse_do() {
    Node n = make(NodeKind::do_stmt, cur().begin);
    n.end = cur().end;
    ++pos;
    if (!at_end() && !is_punct(cur(), '}')) {
      n.children.push_back(parse_stmt());
      n.end = n.children.back().end;
    }
    if (is_word(cur(), "while")) {
      ++pos;
      size_t ib, ie;
      if (consume_parens(ib, ie)) n.end = ie;
      if (is_punct(cur(), ';')) {
        n.end = cur().end;
        ++pos;
      }
    } else {
      ++errors;
    }
    return n;
  }

  Node parse_if() {
    Node n = make(NodeKind::if_stmt, cur().begin);
    n.end = cur().end;
    ++pos;
    if (is_word(cur(), "constexpr")) ++pos;
    size_t ib, ie;
    if (consume_parens(ib, ie)) n.end = ie;
    if (!at_end() && !is_punct(cur(), '}')) {
      n.children.push_back(parse_stmt());
      n.end = n.children.back().end;
    }
    if (is_word(cur(), "else")) {
      ++pos;
      if (!at_end() && !is_punct(cur(), '}')) {
        n.children.push_back(parse_stmt());
        n.end = n.children.back().end;
      }
    }
    return n;
  }

  Node parse_switch() {
    Node n = make(NodeKind::switch_stmt, cur().begin);
    n.end = cur().end;
    ++pos;
    size_t ib, ie;
    if (consume_parens(ib, ie)) n.end = ie;
    if (!at_end() && !is_punct(cur(), '}')) {
      n.children.push_back(parse_stmt());
      n.end = n.children.back().end;
    }
    return n;
  }

  Node parse_jump(NodeKind kind) {
    Node n = make(kind, cur().begin);
    n.end = cur().end;
    ++pos;
    if (is_punct(cur(), ';')) {
      n.end = cur().end;
      ++pos;
    }
    return n;
  }

  // return/goto: consume through the terminating ';' but stop before a
  // '}' or preprocessor line so broken code cannot swallow siblings.
  Node consume_until_semi(NodeKind kind) {
    Node n = make(kind, cur().begin);
    n.end = cur().end;
    ++pos;
    int depth = 0;
    while (!at_end()) {
      const Tok& t = cur();
      if (t.kind == Tok::directive) break;
      if (t.kind == Tok::punct) {
        if (t.ch == '{') {
          n.children.push_back(parse_compound());
          n.end = n.children.back().end;
          continue;
        }
        if (t.ch == '(' || t.ch == '[') ++depth;
        if (t.ch == ')' || t.ch == ']') {
          if (depth == 0) break;
          --depth;
        }
        if (t.ch == '}' && depth == 0) break;
        if (t.ch == ';' && depth == 0) {
          n.end = t.end;
          ++pos;
          return n;
        }
      }
      n.end = t.end;
      ++pos;
    }
    return n;
  }

  Node parse_return() { return consume_until_semi(NodeKind::return_stmt); }
  Node parse_goto() { return consume_until_semi(NodeKind::goto_stmt); }

  Node parse_case() {
    Node n = make(NodeKind::case_label, cur().begin);
    n.end = cur().end;
    ++pos;  // 'case' or 'default'
    int depth = 0;
    while (!at_end()) {
      const Tok& t = cur();
      if (t.kind == Tok::directive) break;
      if (t.kind == Tok::punct) {
        if (t.ch == '(' || t.ch == '[' || t.ch == '{') ++depth;
        if (t.ch == ')' || t.ch == ']' || t.ch == '}') {
          if (depth == 0) break;
          --depth;
        }
        if (t.ch == ';' && depth == 0) break;
        if (t.ch == ':' && depth == 0 && !is_punct(peek(1), ':')) {
          n.end = t.end;
          ++pos;
          return n;
        }
      }
      n.end = t.end;
      ++pos;
    }
    return n;
  }

  Node parse_label() {
    Node n = make(NodeKind::label, cur().begin);
    n.end = peek(1).end;
    pos += 2;  // ident ':'
    if (!at_end() && !is_punct(cur(), '}')) {
      n.children.push_back(parse_stmt());
      n.end = n.children.back().end;
    }
    return n;
  }

  Node parse_generic() {
    Node n = make(NodeKind::generic, cur().begin);
    int depth = 0;
    bool first = true;
    while (!at_end()) {
      const Tok& t = cur();
      if (t.kind == Tok::directive) break;
      if (t.kind == Tok::punct) {
        if (t.ch == '{') {
          n.children.push_back(parse_compound());
          n.end = n.children.back().end;
          first = false;
          if (depth == 0) {
            // `struct S {...} s;` or `int a[] = {0}, b;` continue;
            // a function definition ends at its body.
            if (is_punct(cur(), ';')) {
              n.end = cur().end;
              ++pos;
              return n;
            }
            if (!is_punct(cur(), ',') && !is_punct(cur(), '=')) return n;
          }
          continue;
        }
        if (t.ch == '}' && depth == 0) {
          if (first) break;  // shouldn't happen; stmt dispatch handles '}'
          return n;
        }
        if (t.ch == '(' || t.ch == '[') ++depth;
        if ((t.ch == ')' || t.ch == ']' || t.ch == '}') && depth > 0)
          --depth;
        if (t.ch == ';' && depth == 0) {
          n.end = t.end;
          ++pos;
          return n;
        }
      }
      n.end = t.end;
      ++pos;
      first = false;
    }
    if (n.end == n.begin) {
      // zero progress: swallow one token to guarantee termination
      ++errors;
      n.kind = NodeKind::error;
      n.end = cur().end;
      ++pos;
    }
    return n;
  }
};

void build_line_starts(const std::string& src, std::vector<size_t>& out) {
  out.clear();
  out.push_back(0);
  for (size_t i = 0; i < src.size(); ++i)
    if (src[i] == '\n') out.push_back(i + 1);
}

}  // namespace

int Tree::line_of(size_t offset) const {
  auto it = std::upper_bound(line_starts.begin(), line_starts.end(), offset);
  return static_cast<int>(it - line_starts.begin());
}

Lang lang_for_extension(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == ".c") return Lang::c;
  if (ext == ".h") return Lang::c;
  if (ext == ".cc" || ext == ".cpp" || ext == ".cxx" || ext == ".c++" ||
      ext == ".hpp" || ext == ".hh" || ext == ".hxx" || ext == ".h++" ||
      ext == ".ipp" || ext == ".tpp")
    return Lang::cpp;
  throw GrammarUnavailable("no grammar for extension '" + ext + "'");
}

Tree parse_translation_unit(std::string source, Lang lang) {
  Tree t;
  t.source = std::move(source);
  build_line_starts(t.source, t.line_starts);
  Parser p(t.source, lang);
  t.root.kind = NodeKind::translation_unit;
  t.root.begin = 0;
  t.root.end = t.source.size();
  t.root.children = p.parse_stmts(false);
  t.error_count = p.errors;
  return t;
}

std::string directive_text(const Tree& t, const Node& n) {
  const std::string& src = t.source;
  std::string out;
  out.reserve(n.end - n.begin);
  size_t i = n.begin;
  while (i < n.end) {
    char c = src[i];
    if (c == '\\') {
      size_t j = i + 1;
      if (j < n.end && src[j] == '\r') ++j;
      if (j < n.end && src[j] == '\n') {
        out.push_back(' ');
        i = j + 1;
        continue;
      }
    }
    if (c == '/' && i + 1 < n.end && src[i + 1] == '*') {
      size_t close = src.find("*/", i + 2);
      out.push_back(' ');
      i = (close == std::string::npos || close + 2 > n.end) ? n.end
                                                            : close + 2;
      continue;
    }
    if (c == '/' && i + 1 < n.end && src[i + 1] == '/') break;
    if (c == '\r' || c == '\n') {
      out.push_back(' ');
      ++i;
      continue;
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

const Node* for_body(const Node& for_node) {
  if (for_node.kind != NodeKind::for_stmt || for_node.children.empty())
    return nullptr;
  return &for_node.children.front();
}

bool body_is_empty(const Node& for_node) {
  const Node* body = for_body(for_node);
  if (body == nullptr) return true;
  if (body->kind == NodeKind::empty_stmt) return true;
  if (body->kind == NodeKind::compound) {
    return std::all_of(body->children.begin(), body->children.end(),
                       [](const Node& c) {
                         return c.kind == NodeKind::empty_stmt;
                       });
  }
  return false;
}

std::string loop_body_text(const Tree& t, const Node& for_node) {
  const Node* body = for_body(for_node);
  if (body == nullptr) return "";
  if (body->kind == NodeKind::compound) {
    size_t b = body->begin;
    size_t e = body->end;
    if (e > b && t.source[b] == '{') ++b;
    if (e > b && t.source[e - 1] == '}') --e;
    return std::string(
        util::trim(std::string_view(t.source).substr(b, e - b)));
  }
  return std::string(util::trim(t.text(*body)));
}

}  // namespace accmine::cst
