#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace accmine::cst {

// Statement-level concrete syntax tree for C/C++. The grammar is
// deliberately shallow: it resolves statement boundaries, nesting, loop
// headers, and preprocessor lines, and keeps going in the presence of
// syntax errors (error nodes are retained so pragma extraction can proceed
// on partially valid files). Expressions stay unparsed inside generic
// nodes; brace groups anywhere become compound children so pragmas inside
// any nesting are reachable.
enum class NodeKind {
  translation_unit,
  preproc,      // non-pragma preprocessor line
  pragma,       // #pragma line (any family)
  compound,
  for_stmt,
  while_stmt,
  do_stmt,
  if_stmt,
  switch_stmt,
  break_stmt,
  continue_stmt,
  return_stmt,
  goto_stmt,
  label,
  case_label,
  empty_stmt,   // bare ';'
  generic,      // declaration or expression statement
  error
};

struct Node {
  NodeKind kind = NodeKind::generic;
  size_t begin = 0;
  size_t end = 0;
  std::vector<Node> children;
  // for_stmt only
  size_t header_begin = 0;
  size_t header_end = 0;
  bool range_for = false;
  bool empty_condition = false;  // classic for with empty condition clause
};

enum class Lang { c, cpp };

struct GrammarUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Tree {
  std::string source;
  Node root;
  int error_count = 0;
  std::vector<size_t> line_starts;

  bool has_errors() const { return error_count > 0; }
  int line_of(size_t offset) const;  // 1-based
  std::string_view text(const Node& n) const {
    return std::string_view(source).substr(n.begin, n.end - n.begin);
  }
};

// Grammar chosen by file extension; throws GrammarUnavailable for anything
// that is not a C/C++ source or header extension.
Lang lang_for_extension(const std::filesystem::path& p);

Tree parse_translation_unit(std::string source, Lang lang);

// Folded single-line text of a preprocessor node: backslash continuations
// joined, comments blanked. Contains no newlines.
std::string directive_text(const Tree& t, const Node& n);

const Node* for_body(const Node& for_node);

// True when the loop body has no statements, or only empty `;` statements.
bool body_is_empty(const Node& for_node);

// Body text with surrounding braces stripped (or the single statement's
// text for braceless loops), trimmed.
std::string loop_body_text(const Tree& t, const Node& for_node);

}  // namespace accmine::cst
