#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace accmine {

// One raw pragma occurrence as found in a source file.
struct RawPragma {
  std::string text;  // single logical line, no newlines
  std::string file;
  int line = 1;  // 1-based
};

// A pragma modifier: bare keyword (`gang`) or keyword with arguments
// (`reduction(+:sum)`). Identity for set semantics is the full canonical
// text, so `present(b)` and `present(c)` are distinct.
struct Clause {
  std::string name;  // lowercase keyword, no whitespace or parentheses
  std::string args;  // raw normalized text between the parentheses
  bool parenthesized = false;

  std::string canonical() const { return parenthesized ? name + "(" + args + ")" : name; }
  bool operator==(const Clause&) const = default;
};

struct Pragma {
  std::vector<std::string> directives;  // leading keywords after `acc`, in order
  std::vector<Clause> clauses;          // remaining tokens, in order
  std::string canonical;                // normalized full text

  bool operator==(const Pragma&) const = default;
};

// The nine directive categories used for corpus accounting.
enum class DirectiveType { loop, parallel, kernels, serial, data, enter, exit_, wait, unknown };

std::string_view directive_type_name(DirectiveType t);

enum class ComplexityBin { simple, medium, complex_, very_complex };

std::string_view complexity_bin_name(ComplexityBin b);

struct PragmaParseError : std::runtime_error {
  enum class Kind { not_an_acc_pragma, unbalanced_parentheses };
  Kind kind;
  PragmaParseError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// Canonicalizes a pragma line: trims, collapses whitespace runs to single
// spaces, and deletes spaces immediately inside ()/[] and around ':' / ','
// within argument text. Idempotent; plain text passes through unchanged
// apart from the whitespace rules.
std::string normalize_pragma(std::string_view text);

// Parses a `#pragma acc` line. The directive segment is the run of leading
// bare tokens up to the first token that carries parentheses or is a known
// bare clause keyword; every remaining token is a clause.
// Throws PragmaParseError on non-acc text, an empty directive segment, or
// unbalanced parentheses.
Pragma parse_pragma(std::string_view text);

DirectiveType directive_type(const Pragma& p);

// Number of directives plus number of clauses.
int complexity_score(const Pragma& p);

ComplexityBin complexity_bin(int score);

// Canonical clause texts with duplicates collapsed and order discarded.
std::set<std::string> clause_set(const Pragma& p);

}  // namespace accmine
