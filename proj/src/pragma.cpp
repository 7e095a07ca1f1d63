#include "accmine/pragma.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

#include "accmine/util.hpp"

namespace accmine {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

// Keywords that introduce an OpenACC construct. Tokens from this set extend
// the directive segment; anything after the first clause is a clause even if
// it appears here.
const std::unordered_set<std::string>& directive_vocabulary() {
  static const std::unordered_set<std::string> v = {
      "parallel", "kernels", "serial",  "loop",      "data",    "enter",   "exit",
      "wait",     "atomic",  "routine", "update",    "host_data", "declare", "cache"};
  return v;
}

// Clause keywords that legally appear without parentheses. Seeing one ends
// the directive segment.
const std::unordered_set<std::string>& bare_clause_keywords() {
  static const std::unordered_set<std::string> v = {
      "gang",     "worker",   "vector", "seq",        "auto",  "independent",
      "nohost",   "finalize", "if_present", "capture", "read",  "write",
      "device_resident", "link"};
  return v;
}

struct Unit {
  std::string name;
  std::string args;
  bool parenthesized = false;
};

// Splits the token text after `acc` into units. A parenthesized group glues
// to the preceding word even across a space, so `collapse (2)` is one unit.
std::vector<Unit> split_units(std::string_view rest) {
  std::vector<Unit> units;
  size_t i = 0;
  auto read_group = [&](std::string& out) {
    // i points at '('; copies the balanced interior into out.
    int depth = 0;
    size_t start = i;
    for (; i < rest.size(); ++i) {
      char c = rest[i];
      if (c == '(')
        ++depth;
      else if (c == ')') {
        --depth;
        if (depth == 0) {
          out.assign(rest.substr(start + 1, i - start - 1));
          ++i;
          return;
        }
      }
    }
    throw PragmaParseError(PragmaParseError::Kind::unbalanced_parentheses,
                           "unbalanced parentheses in pragma arguments");
  };
  while (i < rest.size()) {
    while (i < rest.size() && is_space(rest[i])) ++i;
    if (i >= rest.size()) break;
    if (rest[i] == '(') {
      // Orphan group: attach to the previous unit when one exists.
      std::string group;
      read_group(group);
      if (!units.empty() && !units.back().parenthesized) {
        units.back().args = group;
        units.back().parenthesized = true;
      } else {
        units.push_back(Unit{"", group, true});
      }
      continue;
    }
    if (rest[i] == ')') {
      throw PragmaParseError(PragmaParseError::Kind::unbalanced_parentheses,
                             "stray ')' in pragma text");
    }
    Unit u;
    while (i < rest.size() && !is_space(rest[i]) && rest[i] != '(' && rest[i] != ')')
      u.name.push_back(rest[i++]);
    if (i < rest.size() && rest[i] == '(') {
      read_group(u.args);
      u.parenthesized = true;
    }
    units.push_back(std::move(u));
  }
  return units;
}

}  // namespace

std::string normalize_pragma(std::string_view text) {
  // Pass 1: trim and collapse every whitespace run to a single space.
  std::string collapsed;
  collapsed.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c)) {
      pending_space = !collapsed.empty();
      continue;
    }
    if (pending_space) collapsed.push_back(' ');
    pending_space = false;
    collapsed.push_back(c);
  }
  // Pass 2: drop spaces just inside ()/[] and around ':' ',' in argument text.
  std::string out;
  out.reserve(collapsed.size());
  int depth = 0;
  for (size_t i = 0; i < collapsed.size(); ++i) {
    char c = collapsed[i];
    if (c == ' ') {
      char prev = out.empty() ? '\0' : out.back();
      char next = i + 1 < collapsed.size() ? collapsed[i + 1] : '\0';
      bool drop = prev == '(' || prev == '[' || next == ')' || next == ']';
      if (depth > 0 && (prev == ':' || prev == ',' || next == ':' || next == ','))
        drop = true;
      if (!drop) out.push_back(' ');
      continue;
    }
    if (c == '(' || c == '[')
      ++depth;
    else if (c == ')' || c == ']')
      depth = std::max(0, depth - 1);
    out.push_back(c);
  }
  return out;
}

Pragma parse_pragma(std::string_view text) {
  Pragma p;
  p.canonical = normalize_pragma(text);
  constexpr std::string_view kPrefix = "#pragma acc";
  if (!util::starts_with(p.canonical, kPrefix))
    throw PragmaParseError(PragmaParseError::Kind::not_an_acc_pragma,
                           "not an OpenACC pragma: " + p.canonical);
  std::string_view rest = std::string_view(p.canonical).substr(kPrefix.size());
  if (!rest.empty() && rest[0] != ' ')
    throw PragmaParseError(PragmaParseError::Kind::not_an_acc_pragma,
                           "not an OpenACC pragma: " + p.canonical);

  std::vector<Unit> units = split_units(rest);
  size_t boundary = 0;
  while (boundary < units.size()) {
    const Unit& u = units[boundary];
    if (u.parenthesized || bare_clause_keywords().count(u.name)) break;
    ++boundary;
  }
  if (boundary == 0)
    throw PragmaParseError(PragmaParseError::Kind::not_an_acc_pragma,
                           "pragma has no directive keyword: " + p.canonical);
  for (size_t k = 0; k < boundary; ++k) p.directives.push_back(units[k].name);
  for (size_t k = boundary; k < units.size(); ++k) {
    if (units[k].name.empty())
      throw PragmaParseError(PragmaParseError::Kind::not_an_acc_pragma,
                             "clause with no name in: " + p.canonical);
    p.clauses.push_back(Clause{units[k].name, units[k].args, units[k].parenthesized});
  }
  return p;
}

std::string_view directive_type_name(DirectiveType t) {
  switch (t) {
    case DirectiveType::loop: return "loop";
    case DirectiveType::parallel: return "parallel";
    case DirectiveType::kernels: return "kernels";
    case DirectiveType::serial: return "serial";
    case DirectiveType::data: return "data";
    case DirectiveType::enter: return "enter";
    case DirectiveType::exit_: return "exit";
    case DirectiveType::wait: return "wait";
    case DirectiveType::unknown: return "unknown";
  }
  return "unknown";
}

DirectiveType directive_type(const Pragma& p) {
  if (p.directives.empty()) return DirectiveType::unknown;
  const std::string& first = p.directives.front();
  if (first == "loop") return DirectiveType::loop;
  if (first == "parallel") return DirectiveType::parallel;
  if (first == "kernels") return DirectiveType::kernels;
  if (first == "serial") return DirectiveType::serial;
  if (first == "data") return DirectiveType::data;
  if (first == "enter") return DirectiveType::enter;
  if (first == "exit") return DirectiveType::exit_;
  if (first == "wait") return DirectiveType::wait;
  return DirectiveType::unknown;
}

int complexity_score(const Pragma& p) {
  return static_cast<int>(p.directives.size() + p.clauses.size());
}

std::string_view complexity_bin_name(ComplexityBin b) {
  switch (b) {
    case ComplexityBin::simple: return "simple";
    case ComplexityBin::medium: return "medium";
    case ComplexityBin::complex_: return "complex";
    case ComplexityBin::very_complex: return "very_complex";
  }
  return "simple";
}

ComplexityBin complexity_bin(int score) {
  if (score <= 2) return ComplexityBin::simple;
  if (score <= 5) return ComplexityBin::medium;
  if (score <= 10) return ComplexityBin::complex_;
  return ComplexityBin::very_complex;
}

std::set<std::string> clause_set(const Pragma& p) {
  std::set<std::string> out;
  for (const Clause& c : p.clauses) out.insert(c.canonical());
  return out;
}

}  // namespace accmine
