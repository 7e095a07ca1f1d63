#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "accmine/pragma.hpp"

using namespace accmine;

TEST_CASE("normalize collapses whitespace runs") {
  CHECK(normalize_pragma("#pragma  acc   parallel loop") ==
        "#pragma acc parallel loop");
  CHECK(normalize_pragma("  #pragma acc loop  ") == "#pragma acc loop");
  CHECK(normalize_pragma("#pragma\tacc\tloop") == "#pragma acc loop");
}

TEST_CASE("normalize strips spaces inside argument text") {
  CHECK(normalize_pragma(
            "#pragma acc parallel loop present(mat[0: size*size]) "
            "reduction(+:sum)") ==
        "#pragma acc parallel loop present(mat[0:size*size]) "
        "reduction(+:sum)");
  CHECK(normalize_pragma("#pragma acc loop reduction( + : sum )") ==
        "#pragma acc loop reduction(+:sum)");
  CHECK(normalize_pragma("#pragma acc data copyin( a [ 0 : n ] , b )") ==
        "#pragma acc data copyin(a [0:n],b)");
  // a space before the parenthesis is not argument-interior space
  CHECK(normalize_pragma("#pragma acc loop collapse (2)") ==
        "#pragma acc loop collapse (2)");
  // colon outside any parentheses is untouched
  CHECK(normalize_pragma("label : x") == "label : x");
}

TEST_CASE("normalize is idempotent") {
  const std::vector<std::string> samples = {
      "#pragma acc parallel loop present(mat[0: size*size]) reduction(+:sum)",
      "#pragma  acc   kernels",
      "  #pragma acc loop  collapse( 2 )  gang ",
      "no pragma here at all",
      "",
      "   ",
      "#pragma acc data copyin( a , b ) copyout( c )",
  };
  for (const auto& s : samples) {
    std::string once = normalize_pragma(s);
    CHECK(normalize_pragma(once) == once);
  }

  std::mt19937 rng(7);
  const std::string alphabet = "#pragma ac()[]:,xyz\t ";
  for (int t = 0; t < 200; ++t) {
    std::string s;
    int len = static_cast<int>(rng() % 40);
    for (int i = 0; i < len; ++i) s += alphabet[rng() % alphabet.size()];
    std::string once = normalize_pragma(s);
    CAPTURE(s);
    CHECK(normalize_pragma(once) == once);
  }
}

TEST_CASE("parse splits directives from clauses") {
  Pragma p = parse_pragma(
      "#pragma acc parallel loop collapse(2) copyin(a) copyout(b)");
  REQUIRE(p.directives == std::vector<std::string>{"parallel", "loop"});
  REQUIRE(p.clauses.size() == 3);
  CHECK(p.clauses[0].name == "collapse");
  CHECK(p.clauses[0].args == "2");
  CHECK(p.clauses[1].canonical() == "copyin(a)");
  CHECK(p.clauses[2].canonical() == "copyout(b)");
}

TEST_CASE("parse handles single keyword and bare clauses") {
  Pragma k = parse_pragma("#pragma acc kernels");
  CHECK(k.directives == std::vector<std::string>{"kernels"});
  CHECK(k.clauses.empty());

  Pragma g = parse_pragma("#pragma acc loop gang vector");
  CHECK(g.directives == std::vector<std::string>{"loop"});
  REQUIRE(g.clauses.size() == 2);
  CHECK(g.clauses[0].canonical() == "gang");
  CHECK(g.clauses[1].canonical() == "vector");

  // a directive keyword after the first clause stays a clause
  Pragma w = parse_pragma("#pragma acc parallel loop seq wait");
  CHECK(w.directives == std::vector<std::string>{"parallel", "loop"});
  REQUIRE(w.clauses.size() == 2);
  CHECK(w.clauses[1].canonical() == "wait");
}

TEST_CASE("parse glues a detached parenthesis group to its keyword") {
  Pragma p = parse_pragma("#pragma acc loop collapse (2)");
  CHECK(p.directives == std::vector<std::string>{"loop"});
  REQUIRE(p.clauses.size() == 1);
  CHECK(p.clauses[0].name == "collapse");
  CHECK(p.clauses[0].args == "2");
}

TEST_CASE("parse rejects other pragma families and malformed text") {
  CHECK_THROWS_AS(parse_pragma("#pragma omp parallel for"), PragmaParseError);
  CHECK_THROWS_AS(parse_pragma("int x = 0;"), PragmaParseError);
  CHECK_THROWS_AS(parse_pragma("#pragma acc"), PragmaParseError);
  CHECK_THROWS_AS(parse_pragma("#pragma accelerate loop"), PragmaParseError);

  try {
    parse_pragma("#pragma acc loop copyin(a[0:n");
    FAIL("unbalanced parentheses accepted");
  } catch (const PragmaParseError& e) {
    CHECK(e.kind == PragmaParseError::Kind::unbalanced_parentheses);
  }
  try {
    parse_pragma("#pragma omp loop");
    FAIL("omp accepted");
  } catch (const PragmaParseError& e) {
    CHECK(e.kind == PragmaParseError::Kind::not_an_acc_pragma);
  }
  // a leading parenthesized unit leaves no directive keyword
  CHECK_THROWS_AS(parse_pragma("#pragma acc wait(1)"), PragmaParseError);
}

TEST_CASE("parse round-trips its canonical text") {
  const std::vector<std::string> samples = {
      "#pragma acc parallel loop collapse(2) copyin(a) copyout(b)",
      "#pragma  acc kernels loop  independent",
      "#pragma acc serial",
      "#pragma acc enter data copyin( a )",
      "#pragma acc loop collapse (2)",
      "#pragma acc atomic capture",
  };
  for (const auto& s : samples) {
    Pragma p = parse_pragma(s);
    Pragma again = parse_pragma(p.canonical);
    CAPTURE(s);
    CHECK(again == p);
    CHECK(again.canonical == p.canonical);
  }
}

TEST_CASE("directive type follows the first keyword") {
  auto type_of = [](const char* s) {
    return directive_type(parse_pragma(s));
  };
  CHECK(type_of("#pragma acc parallel loop reduction(+:sum)") ==
        DirectiveType::parallel);
  CHECK(type_of("#pragma acc loop gang") == DirectiveType::loop);
  CHECK(type_of("#pragma acc kernels loop") == DirectiveType::kernels);
  CHECK(type_of("#pragma acc serial loop") == DirectiveType::serial);
  CHECK(type_of("#pragma acc data copyin(a)") == DirectiveType::data);
  CHECK(type_of("#pragma acc enter data copyin(a)") == DirectiveType::enter);
  CHECK(type_of("#pragma acc exit data delete(a)") == DirectiveType::exit_);
  CHECK(type_of("#pragma acc wait async") == DirectiveType::wait);
  CHECK(type_of("#pragma acc foo bar") == DirectiveType::unknown);
  CHECK(type_of("#pragma acc atomic capture") == DirectiveType::unknown);
}

TEST_CASE("directive type ignores clause edits") {
  DirectiveType base = directive_type(parse_pragma("#pragma acc parallel loop"));
  CHECK(directive_type(parse_pragma(
            "#pragma acc parallel loop copyin(a) present(b)")) == base);
  CHECK(directive_type(parse_pragma(
            "#pragma acc parallel loop present(b) copyin(a)")) == base);
  CHECK(directive_type(parse_pragma(
            "#pragma acc parallel loop gang vector collapse(3)")) == base);
}

TEST_CASE("complexity score counts directives plus clauses") {
  CHECK(complexity_score(parse_pragma("#pragma acc loop")) == 1);
  CHECK(complexity_score(parse_pragma(
            "#pragma acc parallel loop present(mat[0:size*size]) "
            "reduction(+:sum)")) == 4);
  CHECK(complexity_score(parse_pragma(
            "#pragma acc parallel loop collapse(2) copyin(a) copyout(b)")) ==
        5);

  // adding one clause raises the score by exactly one
  std::string text = "#pragma acc parallel loop";
  int prev = complexity_score(parse_pragma(text));
  for (int i = 0; i < 6; ++i) {
    text += " c" + std::to_string(i) + "(x)";
    int now = complexity_score(parse_pragma(text));
    CHECK(now == prev + 1);
    prev = now;
  }

  // reordering clauses does not change the score
  CHECK(complexity_score(parse_pragma(
            "#pragma acc parallel loop copyin(a) present(b)")) ==
        complexity_score(parse_pragma(
            "#pragma acc parallel loop present(b) copyin(a)")));
}

TEST_CASE("complexity bins partition the scores") {
  CHECK(complexity_bin(0) == ComplexityBin::simple);
  CHECK(complexity_bin(2) == ComplexityBin::simple);
  CHECK(complexity_bin(3) == ComplexityBin::medium);
  CHECK(complexity_bin(5) == ComplexityBin::medium);
  CHECK(complexity_bin(6) == ComplexityBin::complex_);
  CHECK(complexity_bin(10) == ComplexityBin::complex_);
  CHECK(complexity_bin(11) == ComplexityBin::very_complex);

  // monotone, no gaps, hits all four bins over 0..20
  int last = static_cast<int>(complexity_bin(0));
  std::set<int> seen{last};
  for (int s = 1; s <= 20; ++s) {
    int b = static_cast<int>(complexity_bin(s));
    CHECK(b >= last);
    CHECK(b - last <= 1);
    seen.insert(b);
    last = b;
  }
  CHECK(seen.size() == 4);
}

TEST_CASE("clause set uses canonical text with set semantics") {
  auto set_of = [](const char* s) { return clause_set(parse_pragma(s)); };
  CHECK(set_of("#pragma acc parallel loop copyin(a) present(b)") ==
        std::set<std::string>{"copyin(a)", "present(b)"});
  CHECK(set_of("#pragma acc kernels").empty());
  CHECK(set_of("#pragma acc loop gang gang") ==
        std::set<std::string>{"gang"});
  // full text distinguishes same-name clauses with different arguments
  CHECK(set_of("#pragma acc loop present(b)") !=
        set_of("#pragma acc loop present(c)"));
}
