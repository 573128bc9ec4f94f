#include "doctest.h"

#include "concept_nmr/error.hpp"
#include "concept_nmr/formula.hpp"

using namespace cnmr;
using namespace cnmr::logic;

TEST_CASE("precedence and associativity") {
  CHECK(parse_formula("C1 & C3") == Formula::conj(Formula::var("C1"), Formula::var("C3")));
  CHECK(parse_formula("C1 | C2 & C3") ==
        Formula::disj(Formula::var("C1"), Formula::conj(Formula::var("C2"), Formula::var("C3"))));
  CHECK(parse_formula("((top))") == Formula::top());
  CHECK(parse_formula("bot").kind() == Formula::Kind::Bot);
  const auto f = parse_formula("a & b & c");
  CHECK(f.left() == Formula::conj(Formula::var("a"), Formula::var("b")));
  CHECK(f.right() == Formula::var("c"));
}

TEST_CASE("printing re-parses to the same tree") {
  for (const char* text : {"a", "top", "a & (b | c)", "(a | b) & c", "a | b | c", "a | (b | c)", "(a & b) | (c & d)"}) {
    const auto f = parse_formula(text);
    CHECK(parse_formula(f.to_string()) == f);
  }
  CHECK(parse_formula("a|(b&c)").to_string() == "a | b & c");
}

TEST_CASE("size and variables") {
  const auto f = parse_formula("C1 & (C2 | C1)");
  CHECK(f.size() == 5);
  std::set<std::string> vars;
  f.collect_variables(vars);
  CHECK(vars == std::set<std::string>{"C1", "C2"});
}

TEST_CASE("sequents") {
  auto s = parse_sequent("C1 |~ C2");
  CHECK(s.kind == Sequent::Kind::Defeasible);
  CHECK(s.lhs == Formula::var("C1"));
  s = parse_sequent("C1 & C3 |- C1");
  CHECK(s.kind == Sequent::Kind::Strict);
  CHECK(s.rhs == Formula::var("C1"));
  CHECK(parse_sequent(s.to_string()) == s);
}

TEST_CASE("parse errors carry a column") {
  try {
    parse_formula("a & & b");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(parse_formula("(a | b"), ParseError);
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("a b"), ParseError);
  CHECK_THROWS_AS(parse_sequent("a & b"), ParseError);
  CHECK_THROWS_AS(parse_sequent("a |~ b |~ c"), ParseError);
}

TEST_CASE("identifiers") {
  CHECK(is_identifier("C1"));
  CHECK(is_identifier("_x"));
  CHECK_FALSE(is_identifier("1x"));
  CHECK_FALSE(is_identifier("top"));
  CHECK_FALSE(is_identifier(""));
}
