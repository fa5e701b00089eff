#include <vector>

#include "doctest.h"
#include "gm/parser.hpp"
#include "helpers.hpp"

using namespace gm;

TEST_CASE("corpus round-trips through the printer") {
  auto names = gmtest::corpus_names();
  names.push_back("extrusion_static.gm");
  for (const auto& name : names) {
    CAPTURE(name);
    Program p = parse_program(gmtest::read_program(name));
    std::string printed = term_str(p.term);
    Program q = parse_program(printed);
    CHECK(term_str(q.term) == printed);
  }
}

TEST_CASE("types round-trip through the printer") {
  std::vector<std::string> tys = {
      "Int",
      "Bool",
      "Unit",
      "?",
      "Int -> Bool -> Int",
      "(Int -> Bool) -> Int",
      "Ref (Code<Int>@?)",
      "Code<Int -> Int>@eps",
      "Code<?>@a",
      "forall a . [eps <: a] => Code<Int>@a -> Code<Int>@a",
      "Ref ?",
  };
  for (const auto& s : tys) {
    CAPTURE(s);
    TypePtr t = parse_type_string(s);
    TypePtr u = parse_type_string(type_str(t));
    CHECK(type_equal(t, u));
  }
}

TEST_CASE("let is sugar for an applied lambda") {
  Program p = parse_program("let x : Int = 1 in x + 2");
  Program q = parse_program("(fun (x : Int) x + 2) 1");
  CHECK(term_str(p.term) == term_str(q.term));
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse_program("fun (x : ) x"), ParseError);
  CHECK_THROWS_AS(parse_program("`eps{ 1"), ParseError);
  CHECK_THROWS_AS(parse_program(""), ParseError);
  CHECK_THROWS_AS(parse_program("1 +"), ParseError);
  try {
    parse_program("let x : Int = 1 in\n  x +");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.span.line == 2);
  }
}

TEST_CASE("classifier binders must be distinct") {
  CHECK_THROWS_AS(
      parse_program("`eps{ clam (x : Int) @ a . ~( `a{ clam (y : Int) @ a . x } ) }"),
      ParseError);
  CHECK_THROWS_AS(parse_program("cfun a . cfun a . 1"), ParseError);
}

TEST_CASE("labels index into the span table") {
  Program p = parse_program(gmtest::read_program("splice_star_param.gm"));
  CHECK(p.label_spans.size() > 0);
  for (const Span& s : p.label_spans) CHECK(s.line >= 1);
}
