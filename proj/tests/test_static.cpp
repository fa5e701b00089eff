#include <string>

#include "doctest.h"
#include "gm/parser.hpp"
#include "gm/static_lang.hpp"
#include "helpers.hpp"

using namespace gm;

namespace {

TermPtr static_value(const std::string& src) {
  Program p = parse_program(src);
  static_type(p.term);
  StaticResult r = static_eval(p.term, 100000);
  REQUIRE(r.status == StaticResult::Status::Value);
  return r.value;
}

}  // namespace

TEST_CASE("static goldens") {
  CHECK(value_str(static_value(gmtest::read_program("quote_add.gm"))) ==
        "code{ 4 + 3 }@eps");
  CHECK(value_str(static_value(gmtest::read_program("deref_code.gm"))) ==
        "code{ 2 + 3 }@eps");
  CHECK(value_str(static_value(gmtest::read_program("subtyping_fun.gm"))) ==
        "code{ 41 + 1 }@eps");
}

TEST_CASE("the wrap/body program builds the expected residual code") {
  TermPtr got = static_value(gmtest::read_program("wrap_body.gm"));
  TermPtr want = static_value(
      "`eps{ clam (u : Int) @ p . clam (x : Int) @ q . u + x }");
  CHECK(gmtest::value_alpha_eq(got, want));
}

TEST_CASE("the static language rejects scope extrusion at the write") {
  Program p = parse_program(gmtest::read_program("extrusion_static.gm"));
  try {
    static_type(p.term);
    CHECK(false);
  } catch (const TypeError& e) {
    CHECK(std::string(e.what()).find(
              "not a subtype of the reference's element type") !=
          std::string::npos);
    CHECK(e.span.line == 5);
  }
}

TEST_CASE("the static language rejects the unknown type") {
  Program p = parse_program("let f : ? = fun (x : Int) x in f 1");
  CHECK_THROWS_AS(static_type(p.term), TypeError);
}

TEST_CASE("static evaluation preserves types step by step") {
  for (const char* name : {"quote_add.gm", "quote_lambda.gm", "deref_code.gm",
                           "subtyping_fun.gm", "wrap_body.gm"}) {
    CAPTURE(name);
    Program p = parse_program(gmtest::read_program(name));
    static_type(p.term);
    StaticResult r = static_eval(p.term, 100000, true);
    CHECK(r.status == StaticResult::Status::Value);
  }
}

TEST_CASE("step limits are reported") {
  Program p =
      parse_program("(fun (x : Int) x + x) ((fun (y : Int) y * y) 3)");
  CHECK(static_type(p.term) != nullptr);
  StaticResult r = static_eval(p.term, 1);
  CHECK(r.status == StaticResult::Status::Limit);
}
