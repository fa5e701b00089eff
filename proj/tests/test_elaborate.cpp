#include "doctest.h"
#include "fuzzgen.hpp"
#include "gm/cc_check.hpp"
#include "gm/elaborate.hpp"
#include "gm/parser.hpp"
#include "helpers.hpp"

using namespace gm;

TEST_CASE("elaborated corpus programs typecheck at the gradual type") {
  for (const auto& name : gmtest::corpus_names()) {
    CAPTURE(name);
    Program p = parse_program(gmtest::read_program(name));
    Elab e = elaborate(p.term);
    TypePtr got = cc_type(e.term);
    REQUIRE(got != nullptr);
    CHECK(type_equal(got, e.type));
  }
}

TEST_CASE("elaboration rejects what is inconsistent") {
  for (const char* src : {
           "1 + `eps{ 2 }",
           "(fun (x : Bool) x) 1",
           "!3",
           "`eps{ clam (x : Int) @ a . ~( `eps{ 1 } ; x ) }",
           "let r : Ref (Code<Int>@eps) = ref `eps{ 0 } in "
           "`eps{ clam (x : Int) @ a . ~( r := `a{ x } ; `a{ 1 } ) }",
       }) {
    CAPTURE(src);
    Program p = parse_program(src);
    CHECK_THROWS_AS(elaborate(p.term), TypeError);
  }
}

TEST_CASE("elaborated fuzz programs typecheck at Code<Int>@eps") {
  TypePtr expect = t_quote(ct_int(), GClassifier::known(Classifier::eps()));
  for (unsigned seed = 1; seed <= 50; ++seed) {
    CAPTURE(seed);
    gmtest::Fuzz fz(seed);
    TermPtr t = fz.program();
    Elab e = elaborate(t);
    CHECK(type_equal(e.type, expect));
    TypePtr got = cc_type(e.term);
    REQUIRE(got != nullptr);
    CHECK(type_equal(got, e.type));
  }
}
