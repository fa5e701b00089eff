#include <algorithm>

#include "cogen.hpp"
#include "doctest.h"
#include "gm/hyper.hpp"

using namespace gm;

TEST_CASE("translation to hypercoercions mirrors normalization") {
  gmtest::CoGen gen(29);
  for (int i = 0; i < 2000; ++i) {
    auto v = gen.chain(3);
    MetaCoPtr c = gen.hop(v, 0, 400).co;
    MetaHyperPtr h = meta_to_hyper(gen.env, c);
    CAPTURE(meta_co_str(c));
    CHECK(meta_co_equal(hyper_to_seq(h), reduce_meta(gen.env, c)));
  }
}

TEST_CASE("composing hypercoercions equals normalizing the sequence") {
  gmtest::CoGen gen(31);
  for (int i = 0; i < 2000; ++i) {
    auto v = gen.chain(5);
    gmtest::CoGen::Hop h1 = gen.hop(v, 0, 500);
    gmtest::CoGen::Hop h2 = gen.hop(v, h1.end, 600);
    MetaHyperPtr composed =
        meta_compose(gen.env, meta_to_hyper(gen.env, h1.co),
                     meta_to_hyper(gen.env, h2.co));
    MetaHyperPtr direct = meta_to_hyper(gen.env, mc_seq(h1.co, h2.co));
    CAPTURE(meta_co_str(h1.co));
    CAPTURE(meta_co_str(h2.co));
    CHECK(meta_hyper_equal(composed, direct));
  }
}

TEST_CASE("composition never grows the height") {
  gmtest::CoGen gen(37);
  for (int i = 0; i < 2000; ++i) {
    auto v = gen.chain(5);
    gmtest::CoGen::Hop a = gen.hop(v, 0, 700);
    gmtest::CoGen::Hop b = gen.hop(v, a.end, 800);
    MetaHyperPtr h1 = meta_to_hyper(gen.env, a.co);
    MetaHyperPtr h2 = meta_to_hyper(gen.env, b.co);
    int bound = std::max(meta_hyper_height(h1), meta_hyper_height(h2));
    CAPTURE(meta_hyper_str(h1));
    CAPTURE(meta_hyper_str(h2));
    CHECK(meta_hyper_height(meta_compose(gen.env, h1, h2)) <= bound);
  }
}

TEST_CASE("code hypercoercion composition never grows the height") {
  gmtest::CoGen gen(41);
  for (int i = 0; i < 2000; ++i) {
    CodeTypePtr s = gen.code_shape(3);
    CodeTypePtr a = gen.degrade_code(s), b = gen.degrade_code(s),
                c = gen.degrade_code(s);
    CodeHyperPtr h1 = code_to_hyper(coerce_code(a, b, 900));
    CodeHyperPtr h2 = code_to_hyper(coerce_code(b, c, 901));
    int bound = std::max(code_hyper_height(h1), code_hyper_height(h2));
    CodeHyperPtr composed = code_compose(h1, h2);
    CHECK(code_hyper_height(composed) <= bound);
    CHECK(code_co_equal(code_from_hyper(composed),
                        reduce_code(cc_seq(coerce_code(a, b, 900),
                                           coerce_code(b, c, 901)))));
  }
}

TEST_CASE("classifier composition stays flat") {
  gmtest::CoGen gen(43);
  std::vector<GClassifier> gcls;
  for (const Classifier& c : gen.cls) gcls.push_back(GClassifier::known(c));
  gcls.push_back(GClassifier::unknown());
  for (const GClassifier& a : gcls)
    for (const GClassifier& b : gcls)
      for (const GClassifier& c : gcls) {
        ECHyper h1 = ec_to_hyper(gen.env, coerce_ec(a, b, 950));
        ECHyper h2 = ec_to_hyper(gen.env, coerce_ec(b, c, 951));
        ECHyper composed = ec_compose(gen.env, h1, h2);
        CHECK(ec_hyper_height(composed) == 1);
        CHECK(ec_equal(ec_from_hyper(composed),
                       reduce_ec(gen.env, ec_seq(coerce_ec(a, b, 950),
                                                 coerce_ec(b, c, 951)))));
      }
}
