#include "cogen.hpp"
#include "doctest.h"
#include "gm/coercion.hpp"
#include "nfscan.hpp"

using namespace gm;

TEST_CASE("generated coercions typecheck between their endpoints") {
  gmtest::CoGen gen(17);
  for (int i = 0; i < 500; ++i) {
    auto v = gen.chain(2);
    MetaCoPtr c = coerce_meta(v[0], v[1], 100 + i);
    CAPTURE(type_str(v[0]));
    CAPTURE(type_str(v[1]));
    CHECK(check_meta_coercion(gen.env, c, v[0], v[1]));
    CoercionTyping ty = meta_coercion_dst(gen.env, c, v[0]);
    CHECK_FALSE(ty.ill);
    if (ty.dst) CHECK(type_equal(*ty.dst, v[1]));
  }
}

TEST_CASE("reduction preserves the coercion's typing") {
  gmtest::CoGen gen(19);
  for (int i = 0; i < 500; ++i) {
    auto v = gen.chain(3);
    gmtest::CoGen::Hop h = gen.hop(v, 0, 200);
    MetaCoPtr r = reduce_meta(gen.env, h.co);
    CoercionTyping ty = meta_coercion_dst(gen.env, r, v[0]);
    CAPTURE(meta_co_str(h.co));
    CAPTURE(meta_co_str(r));
    CHECK_FALSE(ty.ill);
    if (ty.dst) CHECK(type_equal(*ty.dst, v[h.end]));
    CHECK(meta_co_equal(reduce_meta(gen.env, r), r));
  }
}

TEST_CASE("identity coercions between equal types vanish") {
  gmtest::CoGen gen(23);
  for (int i = 0; i < 200; ++i) {
    TypePtr s = gen.chain(2)[0];
    MetaCoPtr c = reduce_meta(gen.env, coerce_meta(s, s, 300));
    CAPTURE(type_str(s));
    CHECK(c->kind == MetaCoercion::Kind::Id);
  }
}

TEST_CASE("matching injection and projection cancel or fail") {
  SubtypeEnv env;
  MetaCoPtr round = mc_seq(mc_inject({MetaGround::Kind::Base, BaseType::Int}),
                           mc_project({MetaGround::Kind::Base, BaseType::Int}, 7));
  CHECK(reduce_meta(env, round)->kind == MetaCoercion::Kind::Id);
  MetaCoPtr clash = mc_seq(mc_inject({MetaGround::Kind::Base, BaseType::Int}),
                           mc_project({MetaGround::Kind::Arrow}, 8));
  MetaCoPtr r = reduce_meta(env, clash);
  REQUIRE(r->kind == MetaCoercion::Kind::Fail);
  CHECK(r->label == 8);
}

TEST_CASE("static-to-static normal forms are identity or failure") {
  gmtest::NFScan scan = gmtest::scan_static_normal_forms(4);
  CHECK(scan.checked > 100);
  CHECK(scan.violations == 0);
}
