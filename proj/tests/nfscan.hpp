#ifndef GM_TESTS_NFSCAN_HPP
#define GM_TESTS_NFSCAN_HPP

#include <functional>
#include <vector>

#include "gm/coercion.hpp"

namespace gmtest {

struct NFScan {
  long checked = 0;
  long violations = 0;
};

// Exhaustively walks sequence coercions up to the given length over a fixed
// atom pool, starting from each of a few static source types and extending
// only while the sequence still applies at the source.  Whenever both
// endpoints can be fully static the normal form must be an identity or a
// failure.
inline NFScan scan_static_normal_forms(int max_len) {
  using namespace gm;
  SubtypeEnv env;
  NFScan out;

  std::vector<MetaCoPtr> pool = {
      mc_inject({MetaGround::Kind::Base, BaseType::Int}),
      mc_project({MetaGround::Kind::Base, BaseType::Int}, 1),
      mc_inject({MetaGround::Kind::Arrow}),
      mc_project({MetaGround::Kind::Arrow}, 2),
      mc_fail(3),
      mc_arrow(mc_id(), mc_fail(4)),
      mc_arrow(mc_fail(5), mc_id()),
      mc_ref(mc_id(), mc_fail(6)),
  };
  std::vector<TypePtr> srcs = {t_int(), t_bool(), t_arrow(t_int(), t_int()),
                               t_ref(t_int())};

  std::vector<MetaCoPtr> atoms;
  std::function<void(const TypePtr&)> go = [&](const TypePtr& src) {
    if (!atoms.empty()) {
      MetaCoPtr seq = mc_seq(atoms);
      CoercionTyping ty = meta_coercion_dst(env, seq, src);
      if (ty.ill) return;  // no extension applies either
      if (!ty.dst || type_static(*ty.dst)) {
        ++out.checked;
        MetaCoPtr r = reduce_meta(env, seq);
        if (r->kind != MetaCoercion::Kind::Id &&
            r->kind != MetaCoercion::Kind::Fail)
          ++out.violations;
      }
    }
    if ((int)atoms.size() == max_len) return;
    for (const MetaCoPtr& a : pool) {
      atoms.push_back(a);
      go(src);
      atoms.pop_back();
    }
  };
  for (const TypePtr& src : srcs) go(src);
  return out;
}

}  // namespace gmtest

#endif
