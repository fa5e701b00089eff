#ifndef GM_TESTS_COGEN_HPP
#define GM_TESTS_COGEN_HPP

#include <random>
#include <vector>

#include "gm/coercion.hpp"

namespace gmtest {

// Random coercion inputs for the hypercoercion properties.  A star-free
// "shape" type is drawn first; chain() then generates several types of that
// shape at once such that each one is a consistent subtype of the next
// (contravariantly under function domains, both ways under Ref), so
// coercion generation between neighbours never fails and composing
// neighbouring coercions is always well-chained.  Classifiers are drawn
// from the chain eps <: a <: b so that nontrivial subtyping steps, star
// round-trips and failing compositions all occur.
struct CoGen {
  std::mt19937 rng;
  gm::SubtypeEnv env;
  std::vector<gm::Classifier> cls;

  explicit CoGen(unsigned seed) : rng(seed) {
    using gm::Classifier;
    cls = {Classifier::eps(), Classifier::named("a"), Classifier::named("b")};
    env.add(cls[0], cls[1]);
    env.add(cls[1], cls[2]);
  }

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
  bool flip(int num, int den) { return pick(den) < num; }
  gm::Classifier rand_cls() { return cls[pick((int)cls.size())]; }

  gm::CodeTypePtr code_shape(int d) {
    if (d > 0 && flip(1, 2))
      return gm::ct_arrow(code_shape(d - 1), code_shape(d - 1));
    return pick(3) == 0 ? gm::ct_bool() : gm::ct_int();
  }

  gm::TypePtr shape(int d) {
    using namespace gm;
    switch (d > 0 ? pick(7) : pick(2)) {
      case 0: return t_int();
      case 1: return t_bool();
      case 2: return t_arrow(shape(d - 1), shape(d - 1));
      case 3: return t_ref(shape(d - 1));
      case 4: return t_quote(code_shape(d - 1), GClassifier::known(rand_cls()));
      case 5: return t_forall("v", shape(d - 1));
      default: {
        Classifier lo = rand_cls(), hi = rand_cls();
        return t_constr(lo, hi, shape(d - 1));
      }
    }
  }

  gm::CodeTypePtr degrade_code(const gm::CodeTypePtr& t) {
    using namespace gm;
    if (flip(1, 4)) return ct_star();
    if (t->kind == CodeType::Kind::Arrow)
      return ct_arrow(degrade_code(t->dom), degrade_code(t->cod));
    return t;
  }

  // n quote classifiers whose adjacent precise entries follow the chain
  // upward (pol > 0), downward (pol < 0), or stay equal (pol == 0).
  std::vector<gm::GClassifier> gec_chain(int n, int pol) {
    std::vector<gm::GClassifier> out;
    int prev = -1;  // -1 = star
    for (int i = 0; i < n; ++i) {
      if (flip(1, 3)) {
        out.push_back(gm::GClassifier::unknown());
        prev = -1;
        continue;
      }
      int idx;
      if (prev < 0)
        idx = pick((int)cls.size());
      else if (pol > 0)
        idx = prev + pick((int)cls.size() - prev);
      else if (pol < 0)
        idx = pick(prev + 1);
      else
        idx = prev;
      out.push_back(gm::GClassifier::known(cls[idx]));
      prev = idx;
    }
    return out;
  }

  // n types of the given shape, adjacent ones consistent per polarity.
  std::vector<gm::TypePtr> tuple(const gm::TypePtr& s, int n, int pol) {
    using namespace gm;
    std::vector<TypePtr> out(n);
    switch (s->kind) {
      case MetaType::Kind::Base:
        for (int i = 0; i < n; ++i) out[i] = t_base(s->base);
        break;
      case MetaType::Kind::Arrow: {
        auto doms = tuple(s->lhs, n, -pol);
        auto cods = tuple(s->rhs, n, pol);
        for (int i = 0; i < n; ++i) out[i] = t_arrow(doms[i], cods[i]);
        break;
      }
      case MetaType::Kind::Ref: {
        auto bodies = tuple(s->lhs, n, 0);
        for (int i = 0; i < n; ++i) out[i] = t_ref(bodies[i]);
        break;
      }
      case MetaType::Kind::Quote: {
        auto gecs = gec_chain(n, pol);
        for (int i = 0; i < n; ++i)
          out[i] = t_quote(degrade_code(s->code), gecs[i]);
        break;
      }
      case MetaType::Kind::Forall: {
        auto bodies = tuple(s->lhs, n, pol);
        for (int i = 0; i < n; ++i) out[i] = t_forall(s->var, bodies[i]);
        break;
      }
      case MetaType::Kind::Constr: {
        auto bodies = tuple(s->lhs, n, pol);
        for (int i = 0; i < n; ++i)
          out[i] = t_constr(s->c1, s->c2, bodies[i]);
        break;
      }
      default:
        for (int i = 0; i < n; ++i) out[i] = t_star();
        break;
    }
    for (int i = 0; i < n; ++i)
      if (flip(1, 6)) out[i] = t_star();
    return out;
  }

  std::vector<gm::TypePtr> chain(int n, int depth = 3) {
    return tuple(shape(depth), n, 1);
  }

  // One coercion starting at v[i], ending at v[hop.end]; sometimes a
  // two-step sequence through the next chain entry.
  struct Hop {
    gm::MetaCoPtr co;
    int end;
  };
  Hop hop(const std::vector<gm::TypePtr>& v, int i, int label) {
    if (i + 2 < (int)v.size() && flip(1, 2))
      return {gm::mc_seq(gm::coerce_meta(v[i], v[i + 1], label),
                         gm::coerce_meta(v[i + 1], v[i + 2], label + 1)),
              i + 2};
    return {gm::coerce_meta(v[i], v[i + 1], label), i + 1};
  }
};

}  // namespace gmtest

#endif
