#include "gm/subtyping.hpp"

#include <set>

namespace gm {

bool SubtypeEnv::subtype(const Classifier& lo, const Classifier& hi) const {
  if (lo == hi) return true;
  if (lo.is_eps()) return true;
  // reachability along edges
  std::set<Classifier> seen;
  std::vector<Classifier> work{lo};
  while (!work.empty()) {
    Classifier cur = work.back();
    work.pop_back();
    if (!seen.insert(cur).second) continue;
    for (const auto& [a, b] : edges_) {
      if (a == cur) {
        if (b == hi) return true;
        work.push_back(b);
      }
    }
  }
  return false;
}

bool ec_subtype(const SubtypeEnv& env, const Classifier& lo,
                const Classifier& hi) {
  return env.subtype(lo, hi);
}

bool gec_consistent_subtype(const SubtypeEnv& env, const GClassifier& lo,
                            const GClassifier& hi) {
  if (lo.star || hi.star) return true;
  return env.subtype(lo.ec, hi.ec);
}

bool meta_subtype(const SubtypeEnv& env, const TypePtr& a, const TypePtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case MetaType::Kind::Base: return a->base == b->base;
    case MetaType::Kind::Star: return true;  // not reachable on static input
    case MetaType::Kind::Arrow:
      return meta_subtype(env, b->lhs, a->lhs) &&
             meta_subtype(env, a->rhs, b->rhs);
    case MetaType::Kind::Ref:
      // invariant: both directions
      return meta_subtype(env, a->lhs, b->lhs) &&
             meta_subtype(env, b->lhs, a->lhs);
    case MetaType::Kind::Quote:
      return code_type_equal(a->code, b->code) && !a->gec.star &&
             !b->gec.star && env.subtype(a->gec.ec, b->gec.ec);
    case MetaType::Kind::Forall: {
      TypePtr body_b = b->lhs;
      if (b->var != a->var)
        body_b =
            subst_classifier_type(b->lhs, b->var, Classifier::named(a->var));
      return meta_subtype(env, a->lhs, body_b);
    }
    case MetaType::Kind::Constr: {
      if (a->c1 != b->c1 || a->c2 != b->c2) return false;
      return meta_subtype(env.with(a->c1, a->c2), a->lhs, b->lhs);
    }
  }
  return false;
}

bool code_consistent_subtype(const CodeTypePtr& a, const CodeTypePtr& b) {
  if (a->kind == CodeType::Kind::Star || b->kind == CodeType::Kind::Star)
    return true;
  if (a->kind != b->kind) return false;
  if (a->kind == CodeType::Kind::Base) return a->base == b->base;
  return code_consistent_subtype(b->dom, a->dom) &&
         code_consistent_subtype(a->cod, b->cod);
}

bool consistent_subtype(const SubtypeEnv& env, const TypePtr& a,
                        const TypePtr& b) {
  if (a->kind == MetaType::Kind::Star || b->kind == MetaType::Kind::Star)
    return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case MetaType::Kind::Base: return a->base == b->base;
    case MetaType::Kind::Arrow:
      return consistent_subtype(env, b->lhs, a->lhs) &&
             consistent_subtype(env, a->rhs, b->rhs);
    case MetaType::Kind::Ref:
      return consistent_subtype(env, a->lhs, b->lhs) &&
             consistent_subtype(env, b->lhs, a->lhs);
    case MetaType::Kind::Quote:
      return code_consistent_subtype(a->code, b->code) &&
             gec_consistent_subtype(env, a->gec, b->gec);
    case MetaType::Kind::Forall: {
      TypePtr body_b = b->lhs;
      if (b->var != a->var)
        body_b =
            subst_classifier_type(b->lhs, b->var, Classifier::named(a->var));
      return consistent_subtype(env, a->lhs, body_b);
    }
    case MetaType::Kind::Constr: {
      if (a->c1 != b->c1 || a->c2 != b->c2) return false;
      return consistent_subtype(env.with(a->c1, a->c2), a->lhs, b->lhs);
    }
    case MetaType::Kind::Star: return true;
  }
  return false;
}

}  // namespace gm
