#include "gm/hyper.hpp"

#include <algorithm>
#include <stdexcept>

namespace gm {

namespace {

// ---------------------------------------------------------------------------
// Shape predicates.  A failure middle always has an id tail (nothing runs
// after a failure), mirroring how sequence reduction absorbs everything to
// the right of a bot.

bool ec_h_id(const ECHyper& c) {
  return c.head == ECHyper::Head::Id && c.mid == ECHyper::Mid::Id &&
         c.tail == ECHyper::Tail::Id;
}
bool ec_h_fail(const ECHyper& c) {
  return c.head == ECHyper::Head::Id && c.mid == ECHyper::Mid::Fail;
}

CodeHyperPtr mk_code(CodeHyper h) {
  return std::make_shared<CodeHyper>(std::move(h));
}
MetaHyperPtr mk_meta(MetaHyper h) {
  return std::make_shared<MetaHyper>(std::move(h));
}

CodeHyperPtr code_all_id() {
  static CodeHyperPtr v = std::make_shared<CodeHyper>();
  return v;
}
MetaHyperPtr meta_all_id() {
  static MetaHyperPtr v = std::make_shared<MetaHyper>();
  return v;
}

bool code_h_id(const CodeHyperPtr& c) {
  return c->head == CodeHyper::Head::Id && c->mid == CodeHyper::Mid::Id &&
         c->tail == CodeHyper::Tail::Id;
}
bool code_h_fail(const CodeHyperPtr& c) {
  return c->head == CodeHyper::Head::Id && c->mid == CodeHyper::Mid::Fail;
}
bool meta_h_id(const MetaHyperPtr& c) {
  return c->head == MetaHyper::Head::Id && c->mid == MetaHyper::Mid::Id &&
         c->tail == MetaHyper::Tail::Id;
}
bool meta_h_fail(const MetaHyperPtr& c) {
  return c->head == MetaHyper::Head::Id && c->mid == MetaHyper::Mid::Fail;
}

[[noreturn]] void chain_error() {
  throw std::logic_error("hypercoercion composition: operands do not chain");
}

// ---------------------------------------------------------------------------
// Middle smart constructors.  These mirror the normalization applied by the
// sequence reducer: an unconditional failure in a component is hoisted out
// (checking the contravariant component first) and an all-identity
// structural middle collapses to the identity.

void ec_set_mid_sub(ECHyper& r, const Classifier& lo, const Classifier& hi) {
  if (lo == hi) {
    r.mid = ECHyper::Mid::Id;
  } else {
    r.mid = ECHyper::Mid::Sub;
    r.m1 = lo;
    r.m2 = hi;
  }
}

void code_set_mid_arrow(CodeHyper& r, CodeHyperPtr dom, CodeHyperPtr cod) {
  if (code_h_fail(dom)) {
    r.mid = CodeHyper::Mid::Fail;
    r.mlabel = dom->mlabel;
  } else if (code_h_fail(cod)) {
    r.mid = CodeHyper::Mid::Fail;
    r.mlabel = cod->mlabel;
  } else if (code_h_id(dom) && code_h_id(cod)) {
    r.mid = CodeHyper::Mid::Id;
  } else {
    r.mid = CodeHyper::Mid::Arrow;
    r.a = std::move(dom);
    r.b = std::move(cod);
  }
}

void meta_set_mid_pair(MetaHyper& r, MetaHyper::Mid kind, MetaHyperPtr x,
                       MetaHyperPtr y) {
  if (meta_h_fail(x)) {
    r.mid = MetaHyper::Mid::Fail;
    r.mlabel = x->mlabel;
  } else if (meta_h_fail(y)) {
    r.mid = MetaHyper::Mid::Fail;
    r.mlabel = y->mlabel;
  } else if (meta_h_id(x) && meta_h_id(y)) {
    r.mid = MetaHyper::Mid::Id;
  } else {
    r.mid = kind;
    r.a = std::move(x);
    r.b = std::move(y);
  }
}

void meta_set_mid_quote(MetaHyper& r, CodeHyperPtr code, ECHyper ec) {
  if (code_h_fail(code)) {
    r.mid = MetaHyper::Mid::Fail;
    r.mlabel = code->mlabel;
  } else if (ec_h_fail(ec)) {
    r.mid = MetaHyper::Mid::Fail;
    r.mlabel = ec.mlabel;
  } else if (code_h_id(code) && ec_h_id(ec)) {
    r.mid = MetaHyper::Mid::Id;
  } else {
    r.mid = MetaHyper::Mid::Quote;
    r.code = std::move(code);
    r.ec = std::move(ec);
  }
}

void meta_set_mid_body(MetaHyper& r, MetaHyper::Mid kind, MetaHyperPtr body) {
  if (meta_h_fail(body)) {
    r.mid = MetaHyper::Mid::Fail;
    r.mlabel = body->mlabel;
  } else if (meta_h_id(body)) {
    r.mid = MetaHyper::Mid::Id;
  } else {
    r.mid = kind;
    r.a = std::move(body);
  }
}

// ---------------------------------------------------------------------------
// Composition.  The tail of the left operand meets the head of the right;
// the outcome decides whether the middles meet, one side is forced to be an
// identity, or the whole composition fails.

enum class TH { Id, InjOnly, ProjOnly, Sub, Fail };

ECHyper ec_compose_impl(const SubtypeEnv& env, const ECHyper& a,
                        const ECHyper& b) {
  ECHyper r;
  r.head = a.head;
  r.hp = a.hp;
  r.hlabel = a.hlabel;
  // classifier failures absorb their own head projection, matching the
  // eager failure absorption of sequence reduction at this level
  auto fail = [](int label) {
    ECHyper f;
    f.mid = ECHyper::Mid::Fail;
    f.mlabel = label;
    return f;
  };
  if (a.mid == ECHyper::Mid::Fail) return fail(a.mlabel);
  TH th = TH::Id;
  Classifier lo, hi;
  int fl = -1;
  if (a.tail == ECHyper::Tail::Inject && b.head == ECHyper::Head::Project) {
    if (env.subtype(a.tp, b.hp)) {
      if (a.tp == b.hp) {
        th = TH::Id;
      } else {
        th = TH::Sub;
        lo = a.tp;
        hi = b.hp;
      }
    } else {
      th = TH::Fail;
      fl = b.hlabel;
    }
  } else if (a.tail == ECHyper::Tail::Inject) {
    th = TH::InjOnly;
  } else if (b.head == ECHyper::Head::Project) {
    th = TH::ProjOnly;
  }
  switch (th) {
    case TH::Fail:
      return fail(fl);
    case TH::ProjOnly:
      if (a.mid != ECHyper::Mid::Id) chain_error();
      if (b.mid == ECHyper::Mid::Fail) return fail(b.mlabel);
      return b;
    case TH::InjOnly:
      if (b.mid == ECHyper::Mid::Fail) return fail(b.mlabel);
      if (b.mid != ECHyper::Mid::Id) chain_error();
      r.mid = a.mid;
      r.m1 = a.m1;
      r.m2 = a.m2;
      r.tail = a.tail;
      r.tp = a.tp;
      return r;
    case TH::Id:
    case TH::Sub:
      break;
  }
  if (b.mid == ECHyper::Mid::Fail) return fail(b.mlabel);
  // Chain the (at most three) subtyping middles.
  bool have = false;
  Classifier clo, chi;
  auto push = [&](const Classifier& x, const Classifier& y) {
    if (!have) {
      have = true;
      clo = x;
      chi = y;
    } else {
      chi = y;
    }
  };
  if (a.mid == ECHyper::Mid::Sub) push(a.m1, a.m2);
  if (th == TH::Sub) push(lo, hi);
  if (b.mid == ECHyper::Mid::Sub) push(b.m1, b.m2);
  if (have)
    ec_set_mid_sub(r, clo, chi);
  else
    r.mid = ECHyper::Mid::Id;
  r.tail = b.tail;
  r.tp = b.tp;
  return r;
}

CodeHyperPtr code_compose_impl(const CodeHyperPtr& a, const CodeHyperPtr& b) {
  CodeHyper r;
  r.head = a->head;
  r.hg = a->hg;
  r.hlabel = a->hlabel;
  // code failures absorb their own head projection, like the classifier
  // level
  auto fail = [](int label) {
    CodeHyper f;
    f.mid = CodeHyper::Mid::Fail;
    f.mlabel = label;
    return mk_code(std::move(f));
  };
  if (a->mid == CodeHyper::Mid::Fail) return fail(a->mlabel);
  TH th = TH::Id;
  int fl = -1;
  if (a->tail == CodeHyper::Tail::Inject &&
      b->head == CodeHyper::Head::Project) {
    if (a->tg == b->hg) {
      th = TH::Id;
    } else {
      th = TH::Fail;
      fl = b->hlabel;
    }
  } else if (a->tail == CodeHyper::Tail::Inject) {
    th = TH::InjOnly;
  } else if (b->head == CodeHyper::Head::Project) {
    th = TH::ProjOnly;
  }
  switch (th) {
    case TH::Fail:
      return fail(fl);
    case TH::ProjOnly:
      if (a->mid != CodeHyper::Mid::Id) chain_error();
      if (b->mid == CodeHyper::Mid::Fail) return fail(b->mlabel);
      return b;
    case TH::InjOnly:
      if (b->mid == CodeHyper::Mid::Fail) return fail(b->mlabel);
      if (b->mid != CodeHyper::Mid::Id) chain_error();
      r.mid = a->mid;
      r.a = a->a;
      r.b = a->b;
      r.tail = a->tail;
      r.tg = a->tg;
      return mk_code(std::move(r));
    default:
      break;
  }
  if (b->mid == CodeHyper::Mid::Fail) return fail(b->mlabel);
  if (a->mid == CodeHyper::Mid::Id) {
    r.mid = b->mid;
    r.a = b->a;
    r.b = b->b;
  } else if (b->mid == CodeHyper::Mid::Id) {
    r.mid = a->mid;
    r.a = a->a;
    r.b = a->b;
  } else {
    // Arrow against arrow: contravariant domain, covariant codomain.
    code_set_mid_arrow(r, code_compose_impl(b->a, a->a),
                       code_compose_impl(a->b, b->b));
  }
  if (r.mid == CodeHyper::Mid::Fail) return fail(r.mlabel);
  r.tail = b->tail;
  r.tg = b->tg;
  return mk_code(std::move(r));
}

MetaHyperPtr meta_compose_impl(const SubtypeEnv& env, const MetaHyperPtr& a,
                               const MetaHyperPtr& b) {
  MetaHyper r;
  r.head = a->head;
  r.hg = a->hg;
  r.hlabel = a->hlabel;
  // failures absorb their own head projection, at every level
  auto fail = [](int label) {
    MetaHyper f;
    f.mid = MetaHyper::Mid::Fail;
    f.mlabel = label;
    return mk_meta(std::move(f));
  };
  if (a->mid == MetaHyper::Mid::Fail) return fail(a->mlabel);
  TH th = TH::Id;
  int fl = -1;
  if (a->tail == MetaHyper::Tail::Inject &&
      b->head == MetaHyper::Head::Project) {
    if (a->tg == b->hg) {
      th = TH::Id;
    } else {
      th = TH::Fail;
      fl = b->hlabel;
    }
  } else if (a->tail == MetaHyper::Tail::Inject) {
    th = TH::InjOnly;
  } else if (b->head == MetaHyper::Head::Project) {
    th = TH::ProjOnly;
  }
  switch (th) {
    case TH::Fail:
      return fail(fl);
    case TH::ProjOnly:
      if (a->mid != MetaHyper::Mid::Id) chain_error();
      if (b->mid == MetaHyper::Mid::Fail) return fail(b->mlabel);
      return b;
    case TH::InjOnly:
      if (b->mid == MetaHyper::Mid::Fail) return fail(b->mlabel);
      if (b->mid != MetaHyper::Mid::Id) chain_error();
      r.mid = a->mid;
      r.a = a->a;
      r.b = a->b;
      r.code = a->code;
      r.ec = a->ec;
      r.var = a->var;
      r.c1 = a->c1;
      r.c2 = a->c2;
      r.tail = a->tail;
      r.tg = a->tg;
      return mk_meta(std::move(r));
    default:
      break;
  }
  if (b->mid == MetaHyper::Mid::Fail) return fail(b->mlabel);
  if (a->mid == MetaHyper::Mid::Id) {
    r.mid = b->mid;
    r.a = b->a;
    r.b = b->b;
    r.code = b->code;
    r.ec = b->ec;
    r.var = b->var;
    r.c1 = b->c1;
    r.c2 = b->c2;
  } else if (b->mid == MetaHyper::Mid::Id) {
    r.mid = a->mid;
    r.a = a->a;
    r.b = a->b;
    r.code = a->code;
    r.ec = a->ec;
    r.var = a->var;
    r.c1 = a->c1;
    r.c2 = a->c2;
  } else if (a->mid != b->mid) {
    chain_error();
  } else {
    switch (a->mid) {
      case MetaHyper::Mid::Arrow:
        meta_set_mid_pair(r, MetaHyper::Mid::Arrow,
                          meta_compose_impl(env, b->a, a->a),
                          meta_compose_impl(env, a->b, b->b));
        break;
      case MetaHyper::Mid::Ref:
        meta_set_mid_pair(r, MetaHyper::Mid::Ref,
                          meta_compose_impl(env, b->a, a->a),
                          meta_compose_impl(env, a->b, b->b));
        break;
      case MetaHyper::Mid::Quote:
        meta_set_mid_quote(r, code_compose_impl(a->code, b->code),
                           ec_compose_impl(env, a->ec, b->ec));
        break;
      case MetaHyper::Mid::Forall: {
        MetaHyperPtr body2 =
            a->var == b->var
                ? b->a
                : subst_classifier_hyper(b->a, b->var,
                                         Classifier::named(a->var));
        r.var = a->var;
        meta_set_mid_body(r, MetaHyper::Mid::Forall,
                          meta_compose_impl(env, a->a, body2));
        break;
      }
      case MetaHyper::Mid::Constr: {
        if (a->c1 != b->c1 || a->c2 != b->c2) chain_error();
        r.c1 = a->c1;
        r.c2 = a->c2;
        meta_set_mid_body(
            r, MetaHyper::Mid::Constr,
            meta_compose_impl(env.with(a->c1, a->c2), a->a, b->a));
        break;
      }
      default:
        chain_error();
    }
  }
  if (r.mid == MetaHyper::Mid::Fail) return fail(r.mlabel);
  r.tail = b->tail;
  r.tg = b->tg;
  return mk_meta(std::move(r));
}

// ---------------------------------------------------------------------------
// Translation of single normalized sequence atoms.

ECHyper ec_atom_hyper(const ECPtr& at) {
  ECHyper h;
  switch (at->kind) {
    case ECCoercion::Kind::Id:
      break;
    case ECCoercion::Kind::Inject:
      h.tail = ECHyper::Tail::Inject;
      h.tp = at->e1;
      break;
    case ECCoercion::Kind::Project:
      h.head = ECHyper::Head::Project;
      h.hp = at->e1;
      h.hlabel = at->label;
      break;
    case ECCoercion::Kind::Sub:
      ec_set_mid_sub(h, at->e1, at->e2);
      break;
    case ECCoercion::Kind::Fail:
      h.mid = ECHyper::Mid::Fail;
      h.mlabel = at->label;
      break;
    case ECCoercion::Kind::Seq:
      throw std::logic_error("ec_atom_hyper: nested sequence");
  }
  return h;
}

CodeHyperPtr code_atom_hyper(const CodeCoPtr& at) {
  CodeHyper h;
  switch (at->kind) {
    case CodeCoercion::Kind::Id:
      break;
    case CodeCoercion::Kind::Inject:
      h.tail = CodeHyper::Tail::Inject;
      h.tg = at->g;
      break;
    case CodeCoercion::Kind::Project:
      h.head = CodeHyper::Head::Project;
      h.hg = at->g;
      h.hlabel = at->label;
      break;
    case CodeCoercion::Kind::Fail:
      h.mid = CodeHyper::Mid::Fail;
      h.mlabel = at->label;
      break;
    case CodeCoercion::Kind::Arrow:
      code_set_mid_arrow(h, code_to_hyper(at->a), code_to_hyper(at->b));
      break;
    case CodeCoercion::Kind::Seq:
      throw std::logic_error("code_atom_hyper: nested sequence");
  }
  return mk_code(std::move(h));
}

MetaHyperPtr meta_atom_hyper(const SubtypeEnv& env, const MetaCoPtr& at) {
  MetaHyper h;
  switch (at->kind) {
    case MetaCoercion::Kind::Id:
      break;
    case MetaCoercion::Kind::Inject:
      h.tail = MetaHyper::Tail::Inject;
      h.tg = at->g;
      break;
    case MetaCoercion::Kind::Project:
      h.head = MetaHyper::Head::Project;
      h.hg = at->g;
      h.hlabel = at->label;
      break;
    case MetaCoercion::Kind::Fail:
      h.mid = MetaHyper::Mid::Fail;
      h.mlabel = at->label;
      break;
    case MetaCoercion::Kind::Arrow:
      meta_set_mid_pair(h, MetaHyper::Mid::Arrow, meta_to_hyper(env, at->a),
                        meta_to_hyper(env, at->b));
      break;
    case MetaCoercion::Kind::Ref:
      meta_set_mid_pair(h, MetaHyper::Mid::Ref, meta_to_hyper(env, at->a),
                        meta_to_hyper(env, at->b));
      break;
    case MetaCoercion::Kind::Quote:
      meta_set_mid_quote(h, code_to_hyper(at->code),
                         ec_to_hyper(env, at->ecc));
      break;
    case MetaCoercion::Kind::Forall:
      h.var = at->var;
      meta_set_mid_body(h, MetaHyper::Mid::Forall,
                        meta_to_hyper(env, at->a));
      break;
    case MetaCoercion::Kind::Constr:
      h.c1 = at->c1;
      h.c2 = at->c2;
      meta_set_mid_body(h, MetaHyper::Mid::Constr,
                        meta_to_hyper(env.with(at->c1, at->c2), at->a));
      break;
    case MetaCoercion::Kind::Seq:
      throw std::logic_error("meta_atom_hyper: nested sequence");
  }
  return mk_meta(std::move(h));
}

}  // namespace

// ---------------------------------------------------------------------------
// Public API

ECHyper ec_to_hyper(const SubtypeEnv& env, const ECPtr& c) {
  ECHyper acc;
  for (const auto& at : ec_atoms(reduce_ec(env, c)))
    acc = ec_compose_impl(env, acc, ec_atom_hyper(at));
  return acc;
}

CodeHyperPtr code_to_hyper(const CodeCoPtr& c) {
  CodeHyperPtr acc = code_all_id();
  for (const auto& at : code_atoms(reduce_code(c)))
    acc = code_compose_impl(acc, code_atom_hyper(at));
  return acc;
}

MetaHyperPtr meta_to_hyper(const SubtypeEnv& env, const MetaCoPtr& c) {
  MetaHyperPtr acc = meta_all_id();
  for (const auto& at : meta_atoms(reduce_meta(env, c)))
    acc = meta_compose_impl(env, acc, meta_atom_hyper(env, at));
  return acc;
}

ECPtr ec_from_hyper(const ECHyper& c) {
  std::vector<ECPtr> out;
  if (c.head == ECHyper::Head::Project)
    out.push_back(ec_project(c.hp, c.hlabel));
  if (c.mid == ECHyper::Mid::Sub) out.push_back(ec_sub(c.m1, c.m2));
  if (c.mid == ECHyper::Mid::Fail) out.push_back(ec_fail(c.mlabel));
  if (c.tail == ECHyper::Tail::Inject) out.push_back(ec_inject(c.tp));
  return ec_seq(std::move(out));
}

CodeCoPtr code_from_hyper(const CodeHyperPtr& c) {
  std::vector<CodeCoPtr> out;
  if (c->head == CodeHyper::Head::Project)
    out.push_back(cc_project(c->hg, c->hlabel));
  switch (c->mid) {
    case CodeHyper::Mid::Id:
      break;
    case CodeHyper::Mid::Fail:
      out.push_back(cc_fail(c->mlabel));
      break;
    case CodeHyper::Mid::Arrow:
      out.push_back(cc_arrow(code_from_hyper(c->a), code_from_hyper(c->b)));
      break;
  }
  if (c->tail == CodeHyper::Tail::Inject) out.push_back(cc_inject(c->tg));
  return cc_seq(std::move(out));
}

MetaCoPtr hyper_to_seq(const MetaHyperPtr& c) {
  std::vector<MetaCoPtr> out;
  if (c->head == MetaHyper::Head::Project)
    out.push_back(mc_project(c->hg, c->hlabel));
  switch (c->mid) {
    case MetaHyper::Mid::Id:
      break;
    case MetaHyper::Mid::Fail:
      out.push_back(mc_fail(c->mlabel));
      break;
    case MetaHyper::Mid::Arrow:
      out.push_back(mc_arrow(hyper_to_seq(c->a), hyper_to_seq(c->b)));
      break;
    case MetaHyper::Mid::Ref:
      out.push_back(mc_ref(hyper_to_seq(c->a), hyper_to_seq(c->b)));
      break;
    case MetaHyper::Mid::Quote:
      out.push_back(mc_quote(code_from_hyper(c->code), ec_from_hyper(c->ec)));
      break;
    case MetaHyper::Mid::Forall:
      out.push_back(mc_forall(c->var, hyper_to_seq(c->a)));
      break;
    case MetaHyper::Mid::Constr:
      out.push_back(mc_constr(c->c1, c->c2, hyper_to_seq(c->a)));
      break;
  }
  if (c->tail == MetaHyper::Tail::Inject) out.push_back(mc_inject(c->tg));
  return mc_seq(std::move(out));
}

ECHyper ec_compose(const SubtypeEnv& env, const ECHyper& a, const ECHyper& b) {
  return ec_compose_impl(env, a, b);
}
CodeHyperPtr code_compose(const CodeHyperPtr& a, const CodeHyperPtr& b) {
  return code_compose_impl(a, b);
}
MetaHyperPtr meta_compose(const SubtypeEnv& env, const MetaHyperPtr& a,
                          const MetaHyperPtr& b) {
  return meta_compose_impl(env, a, b);
}

// ---------------------------------------------------------------------------
// Equality

bool ECHyper::operator==(const ECHyper& o) const {
  if (head != o.head || mid != o.mid || tail != o.tail) return false;
  if (head == Head::Project && (hp != o.hp || hlabel != o.hlabel))
    return false;
  if (mid == Mid::Sub && (m1 != o.m1 || m2 != o.m2)) return false;
  if (mid == Mid::Fail && mlabel != o.mlabel) return false;
  if (tail == Tail::Inject && tp != o.tp) return false;
  return true;
}

bool code_hyper_equal(const CodeHyperPtr& a, const CodeHyperPtr& b) {
  if (a->head != b->head || a->mid != b->mid || a->tail != b->tail)
    return false;
  if (a->head == CodeHyper::Head::Project &&
      (a->hg != b->hg || a->hlabel != b->hlabel))
    return false;
  if (a->mid == CodeHyper::Mid::Fail && a->mlabel != b->mlabel) return false;
  if (a->mid == CodeHyper::Mid::Arrow &&
      (!code_hyper_equal(a->a, b->a) || !code_hyper_equal(a->b, b->b)))
    return false;
  if (a->tail == CodeHyper::Tail::Inject && a->tg != b->tg) return false;
  return true;
}

bool meta_hyper_equal(const MetaHyperPtr& a, const MetaHyperPtr& b) {
  if (a->head != b->head || a->mid != b->mid || a->tail != b->tail)
    return false;
  if (a->head == MetaHyper::Head::Project &&
      (a->hg != b->hg || a->hlabel != b->hlabel))
    return false;
  switch (a->mid) {
    case MetaHyper::Mid::Id:
      break;
    case MetaHyper::Mid::Fail:
      if (a->mlabel != b->mlabel) return false;
      break;
    case MetaHyper::Mid::Arrow:
    case MetaHyper::Mid::Ref:
      if (!meta_hyper_equal(a->a, b->a) || !meta_hyper_equal(a->b, b->b))
        return false;
      break;
    case MetaHyper::Mid::Quote:
      if (!code_hyper_equal(a->code, b->code) || !(a->ec == b->ec))
        return false;
      break;
    case MetaHyper::Mid::Forall: {
      MetaHyperPtr bb =
          a->var == b->var
              ? b->a
              : subst_classifier_hyper(b->a, b->var,
                                       Classifier::named(a->var));
      if (!meta_hyper_equal(a->a, bb)) return false;
      break;
    }
    case MetaHyper::Mid::Constr:
      if (a->c1 != b->c1 || a->c2 != b->c2 || !meta_hyper_equal(a->a, b->a))
        return false;
      break;
  }
  if (a->tail == MetaHyper::Tail::Inject && a->tg != b->tg) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Height

int ec_hyper_height(const ECHyper&) { return 1; }

int code_hyper_height(const CodeHyperPtr& c) {
  switch (c->mid) {
    case CodeHyper::Mid::Id:
    case CodeHyper::Mid::Fail:
      return 1;
    case CodeHyper::Mid::Arrow:
      return 1 + std::max(code_hyper_height(c->a), code_hyper_height(c->b));
  }
  return 1;
}

int meta_hyper_height(const MetaHyperPtr& c) {
  switch (c->mid) {
    case MetaHyper::Mid::Id:
    case MetaHyper::Mid::Fail:
      return 1;
    case MetaHyper::Mid::Arrow:
    case MetaHyper::Mid::Ref:
      return 1 + std::max(meta_hyper_height(c->a), meta_hyper_height(c->b));
    case MetaHyper::Mid::Quote:
      return 1 + std::max(code_hyper_height(c->code), ec_hyper_height(c->ec));
    case MetaHyper::Mid::Forall:
    case MetaHyper::Mid::Constr:
      return 1 + meta_hyper_height(c->a);
  }
  return 1;
}

// ---------------------------------------------------------------------------
// Classifier substitution

namespace {

MetaGround subst_ground(const MetaGround& g, const std::string& var,
                        const Classifier& repl) {
  if (g.kind != MetaGround::Kind::Constr) return g;
  MetaGround r = g;
  r.c1 = subst_classifier_ec(g.c1, var, repl);
  r.c2 = subst_classifier_ec(g.c2, var, repl);
  return r;
}

ECHyper subst_ec_hyper(const ECHyper& c, const std::string& var,
                       const Classifier& repl) {
  ECHyper r = c;
  r.hp = subst_classifier_ec(c.hp, var, repl);
  r.m1 = subst_classifier_ec(c.m1, var, repl);
  r.m2 = subst_classifier_ec(c.m2, var, repl);
  r.tp = subst_classifier_ec(c.tp, var, repl);
  return r;
}

}  // namespace

MetaHyperPtr subst_classifier_hyper(const MetaHyperPtr& c,
                                    const std::string& var,
                                    const Classifier& repl) {
  MetaHyper r = *c;
  r.hg = subst_ground(c->hg, var, repl);
  r.tg = subst_ground(c->tg, var, repl);
  switch (c->mid) {
    case MetaHyper::Mid::Id:
    case MetaHyper::Mid::Fail:
      break;
    case MetaHyper::Mid::Arrow:
    case MetaHyper::Mid::Ref:
      r.a = subst_classifier_hyper(c->a, var, repl);
      r.b = subst_classifier_hyper(c->b, var, repl);
      break;
    case MetaHyper::Mid::Quote:
      r.ec = subst_ec_hyper(c->ec, var, repl);
      break;
    case MetaHyper::Mid::Forall:
      if (c->var != var) r.a = subst_classifier_hyper(c->a, var, repl);
      break;
    case MetaHyper::Mid::Constr:
      r.c1 = subst_classifier_ec(c->c1, var, repl);
      r.c2 = subst_classifier_ec(c->c2, var, repl);
      r.a = subst_classifier_hyper(c->a, var, repl);
      break;
  }
  return mk_meta(std::move(r));
}

std::string meta_hyper_str(const MetaHyperPtr& c) {
  return meta_co_str(hyper_to_seq(c));
}

}  // namespace gm
