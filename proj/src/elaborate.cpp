#include "gm/elaborate.hpp"

#include "gm/coercion.hpp"
#include "gm/subtyping.hpp"

namespace gm {

namespace {

struct R {
  TypePtr ty;
  TermPtr tm;
};

struct CodeBind {
  std::string name;
  CodeTypePtr ty;
  Classifier alpha;
};

TermPtr at(TermPtr t, Span sp) {
  const_cast<Term*>(t.get())->span = sp;
  return t;
}

TermPtr rewrap(const TermPtr& t, TermPtr a, TermPtr b) {
  if (a == t->a && b == t->b) return t;
  auto n = std::make_shared<Term>(*t);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Checker {
 public:
  R synth(const TermPtr& t);

 private:
  [[noreturn]] void err(const std::string& msg, Span sp) {
    throw TypeError(msg, sp);
  }

  void check_classifier(const Classifier& e, Span sp) {
    if (e.kind != Classifier::Kind::Named) return;
    for (auto it = cvars_.rbegin(); it != cvars_.rend(); ++it)
      if (*it == e.name) return;
    err("classifier '" + e.str() + "' is not in scope", sp);
  }

  // Wrap m in a cast from 'from' to 'to' unless the coercion is an identity.
  TermPtr cast(TermPtr m, const TypePtr& from, const TypePtr& to, int label,
               Span sp) {
    if (type_equal(from, to)) return m;
    MetaCoPtr c = coerce_meta(from, to, label);
    if (reduce_meta(theta_, c)->kind == MetaCoercion::Kind::Id) return m;
    return at(tm_cast(std::move(m), c, from, to), sp);
  }

  struct Rc {
    CodeTypePtr ty;
    TermPtr tm;
  };
  Rc synth_code(const TermPtr& t, const Classifier& enc);
  TermPtr check_code(const TermPtr& t, const Classifier& enc,
                     const CodeTypePtr& want);
  TermPtr splice_at(const TermPtr& t, const Classifier& enc,
                    const CodeTypePtr& want);

  SubtypeEnv theta_;
  std::vector<std::string> cvars_;
  std::vector<CodeBind> code_;
  std::vector<std::pair<std::string, TypePtr>> meta_;
};

R Checker::synth(const TermPtr& t) {
  switch (t->kind) {
    case TK::ConstInt: return {t_int(), t};
    case TK::ConstBool: return {t_bool(), t};
    case TK::ConstUnit: return {t_unit(), t};
    case TK::Var:
      for (auto it = meta_.rbegin(); it != meta_.rend(); ++it)
        if (it->first == t->var) return {it->second, t};
      err("unbound variable '" + t->var + "'", t->span);
    case TK::Lam: {
      meta_.emplace_back(t->var, t->ann);
      R body = synth(t->a);
      meta_.pop_back();
      return {t_arrow(t->ann, body.ty), rewrap(t, body.tm, nullptr)};
    }
    case TK::App: {
      R f = synth(t->a);
      if (f.ty->kind == MetaType::Kind::Star) {
        R m = synth(t->b);
        TermPtr fn =
            cast(f.tm, t_star(), t_arrow(t_star(), t_star()), t->label,
                 t->a->span);
        TermPtr arg = cast(m.tm, m.ty, t_star(), t->label, t->b->span);
        return {t_star(), rewrap(t, std::move(fn), std::move(arg))};
      }
      if (f.ty->kind != MetaType::Kind::Arrow)
        err("cannot apply a non-function of type " + type_str(f.ty), t->span);
      R m = synth(t->b);
      if (!consistent_subtype(theta_, m.ty, f.ty->lhs))
        err("argument type " + type_str(m.ty) +
                " is not a consistent subtype of the parameter type " +
                type_str(f.ty->lhs),
            t->span);
      TermPtr arg = cast(m.tm, m.ty, f.ty->lhs, t->label, t->b->span);
      return {f.ty->rhs, rewrap(t, f.tm, std::move(arg))};
    }
    case TK::Binop: {
      TermPtr kids[2];
      const TermPtr srcs[2] = {t->a, t->b};
      for (int i = 0; i < 2; i++) {
        R o = synth(srcs[i]);
        if (!consistent_subtype(theta_, o.ty, t_int()))
          err("operand of '" + std::string(1, t->op) + "' has type " +
                  type_str(o.ty) + ", expected Int",
              srcs[i]->span);
        kids[i] = cast(o.tm, o.ty, t_int(), t->label, srcs[i]->span);
      }
      return {t_int(), rewrap(t, kids[0], kids[1])};
    }
    case TK::RefE: {
      R m = synth(t->a);
      return {t_ref(m.ty), rewrap(t, m.tm, nullptr)};
    }
    case TK::Deref: {
      R m = synth(t->a);
      if (m.ty->kind == MetaType::Kind::Star) {
        TermPtr sub = cast(m.tm, t_star(), t_ref(t_star()), t->label,
                           t->a->span);
        return {t_star(), rewrap(t, std::move(sub), nullptr)};
      }
      if (m.ty->kind != MetaType::Kind::Ref)
        err("cannot dereference a non-reference of type " + type_str(m.ty),
            t->span);
      return {m.ty->lhs, rewrap(t, m.tm, nullptr)};
    }
    case TK::Assign: {
      R l = synth(t->a);
      R v = synth(t->b);
      if (l.ty->kind == MetaType::Kind::Star) {
        TermPtr lhs = cast(l.tm, t_star(), t_ref(t_star()), t->label,
                           t->a->span);
        TermPtr rhs = cast(v.tm, v.ty, t_star(), t->label, t->b->span);
        return {t_unit(), rewrap(t, std::move(lhs), std::move(rhs))};
      }
      if (l.ty->kind != MetaType::Kind::Ref)
        err("cannot assign to a non-reference of type " + type_str(l.ty),
            t->span);
      if (!consistent_subtype(theta_, v.ty, l.ty->lhs))
        err("the assigned type " + type_str(v.ty) +
                " is not a consistent subtype of the reference's element type " +
                type_str(l.ty->lhs),
            t->span);
      TermPtr rhs = cast(v.tm, v.ty, l.ty->lhs, t->label, t->b->span);
      return {t_unit(), rewrap(t, l.tm, std::move(rhs))};
    }
    case TK::Seq: {
      R a = synth(t->a);
      R b = synth(t->b);
      return {b.ty, rewrap(t, a.tm, b.tm)};
    }
    case TK::Quote: {
      check_classifier(t->ec, t->span);
      Rc c = synth_code(t->a, t->ec);
      return {t_quote(c.ty, GClassifier::known(t->ec)),
              rewrap(t, c.tm, nullptr)};
    }
    case TK::CAbs: {
      cvars_.push_back(t->var);
      R body = synth(t->a);
      cvars_.pop_back();
      return {t_forall(t->var, body.ty), rewrap(t, body.tm, nullptr)};
    }
    case TK::CApp: {
      R f = synth(t->a);
      check_classifier(t->ec, t->span);
      if (f.ty->kind == MetaType::Kind::Star) {
        TermPtr fn = cast(f.tm, t_star(), t_forall("_", t_star()), t->label,
                          t->a->span);
        return {t_star(), rewrap(t, std::move(fn), nullptr)};
      }
      if (f.ty->kind != MetaType::Kind::Forall)
        err("cannot instantiate a non-polymorphic type " + type_str(f.ty),
            t->span);
      return {subst_classifier_type(f.ty->lhs, f.ty->var, t->ec),
              rewrap(t, f.tm, nullptr)};
    }
    case TK::CIntro: {
      check_classifier(t->ec, t->span);
      check_classifier(t->ec2, t->span);
      size_t mark = theta_.size();
      theta_.add(t->ec, t->ec2);
      R body = synth(t->a);
      theta_.truncate(mark);
      return {t_constr(t->ec, t->ec2, body.ty), rewrap(t, body.tm, nullptr)};
    }
    case TK::CElim: {
      R f = synth(t->a);
      if (f.ty->kind == MetaType::Kind::Star)
        return {t_star(), at(tm_celim_star(f.tm, t->label), t->span)};
      if (f.ty->kind != MetaType::Kind::Constr)
        err("cannot discharge a constraint on type " + type_str(f.ty),
            t->span);
      if (!theta_.subtype(f.ty->c1, f.ty->c2))
        err("the constraint " + f.ty->c1.str() + " <: " + f.ty->c2.str() +
                " does not hold here",
            t->span);
      return {f.ty->lhs, rewrap(t, f.tm, nullptr)};
    }
    case TK::Splice:
      err("splice outside a quote", t->span);
    case TK::CodeLam:
      err("code lambda outside a quote", t->span);
    default:
      err("not a source term", t->span);
  }
}

// Cast the spliced meta term to code of the expected type at the enclosing
// classifier.
TermPtr Checker::splice_at(const TermPtr& t, const Classifier& enc,
                           const CodeTypePtr& want) {
  R m = synth(t->a);
  TypePtr target = t_quote(want, GClassifier::known(enc));
  if (!consistent_subtype(theta_, m.ty, target))
    err("spliced term has type " + type_str(m.ty) +
            ", which is not a consistent subtype of " + type_str(target),
        t->span);
  return rewrap(t, cast(m.tm, m.ty, target, t->label, t->a->span), nullptr);
}

Checker::Rc Checker::synth_code(const TermPtr& t, const Classifier& enc) {
  switch (t->kind) {
    case TK::ConstInt: return {ct_int(), t};
    case TK::ConstBool: return {ct_bool(), t};
    case TK::ConstUnit: return {ct_unit(), t};
    case TK::Var: {
      for (auto it = code_.rbegin(); it != code_.rend(); ++it) {
        if (it->name != t->var) continue;
        if (!theta_.subtype(it->alpha, enc))
          err("code variable '" + t->var + "' is out of scope: " +
                  it->alpha.str() + " is not a subtype of " + enc.str(),
              t->span);
        return {it->ty, t};
      }
      err("unbound code variable '" + t->var + "'", t->span);
    }
    case TK::CodeLam: {
      if (t->flag) err("not a source term", t->span);
      if (!code_type_static(t->cann))
        err("the unknown type is not allowed in a code annotation", t->span);
      Classifier alpha = Classifier::named(t->var2);
      cvars_.push_back(t->var2);
      size_t mark = theta_.size();
      theta_.add(enc, alpha);
      code_.push_back({t->var, t->cann, alpha});
      Rc body = synth_code(t->a, alpha);
      code_.pop_back();
      theta_.truncate(mark);
      cvars_.pop_back();
      return {ct_arrow(t->cann, body.ty), rewrap(t, body.tm, nullptr)};
    }
    case TK::App: {
      Rc f = synth_code(t->a, enc);
      if (f.ty->kind != CodeType::Kind::Arrow)
        err("cannot apply non-function code of type " + code_type_str(f.ty),
            t->span);
      TermPtr arg = check_code(t->b, enc, f.ty->dom);
      return {f.ty->cod, rewrap(t, f.tm, std::move(arg))};
    }
    case TK::Binop: {
      TermPtr l = check_code(t->a, enc, ct_int());
      TermPtr r = check_code(t->b, enc, ct_int());
      return {ct_int(), rewrap(t, std::move(l), std::move(r))};
    }
    case TK::Splice: {
      R m = synth(t->a);
      if (m.ty->kind == MetaType::Kind::Star)
        err("cannot infer the code type of a splice whose subject has the "
            "unknown type; only argument positions may do that",
            t->span);
      if (m.ty->kind != MetaType::Kind::Quote ||
          !code_type_static(m.ty->code))
        err("spliced term has type " + type_str(m.ty) + ", expected code",
            t->span);
      TypePtr target = t_quote(m.ty->code, GClassifier::known(enc));
      if (!consistent_subtype(theta_, m.ty, target))
        err("spliced code for scope " + m.ty->gec.str() +
                " cannot be used inside scope " + enc.str(),
            t->span);
      return {m.ty->code,
              rewrap(t, cast(m.tm, m.ty, target, t->label, t->a->span),
                     nullptr)};
    }
    default:
      err("not a code term", t->span);
  }
}

TermPtr Checker::check_code(const TermPtr& t, const Classifier& enc,
                            const CodeTypePtr& want) {
  if (t->kind == TK::Splice) return splice_at(t, enc, want);
  Rc got = synth_code(t, enc);
  if (!code_type_equal(got.ty, want))
    err("code has type " + code_type_str(got.ty) + ", expected " +
            code_type_str(want),
        t->span);
  return got.tm;
}

}  // namespace

Elab elaborate(const TermPtr& t) {
  Checker ck;
  R r = ck.synth(t);
  return {r.tm, r.ty};
}

}  // namespace gm
