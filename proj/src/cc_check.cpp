#include "gm/cc_check.hpp"

#include <deque>
#include <set>

#include "gm/coercion.hpp"
#include "gm/hyper.hpp"

namespace gm {

namespace {

// Meta typing is exact in the cast calculus: every implicit conversion was
// made explicit by elaboration, so rules compare types with type_equal and a
// nullptr type stands for "types at anything" (blame, failed casts).
class CC {
 public:
  explicit CC(const RuntimeCtx& rt) : rt_(rt), theta_(rt.theta) {
    for (const auto& [id, lab] : rt.labels)
      labels_[Classifier::gen(id)] = lab;
  }

  TypePtr synth(const TermPtr& t);
  CodeTypePtr synth_code(const TermPtr& t, const Classifier& enc);

  std::vector<std::pair<std::string, TypePtr>> meta_;

 private:
  [[noreturn]] void err(const std::string& msg, Span sp) {
    throw TypeError(msg, sp);
  }

  void check_classifier(const Classifier& e, Span sp) {
    if (e.kind == Classifier::Kind::Named) {
      for (auto it = cvars_.rbegin(); it != cvars_.rend(); ++it)
        if (*it == e.name) return;
      err("classifier '" + e.str() + "' is not in scope", sp);
    }
    if (e.kind == Classifier::Kind::Gen && !labels_.count(e))
      err("unknown runtime classifier " + e.str(), sp);
  }

  // Walk the scope forest downward from enc looking for the nearest binder
  // of this name.
  const RuntimeCtx::Label* lookup_code(const std::string& x,
                                       const Classifier& enc) {
    std::deque<Classifier> work{enc};
    std::set<Classifier> seen{enc};
    while (!work.empty()) {
      Classifier c = work.front();
      work.pop_front();
      auto it = labels_.find(c);
      if (it != labels_.end() && it->second.var == x) return &it->second;
      for (const auto& [lo, hi] : theta_.edges())
        if (hi == c && seen.insert(lo).second) work.push_back(lo);
    }
    return nullptr;
  }

  const RuntimeCtx& rt_;
  SubtypeEnv theta_;
  std::vector<std::string> cvars_;
  std::map<Classifier, RuntimeCtx::Label> labels_;
};

TypePtr CC::synth(const TermPtr& t) {
  switch (t->kind) {
    case TK::ConstInt: return t_int();
    case TK::ConstBool: return t_bool();
    case TK::ConstUnit: return t_unit();
    case TK::Blame: return nullptr;
    case TK::Var:
      for (auto it = meta_.rbegin(); it != meta_.rend(); ++it)
        if (it->first == t->var) return it->second;
      err("unbound variable '" + t->var + "'", t->span);
    case TK::Addr:
      if (t->ival < 0 || t->ival >= (long)rt_.heap_types.size())
        err("dangling address", t->span);
      return t_ref(rt_.heap_types[t->ival]);
    case TK::Lam: {
      meta_.emplace_back(t->var, t->ann);
      TypePtr b = synth(t->a);
      meta_.pop_back();
      return b ? t_arrow(t->ann, b) : nullptr;
    }
    case TK::App: {
      TypePtr f = synth(t->a);
      TypePtr arg = synth(t->b);
      if (!f) return nullptr;
      if (f->kind != MetaType::Kind::Arrow)
        err("cannot apply a non-function of type " + type_str(f), t->span);
      if (arg && !type_equal(arg, f->lhs))
        err("argument type " + type_str(arg) + " does not match parameter type " +
                type_str(f->lhs),
            t->span);
      return f->rhs;
    }
    case TK::Binop: {
      for (const TermPtr& s : {t->a, t->b}) {
        TypePtr o = synth(s);
        if (o && !type_equal(o, t_int()))
          err("operand of '" + std::string(1, t->op) + "' has type " +
                  type_str(o) + ", expected Int",
              s->span);
      }
      return t_int();
    }
    case TK::RefE: {
      TypePtr a = synth(t->a);
      return a ? t_ref(a) : nullptr;
    }
    case TK::Deref: {
      TypePtr r = synth(t->a);
      if (!r) return nullptr;
      if (r->kind != MetaType::Kind::Ref)
        err("cannot dereference a non-reference of type " + type_str(r),
            t->span);
      return r->lhs;
    }
    case TK::Assign: {
      TypePtr r = synth(t->a);
      TypePtr v = synth(t->b);
      if (r) {
        if (r->kind != MetaType::Kind::Ref)
          err("cannot assign to a non-reference of type " + type_str(r),
              t->span);
        if (v && !type_equal(v, r->lhs))
          err("the assigned type " + type_str(v) +
                  " does not match the reference's element type " +
                  type_str(r->lhs),
              t->span);
      }
      return t_unit();
    }
    case TK::Seq: {
      synth(t->a);
      return synth(t->b);
    }
    case TK::Quote: {
      check_classifier(t->ec, t->span);
      CodeTypePtr c;
      if (t->flag) {
        // A finished quote types against the global forest only.
        CC global(rt_);
        global.meta_ = meta_;
        c = global.synth_code(t->a, t->ec);
      } else {
        c = synth_code(t->a, t->ec);
      }
      return c ? t_quote(c, GClassifier::known(t->ec)) : nullptr;
    }
    case TK::CAbs: {
      cvars_.push_back(t->var);
      TypePtr b = synth(t->a);
      cvars_.pop_back();
      return b ? t_forall(t->var, b) : nullptr;
    }
    case TK::CApp: {
      TypePtr f = synth(t->a);
      check_classifier(t->ec, t->span);
      if (!f) return nullptr;
      if (f->kind != MetaType::Kind::Forall)
        err("cannot instantiate a non-polymorphic type " + type_str(f),
            t->span);
      return subst_classifier_type(f->lhs, f->var, t->ec);
    }
    case TK::CIntro: {
      check_classifier(t->ec, t->span);
      check_classifier(t->ec2, t->span);
      size_t mark = theta_.size();
      theta_.add(t->ec, t->ec2);
      TypePtr b = synth(t->a);
      theta_.truncate(mark);
      return b ? t_constr(t->ec, t->ec2, b) : nullptr;
    }
    case TK::CElim: {
      TypePtr f = synth(t->a);
      if (!f) return nullptr;
      if (f->kind != MetaType::Kind::Constr)
        err("cannot discharge a constraint on type " + type_str(f), t->span);
      if (!theta_.subtype(f->c1, f->c2))
        err("the constraint " + f->c1.str() + " <: " + f->c2.str() +
                " does not hold here",
            t->span);
      return f->lhs;
    }
    case TK::CElimStar: {
      TypePtr f = synth(t->a);
      if (f && f->kind != MetaType::Kind::Star)
        err("runtime constraint elimination on non-unknown type " +
                type_str(f),
            t->span);
      return t_star();
    }
    case TK::Cast: {
      TypePtr s = synth(t->a);
      if (!s) return nullptr;
      MetaCoPtr c = t->coe ? t->coe : hyper_to_seq(t->hco);
      CoercionTyping r = meta_coercion_dst(theta_, c, s);
      if (r.ill)
        err("coercion " + meta_co_str(c) + " does not apply at type " +
                type_str(s),
            t->span);
      return r.dst ? *r.dst : nullptr;
    }
    case TK::Splice:
      err("splice outside a quote", t->span);
    case TK::CodeLam:
      err("code lambda outside a quote", t->span);
  }
  err("unrecognized term", t->span);
}

CodeTypePtr CC::synth_code(const TermPtr& t, const Classifier& enc) {
  switch (t->kind) {
    case TK::ConstInt: return ct_int();
    case TK::ConstBool: return ct_bool();
    case TK::ConstUnit: return ct_unit();
    case TK::Var: {
      const RuntimeCtx::Label* lab = lookup_code(t->var, enc);
      if (!lab)
        err("code variable '" + t->var + "' is not in scope at " + enc.str(),
            t->span);
      return lab->ty;
    }
    case TK::CodeLam: {
      Classifier alpha =
          t->flag ? t->ec : Classifier::named(t->var2);
      size_t mark = theta_.size();
      if (t->flag) {
        auto glob = rt_.labels.find(alpha.id);
        if (glob == rt_.labels.end() || glob->second.var != t->var ||
            !code_type_equal(glob->second.ty, t->cann))
          err("runtime code lambda does not match the global forest at " +
                  alpha.str(),
              t->span);
      } else {
        cvars_.push_back(t->var2);
        theta_.add(enc, alpha);
      }
      labels_[alpha] = {t->var, t->cann};
      CodeTypePtr body = synth_code(t->a, alpha);
      labels_.erase(alpha);
      if (t->flag) {
        labels_[alpha] = rt_.labels.at(alpha.id);
      } else {
        theta_.truncate(mark);
        cvars_.pop_back();
      }
      return body ? ct_arrow(t->cann, body) : nullptr;
    }
    case TK::App: {
      CodeTypePtr f = synth_code(t->a, enc);
      CodeTypePtr arg = synth_code(t->b, enc);
      if (!f || !arg) return nullptr;
      if (f->kind != CodeType::Kind::Arrow)
        err("cannot apply non-function code of type " + code_type_str(f),
            t->span);
      if (!code_type_equal(arg, f->dom))
        err("code argument type " + code_type_str(arg) +
                " does not match parameter type " + code_type_str(f->dom),
            t->span);
      return f->cod;
    }
    case TK::Binop: {
      for (const TermPtr& s : {t->a, t->b}) {
        CodeTypePtr o = synth_code(s, enc);
        if (o && !code_type_equal(o, ct_int()))
          err("code operand of '" + std::string(1, t->op) + "' has type " +
                  code_type_str(o) + ", expected Int",
              s->span);
      }
      return ct_int();
    }
    case TK::Splice: {
      TypePtr s = synth(t->a);
      if (!s) return nullptr;
      if (s->kind != MetaType::Kind::Quote || s->gec.star ||
          s->gec.ec != enc)
        err("spliced term has type " + type_str(s) + ", expected code at " +
                enc.str(),
            t->span);
      return s->code;
    }
    default:
      err("not a code term", t->span);
  }
}

}  // namespace

TypePtr cc_type(const TermPtr& t, const RuntimeCtx& rt) {
  CC ck(rt);
  return ck.synth(t);
}

bool code_value_closed(const TermPtr& quote_value, const RuntimeCtx& rt) {
  TermPtr q = quote_value;
  while (q && q->kind == TK::Cast) q = q->a;
  if (!q || q->kind != TK::Quote) return false;
  try {
    return cc_type(q, rt) != nullptr;
  } catch (const TypeError&) {
    return false;
  }
}

}  // namespace gm
