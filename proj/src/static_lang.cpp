#include "gm/static_lang.hpp"

#include <optional>

#include "gm/subtyping.hpp"

namespace gm {

namespace {

struct CodeBind {
  std::string name;
  CodeTypePtr ty;
  Classifier alpha;
};

class StaticChecker {
 public:
  explicit StaticChecker(const std::vector<TypePtr>& heap) : heap_(heap) {}

  TypePtr synth(const TermPtr& t);

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

  void require_static(const TypePtr& a, Span sp) {
    if (!type_static(a))
      err("the unknown type is not allowed in the static language", sp);
  }

  CodeTypePtr synth_code(const TermPtr& t, const Classifier& enc);
  void check_code(const TermPtr& t, const Classifier& enc,
                  const CodeTypePtr& want);

  SubtypeEnv theta_;
  std::vector<std::string> cvars_;
  std::vector<CodeBind> code_;
  std::vector<std::pair<std::string, TypePtr>> meta_;
  const std::vector<TypePtr>& heap_;
};

TypePtr StaticChecker::synth(const TermPtr& t) {
  switch (t->kind) {
    case TK::ConstInt: return t_int();
    case TK::ConstBool: return t_bool();
    case TK::ConstUnit: return t_unit();
    case TK::Var:
      for (auto it = meta_.rbegin(); it != meta_.rend(); ++it)
        if (it->first == t->var) return it->second;
      err("unbound variable '" + t->var + "'", t->span);
    case TK::Lam: {
      require_static(t->ann, t->span);
      meta_.emplace_back(t->var, t->ann);
      TypePtr b = synth(t->a);
      meta_.pop_back();
      return t_arrow(t->ann, b);
    }
    case TK::App: {
      TypePtr f = synth(t->a);
      if (f->kind != MetaType::Kind::Arrow)
        err("cannot apply a non-function of type " + type_str(f), t->span);
      TypePtr arg = synth(t->b);
      if (!meta_subtype(theta_, arg, f->lhs))
        err("argument type " + type_str(arg) +
                " is not a subtype of the parameter type " + type_str(f->lhs),
            t->span);
      return f->rhs;
    }
    case TK::Binop: {
      for (const TermPtr& s : {t->a, t->b}) {
        TypePtr o = synth(s);
        if (!meta_subtype(theta_, o, t_int()))
          err("operand of '" + std::string(1, t->op) + "' has type " +
                  type_str(o) + ", expected Int",
              s->span);
      }
      return t_int();
    }
    case TK::RefE: return t_ref(synth(t->a));
    case TK::Deref: {
      TypePtr r = synth(t->a);
      if (r->kind != MetaType::Kind::Ref)
        err("cannot dereference a non-reference of type " + type_str(r),
            t->span);
      return r->lhs;
    }
    case TK::Assign: {
      TypePtr r = synth(t->a);
      if (r->kind != MetaType::Kind::Ref)
        err("cannot assign to a non-reference of type " + type_str(r),
            t->span);
      TypePtr v = synth(t->b);
      if (!meta_subtype(theta_, v, r->lhs))
        err("the assigned type " + type_str(v) +
                " is not a subtype of the reference's element type " +
                type_str(r->lhs),
            t->span);
      return t_unit();
    }
    case TK::Seq:
      synth(t->a);
      return synth(t->b);
    case TK::Quote: {
      check_classifier(t->ec, t->span);
      CodeTypePtr c = synth_code(t->a, t->ec);
      return t_quote(c, GClassifier::known(t->ec));
    }
    case TK::CAbs: {
      cvars_.push_back(t->var);
      TypePtr b = synth(t->a);
      cvars_.pop_back();
      return t_forall(t->var, b);
    }
    case TK::CApp: {
      TypePtr f = synth(t->a);
      if (f->kind != MetaType::Kind::Forall)
        err("cannot instantiate a non-polymorphic type " + type_str(f),
            t->span);
      check_classifier(t->ec, t->span);
      return subst_classifier_type(f->lhs, f->var, t->ec);
    }
    case TK::CIntro: {
      check_classifier(t->ec, t->span);
      check_classifier(t->ec2, t->span);
      size_t mark = theta_.size();
      theta_.add(t->ec, t->ec2);
      TypePtr b = synth(t->a);
      theta_.truncate(mark);
      return t_constr(t->ec, t->ec2, b);
    }
    case TK::CElim: {
      TypePtr f = synth(t->a);
      if (f->kind != MetaType::Kind::Constr)
        err("cannot discharge a constraint on type " + type_str(f), t->span);
      if (!theta_.subtype(f->c1, f->c2))
        err("the constraint " + f->c1.str() + " <: " + f->c2.str() +
                " does not hold here",
            t->span);
      return f->lhs;
    }
    case TK::Addr:
      if (t->ival < 0 || t->ival >= (long)heap_.size())
        err("dangling address", t->span);
      return t_ref(heap_[t->ival]);
    case TK::Splice:
      err("splice outside a quote", t->span);
    case TK::CodeLam:
      err("code lambda outside a quote", t->span);
    default:
      err("not a term of the static language", t->span);
  }
}

CodeTypePtr StaticChecker::synth_code(const TermPtr& t,
                                      const Classifier& enc) {
  switch (t->kind) {
    case TK::ConstInt: return ct_int();
    case TK::ConstBool: return ct_bool();
    case TK::ConstUnit: return ct_unit();
    case TK::Var: {
      for (auto it = code_.rbegin(); it != code_.rend(); ++it) {
        if (it->name != t->var) continue;
        if (!theta_.subtype(it->alpha, enc))
          err("code variable '" + t->var + "' is out of scope: " +
                  it->alpha.str() + " is not a subtype of " + enc.str(),
              t->span);
        return it->ty;
      }
      err("unbound code variable '" + t->var + "'", t->span);
    }
    case TK::CodeLam: {
      if (t->flag) err("not a static code term", t->span);
      if (!code_type_static(t->cann))
        err("the unknown type is not allowed in a code annotation", t->span);
      Classifier alpha = Classifier::named(t->var2);
      cvars_.push_back(t->var2);
      size_t mark = theta_.size();
      theta_.add(enc, alpha);
      code_.push_back({t->var, t->cann, alpha});
      CodeTypePtr body = synth_code(t->a, alpha);
      code_.pop_back();
      theta_.truncate(mark);
      cvars_.pop_back();
      return ct_arrow(t->cann, body);
    }
    case TK::App: {
      CodeTypePtr f = synth_code(t->a, enc);
      if (f->kind != CodeType::Kind::Arrow)
        err("cannot apply non-function code of type " + code_type_str(f),
            t->span);
      check_code(t->b, enc, f->dom);
      return f->cod;
    }
    case TK::Binop:
      check_code(t->a, enc, ct_int());
      check_code(t->b, enc, ct_int());
      return ct_int();
    case TK::Splice: {
      TypePtr a = synth(t->a);
      if (a->kind != MetaType::Kind::Quote)
        err("spliced term has type " + type_str(a) + ", expected code",
            t->span);
      if (!theta_.subtype(a->gec.ec, enc))
        err("spliced code for scope " + a->gec.ec.str() +
                " cannot be used inside scope " + enc.str(),
            t->span);
      return a->code;
    }
    default:
      err("not a code term", t->span);
  }
}

void StaticChecker::check_code(const TermPtr& t, const Classifier& enc,
                               const CodeTypePtr& want) {
  if (t->kind == TK::Splice) {
    TypePtr a = synth(t->a);
    TypePtr expect = t_quote(want, GClassifier::known(enc));
    if (!meta_subtype(theta_, a, expect))
      err("spliced term has type " + type_str(a) + ", which is not a subtype of " +
              type_str(expect),
          t->span);
    return;
  }
  CodeTypePtr got = synth_code(t, enc);
  if (!code_type_equal(got, want))
    err("code has type " + code_type_str(got) + ", expected " +
            code_type_str(want),
        t->span);
}

}  // namespace

TypePtr static_type(const TermPtr& t, const std::vector<TypePtr>& heap_types) {
  StaticChecker ck(heap_types);
  return ck.synth(t);
}

namespace {

bool code_value(const TermPtr& t) {
  switch (t->kind) {
    case TK::Splice: return false;
    case TK::CodeLam: return code_value(t->a);
    case TK::App:
    case TK::Binop: return code_value(t->a) && code_value(t->b);
    default: return true;
  }
}

bool meta_value(const TermPtr& t) {
  switch (t->kind) {
    case TK::ConstInt:
    case TK::ConstBool:
    case TK::ConstUnit:
    case TK::Lam:
    case TK::Addr:
    case TK::CAbs:
    case TK::CIntro: return true;
    case TK::Quote: return code_value(t->a);
    default: return false;
  }
}

class StaticMachine {
 public:
  explicit StaticMachine(bool check) : check_(check) {}

  StaticResult run(TermPtr t, long limit) {
    TypePtr ty = check_ ? static_type(t, heap_types_) : nullptr;
    StaticResult r;
    while (!meta_value(t)) {
      if (r.steps >= limit) {
        r.status = StaticResult::Status::Limit;
        return r;
      }
      auto next = step_meta(t);
      if (!next)
        throw std::logic_error("static machine is stuck on " + term_str(t));
      t = *next;
      r.steps++;
      if (check_) {
        TypePtr ty2 = static_type(t, heap_types_);
        if (!meta_subtype(SubtypeEnv{}, ty2, ty))
          throw std::logic_error("type not preserved: " + type_str(ty2) +
                                 " vs " + type_str(ty));
        ty = ty2;
      }
    }
    r.status = StaticResult::Status::Value;
    r.value = t;
    return r;
  }

 private:
  // One meta step, or nullopt if t is a value.
  std::optional<TermPtr> step_meta(const TermPtr& t) {
    switch (t->kind) {
      case TK::App: {
        if (auto a = step_meta(t->a)) return rewrap(t, *a, t->b);
        if (auto b = step_meta(t->b)) return rewrap(t, t->a, *b);
        if (t->a->kind == TK::Lam)
          return subst_term(t->a->a, t->a->var, t->b);
        return std::nullopt;
      }
      case TK::Binop: {
        if (auto a = step_meta(t->a)) return rewrap(t, *a, t->b);
        if (auto b = step_meta(t->b)) return rewrap(t, t->a, *b);
        long x = t->a->ival, y = t->b->ival;
        long v = t->op == '+' ? x + y : t->op == '-' ? x - y : x * y;
        return tm_int(v);
      }
      case TK::RefE: {
        if (auto a = step_meta(t->a)) return rewrap(t, *a, nullptr);
        long addr = (long)heap_.size();
        heap_.push_back(t->a);
        if (check_) heap_types_.push_back(static_type(t->a, heap_types_));
        return tm_addr(addr);
      }
      case TK::Deref: {
        if (auto a = step_meta(t->a)) return rewrap(t, *a, nullptr);
        return heap_[t->a->ival];
      }
      case TK::Assign: {
        if (auto a = step_meta(t->a)) return rewrap(t, *a, t->b);
        if (auto b = step_meta(t->b)) return rewrap(t, t->a, *b);
        heap_[t->a->ival] = t->b;
        return tm_unit();
      }
      case TK::Seq: {
        if (auto a = step_meta(t->a)) return rewrap(t, *a, t->b);
        return t->b;
      }
      case TK::Quote: {
        if (auto a = step_code(t->a)) return rewrap(t, *a, nullptr);
        return std::nullopt;
      }
      case TK::CApp: {
        if (auto a = step_meta(t->a)) return rewrap(t, *a, nullptr);
        return subst_classifier_term(t->a->a, t->a->var, t->ec);
      }
      case TK::CElim: {
        if (auto a = step_meta(t->a)) return rewrap(t, *a, nullptr);
        return t->a->a;
      }
      default:
        return std::nullopt;
    }
  }

  // Rewrite the leftmost splice in a code term, or nullopt if none remains.
  std::optional<TermPtr> step_code(const TermPtr& t) {
    switch (t->kind) {
      case TK::Splice: {
        if (t->a->kind == TK::Quote && meta_value(t->a)) return t->a->a;
        if (auto m = step_meta(t->a)) return rewrap(t, *m, nullptr);
        return std::nullopt;
      }
      case TK::CodeLam: {
        if (auto a = step_code(t->a)) return rewrap(t, *a, nullptr);
        return std::nullopt;
      }
      case TK::App:
      case TK::Binop: {
        if (auto a = step_code(t->a)) return rewrap(t, *a, t->b);
        if (auto b = step_code(t->b)) return rewrap(t, t->a, *b);
        return std::nullopt;
      }
      default:
        return std::nullopt;
    }
  }

  static TermPtr rewrap(const TermPtr& t, TermPtr a, TermPtr b) {
    auto n = std::make_shared<Term>(*t);
    n->a = std::move(a);
    if (b) n->b = std::move(b);
    return n;
  }

  bool check_;
  std::vector<TermPtr> heap_;
  std::vector<TypePtr> heap_types_;
};

}  // namespace

StaticResult static_eval(const TermPtr& t, long step_limit, bool check_steps) {
  StaticMachine m(check_steps);
  return m.run(t, step_limit);
}

}  // namespace gm
