#include "gm/se_machine.hpp"

#include <algorithm>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <unordered_map>

#include "gm/hyper.hpp"

namespace gm {

namespace {

bool is_uncoerced(const TermPtr& t) {
  switch (t->kind) {
    case TK::ConstInt:
    case TK::ConstBool:
    case TK::ConstUnit:
    case TK::Lam:
    case TK::Addr:
    case TK::CAbs:
    case TK::CIntro:
      return true;
    case TK::Quote:
      return t->flag;
    default:
      return false;
  }
}

bool hyper_all_id(const MetaHyperPtr& c) {
  return c->head == MetaHyper::Head::Id && c->mid == MetaHyper::Mid::Id &&
         c->tail == MetaHyper::Tail::Id;
}
bool hyper_fail(const MetaHyperPtr& c) {
  return c->head == MetaHyper::Head::Id && c->mid == MetaHyper::Mid::Fail;
}
bool hyper_inert(const MetaHyperPtr& c) {
  return c->head == MetaHyper::Head::Id &&
         c->mid != MetaHyper::Mid::Fail && !hyper_all_id(c);
}

// One traversal collecting both space metrics: the longest stack of
// directly nested casts and the tallest coercion in the state.
long scan_go(const TermPtr& t, long& chain_best, long& height_best,
             std::unordered_map<const Term*, long>& memo) {
  if (!t) return 0;
  auto it = memo.find(t.get());
  if (it != memo.end()) return it->second;
  long a = scan_go(t->a, chain_best, height_best, memo);
  scan_go(t->b, chain_best, height_best, memo);
  long me = 0;
  if (t->kind == TK::Cast) {
    me = a + 1;
    if (t->hco)
      height_best = std::max(height_best, (long)meta_hyper_height(t->hco));
  }
  chain_best = std::max(chain_best, me);
  memo[t.get()] = me;
  return me;
}

class SEMachine {
 public:
  explicit SEMachine(const MachineOpts& opts) : opts_(opts) {}

  MachineResult run(const TermPtr& t);

 private:
  struct CodeStep {
    enum class K { Stepped, Blamed, Done };
    K k = K::Done;
    TermPtr t;
    int label = -1;
  };

  std::optional<TermPtr> step(const TermPtr& t);
  CodeStep step_code(const TermPtr& t, const Classifier& enc);

  bool is_value(const TermPtr& t) {
    if (is_uncoerced(t)) return true;
    return t->kind == TK::Cast && t->hco && is_uncoerced(t->a) &&
           hyper_inert(t->hco);
  }

  std::optional<TermPtr> cong(const TermPtr& t, bool second = false) {
    const TermPtr& m = second ? t->b : t->a;
    if (m->kind == TK::Blame) return tm_blame(m->label);
    if (auto s = step(m)) {
      auto n = std::make_shared<Term>(*t);
      (second ? n->b : n->a) = *s;
      return TermPtr(n);
    }
    return std::nullopt;
  }

  RuntimeCtx ctx() const { return {theta_, labels_, heap_types_}; }

  [[noreturn]] void stuck(const TermPtr& t) {
    throw std::logic_error("machine is stuck on: " + term_str(t));
  }

  MachineOpts opts_;
  SubtypeEnv theta_;
  std::map<long, RuntimeCtx::Label> labels_;
  std::vector<TermPtr> heap_;
  std::vector<TypePtr> heap_types_;
  long gen_ = 0;
};

std::optional<TermPtr> SEMachine::step(const TermPtr& t) {
  switch (t->kind) {
    case TK::ConstInt:
    case TK::ConstBool:
    case TK::ConstUnit:
    case TK::Lam:
    case TK::Addr:
    case TK::CAbs:
    case TK::CIntro:
    case TK::Blame:
      return std::nullopt;
    case TK::Var:
    case TK::Splice:
    case TK::CodeLam:
      stuck(t);
    case TK::Cast: {
      const TermPtr& m = t->a;
      if (m->kind == TK::Blame) return tm_blame(m->label);
      // Adjacent casts compose before the subject runs, whether or not the
      // subject is a value.  This is the space-efficiency rule.
      if (m->kind == TK::Cast)
        return tm_cast_h(m->a, meta_compose(theta_, m->hco, t->hco), m->csrc,
                         t->cdst);
      if (is_uncoerced(m)) {
        if (hyper_all_id(t->hco)) return m;
        if (hyper_fail(t->hco)) return tm_blame(t->hco->mlabel);
        return std::nullopt;  // inert coercion on a value
      }
      if (auto s = cong(t)) return s;
      stuck(t);
    }
    case TK::App: {
      if (auto s = cong(t)) return s;
      if (!is_value(t->a)) stuck(t);
      if (auto s = cong(t, true)) return s;
      if (!is_value(t->b)) stuck(t);
      const TermPtr& f = t->a;
      if (f->kind == TK::Lam) return subst_term(f->a, f->var, t->b);
      if (f->kind == TK::Cast && f->hco->mid == MetaHyper::Mid::Arrow) {
        TermPtr arg = tm_cast_h(t->b, f->hco->a, nullptr, nullptr);
        return tm_cast_h(tm_app(f->a, arg, t->label), f->hco->b, nullptr,
                         nullptr);
      }
      stuck(t);
    }
    case TK::Binop: {
      if (auto s = cong(t)) return s;
      if (!is_value(t->a)) stuck(t);
      if (auto s = cong(t, true)) return s;
      if (!is_value(t->b)) stuck(t);
      if (t->a->kind != TK::ConstInt || t->b->kind != TK::ConstInt) stuck(t);
      long l = t->a->ival, r = t->b->ival;
      switch (t->op) {
        case '+': return tm_int(l + r);
        case '-': return tm_int(l - r);
        case '*': return tm_int(l * r);
      }
      stuck(t);
    }
    case TK::RefE: {
      if (auto s = cong(t)) return s;
      if (!is_value(t->a)) stuck(t);
      long addr = (long)heap_.size();
      heap_.push_back(t->a);
      TypePtr ty;
      try {
        ty = cc_type(t->a, ctx());
      } catch (const TypeError&) {
      }
      heap_types_.push_back(ty);
      return tm_addr(addr);
    }
    case TK::Deref: {
      if (auto s = cong(t)) return s;
      const TermPtr& m = t->a;
      if (m->kind == TK::Addr) return heap_.at(m->ival);
      if (m->kind == TK::Cast && is_value(m) &&
          m->hco->mid == MetaHyper::Mid::Ref)
        return tm_cast_h(tm_deref(m->a, t->label), m->hco->b, nullptr,
                         nullptr);
      stuck(t);
    }
    case TK::Assign: {
      if (auto s = cong(t)) return s;
      if (!is_value(t->a)) stuck(t);
      if (auto s = cong(t, true)) return s;
      if (!is_value(t->b)) stuck(t);
      const TermPtr& m = t->a;
      if (m->kind == TK::Addr) {
        heap_.at(m->ival) = t->b;
        return tm_unit();
      }
      if (m->kind == TK::Cast && m->hco->mid == MetaHyper::Mid::Ref)
        return tm_assign(m->a,
                         tm_cast_h(t->b, m->hco->a, nullptr, nullptr),
                         t->label);
      stuck(t);
    }
    case TK::Seq: {
      if (auto s = cong(t)) return s;
      if (!is_value(t->a)) stuck(t);
      return t->b;
    }
    case TK::Quote: {
      if (t->flag) return std::nullopt;
      CodeStep r = step_code(t->a, t->ec);
      switch (r.k) {
        case CodeStep::K::Stepped: {
          auto n = std::make_shared<Term>(*t);
          n->a = r.t;
          return TermPtr(n);
        }
        case CodeStep::K::Blamed:
          return tm_blame(r.label);
        case CodeStep::K::Done: {
          auto n = std::make_shared<Term>(*t);
          n->flag = true;
          return TermPtr(n);
        }
      }
      stuck(t);
    }
    case TK::CApp: {
      if (auto s = cong(t)) return s;
      const TermPtr& m = t->a;
      if (m->kind == TK::CAbs)
        return subst_classifier_term(m->a, m->var, t->ec);
      if (m->kind == TK::Cast && is_value(m) &&
          m->hco->mid == MetaHyper::Mid::Forall)
        return tm_cast_h(tm_capp(m->a, t->ec, t->label),
                         subst_classifier_hyper(m->hco->a, m->hco->var,
                                                t->ec),
                         nullptr, nullptr);
      stuck(t);
    }
    case TK::CElim: {
      if (auto s = cong(t)) return s;
      const TermPtr& m = t->a;
      if (m->kind == TK::CIntro) return m->a;
      if (m->kind == TK::Cast && is_value(m) &&
          m->hco->mid == MetaHyper::Mid::Constr)
        return tm_cast_h(tm_celim(m->a, t->label), m->hco->a, nullptr,
                         nullptr);
      stuck(t);
    }
    case TK::CElimStar: {
      if (auto s = cong(t)) return s;
      const TermPtr& m = t->a;
      if (m->kind != TK::Cast || !is_value(m)) stuck(t);
      const MetaHyperPtr& c = m->hco;
      if (c->tail == MetaHyper::Tail::Inject &&
          c->tg.kind == MetaGround::Kind::Constr &&
          theta_.subtype(c->tg.c1, c->tg.c2)) {
        MetaHyper d = *c;
        d.tail = MetaHyper::Tail::Id;
        auto dp = std::make_shared<MetaHyper>(std::move(d));
        TermPtr u = hyper_all_id(dp)
                        ? m->a
                        : tm_cast_h(m->a, dp, nullptr, nullptr);
        return tm_celim(u, t->label);
      }
      return tm_blame(t->label);
    }
  }
  stuck(t);
}

SEMachine::CodeStep SEMachine::step_code(const TermPtr& t,
                                         const Classifier& enc) {
  switch (t->kind) {
    case TK::ConstInt:
    case TK::ConstBool:
    case TK::ConstUnit:
    case TK::Var:
      return {CodeStep::K::Done, t};
    case TK::Splice: {
      const TermPtr& m = t->a;
      if (m->kind == TK::Blame) return {CodeStep::K::Blamed, nullptr, m->label};
      if (auto s = step(m)) {
        auto n = std::make_shared<Term>(*t);
        n->a = *s;
        return {CodeStep::K::Stepped, TermPtr(n)};
      }
      if (m->kind == TK::Quote && m->flag)
        return {CodeStep::K::Stepped, m->a};
      if (m->kind == TK::Cast && m->a->kind == TK::Quote && m->a->flag &&
          m->hco->mid == MetaHyper::Mid::Quote)
        return {CodeStep::K::Stepped, m->a->a};
      stuck(t);
    }
    case TK::CodeLam: {
      if (!t->flag) {
        Classifier beta = Classifier::gen(++gen_);
        theta_.add(enc, beta);
        labels_[beta.id] = {t->var, t->cann};
        TermPtr body = subst_classifier_term(t->a, t->var2, beta);
        return {CodeStep::K::Stepped,
                tm_codelam_bar(t->var, t->cann, beta, body)};
      }
      CodeStep r = step_code(t->a, t->ec);
      if (r.k != CodeStep::K::Stepped) return r;
      auto n = std::make_shared<Term>(*t);
      n->a = r.t;
      return {CodeStep::K::Stepped, TermPtr(n)};
    }
    case TK::App:
    case TK::Binop: {
      CodeStep l = step_code(t->a, enc);
      if (l.k == CodeStep::K::Blamed) return l;
      if (l.k == CodeStep::K::Stepped) {
        auto n = std::make_shared<Term>(*t);
        n->a = l.t;
        return {CodeStep::K::Stepped, TermPtr(n)};
      }
      CodeStep r = step_code(t->b, enc);
      if (r.k == CodeStep::K::Blamed) return r;
      if (r.k == CodeStep::K::Stepped) {
        auto n = std::make_shared<Term>(*t);
        n->b = r.t;
        return {CodeStep::K::Stepped, TermPtr(n)};
      }
      return {CodeStep::K::Done, t};
    }
    default:
      stuck(t);
  }
}

MachineResult SEMachine::run(const TermPtr& t) {
  MachineResult res;
  TermPtr cur = t;
  {
    std::unordered_map<const Term*, long> memo;
    scan_go(cur, res.max_adjacent_casts, res.max_hyper_height, memo);
  }
  std::optional<TypePtr> prev;
  size_t theta_n = 0, labels_n = 0, heap_n = 0;
  if (opts_.check_steps) prev = cc_type(cur, ctx());
  while (true) {
    if (cur->kind == TK::Blame) {
      res.status = MachineResult::Status::Blame;
      res.blame_label = cur->label;
      break;
    }
    if (is_value(cur)) {
      res.status = MachineResult::Status::Value;
      res.value = cur;
      break;
    }
    if (res.steps >= opts_.step_limit) {
      res.status = MachineResult::Status::Limit;
      break;
    }
    std::optional<TermPtr> s = step(cur);
    if (!s) stuck(cur);
    cur = *s;
    ++res.steps;
    if (opts_.trace) std::cerr << term_str(cur) << "\n";
    {
      std::unordered_map<const Term*, long> memo;
      scan_go(cur, res.max_adjacent_casts, res.max_hyper_height, memo);
    }
    if (opts_.check_steps) {
      if (theta_.size() < theta_n || labels_.size() < labels_n ||
          heap_types_.size() < heap_n)
        throw std::logic_error("runtime context shrank during evaluation");
      theta_n = theta_.size();
      labels_n = labels_.size();
      heap_n = heap_types_.size();
      TypePtr ty = cc_type(cur, ctx());
      if (prev && *prev && ty && !type_equal(*prev, ty))
        throw std::logic_error("type changed during evaluation: " +
                               type_str(*prev) + " vs " + type_str(ty));
      if (!prev || *prev) prev = ty;
    }
  }
  res.final_ctx = ctx();
  return res;
}

}  // namespace

TermPtr to_hyper_casts(const TermPtr& t) {
  if (!t) return t;
  auto n = std::make_shared<Term>(*t);
  n->a = to_hyper_casts(t->a);
  n->b = to_hyper_casts(t->b);
  if (t->kind == TK::Cast && t->coe) {
    n->hco = meta_to_hyper(SubtypeEnv{}, t->coe);
    n->coe = nullptr;
  }
  return n;
}

MachineResult se_eval(const TermPtr& t, const MachineOpts& opts) {
  SEMachine m(opts);
  return m.run(to_hyper_casts(t));
}

}  // namespace gm
