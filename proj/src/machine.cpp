#include "gm/machine.hpp"

#include <algorithm>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <unordered_map>

#include "gm/coercion.hpp"

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

long chain_go(const TermPtr& t, long& best,
              std::unordered_map<const Term*, long>& memo) {
  if (!t) return 0;
  auto it = memo.find(t.get());
  if (it != memo.end()) return it->second;
  long a = chain_go(t->a, best, memo);
  chain_go(t->b, best, memo);
  long me = t->kind == TK::Cast ? a + 1 : 0;
  best = std::max(best, me);
  memo[t.get()] = me;
  return me;
}

class Machine {
 public:
  explicit Machine(const MachineOpts& opts) : opts_(opts) {}

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
    if (t->kind != TK::Cast || !is_uncoerced(t->a)) return false;
    MetaCoPtr d = reduce_meta(theta_, t->coe);
    return meta_co_equal(d, t->coe) &&
           d->kind != MetaCoercion::Kind::Id &&
           d->kind != MetaCoercion::Kind::Fail;
  }

  // Step the child at position a (or b), propagating blame out of the frame.
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

std::optional<TermPtr> Machine::step(const TermPtr& t) {
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
      stuck(t);
    case TK::Splice:
    case TK::CodeLam:
      stuck(t);  // code-level forms never appear at the meta level
    case TK::Cast: {
      const TermPtr& m = t->a;
      if (m->kind == TK::Blame) return tm_blame(m->label);
      if (is_uncoerced(m)) {
        MetaCoPtr d = reduce_meta(theta_, t->coe);
        if (!meta_co_equal(d, t->coe))
          return tm_cast(m, d, t->csrc, t->cdst);
        if (d->kind == MetaCoercion::Kind::Id) return m;
        if (d->kind == MetaCoercion::Kind::Fail) return tm_blame(d->label);
        return std::nullopt;  // inert coercion on a value
      }
      if (m->kind == TK::Cast && is_value(m))
        return tm_cast(m->a, mc_seq(m->coe, t->coe), m->csrc, t->cdst);
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
      if (f->kind == TK::Cast &&
          f->coe->kind == MetaCoercion::Kind::Arrow) {
        TermPtr arg = tm_cast(t->b, f->coe->a, nullptr, nullptr);
        return tm_cast(tm_app(f->a, arg, t->label), f->coe->b, nullptr,
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
          m->coe->kind == MetaCoercion::Kind::Ref)
        return tm_cast(tm_deref(m->a, t->label), m->coe->b, nullptr, nullptr);
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
      if (m->kind == TK::Cast && m->coe->kind == MetaCoercion::Kind::Ref)
        return tm_assign(m->a, tm_cast(t->b, m->coe->a, nullptr, nullptr),
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
          m->coe->kind == MetaCoercion::Kind::Forall)
        return tm_cast(tm_capp(m->a, t->ec, t->label),
                       subst_classifier_meta_co(m->coe->a, m->coe->var, t->ec),
                       nullptr, nullptr);
      stuck(t);
    }
    case TK::CElim: {
      if (auto s = cong(t)) return s;
      const TermPtr& m = t->a;
      if (m->kind == TK::CIntro) return m->a;
      if (m->kind == TK::Cast && is_value(m) &&
          m->coe->kind == MetaCoercion::Kind::Constr)
        return tm_cast(tm_celim(m->a, t->label), m->coe->a, nullptr, nullptr);
      stuck(t);
    }
    case TK::CElimStar: {
      if (auto s = cong(t)) return s;
      const TermPtr& m = t->a;
      if (m->kind != TK::Cast || !is_value(m)) stuck(t);
      std::vector<MetaCoPtr> atoms = meta_atoms(m->coe);
      if (!atoms.empty() &&
          atoms.back()->kind == MetaCoercion::Kind::Inject &&
          atoms.back()->g.kind == MetaGround::Kind::Constr &&
          theta_.subtype(atoms.back()->g.c1, atoms.back()->g.c2)) {
        atoms.pop_back();
        TermPtr u = atoms.empty()
                        ? m->a
                        : tm_cast(m->a, mc_seq(std::move(atoms)), nullptr,
                                  nullptr);
        return tm_celim(u, t->label);
      }
      return tm_blame(t->label);
    }
  }
  stuck(t);
}

Machine::CodeStep Machine::step_code(const TermPtr& t, const Classifier& enc) {
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
          m->coe->kind == MetaCoercion::Kind::Quote)
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

MachineResult Machine::run(const TermPtr& t) {
  MachineResult res;
  TermPtr cur = t;
  {
    std::unordered_map<const Term*, long> memo;
    chain_go(cur, res.max_adjacent_casts, memo);
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
      chain_go(cur, res.max_adjacent_casts, memo);
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

MachineResult cc_eval(const TermPtr& t, const MachineOpts& opts) {
  Machine m(opts);
  return m.run(t);
}

long max_cast_chain(const TermPtr& t) {
  long best = 0;
  std::unordered_map<const Term*, long> memo;
  chain_go(t, best, memo);
  return best;
}

}  // namespace gm
