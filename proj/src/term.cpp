#include "gm/term.hpp"

#include "gm/hyper.hpp"

namespace gm {

namespace {
std::shared_ptr<Term> mk(TK k) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  return t;
}
}  // namespace

TermPtr tm_int(long v) {
  auto t = mk(TK::ConstInt);
  t->ival = v;
  return t;
}
TermPtr tm_bool(bool v) {
  auto t = mk(TK::ConstBool);
  t->bval = v;
  return t;
}
TermPtr tm_unit() { return mk(TK::ConstUnit); }
TermPtr tm_var(std::string name) {
  auto t = mk(TK::Var);
  t->var = std::move(name);
  return t;
}
TermPtr tm_lam(std::string x, TypePtr ann, TermPtr body) {
  auto t = mk(TK::Lam);
  t->var = std::move(x);
  t->ann = std::move(ann);
  t->a = std::move(body);
  return t;
}
TermPtr tm_app(TermPtr f, TermPtr arg, int label) {
  auto t = mk(TK::App);
  t->a = std::move(f);
  t->b = std::move(arg);
  t->label = label;
  return t;
}
TermPtr tm_binop(char op, TermPtr l, TermPtr r, int label) {
  auto t = mk(TK::Binop);
  t->op = op;
  t->a = std::move(l);
  t->b = std::move(r);
  t->label = label;
  return t;
}
TermPtr tm_ref(TermPtr m) {
  auto t = mk(TK::RefE);
  t->a = std::move(m);
  return t;
}
TermPtr tm_deref(TermPtr m, int label) {
  auto t = mk(TK::Deref);
  t->a = std::move(m);
  t->label = label;
  return t;
}
TermPtr tm_assign(TermPtr l, TermPtr r, int label) {
  auto t = mk(TK::Assign);
  t->a = std::move(l);
  t->b = std::move(r);
  t->label = label;
  return t;
}
TermPtr tm_seq(TermPtr l, TermPtr r) {
  auto t = mk(TK::Seq);
  t->a = std::move(l);
  t->b = std::move(r);
  return t;
}
TermPtr tm_quote(Classifier e, TermPtr body, bool finished) {
  auto t = mk(TK::Quote);
  t->ec = std::move(e);
  t->a = std::move(body);
  t->flag = finished;
  return t;
}
TermPtr tm_splice(TermPtr m, int label) {
  auto t = mk(TK::Splice);
  t->a = std::move(m);
  t->label = label;
  return t;
}
TermPtr tm_cabs(std::string a, TermPtr body) {
  auto t = mk(TK::CAbs);
  t->var = std::move(a);
  t->a = std::move(body);
  return t;
}
TermPtr tm_capp(TermPtr m, Classifier e, int label) {
  auto t = mk(TK::CApp);
  t->a = std::move(m);
  t->ec = std::move(e);
  t->label = label;
  return t;
}
TermPtr tm_cintro(Classifier lo, Classifier hi, TermPtr body) {
  auto t = mk(TK::CIntro);
  t->ec = std::move(lo);
  t->ec2 = std::move(hi);
  t->a = std::move(body);
  return t;
}
TermPtr tm_celim(TermPtr m, int label) {
  auto t = mk(TK::CElim);
  t->a = std::move(m);
  t->label = label;
  return t;
}
TermPtr tm_celim_star(TermPtr m, int label) {
  auto t = mk(TK::CElimStar);
  t->a = std::move(m);
  t->label = label;
  return t;
}
TermPtr tm_cast(TermPtr m, MetaCoPtr c, TypePtr src, TypePtr dst) {
  auto t = mk(TK::Cast);
  t->a = std::move(m);
  t->coe = std::move(c);
  t->csrc = std::move(src);
  t->cdst = std::move(dst);
  return t;
}
TermPtr tm_cast_h(TermPtr m, MetaHyperPtr c, TypePtr src, TypePtr dst) {
  auto t = mk(TK::Cast);
  t->a = std::move(m);
  t->hco = std::move(c);
  t->csrc = std::move(src);
  t->cdst = std::move(dst);
  return t;
}
TermPtr tm_blame(int label) {
  auto t = mk(TK::Blame);
  t->label = label;
  return t;
}
TermPtr tm_addr(long a) {
  auto t = mk(TK::Addr);
  t->ival = a;
  return t;
}
TermPtr tm_codelam(std::string x, CodeTypePtr ann, std::string a,
                   TermPtr body) {
  auto t = mk(TK::CodeLam);
  t->var = std::move(x);
  t->cann = std::move(ann);
  t->var2 = std::move(a);
  t->a = std::move(body);
  return t;
}
TermPtr tm_codelam_bar(std::string x, CodeTypePtr ann, Classifier beta,
                       TermPtr body) {
  auto t = mk(TK::CodeLam);
  t->var = std::move(x);
  t->cann = std::move(ann);
  t->ec = std::move(beta);
  t->flag = true;
  t->a = std::move(body);
  return t;
}

namespace {

TermPtr with_children(const TermPtr& t, TermPtr a, TermPtr b) {
  if (a == t->a && b == t->b) return t;
  auto n = std::make_shared<Term>(*t);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

// level: false = meta, true = code
TermPtr subst_rec(const TermPtr& t, const std::string& x, const TermPtr& v,
                  bool code) {
  if (!t) return t;
  switch (t->kind) {
    case TK::Var:
      if (!code && t->var == x) return v;
      return t;
    case TK::Lam:
      if (!code && t->var == x) return t;  // shadowed
      return with_children(t, subst_rec(t->a, x, v, code), nullptr);
    case TK::Quote:
      return with_children(t, subst_rec(t->a, x, v, true), nullptr);
    case TK::Splice:
      return with_children(t, subst_rec(t->a, x, v, false), nullptr);
    case TK::CodeLam:
      return with_children(t, subst_rec(t->a, x, v, true), nullptr);
    default:
      return with_children(t, subst_rec(t->a, x, v, code),
                           subst_rec(t->b, x, v, code));
  }
}

}  // namespace

TermPtr subst_term(const TermPtr& t, const std::string& x, const TermPtr& v) {
  return subst_rec(t, x, v, false);
}

TermPtr subst_classifier_term(const TermPtr& t, const std::string& var,
                              const Classifier& repl) {
  if (!t) return t;
  auto n = std::make_shared<Term>(*t);
  if (t->kind == TK::CAbs && t->var == var) return t;              // shadowed
  if (t->kind == TK::CodeLam && !t->flag && t->var2 == var) return t;
  n->a = subst_classifier_term(t->a, var, repl);
  n->b = subst_classifier_term(t->b, var, repl);
  if (t->ann) n->ann = subst_classifier_type(t->ann, var, repl);
  if (t->csrc) n->csrc = subst_classifier_type(t->csrc, var, repl);
  if (t->cdst) n->cdst = subst_classifier_type(t->cdst, var, repl);
  if (t->coe) n->coe = subst_classifier_meta_co(t->coe, var, repl);
  if (t->hco) n->hco = subst_classifier_hyper(t->hco, var, repl);
  n->ec = subst_classifier_ec(t->ec, var, repl);
  n->ec2 = subst_classifier_ec(t->ec2, var, repl);
  return n;
}

namespace {

bool atom_like(const TermPtr& t) {
  switch (t->kind) {
    case TK::ConstInt:
    case TK::ConstBool:
    case TK::ConstUnit:
    case TK::Var:
    case TK::Addr:
    case TK::Quote: return true;
    default: return false;
  }
}

std::string wrap(const TermPtr& t) {
  std::string s = term_str(t);
  return atom_like(t) ? s : "(" + s + ")";
}

}  // namespace

std::string term_str(const TermPtr& t) {
  if (!t) return "<null>";
  switch (t->kind) {
    case TK::ConstInt: return std::to_string(t->ival);
    case TK::ConstBool: return t->bval ? "true" : "false";
    case TK::ConstUnit: return "()";
    case TK::Var: return t->var;
    case TK::Lam:
      return "fun (" + t->var + " : " + type_str(t->ann) + ") " +
             term_str(t->a);
    case TK::App: return wrap(t->a) + " " + wrap(t->b);
    case TK::Binop:
      return wrap(t->a) + " " + std::string(1, t->op) + " " + wrap(t->b);
    case TK::RefE: return "ref " + wrap(t->a);
    case TK::Deref: return "!" + wrap(t->a);
    case TK::Assign: return wrap(t->a) + " := " + wrap(t->b);
    case TK::Seq: return wrap(t->a) + " ; " + wrap(t->b);
    case TK::Quote: {
      std::string q = t->flag ? "'" : "`";
      return q + t->ec.str() + "{ " + term_str(t->a) + " }";
    }
    case TK::Splice: return "~(" + term_str(t->a) + ")";
    case TK::CAbs: return "cfun " + t->var + " . " + term_str(t->a);
    case TK::CApp: return wrap(t->a) + " [" + t->ec.str() + "]";
    case TK::CIntro:
      return "[" + t->ec.str() + " <: " + t->ec2.str() + "] => " +
             term_str(t->a);
    case TK::CElim: return wrap(t->a) + " !";
    case TK::CElimStar: return wrap(t->a) + " !*";
    case TK::Cast: {
      std::string c = t->coe ? meta_co_str(t->coe) : meta_hyper_str(t->hco);
      return wrap(t->a) + "<" + c + ">";
    }
    case TK::Blame: return "blame L" + std::to_string(t->label);
    case TK::Addr: return "addr#" + std::to_string(t->ival);
    case TK::CodeLam: {
      std::string scope = t->flag ? t->ec.str() : t->var2;
      std::string head = t->flag ? "clam*" : "clam";
      return head + " (" + t->var + " : " + code_type_str(t->cann) + ") @ " +
             scope + " . " + term_str(t->a);
    }
  }
  return "?";
}

std::string value_str(const TermPtr& t) {
  if (t->kind == TK::Cast) return value_str(t->a);
  if (t->kind == TK::Quote)
    return "code{ " + term_str(t->a) + " }@" + t->ec.str();
  return term_str(t);
}

}  // namespace gm
