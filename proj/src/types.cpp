#include "gm/types.hpp"

namespace gm {

std::string Classifier::str() const {
  switch (kind) {
    case Kind::Eps: return "eps";
    case Kind::Named: return name;
    case Kind::Gen: return "a#" + std::to_string(id);
  }
  return "?";
}

std::string GClassifier::str() const { return star ? "?" : ec.str(); }

const char* base_name(BaseType b) {
  switch (b) {
    case BaseType::Int: return "Int";
    case BaseType::Bool: return "Bool";
    case BaseType::Unit: return "Unit";
  }
  return "?";
}

CodeTypePtr ct_base(BaseType b) {
  auto t = std::make_shared<CodeType>();
  t->kind = CodeType::Kind::Base;
  t->base = b;
  return t;
}
CodeTypePtr ct_int() { return ct_base(BaseType::Int); }
CodeTypePtr ct_bool() { return ct_base(BaseType::Bool); }
CodeTypePtr ct_unit() { return ct_base(BaseType::Unit); }
CodeTypePtr ct_arrow(CodeTypePtr d, CodeTypePtr c) {
  auto t = std::make_shared<CodeType>();
  t->kind = CodeType::Kind::Arrow;
  t->dom = std::move(d);
  t->cod = std::move(c);
  return t;
}
CodeTypePtr ct_star() {
  auto t = std::make_shared<CodeType>();
  t->kind = CodeType::Kind::Star;
  return t;
}

bool code_type_equal(const CodeTypePtr& a, const CodeTypePtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case CodeType::Kind::Base: return a->base == b->base;
    case CodeType::Kind::Arrow:
      return code_type_equal(a->dom, b->dom) && code_type_equal(a->cod, b->cod);
    case CodeType::Kind::Star: return true;
  }
  return false;
}

bool code_type_static(const CodeTypePtr& t) {
  switch (t->kind) {
    case CodeType::Kind::Base: return true;
    case CodeType::Kind::Arrow:
      return code_type_static(t->dom) && code_type_static(t->cod);
    case CodeType::Kind::Star: return false;
  }
  return false;
}

std::string code_type_str(const CodeTypePtr& t) {
  switch (t->kind) {
    case CodeType::Kind::Base: return base_name(t->base);
    case CodeType::Kind::Arrow: {
      std::string d = code_type_str(t->dom);
      if (t->dom->kind == CodeType::Kind::Arrow) d = "(" + d + ")";
      return d + " -> " + code_type_str(t->cod);
    }
    case CodeType::Kind::Star: return "?";
  }
  return "?";
}

TypePtr t_base(BaseType b) {
  auto t = std::make_shared<MetaType>();
  t->kind = MetaType::Kind::Base;
  t->base = b;
  return t;
}
TypePtr t_int() { return t_base(BaseType::Int); }
TypePtr t_bool() { return t_base(BaseType::Bool); }
TypePtr t_unit() { return t_base(BaseType::Unit); }
TypePtr t_arrow(TypePtr d, TypePtr c) {
  auto t = std::make_shared<MetaType>();
  t->kind = MetaType::Kind::Arrow;
  t->lhs = std::move(d);
  t->rhs = std::move(c);
  return t;
}
TypePtr t_ref(TypePtr e) {
  auto t = std::make_shared<MetaType>();
  t->kind = MetaType::Kind::Ref;
  t->lhs = std::move(e);
  return t;
}
TypePtr t_quote(CodeTypePtr c, GClassifier e) {
  auto t = std::make_shared<MetaType>();
  t->kind = MetaType::Kind::Quote;
  t->code = std::move(c);
  t->gec = std::move(e);
  return t;
}
TypePtr t_forall(std::string var, TypePtr body) {
  auto t = std::make_shared<MetaType>();
  t->kind = MetaType::Kind::Forall;
  t->var = std::move(var);
  t->lhs = std::move(body);
  return t;
}
TypePtr t_constr(Classifier c1, Classifier c2, TypePtr body) {
  auto t = std::make_shared<MetaType>();
  t->kind = MetaType::Kind::Constr;
  t->c1 = std::move(c1);
  t->c2 = std::move(c2);
  t->lhs = std::move(body);
  return t;
}
TypePtr t_star() {
  auto t = std::make_shared<MetaType>();
  t->kind = MetaType::Kind::Star;
  return t;
}

namespace {

// Alpha-equivalence: map each side's Forall binders to shared levels.
bool type_equal_rec(const TypePtr& a, const TypePtr& b,
                    std::vector<std::string>& la, std::vector<std::string>& lb) {
  auto ec_equal = [&](const Classifier& x, const Classifier& y) {
    if (x.kind == Classifier::Kind::Named && y.kind == Classifier::Kind::Named) {
      for (size_t i = la.size(); i-- > 0;) {
        bool ba = la[i] == x.name;
        bool bb = lb[i] == y.name;
        if (ba || bb) return ba && bb;
      }
    }
    return x == y;
  };
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case MetaType::Kind::Base: return a->base == b->base;
    case MetaType::Kind::Star: return true;
    case MetaType::Kind::Arrow:
      return type_equal_rec(a->lhs, b->lhs, la, lb) &&
             type_equal_rec(a->rhs, b->rhs, la, lb);
    case MetaType::Kind::Ref: return type_equal_rec(a->lhs, b->lhs, la, lb);
    case MetaType::Kind::Quote: {
      if (!code_type_equal(a->code, b->code)) return false;
      if (a->gec.star != b->gec.star) return false;
      return a->gec.star || ec_equal(a->gec.ec, b->gec.ec);
    }
    case MetaType::Kind::Forall: {
      la.push_back(a->var);
      lb.push_back(b->var);
      bool r = type_equal_rec(a->lhs, b->lhs, la, lb);
      la.pop_back();
      lb.pop_back();
      return r;
    }
    case MetaType::Kind::Constr:
      return ec_equal(a->c1, b->c1) && ec_equal(a->c2, b->c2) &&
             type_equal_rec(a->lhs, b->lhs, la, lb);
  }
  return false;
}

}  // namespace

bool type_equal(const TypePtr& a, const TypePtr& b) {
  std::vector<std::string> la, lb;
  return type_equal_rec(a, b, la, lb);
}

bool type_static(const TypePtr& t) {
  switch (t->kind) {
    case MetaType::Kind::Base: return true;
    case MetaType::Kind::Star: return false;
    case MetaType::Kind::Arrow:
      return type_static(t->lhs) && type_static(t->rhs);
    case MetaType::Kind::Ref: return type_static(t->lhs);
    case MetaType::Kind::Quote:
      return !t->gec.star && code_type_static(t->code);
    case MetaType::Kind::Forall:
    case MetaType::Kind::Constr: return type_static(t->lhs);
  }
  return false;
}

std::string type_str(const TypePtr& t) {
  switch (t->kind) {
    case MetaType::Kind::Base: return base_name(t->base);
    case MetaType::Kind::Star: return "?";
    case MetaType::Kind::Arrow: {
      std::string d = type_str(t->lhs);
      if (t->lhs->kind == MetaType::Kind::Arrow ||
          t->lhs->kind == MetaType::Kind::Forall ||
          t->lhs->kind == MetaType::Kind::Constr)
        d = "(" + d + ")";
      return d + " -> " + type_str(t->rhs);
    }
    case MetaType::Kind::Ref: {
      std::string e = type_str(t->lhs);
      if (t->lhs->kind == MetaType::Kind::Arrow ||
          t->lhs->kind == MetaType::Kind::Forall ||
          t->lhs->kind == MetaType::Kind::Constr)
        e = "(" + e + ")";
      return "Ref " + e;
    }
    case MetaType::Kind::Quote:
      return "Code<" + code_type_str(t->code) + ">@" + t->gec.str();
    case MetaType::Kind::Forall:
      return "forall " + t->var + ". " + type_str(t->lhs);
    case MetaType::Kind::Constr:
      return "[" + t->c1.str() + " <: " + t->c2.str() + "] => " +
             type_str(t->lhs);
  }
  return "?";
}

Classifier subst_classifier_ec(const Classifier& e, const std::string& var,
                               const Classifier& repl) {
  if (e.kind == Classifier::Kind::Named && e.name == var) return repl;
  return e;
}

GClassifier subst_classifier_gec(const GClassifier& e, const std::string& var,
                                 const Classifier& repl) {
  if (e.star) return e;
  return GClassifier::known(subst_classifier_ec(e.ec, var, repl));
}

TypePtr subst_classifier_type(const TypePtr& t, const std::string& var,
                              const Classifier& repl) {
  switch (t->kind) {
    case MetaType::Kind::Base:
    case MetaType::Kind::Star: return t;
    case MetaType::Kind::Arrow:
      return t_arrow(subst_classifier_type(t->lhs, var, repl),
                     subst_classifier_type(t->rhs, var, repl));
    case MetaType::Kind::Ref:
      return t_ref(subst_classifier_type(t->lhs, var, repl));
    case MetaType::Kind::Quote:
      return t_quote(t->code, subst_classifier_gec(t->gec, var, repl));
    case MetaType::Kind::Forall: {
      if (t->var == var) return t;  // shadowed
      // Surface binders are distinct and replacements are never Named source
      // vars during machine runs, so capture cannot occur; keep the binder.
      return t_forall(t->var, subst_classifier_type(t->lhs, var, repl));
    }
    case MetaType::Kind::Constr:
      return t_constr(subst_classifier_ec(t->c1, var, repl),
                      subst_classifier_ec(t->c2, var, repl),
                      subst_classifier_type(t->lhs, var, repl));
  }
  return t;
}

}  // namespace gm
