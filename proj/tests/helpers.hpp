#ifndef GM_TESTS_HELPERS_HPP
#define GM_TESTS_HELPERS_HPP

#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gm/term.hpp"

namespace gmtest {

inline std::string read_program(const std::string& name) {
  std::ifstream in(std::string(PROGRAMS_DIR) + "/" + name);
  if (!in) throw std::runtime_error("cannot open program " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::string> corpus_names() {
  return {"quote_add.gm",       "quote_lambda.gm", "extrusion_gradual.gm",
          "splice_star_param.gm", "wrap_body.gm",  "subtyping_fun.gm",
          "app_star.gm",        "deref_code.gm",   "adversarial_chain.gm"};
}

// Structural value comparison up to alpha-renaming of binders and of
// classifiers (lexical or promoted) and ignoring inert cast wrappers.
inline bool value_alpha_eq_rec(
    const gm::TermPtr& a, const gm::TermPtr& b,
    std::map<std::string, std::string>& vars,
    std::map<std::string, std::string>& cls) {
  using namespace gm;
  TermPtr x = a, y = b;
  while (x && x->kind == TK::Cast) x = x->a;
  while (y && y->kind == TK::Cast) y = y->a;
  if (!x || !y) return x == y;
  if (x->kind != y->kind) return false;
  auto cls_eq = [&](const Classifier& p, const Classifier& q) {
    std::string ps = p.str(), qs = q.str();
    auto it = cls.find(ps);
    if (it != cls.end()) return it->second == qs;
    return ps == qs;
  };
  auto sub = [&](const TermPtr& p, const TermPtr& q) {
    return value_alpha_eq_rec(p, q, vars, cls);
  };
  switch (x->kind) {
    case TK::ConstInt: return x->ival == y->ival;
    case TK::ConstBool: return x->bval == y->bval;
    case TK::ConstUnit: return true;
    case TK::Var: {
      auto it = vars.find(x->var);
      if (it != vars.end()) return it->second == y->var;
      return x->var == y->var;
    }
    case TK::Binop:
      return x->op == y->op && sub(x->a, y->a) && sub(x->b, y->b);
    case TK::App: return sub(x->a, y->a) && sub(x->b, y->b);
    case TK::Lam: {
      if (!type_equal(x->ann, y->ann)) return false;
      auto saved = vars;
      vars[x->var] = y->var;
      bool r = sub(x->a, y->a);
      vars = saved;
      return r;
    }
    case TK::Quote:
      return cls_eq(x->ec, y->ec) && sub(x->a, y->a);
    case TK::CodeLam: {
      if (!code_type_equal(x->cann, y->cann)) return false;
      auto sv = vars;
      auto sc = cls;
      vars[x->var] = y->var;
      cls[x->flag ? x->ec.str() : x->var2] = y->flag ? y->ec.str() : y->var2;
      bool r = sub(x->a, y->a);
      vars = sv;
      cls = sc;
      return r;
    }
    default:
      return gm::term_str(x) == gm::term_str(y);
  }
}

inline bool value_alpha_eq(const gm::TermPtr& a, const gm::TermPtr& b) {
  std::map<std::string, std::string> vars, cls;
  return value_alpha_eq_rec(a, b, vars, cls);
}

// The adversarial chain of functions calling each other through the unknown
// type; each call returns through a pending cast in tail position.
inline std::string chain_program(int n) {
  std::string s = "let f0 : Int -> Int = fun (x : Int) x in\n";
  for (int k = 1; k <= n; ++k) {
    s += "let g" + std::to_string(k) + " : ? = f" + std::to_string(k - 1) +
         " in\n";
    s += "let f" + std::to_string(k) + " : Int -> Int = fun (x : Int) g" +
         std::to_string(k) + " x in\n";
  }
  s += "f" + std::to_string(n) + " 0\n";
  return s;
}

}  // namespace gmtest

#endif
