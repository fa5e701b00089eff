#ifndef GM_TERM_HPP
#define GM_TERM_HPP

#include <memory>
#include <string>

#include "gm/coercion.hpp"
#include "gm/types.hpp"

namespace gm {

struct MetaHyper;  // defined in hyper.hpp
using MetaHyperPtr = std::shared_ptr<const MetaHyper>;

// One node type covers the surface language and the cast calculus; Cast,
// Blame, Addr, CElimStar and finished quotes only appear after elaboration
// or at runtime.  Whether a Var/App/Const is a meta or code term is
// determined by its position (inside a quote and outside any splice = code).
enum class TK {
  ConstInt,
  ConstBool,
  ConstUnit,
  Var,
  Lam,       // fun (x:A) M
  App,
  Binop,     // +, -, *
  RefE,
  Deref,
  Assign,
  Seq,       // M ; N
  Quote,     // `e{ M° }; flag marks a finished quote 'V°'e
  Splice,    // ~( M )
  CAbs,      // cfun a . M
  CApp,      // M [e]
  CIntro,    // [e1<:e2] => M
  CElim,     // M !
  CElimStar, // runtime constraint elimination on a star-typed subject
  Cast,
  Blame,
  Addr,
  CodeLam,   // clam (x:C) @ a . M°; flag marks the promoted (lambda-bar) form
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TK kind = TK::ConstUnit;
  long ival = 0;          // ConstInt value, Addr address
  bool bval = false;      // ConstBool
  char op = '+';          // Binop
  std::string var;        // Var name; Lam/CodeLam term binder; CAbs binder
  std::string var2;       // CodeLam classifier binder
  TypePtr ann;            // Lam annotation
  CodeTypePtr cann;       // CodeLam annotation
  Classifier ec;          // Quote classifier; CApp argument; CIntro lo;
                          // CodeLam runtime classifier when promoted
  Classifier ec2;         // CIntro hi
  bool flag = false;
  TermPtr a, b;
  int label = -1;         // blame label of this elimination/cast site
  MetaCoPtr coe;          // Cast coercion (sequence form)
  MetaHyperPtr hco;       // Cast coercion (hypercoercion form)
  TypePtr csrc, cdst;     // Cast endpoints
  Span span;
};

TermPtr tm_int(long v);
TermPtr tm_bool(bool v);
TermPtr tm_unit();
TermPtr tm_var(std::string name);
TermPtr tm_lam(std::string x, TypePtr ann, TermPtr body);
TermPtr tm_app(TermPtr f, TermPtr arg, int label);
TermPtr tm_binop(char op, TermPtr l, TermPtr r, int label);
TermPtr tm_ref(TermPtr m);
TermPtr tm_deref(TermPtr m, int label);
TermPtr tm_assign(TermPtr l, TermPtr r, int label);
TermPtr tm_seq(TermPtr l, TermPtr r);
TermPtr tm_quote(Classifier e, TermPtr body, bool finished = false);
TermPtr tm_splice(TermPtr m, int label);
TermPtr tm_cabs(std::string a, TermPtr body);
TermPtr tm_capp(TermPtr m, Classifier e, int label);
TermPtr tm_cintro(Classifier lo, Classifier hi, TermPtr body);
TermPtr tm_celim(TermPtr m, int label);
TermPtr tm_celim_star(TermPtr m, int label);
TermPtr tm_cast(TermPtr m, MetaCoPtr c, TypePtr src, TypePtr dst);
TermPtr tm_cast_h(TermPtr m, MetaHyperPtr c, TypePtr src, TypePtr dst);
TermPtr tm_blame(int label);
TermPtr tm_addr(long a);
TermPtr tm_codelam(std::string x, CodeTypePtr ann, std::string a,
                   TermPtr body);
TermPtr tm_codelam_bar(std::string x, CodeTypePtr ann, Classifier beta,
                       TermPtr body);

// Substitute a meta variable by a term.  Occurrences at the code level
// (inside quotes, outside splices) are untouched.  Stops at shadowing
// binders; the machine only substitutes values that are closed at the meta
// level, so no renaming is needed.
TermPtr subst_term(const TermPtr& t, const std::string& x, const TermPtr& v);

// Substitute a classifier variable throughout a term, including type
// annotations and coercions.  Stops at shadowing CAbs / CodeLam binders.
TermPtr subst_classifier_term(const TermPtr& t, const std::string& var,
                              const Classifier& repl);

// Render a term in the concrete syntax (with extra forms for runtime-only
// nodes: casts, blame, addresses, finished quotes, lambda-bars).
std::string term_str(const TermPtr& t);

// Render a value for program output, dropping inert cast wrappers.
std::string value_str(const TermPtr& t);

}  // namespace gm

#endif
