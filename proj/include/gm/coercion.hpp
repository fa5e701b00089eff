#ifndef GM_COERCION_HPP
#define GM_COERCION_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gm/subtyping.hpp"
#include "gm/types.hpp"

namespace gm {

// ---------------------------------------------------------------------------
// Grounds

// Ground code types: iota | * -> *
struct CodeGround {
  bool arrow = false;
  BaseType base = BaseType::Int;

  static CodeGround of_base(BaseType b) { return {false, b}; }
  static CodeGround star_arrow() { return {true, BaseType::Int}; }
  bool operator==(const CodeGround& o) const {
    return arrow == o.arrow && (arrow || base == o.base);
  }
  bool operator!=(const CodeGround& o) const { return !(*this == o); }
  std::string str() const;
};

// Ground meta types: "*"* | forall a.* | e<:e => * | iota | *->* | Ref *
struct MetaGround {
  enum class Kind { Base, Arrow, Ref, Quote, Forall, Constr };
  Kind kind = Kind::Base;
  BaseType base = BaseType::Int;
  Classifier c1, c2;  // Constr

  bool operator==(const MetaGround& o) const {
    if (kind != o.kind) return false;
    if (kind == Kind::Base) return base == o.base;
    if (kind == Kind::Constr) return c1 == o.c1 && c2 == o.c2;
    return true;  // Forall grounds compare regardless of binder
  }
  bool operator!=(const MetaGround& o) const { return !(*this == o); }
  std::string str() const;
};

// ground(C) / ground(A): the ground type matching a shaped type's head.
std::optional<CodeGround> code_ground_of(const CodeTypePtr& t);
std::optional<MetaGround> meta_ground_of(const TypePtr& t);
CodeTypePtr code_ground_type(const CodeGround& g);
TypePtr meta_ground_type(const MetaGround& g);

// ---------------------------------------------------------------------------
// Sequence-form coercions

struct ECCoercion;
struct CodeCoercion;
struct MetaCoercion;
using ECPtr = std::shared_ptr<const ECCoercion>;
using CodeCoPtr = std::shared_ptr<const CodeCoercion>;
using MetaCoPtr = std::shared_ptr<const MetaCoercion>;

// EC coercions: e! | e?l | e1^e2 | id | c;d | bot(l)
struct ECCoercion {
  enum class Kind { Id, Inject, Project, Sub, Fail, Seq };
  Kind kind = Kind::Id;
  Classifier e1, e2;  // Inject/Project use e1; Sub uses e1, e2
  int label = -1;
  std::vector<ECPtr> seq;
};

ECPtr ec_id();
ECPtr ec_inject(Classifier e);
ECPtr ec_project(Classifier e, int label);
ECPtr ec_sub(Classifier lo, Classifier hi);
ECPtr ec_fail(int label);
ECPtr ec_seq(ECPtr a, ECPtr b);
ECPtr ec_seq(std::vector<ECPtr> atoms);

// Code coercions: G! | G?l | id | c;d | bot(l) | c -> d
struct CodeCoercion {
  enum class Kind { Id, Inject, Project, Fail, Arrow, Seq };
  Kind kind = Kind::Id;
  CodeGround g;
  int label = -1;
  CodeCoPtr a, b;  // Arrow
  std::vector<CodeCoPtr> seq;
};

CodeCoPtr cc_id();
CodeCoPtr cc_inject(CodeGround g);
CodeCoPtr cc_project(CodeGround g, int label);
CodeCoPtr cc_fail(int label);
CodeCoPtr cc_arrow(CodeCoPtr a, CodeCoPtr b);
CodeCoPtr cc_seq(CodeCoPtr a, CodeCoPtr b);
CodeCoPtr cc_seq(std::vector<CodeCoPtr> atoms);

// Meta coercions.
struct MetaCoercion {
  enum class Kind {
    Id, Inject, Project, Fail, Arrow, Ref, Quote, Forall, Constr, Seq
  };
  Kind kind = Kind::Id;
  MetaGround g;
  int label = -1;
  MetaCoPtr a, b;   // Arrow dom/cod; Ref write/read; Forall/Constr body in a
  CodeCoPtr code;   // Quote
  ECPtr ecc;        // Quote
  std::string var;  // Forall binder
  Classifier c1, c2;
  std::vector<MetaCoPtr> seq;
};

MetaCoPtr mc_id();
MetaCoPtr mc_inject(MetaGround g);
MetaCoPtr mc_project(MetaGround g, int label);
MetaCoPtr mc_fail(int label);
MetaCoPtr mc_arrow(MetaCoPtr a, MetaCoPtr b);
MetaCoPtr mc_ref(MetaCoPtr write, MetaCoPtr read);
MetaCoPtr mc_quote(CodeCoPtr code, ECPtr ec);
MetaCoPtr mc_forall(std::string var, MetaCoPtr body);
MetaCoPtr mc_constr(Classifier c1, Classifier c2, MetaCoPtr body);
MetaCoPtr mc_seq(MetaCoPtr a, MetaCoPtr b);
MetaCoPtr mc_seq(std::vector<MetaCoPtr> atoms);

// ---------------------------------------------------------------------------
// Reduction to normal form.  Failure propagates eagerly through structural
// constructors; all-identity structural coercions collapse to id so that a
// coercion between fully static types normalizes to id or bot.

ECPtr reduce_ec(const SubtypeEnv& env, const ECPtr& c);
CodeCoPtr reduce_code(const CodeCoPtr& c);
MetaCoPtr reduce_meta(const SubtypeEnv& env, const MetaCoPtr& c);

// Flattened atom view (nested Seq removed, Id dropped).  Empty list = id.
std::vector<ECPtr> ec_atoms(const ECPtr& c);
std::vector<CodeCoPtr> code_atoms(const CodeCoPtr& c);
std::vector<MetaCoPtr> meta_atoms(const MetaCoPtr& c);

bool ec_equal(const ECPtr& a, const ECPtr& b);
bool code_co_equal(const CodeCoPtr& a, const CodeCoPtr& b);
bool meta_co_equal(const MetaCoPtr& a, const MetaCoPtr& b);

// ---------------------------------------------------------------------------
// Generation from type pairs.  Precondition: the corresponding
// consistent-subtyping judgment holds; throws std::logic_error otherwise.

ECPtr coerce_ec(const GClassifier& src, const GClassifier& dst, int label);
CodeCoPtr coerce_code(const CodeTypePtr& src, const CodeTypePtr& dst,
                      int label);
MetaCoPtr coerce_meta(const TypePtr& src, const TypePtr& dst, int label);

// ---------------------------------------------------------------------------
// Destination type of a coercion applied at src.  ill means the coercion
// does not apply at src at all; an engaged result with no type means the
// coercion contains a failure, which admits any target.
struct CoercionTyping {
  bool ill = false;
  std::optional<TypePtr> dst;
};
CoercionTyping meta_coercion_dst(const SubtypeEnv& env, const MetaCoPtr& c,
                                 const TypePtr& src);

// ---------------------------------------------------------------------------
// Typing check: does c cast src => dst under env?
bool check_ec_coercion(const SubtypeEnv& env, const ECPtr& c,
                       const GClassifier& src, const GClassifier& dst);
bool check_code_coercion(const CodeCoPtr& c, const CodeTypePtr& src,
                         const CodeTypePtr& dst);
bool check_meta_coercion(const SubtypeEnv& env, const MetaCoPtr& c,
                         const TypePtr& src, const TypePtr& dst);

// Classifier substitution (for forall instantiation and lambda promotion).
ECPtr subst_classifier_ec_co(const ECPtr& c, const std::string& var,
                             const Classifier& repl);
MetaCoPtr subst_classifier_meta_co(const MetaCoPtr& c, const std::string& var,
                                   const Classifier& repl);

// Debug rendering mirroring the formal notation, e.g. "Int!;(*->*)?L3".
std::string ec_str(const ECPtr& c);
std::string code_co_str(const CodeCoPtr& c);
std::string meta_co_str(const MetaCoPtr& c);

}  // namespace gm

#endif
