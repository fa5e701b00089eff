#ifndef GM_TYPES_HPP
#define GM_TYPES_HPP

#include <memory>
#include <string>
#include <vector>

namespace gm {

struct Span {
  int line = 0;
  int col = 0;
};

// Scope identifiers. Eps is the empty top-level scope; Named classifiers come
// from source binders; Gen classifiers are created at runtime by the machine.
struct Classifier {
  enum class Kind { Eps, Named, Gen };
  Kind kind = Kind::Eps;
  std::string name;  // Named
  long id = 0;       // Gen

  static Classifier eps() { return {}; }
  static Classifier named(std::string n) {
    Classifier c;
    c.kind = Kind::Named;
    c.name = std::move(n);
    return c;
  }
  static Classifier gen(long id) {
    Classifier c;
    c.kind = Kind::Gen;
    c.id = id;
    return c;
  }
  bool is_eps() const { return kind == Kind::Eps; }
  bool operator==(const Classifier& o) const {
    if (kind != o.kind) return false;
    if (kind == Kind::Named) return name == o.name;
    if (kind == Kind::Gen) return id == o.id;
    return true;
  }
  bool operator!=(const Classifier& o) const { return !(*this == o); }
  bool operator<(const Classifier& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (kind == Kind::Named) return name < o.name;
    if (kind == Kind::Gen) return id < o.id;
    return false;
  }
  std::string str() const;
};

// A classifier or the unknown classifier.
struct GClassifier {
  bool star = false;
  Classifier ec;

  static GClassifier unknown() {
    GClassifier g;
    g.star = true;
    return g;
  }
  static GClassifier known(Classifier c) {
    GClassifier g;
    g.ec = std::move(c);
    return g;
  }
  bool operator==(const GClassifier& o) const {
    return star == o.star && (star || ec == o.ec);
  }
  bool operator!=(const GClassifier& o) const { return !(*this == o); }
  std::string str() const;
};

enum class BaseType { Int, Bool, Unit };
const char* base_name(BaseType b);

// Object-language (code) types. Star only appears in the gradual language.
struct CodeType;
using CodeTypePtr = std::shared_ptr<const CodeType>;

struct CodeType {
  enum class Kind { Base, Arrow, Star };
  Kind kind = Kind::Base;
  BaseType base = BaseType::Int;
  CodeTypePtr dom, cod;
};

CodeTypePtr ct_base(BaseType b);
CodeTypePtr ct_int();
CodeTypePtr ct_bool();
CodeTypePtr ct_unit();
CodeTypePtr ct_arrow(CodeTypePtr d, CodeTypePtr c);
CodeTypePtr ct_star();

bool code_type_equal(const CodeTypePtr& a, const CodeTypePtr& b);
bool code_type_static(const CodeTypePtr& t);
std::string code_type_str(const CodeTypePtr& t);

// Meta-language types.
struct MetaType;
using TypePtr = std::shared_ptr<const MetaType>;

struct MetaType {
  enum class Kind { Base, Arrow, Ref, Quote, Forall, Constr, Star };
  Kind kind = Kind::Base;
  BaseType base = BaseType::Int;
  TypePtr lhs, rhs;    // Arrow: dom/cod. Ref/Forall/Constr: body in lhs.
  CodeTypePtr code;    // Quote
  GClassifier gec;     // Quote classifier
  std::string var;     // Forall binder
  Classifier c1, c2;   // Constr: c1 <: c2 => lhs
};

TypePtr t_base(BaseType b);
TypePtr t_int();
TypePtr t_bool();
TypePtr t_unit();
TypePtr t_arrow(TypePtr d, TypePtr c);
TypePtr t_ref(TypePtr e);
TypePtr t_quote(CodeTypePtr c, GClassifier e);
TypePtr t_forall(std::string var, TypePtr body);
TypePtr t_constr(Classifier c1, Classifier c2, TypePtr body);
TypePtr t_star();

// Alpha-equivalence (Forall binders are renamed on the fly).
bool type_equal(const TypePtr& a, const TypePtr& b);
bool type_static(const TypePtr& t);
std::string type_str(const TypePtr& t);

// Capture-avoiding substitution of a classifier variable in a type.
TypePtr subst_classifier_type(const TypePtr& t, const std::string& var,
                              const Classifier& repl);
Classifier subst_classifier_ec(const Classifier& e, const std::string& var,
                               const Classifier& repl);
GClassifier subst_classifier_gec(const GClassifier& e, const std::string& var,
                                 const Classifier& repl);

}  // namespace gm

#endif
