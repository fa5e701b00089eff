#ifndef GM_HYPER_HPP
#define GM_HYPER_HPP

#include "gm/coercion.hpp"

namespace gm {

// Hypercoercions: head ; middle ; tail triples closed under composition.
// Heads are at most one projection, tails at most one injection, and all
// the structure lives in the middle, which bounds the height of any
// composition by the max of the operands' heights.

struct ECHyper {
  enum class Head { Id, Project };
  enum class Mid { Sub, Fail, Id };  // reflexive Sub collapses to Id
  enum class Tail { Id, Inject };
  Head head = Head::Id;
  Classifier hp;  // Project
  int hlabel = -1;
  Mid mid = Mid::Id;
  Classifier m1, m2;  // Sub
  int mlabel = -1;    // Fail
  Tail tail = Tail::Id;
  Classifier tp;  // Inject

  bool operator==(const ECHyper& o) const;
};

struct CodeHyper;
using CodeHyperPtr = std::shared_ptr<const CodeHyper>;

struct CodeHyper {
  enum class Head { Id, Project };
  enum class Mid { Id, Fail, Arrow };
  enum class Tail { Id, Inject };
  Head head = Head::Id;
  CodeGround hg;
  int hlabel = -1;
  Mid mid = Mid::Id;
  CodeHyperPtr a, b;  // Arrow
  int mlabel = -1;    // Fail
  Tail tail = Tail::Id;
  CodeGround tg;
};

struct MetaHyper;
using MetaHyperPtr = std::shared_ptr<const MetaHyper>;

struct MetaHyper {
  enum class Head { Id, Project };
  enum class Mid { Id, Fail, Arrow, Ref, Quote, Forall, Constr };
  enum class Tail { Id, Inject };
  Head head = Head::Id;
  MetaGround hg;
  int hlabel = -1;
  Mid mid = Mid::Id;
  MetaHyperPtr a, b;  // Arrow dom/cod; Ref write/read; Forall/Constr body in a
  CodeHyperPtr code;  // Quote
  ECHyper ec;         // Quote
  std::string var;    // Forall binder
  Classifier c1, c2;  // Constr
  int mlabel = -1;    // Fail
  Tail tail = Tail::Id;
  MetaGround tg;
};

// Translation from normalized sequence-form coercions (to_hyper reduces its
// input first) and back.
ECHyper ec_to_hyper(const SubtypeEnv& env, const ECPtr& c);
CodeHyperPtr code_to_hyper(const CodeCoPtr& c);
MetaHyperPtr meta_to_hyper(const SubtypeEnv& env, const MetaCoPtr& c);

ECPtr ec_from_hyper(const ECHyper& c);
CodeCoPtr code_from_hyper(const CodeHyperPtr& c);
MetaCoPtr hyper_to_seq(const MetaHyperPtr& c);

// Composition.
ECHyper ec_compose(const SubtypeEnv& env, const ECHyper& a, const ECHyper& b);
CodeHyperPtr code_compose(const CodeHyperPtr& a, const CodeHyperPtr& b);
MetaHyperPtr meta_compose(const SubtypeEnv& env, const MetaHyperPtr& a,
                          const MetaHyperPtr& b);

bool code_hyper_equal(const CodeHyperPtr& a, const CodeHyperPtr& b);
bool meta_hyper_equal(const MetaHyperPtr& a, const MetaHyperPtr& b);

int ec_hyper_height(const ECHyper& c);
int code_hyper_height(const CodeHyperPtr& c);
int meta_hyper_height(const MetaHyperPtr& c);

MetaHyperPtr subst_classifier_hyper(const MetaHyperPtr& c,
                                    const std::string& var,
                                    const Classifier& repl);

std::string meta_hyper_str(const MetaHyperPtr& c);

}  // namespace gm

#endif
