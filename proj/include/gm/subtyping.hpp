#ifndef GM_SUBTYPING_HPP
#define GM_SUBTYPING_HPP

#include <utility>
#include <vector>

#include "gm/types.hpp"

namespace gm {

// Classifier subtyping environment: a set of edges e1 <: e2.  The machine
// keeps this a forest (each generated classifier gets exactly one parent),
// but queries work on any edge set.
class SubtypeEnv {
 public:
  SubtypeEnv() = default;

  void add(const Classifier& lo, const Classifier& hi) {
    edges_.emplace_back(lo, hi);
  }
  const std::vector<std::pair<Classifier, Classifier>>& edges() const {
    return edges_;
  }
  size_t size() const { return edges_.size(); }

  // lo <: hi, closed under reflexivity, transitivity, and eps-bottom.
  bool subtype(const Classifier& lo, const Classifier& hi) const;

  SubtypeEnv with(const Classifier& lo, const Classifier& hi) const {
    SubtypeEnv e = *this;
    e.add(lo, hi);
    return e;
  }

  void truncate(size_t n) { edges_.resize(n); }

 private:
  std::vector<std::pair<Classifier, Classifier>> edges_;
};

bool ec_subtype(const SubtypeEnv& env, const Classifier& lo,
                const Classifier& hi);

// Gradual classifier consistent subtyping.
bool gec_consistent_subtype(const SubtypeEnv& env, const GClassifier& lo,
                            const GClassifier& hi);

// Static meta subtyping.  Both types must be fully static.
bool meta_subtype(const SubtypeEnv& env, const TypePtr& a, const TypePtr& b);

// Gradual code-type consistent subtyping (environment independent: code
// types contain no classifiers).
bool code_consistent_subtype(const CodeTypePtr& a, const CodeTypePtr& b);

// Gradual meta consistent subtyping.
bool consistent_subtype(const SubtypeEnv& env, const TypePtr& a,
                        const TypePtr& b);

}  // namespace gm

#endif
