#ifndef GM_TESTS_FUZZGEN_HPP
#define GM_TESTS_FUZZGEN_HPP

#include <random>
#include <string>
#include <vector>

#include "gm/term.hpp"

namespace gmtest {

// Generates closed, well-typed programs of type Code<Int>@eps.  Programs mix
// quoting, splicing, code lambdas, references to code and round-trips
// through the unknown type; they always terminate (no recursion in the
// language) and never fail a cast (imprecision is only introduced at
// matching classifiers).
struct Fuzz {
  std::mt19937 rng;
  long counter = 0;
  int label = 1000;

  std::vector<gm::Classifier> cstack{gm::Classifier::eps()};
  std::vector<std::string> cvars;

  explicit Fuzz(unsigned seed) : rng(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
  std::string fresh(const char* p) {
    return std::string(p) + std::to_string(++counter);
  }

  gm::TermPtr gen_code_int(int d) {
    using namespace gm;
    int c = pick(d > 0 ? 8 : 4);
    switch (c) {
      case 0:
      case 1:
      case 2:
        return tm_int(pick(100));
      case 3:
        if (!cvars.empty()) return tm_var(cvars[pick((int)cvars.size())]);
        return tm_int(pick(100));
      case 4:
        return tm_binop('+', gen_code_int(d - 1), gen_code_int(d - 1),
                        ++label);
      case 5:
        return tm_binop('*', gen_code_int(d - 1), gen_code_int(d - 1),
                        ++label);
      case 6: {
        std::string x = fresh("x");
        std::string a = fresh("a");
        cstack.push_back(Classifier::named(a));
        cvars.push_back(x);
        TermPtr body = gen_code_int(d - 1);
        cvars.pop_back();
        cstack.pop_back();
        TermPtr arg = gen_code_int(d - 1);
        return tm_app(tm_codelam(x, ct_int(), a, body), arg, ++label);
      }
      default:
        return tm_splice(gen_meta_quote(d - 1), ++label);
    }
  }

  gm::TermPtr gen_meta_quote(int d) {
    using namespace gm;
    Classifier e = cstack.back();
    TypePtr qt = t_quote(ct_int(), GClassifier::known(e));
    int c = pick(d > 0 ? 4 : 1);
    switch (c) {
      case 0:
        return tm_quote(e, gen_code_int(d));
      case 1: {
        // Apply the precisely typed identity.
        std::string v = fresh("q");
        return tm_app(tm_lam(v, qt, tm_var(v)), gen_meta_quote(d - 1),
                      ++label);
      }
      case 2: {
        // Round-trip through the unknown type and back.
        std::string v = fresh("q");
        std::string w = fresh("q");
        TermPtr star_id = tm_lam(v, t_star(), tm_var(v));
        return tm_app(tm_lam(w, qt, tm_var(w)),
                      tm_app(star_id, gen_meta_quote(d - 1), ++label),
                      ++label);
      }
      default: {
        // Store code in a cell, overwrite it, read it back.
        std::string r = fresh("r");
        TermPtr body =
            tm_seq(tm_assign(tm_var(r), gen_meta_quote(d - 1), ++label),
                   tm_deref(tm_var(r), ++label));
        return tm_app(tm_lam(r, t_ref(qt), body),
                      tm_ref(gen_meta_quote(d - 1)), ++label);
      }
    }
  }

  gm::TermPtr program(int depth = 3) { return gen_meta_quote(depth); }
};

}  // namespace gmtest

#endif
