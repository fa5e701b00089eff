#include <random>
#include <vector>

#include "cogen.hpp"
#include "doctest.h"
#include "gm/subtyping.hpp"

using namespace gm;

TEST_CASE("classifier subtyping matches a transitive-closure oracle") {
  std::mt19937 rng(7);
  std::vector<Classifier> nodes{Classifier::eps()};
  for (int i = 0; i < 6; ++i)
    nodes.push_back(Classifier::named("c" + std::to_string(i)));
  const int n = (int)nodes.size();

  for (int round = 0; round < 200; ++round) {
    SubtypeEnv env;
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    std::uniform_int_distribution<int> pick(0, n - 1);
    int edges = std::uniform_int_distribution<int>(0, 8)(rng);
    for (int e = 0; e < edges; ++e) {
      int a = pick(rng), b = pick(rng);
      env.add(nodes[a], nodes[b]);
      reach[a][b] = true;
    }
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        // the relation is edge reachability plus reflexivity and eps-bottom
        bool want = reach[i][j] || i == j || i == 0;
        CAPTURE(round);
        CAPTURE(i);
        CAPTURE(j);
        CHECK(env.subtype(nodes[i], nodes[j]) == want);
      }
  }
}

TEST_CASE("consistent subtyping is reflexive and star-absorbing") {
  gmtest::CoGen gen(11);
  for (int i = 0; i < 300; ++i) {
    TypePtr s = gen.shape(3);
    CHECK(meta_subtype(gen.env, s, s));
    CHECK(consistent_subtype(gen.env, s, s));
    CHECK(consistent_subtype(gen.env, s, t_star()));
    CHECK(consistent_subtype(gen.env, t_star(), s));
  }
}

TEST_CASE("generated chains are consistent between neighbours") {
  gmtest::CoGen gen(12);
  for (int i = 0; i < 300; ++i) {
    auto v = gen.chain(4);
    for (size_t k = 0; k + 1 < v.size(); ++k) {
      CAPTURE(type_str(v[k]));
      CAPTURE(type_str(v[k + 1]));
      CHECK(consistent_subtype(gen.env, v[k], v[k + 1]));
    }
  }
}

TEST_CASE("quote subtyping follows the classifier order") {
  gmtest::CoGen gen(13);
  TypePtr qe = t_quote(ct_int(), GClassifier::known(gen.cls[0]));
  TypePtr qa = t_quote(ct_int(), GClassifier::known(gen.cls[1]));
  TypePtr qb = t_quote(ct_int(), GClassifier::known(gen.cls[2]));
  CHECK(meta_subtype(gen.env, qe, qa));
  CHECK(meta_subtype(gen.env, qa, qb));
  CHECK(meta_subtype(gen.env, qe, qb));
  CHECK_FALSE(meta_subtype(gen.env, qb, qa));
  CHECK_FALSE(consistent_subtype(gen.env, qb, qa));
  CHECK(consistent_subtype(gen.env, qb,
                           t_quote(ct_int(), GClassifier::unknown())));
  // contravariance in function domains
  CHECK(meta_subtype(gen.env, t_arrow(qa, qe), t_arrow(qe, qa)));
  CHECK_FALSE(meta_subtype(gen.env, t_arrow(qe, qe), t_arrow(qa, qe)));
  // references are invariant
  CHECK_FALSE(meta_subtype(gen.env, t_ref(qe), t_ref(qa)));
  CHECK(meta_subtype(gen.env, t_ref(qa), t_ref(qa)));
}
