#include "gm/coercion.hpp"

#include <stdexcept>

namespace gm {

// ---------------------------------------------------------------------------
// Grounds

std::string CodeGround::str() const {
  return arrow ? "(*->*)" : base_name(base);
}

std::string MetaGround::str() const {
  switch (kind) {
    case Kind::Base: return base_name(base);
    case Kind::Arrow: return "(*->*)";
    case Kind::Ref: return "(Ref *)";
    case Kind::Quote: return "(\"*\"*)";
    case Kind::Forall: return "(forall.*)";
    case Kind::Constr:
      return "(" + c1.str() + "<:" + c2.str() + "=>*)";
  }
  return "?";
}

std::optional<CodeGround> code_ground_of(const CodeTypePtr& t) {
  switch (t->kind) {
    case CodeType::Kind::Base: return CodeGround::of_base(t->base);
    case CodeType::Kind::Arrow: return CodeGround::star_arrow();
    case CodeType::Kind::Star: return std::nullopt;
  }
  return std::nullopt;
}

std::optional<MetaGround> meta_ground_of(const TypePtr& t) {
  MetaGround g;
  switch (t->kind) {
    case MetaType::Kind::Base:
      g.kind = MetaGround::Kind::Base;
      g.base = t->base;
      return g;
    case MetaType::Kind::Arrow: g.kind = MetaGround::Kind::Arrow; return g;
    case MetaType::Kind::Ref: g.kind = MetaGround::Kind::Ref; return g;
    case MetaType::Kind::Quote: g.kind = MetaGround::Kind::Quote; return g;
    case MetaType::Kind::Forall: g.kind = MetaGround::Kind::Forall; return g;
    case MetaType::Kind::Constr:
      g.kind = MetaGround::Kind::Constr;
      g.c1 = t->c1;
      g.c2 = t->c2;
      return g;
    case MetaType::Kind::Star: return std::nullopt;
  }
  return std::nullopt;
}

CodeTypePtr code_ground_type(const CodeGround& g) {
  return g.arrow ? ct_arrow(ct_star(), ct_star()) : ct_base(g.base);
}

TypePtr meta_ground_type(const MetaGround& g) {
  switch (g.kind) {
    case MetaGround::Kind::Base: return t_base(g.base);
    case MetaGround::Kind::Arrow: return t_arrow(t_star(), t_star());
    case MetaGround::Kind::Ref: return t_ref(t_star());
    case MetaGround::Kind::Quote:
      return t_quote(ct_star(), GClassifier::unknown());
    case MetaGround::Kind::Forall: return t_forall("_", t_star());
    case MetaGround::Kind::Constr: return t_constr(g.c1, g.c2, t_star());
  }
  return t_star();
}

// ---------------------------------------------------------------------------
// Builders

ECPtr ec_id() {
  static ECPtr v = std::make_shared<ECCoercion>();
  return v;
}
ECPtr ec_inject(Classifier e) {
  auto c = std::make_shared<ECCoercion>();
  c->kind = ECCoercion::Kind::Inject;
  c->e1 = std::move(e);
  return c;
}
ECPtr ec_project(Classifier e, int label) {
  auto c = std::make_shared<ECCoercion>();
  c->kind = ECCoercion::Kind::Project;
  c->e1 = std::move(e);
  c->label = label;
  return c;
}
ECPtr ec_sub(Classifier lo, Classifier hi) {
  auto c = std::make_shared<ECCoercion>();
  c->kind = ECCoercion::Kind::Sub;
  c->e1 = std::move(lo);
  c->e2 = std::move(hi);
  return c;
}
ECPtr ec_fail(int label) {
  auto c = std::make_shared<ECCoercion>();
  c->kind = ECCoercion::Kind::Fail;
  c->label = label;
  return c;
}
ECPtr ec_seq(std::vector<ECPtr> atoms) {
  if (atoms.empty()) return ec_id();
  if (atoms.size() == 1) return atoms[0];
  auto c = std::make_shared<ECCoercion>();
  c->kind = ECCoercion::Kind::Seq;
  c->seq = std::move(atoms);
  return c;
}
ECPtr ec_seq(ECPtr a, ECPtr b) { return ec_seq({std::move(a), std::move(b)}); }

CodeCoPtr cc_id() {
  static CodeCoPtr v = std::make_shared<CodeCoercion>();
  return v;
}
CodeCoPtr cc_inject(CodeGround g) {
  auto c = std::make_shared<CodeCoercion>();
  c->kind = CodeCoercion::Kind::Inject;
  c->g = g;
  return c;
}
CodeCoPtr cc_project(CodeGround g, int label) {
  auto c = std::make_shared<CodeCoercion>();
  c->kind = CodeCoercion::Kind::Project;
  c->g = g;
  c->label = label;
  return c;
}
CodeCoPtr cc_fail(int label) {
  auto c = std::make_shared<CodeCoercion>();
  c->kind = CodeCoercion::Kind::Fail;
  c->label = label;
  return c;
}
CodeCoPtr cc_arrow(CodeCoPtr a, CodeCoPtr b) {
  auto c = std::make_shared<CodeCoercion>();
  c->kind = CodeCoercion::Kind::Arrow;
  c->a = std::move(a);
  c->b = std::move(b);
  return c;
}
CodeCoPtr cc_seq(std::vector<CodeCoPtr> atoms) {
  if (atoms.empty()) return cc_id();
  if (atoms.size() == 1) return atoms[0];
  auto c = std::make_shared<CodeCoercion>();
  c->kind = CodeCoercion::Kind::Seq;
  c->seq = std::move(atoms);
  return c;
}
CodeCoPtr cc_seq(CodeCoPtr a, CodeCoPtr b) {
  return cc_seq({std::move(a), std::move(b)});
}

MetaCoPtr mc_id() {
  static MetaCoPtr v = std::make_shared<MetaCoercion>();
  return v;
}
MetaCoPtr mc_inject(MetaGround g) {
  auto c = std::make_shared<MetaCoercion>();
  c->kind = MetaCoercion::Kind::Inject;
  c->g = std::move(g);
  return c;
}
MetaCoPtr mc_project(MetaGround g, int label) {
  auto c = std::make_shared<MetaCoercion>();
  c->kind = MetaCoercion::Kind::Project;
  c->g = std::move(g);
  c->label = label;
  return c;
}
MetaCoPtr mc_fail(int label) {
  auto c = std::make_shared<MetaCoercion>();
  c->kind = MetaCoercion::Kind::Fail;
  c->label = label;
  return c;
}
MetaCoPtr mc_arrow(MetaCoPtr a, MetaCoPtr b) {
  auto c = std::make_shared<MetaCoercion>();
  c->kind = MetaCoercion::Kind::Arrow;
  c->a = std::move(a);
  c->b = std::move(b);
  return c;
}
MetaCoPtr mc_ref(MetaCoPtr write, MetaCoPtr read) {
  auto c = std::make_shared<MetaCoercion>();
  c->kind = MetaCoercion::Kind::Ref;
  c->a = std::move(write);
  c->b = std::move(read);
  return c;
}
MetaCoPtr mc_quote(CodeCoPtr code, ECPtr ec) {
  auto c = std::make_shared<MetaCoercion>();
  c->kind = MetaCoercion::Kind::Quote;
  c->code = std::move(code);
  c->ecc = std::move(ec);
  return c;
}
MetaCoPtr mc_forall(std::string var, MetaCoPtr body) {
  auto c = std::make_shared<MetaCoercion>();
  c->kind = MetaCoercion::Kind::Forall;
  c->var = std::move(var);
  c->a = std::move(body);
  return c;
}
MetaCoPtr mc_constr(Classifier c1, Classifier c2, MetaCoPtr body) {
  auto c = std::make_shared<MetaCoercion>();
  c->kind = MetaCoercion::Kind::Constr;
  c->c1 = std::move(c1);
  c->c2 = std::move(c2);
  c->a = std::move(body);
  return c;
}
MetaCoPtr mc_seq(std::vector<MetaCoPtr> atoms) {
  if (atoms.empty()) return mc_id();
  if (atoms.size() == 1) return atoms[0];
  auto c = std::make_shared<MetaCoercion>();
  c->kind = MetaCoercion::Kind::Seq;
  c->seq = std::move(atoms);
  return c;
}
MetaCoPtr mc_seq(MetaCoPtr a, MetaCoPtr b) {
  return mc_seq({std::move(a), std::move(b)});
}

// ---------------------------------------------------------------------------
// Flattening

void flatten_ec(const ECPtr& c, std::vector<ECPtr>& out) {
  if (c->kind == ECCoercion::Kind::Seq) {
    for (const auto& s : c->seq) flatten_ec(s, out);
  } else if (c->kind != ECCoercion::Kind::Id) {
    out.push_back(c);
  }
}
std::vector<ECPtr> ec_atoms(const ECPtr& c) {
  std::vector<ECPtr> out;
  flatten_ec(c, out);
  return out;
}

void flatten_code(const CodeCoPtr& c, std::vector<CodeCoPtr>& out) {
  if (c->kind == CodeCoercion::Kind::Seq) {
    for (const auto& s : c->seq) flatten_code(s, out);
  } else if (c->kind != CodeCoercion::Kind::Id) {
    out.push_back(c);
  }
}
std::vector<CodeCoPtr> code_atoms(const CodeCoPtr& c) {
  std::vector<CodeCoPtr> out;
  flatten_code(c, out);
  return out;
}

void flatten_meta(const MetaCoPtr& c, std::vector<MetaCoPtr>& out) {
  if (c->kind == MetaCoercion::Kind::Seq) {
    for (const auto& s : c->seq) flatten_meta(s, out);
  } else if (c->kind != MetaCoercion::Kind::Id) {
    out.push_back(c);
  }
}
std::vector<MetaCoPtr> meta_atoms(const MetaCoPtr& c) {
  std::vector<MetaCoPtr> out;
  flatten_meta(c, out);
  return out;
}

// ---------------------------------------------------------------------------
// Equality (structural, modulo Seq flattening / Id units; Forall binders
// compared by renaming).

bool ec_equal(const ECPtr& a, const ECPtr& b) {
  auto xs = ec_atoms(a);
  auto ys = ec_atoms(b);
  if (xs.size() != ys.size()) return false;
  for (size_t i = 0; i < xs.size(); ++i) {
    const auto& x = xs[i];
    const auto& y = ys[i];
    if (x->kind != y->kind) return false;
    switch (x->kind) {
      case ECCoercion::Kind::Inject:
        if (x->e1 != y->e1) return false;
        break;
      case ECCoercion::Kind::Project:
        if (x->e1 != y->e1 || x->label != y->label) return false;
        break;
      case ECCoercion::Kind::Sub:
        if (x->e1 != y->e1 || x->e2 != y->e2) return false;
        break;
      case ECCoercion::Kind::Fail:
        if (x->label != y->label) return false;
        break;
      default: break;
    }
  }
  return true;
}

bool code_co_equal(const CodeCoPtr& a, const CodeCoPtr& b) {
  auto xs = code_atoms(a);
  auto ys = code_atoms(b);
  if (xs.size() != ys.size()) return false;
  for (size_t i = 0; i < xs.size(); ++i) {
    const auto& x = xs[i];
    const auto& y = ys[i];
    if (x->kind != y->kind) return false;
    switch (x->kind) {
      case CodeCoercion::Kind::Inject:
        if (x->g != y->g) return false;
        break;
      case CodeCoercion::Kind::Project:
        if (x->g != y->g || x->label != y->label) return false;
        break;
      case CodeCoercion::Kind::Fail:
        if (x->label != y->label) return false;
        break;
      case CodeCoercion::Kind::Arrow:
        if (!code_co_equal(x->a, y->a) || !code_co_equal(x->b, y->b))
          return false;
        break;
      default: break;
    }
  }
  return true;
}

bool meta_co_equal(const MetaCoPtr& a, const MetaCoPtr& b) {
  auto xs = meta_atoms(a);
  auto ys = meta_atoms(b);
  if (xs.size() != ys.size()) return false;
  for (size_t i = 0; i < xs.size(); ++i) {
    const auto& x = xs[i];
    const auto& y = ys[i];
    if (x->kind != y->kind) return false;
    switch (x->kind) {
      case MetaCoercion::Kind::Inject:
        if (x->g != y->g) return false;
        break;
      case MetaCoercion::Kind::Project:
        if (x->g != y->g || x->label != y->label) return false;
        break;
      case MetaCoercion::Kind::Fail:
        if (x->label != y->label) return false;
        break;
      case MetaCoercion::Kind::Arrow:
      case MetaCoercion::Kind::Ref:
        if (!meta_co_equal(x->a, y->a) || !meta_co_equal(x->b, y->b))
          return false;
        break;
      case MetaCoercion::Kind::Quote:
        if (!code_co_equal(x->code, y->code) || !ec_equal(x->ecc, y->ecc))
          return false;
        break;
      case MetaCoercion::Kind::Forall: {
        MetaCoPtr yb = x->var == y->var
                           ? y->a
                           : subst_classifier_meta_co(
                                 y->a, y->var, Classifier::named(x->var));
        if (!meta_co_equal(x->a, yb)) return false;
        break;
      }
      case MetaCoercion::Kind::Constr:
        if (x->c1 != y->c1 || x->c2 != y->c2 || !meta_co_equal(x->a, y->a))
          return false;
        break;
      default: break;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Reduction

namespace {

bool ec_is_fail(const ECPtr& c) { return c->kind == ECCoercion::Kind::Fail; }
bool ec_is_id(const ECPtr& c) {
  return c->kind == ECCoercion::Kind::Id ||
         (c->kind == ECCoercion::Kind::Seq && c->seq.empty());
}
bool code_is_fail(const CodeCoPtr& c) {
  return c->kind == CodeCoercion::Kind::Fail;
}
bool code_is_id(const CodeCoPtr& c) {
  return c->kind == CodeCoercion::Kind::Id;
}
bool meta_is_fail(const MetaCoPtr& c) {
  return c->kind == MetaCoercion::Kind::Fail;
}
bool meta_is_id(const MetaCoPtr& c) {
  return c->kind == MetaCoercion::Kind::Id;
}

// Reduction follows the grouping of the input: each side of a sequence is
// normalized first and the two normal forms are then merged at the seam.
// Flattening first instead would make the surviving blame label depend on
// the association order when a failure can arise in more than one place,
// and hypercoercion composition is inherently pairwise.
CodeCoPtr code_reduce_tree(const CodeCoPtr& c);
MetaCoPtr meta_reduce_tree(const SubtypeEnv& env, const MetaCoPtr& c);

// --- EC ---

// Reduce an adjacent pair of normalized non-id atoms.  Returns the
// replacement atoms, or nullopt when the pair is in normal form.
std::optional<std::vector<ECPtr>> ec_pair(const SubtypeEnv& env, const ECPtr& x,
                                          const ECPtr& y) {
  using K = ECCoercion::Kind;
  if (x->kind == K::Fail) return {{x}};
  // failure absorbs even a pending projection: classifier coercions live
  // inside quote coercions, whose hypercoercion form has nowhere to park a
  // projection in front of a failing middle
  if (y->kind == K::Fail) return {{y}};
  if (x->kind == K::Inject && y->kind == K::Project) {
    if (env.subtype(x->e1, y->e1)) {
      if (x->e1 == y->e1) return {{}};
      return {{ec_sub(x->e1, y->e1)}};
    }
    return {{ec_fail(y->label)}};
  }
  if (x->kind == K::Sub && y->kind == K::Sub) {
    if (x->e1 == y->e2) return {{}};
    return {{ec_sub(x->e1, y->e2)}};
  }
  return std::nullopt;
}

ECPtr ec_norm_atom(const ECPtr& a) {
  if (a->kind == ECCoercion::Kind::Sub && a->e1 == a->e2) return ec_id();
  return a;
}

// --- code ---

std::optional<std::vector<CodeCoPtr>> code_pair(const CodeCoPtr& x,
                                                const CodeCoPtr& y);
CodeCoPtr code_norm_atom(const CodeCoPtr& a);

CodeCoPtr reduce_code_list(std::vector<CodeCoPtr> atoms) {
  std::vector<CodeCoPtr> work;
  for (auto& a : atoms) {
    CodeCoPtr n = code_norm_atom(a);
    if (!code_is_id(n)) work.push_back(std::move(n));
  }
  size_t i = 0;
  while (work.size() >= 2 && i + 1 < work.size()) {
    auto r = code_pair(work[i], work[i + 1]);
    if (r) {
      work.erase(work.begin() + i, work.begin() + i + 2);
      for (auto it = r->rbegin(); it != r->rend(); ++it)
        if (!code_is_id(*it)) work.insert(work.begin() + i, *it);
      i = i > 0 ? i - 1 : 0;
    } else {
      ++i;
    }
  }
  return cc_seq(std::move(work));
}

CodeCoPtr code_norm_atom(const CodeCoPtr& a) {
  if (a->kind != CodeCoercion::Kind::Arrow) return a;
  CodeCoPtr d = code_reduce_tree(a->a);
  CodeCoPtr c = code_reduce_tree(a->b);
  if (code_is_fail(d)) return d;
  if (code_is_fail(c)) return c;
  if (code_is_id(d) && code_is_id(c)) return cc_id();
  return cc_arrow(std::move(d), std::move(c));
}

std::optional<std::vector<CodeCoPtr>> code_pair(const CodeCoPtr& x,
                                                const CodeCoPtr& y) {
  using K = CodeCoercion::Kind;
  if (x->kind == K::Fail) return {{x}};
  // like the classifier level, code coercions absorb failures eagerly
  if (y->kind == K::Fail) return {{y}};
  if (x->kind == K::Inject && y->kind == K::Project) {
    if (x->g == y->g) return {{}};
    return {{cc_fail(y->label)}};
  }
  if (x->kind == K::Arrow && y->kind == K::Arrow) {
    return {{code_norm_atom(
        cc_arrow(cc_seq(y->a, x->a), cc_seq(x->b, y->b)))}};
  }
  return std::nullopt;
}

// --- meta ---

std::optional<std::vector<MetaCoPtr>> meta_pair(const SubtypeEnv& env,
                                                const MetaCoPtr& x,
                                                const MetaCoPtr& y);
MetaCoPtr meta_norm_atom(const SubtypeEnv& env, const MetaCoPtr& a);

MetaCoPtr reduce_meta_list(const SubtypeEnv& env,
                           std::vector<MetaCoPtr> atoms) {
  std::vector<MetaCoPtr> work;
  for (auto& a : atoms) {
    MetaCoPtr n = meta_norm_atom(env, a);
    if (!meta_is_id(n)) work.push_back(std::move(n));
  }
  size_t i = 0;
  while (work.size() >= 2 && i + 1 < work.size()) {
    auto r = meta_pair(env, work[i], work[i + 1]);
    if (r) {
      work.erase(work.begin() + i, work.begin() + i + 2);
      for (auto it = r->rbegin(); it != r->rend(); ++it)
        if (!meta_is_id(*it)) work.insert(work.begin() + i, *it);
      i = i > 0 ? i - 1 : 0;
    } else {
      ++i;
    }
  }
  return mc_seq(std::move(work));
}

MetaCoPtr meta_norm_atom(const SubtypeEnv& env, const MetaCoPtr& a) {
  switch (a->kind) {
    case MetaCoercion::Kind::Arrow: {
      MetaCoPtr d = meta_reduce_tree(env, a->a);
      MetaCoPtr c = meta_reduce_tree(env, a->b);
      if (meta_is_fail(d)) return d;
      if (meta_is_fail(c)) return c;
      if (meta_is_id(d) && meta_is_id(c)) return mc_id();
      return mc_arrow(std::move(d), std::move(c));
    }
    case MetaCoercion::Kind::Ref: {
      MetaCoPtr w = meta_reduce_tree(env, a->a);
      MetaCoPtr r = meta_reduce_tree(env, a->b);
      if (meta_is_fail(w)) return w;
      if (meta_is_fail(r)) return r;
      if (meta_is_id(w) && meta_is_id(r)) return mc_id();
      return mc_ref(std::move(w), std::move(r));
    }
    case MetaCoercion::Kind::Quote: {
      CodeCoPtr c = code_reduce_tree(a->code);
      ECPtr e = reduce_ec(env, a->ecc);
      if (code_is_fail(c)) return mc_fail(c->label);
      if (ec_is_fail(e)) return mc_fail(e->label);
      if (code_is_id(c) && ec_is_id(e)) return mc_id();
      return mc_quote(std::move(c), std::move(e));
    }
    case MetaCoercion::Kind::Forall: {
      MetaCoPtr b = meta_reduce_tree(env, a->a);
      if (meta_is_fail(b)) return b;
      if (meta_is_id(b)) return mc_id();
      return mc_forall(a->var, std::move(b));
    }
    case MetaCoercion::Kind::Constr: {
      MetaCoPtr b = meta_reduce_tree(env.with(a->c1, a->c2), a->a);
      if (meta_is_fail(b)) return b;
      if (meta_is_id(b)) return mc_id();
      return mc_constr(a->c1, a->c2, std::move(b));
    }
    default: return a;
  }
}

std::optional<std::vector<MetaCoPtr>> meta_pair(const SubtypeEnv& env,
                                                const MetaCoPtr& x,
                                                const MetaCoPtr& y) {
  using K = MetaCoercion::Kind;
  if (x->kind == K::Fail) return {{x}};
  // failure absorbs in both directions, projections included; otherwise a
  // failure surfacing inside a structural component would normalize
  // differently depending on the order the surrounding atoms were merged
  if (y->kind == K::Fail) return {{y}};
  if (x->kind == K::Inject && y->kind == K::Project) {
    if (x->g == y->g) return {{}};
    return {{mc_fail(y->label)}};
  }
  if (x->kind == K::Arrow && y->kind == K::Arrow) {
    return {{meta_norm_atom(
        env, mc_arrow(mc_seq(y->a, x->a), mc_seq(x->b, y->b)))}};
  }
  if (x->kind == K::Ref && y->kind == K::Ref) {
    return {{meta_norm_atom(
        env, mc_ref(mc_seq(y->a, x->a), mc_seq(x->b, y->b)))}};
  }
  if (x->kind == K::Quote && y->kind == K::Quote) {
    return {{meta_norm_atom(
        env, mc_quote(cc_seq(x->code, y->code), ec_seq(x->ecc, y->ecc)))}};
  }
  if (x->kind == K::Forall && y->kind == K::Forall) {
    MetaCoPtr yb = x->var == y->var
                       ? y->a
                       : subst_classifier_meta_co(y->a, y->var,
                                                  Classifier::named(x->var));
    return {{meta_norm_atom(env,
                            mc_forall(x->var, mc_seq(x->a, std::move(yb))))}};
  }
  if (x->kind == K::Constr && y->kind == K::Constr && x->c1 == y->c1 &&
      x->c2 == y->c2) {
    return {{meta_norm_atom(env,
                            mc_constr(x->c1, x->c2, mc_seq(x->a, y->a)))}};
  }
  return std::nullopt;
}

CodeCoPtr code_reduce_tree(const CodeCoPtr& c) {
  if (c->kind != CodeCoercion::Kind::Seq)
    return reduce_code_list({c});
  CodeCoPtr acc = cc_id();
  for (const CodeCoPtr& child : c->seq) {
    std::vector<CodeCoPtr> atoms = code_atoms(acc);
    for (auto& a : code_atoms(code_reduce_tree(child)))
      atoms.push_back(std::move(a));
    acc = reduce_code_list(std::move(atoms));
  }
  return acc;
}

MetaCoPtr meta_reduce_tree(const SubtypeEnv& env, const MetaCoPtr& c) {
  if (c->kind != MetaCoercion::Kind::Seq)
    return reduce_meta_list(env, {c});
  MetaCoPtr acc = mc_id();
  for (const MetaCoPtr& child : c->seq) {
    std::vector<MetaCoPtr> atoms = meta_atoms(acc);
    for (auto& a : meta_atoms(meta_reduce_tree(env, child)))
      atoms.push_back(std::move(a));
    acc = reduce_meta_list(env, std::move(atoms));
  }
  return acc;
}

}  // namespace

ECPtr reduce_ec(const SubtypeEnv& env, const ECPtr& c) {
  std::vector<ECPtr> work;
  for (auto& a : ec_atoms(c)) {
    ECPtr n = ec_norm_atom(a);
    if (!ec_is_id(n)) work.push_back(std::move(n));
  }
  size_t i = 0;
  while (work.size() >= 2 && i + 1 < work.size()) {
    auto r = ec_pair(env, work[i], work[i + 1]);
    if (r) {
      work.erase(work.begin() + i, work.begin() + i + 2);
      for (auto it = r->rbegin(); it != r->rend(); ++it)
        if (!ec_is_id(*it)) work.insert(work.begin() + i, *it);
      i = i > 0 ? i - 1 : 0;
    } else {
      ++i;
    }
  }
  return ec_seq(std::move(work));
}

CodeCoPtr reduce_code(const CodeCoPtr& c) { return code_reduce_tree(c); }

MetaCoPtr reduce_meta(const SubtypeEnv& env, const MetaCoPtr& c) {
  return meta_reduce_tree(env, c);
}

// ---------------------------------------------------------------------------
// Generation

ECPtr coerce_ec(const GClassifier& src, const GClassifier& dst, int label) {
  if (src.star && dst.star) return ec_id();
  if (src.star) return ec_project(dst.ec, label);
  if (dst.star) return ec_inject(src.ec);
  return ec_sub(src.ec, dst.ec);
}

CodeCoPtr coerce_code(const CodeTypePtr& src, const CodeTypePtr& dst,
                      int label) {
  bool s_star = src->kind == CodeType::Kind::Star;
  bool d_star = dst->kind == CodeType::Kind::Star;
  if (s_star && d_star) return cc_id();
  if (d_star) {
    CodeGround g = *code_ground_of(src);
    CodeTypePtr gt = code_ground_type(g);
    if (code_type_equal(src, gt)) return cc_inject(g);
    return cc_seq(coerce_code(src, gt, label), cc_inject(g));
  }
  if (s_star) {
    CodeGround g = *code_ground_of(dst);
    CodeTypePtr gt = code_ground_type(g);
    if (code_type_equal(dst, gt)) return cc_project(g, label);
    return cc_seq(cc_project(g, label), coerce_code(gt, dst, label));
  }
  if (src->kind != dst->kind)
    throw std::logic_error("coerce_code: inconsistent types");
  if (src->kind == CodeType::Kind::Base) {
    if (src->base != dst->base)
      throw std::logic_error("coerce_code: inconsistent bases");
    return cc_id();
  }
  return cc_arrow(coerce_code(dst->dom, src->dom, label),
                  coerce_code(src->cod, dst->cod, label));
}

MetaCoPtr coerce_meta(const TypePtr& src, const TypePtr& dst, int label) {
  bool s_star = src->kind == MetaType::Kind::Star;
  bool d_star = dst->kind == MetaType::Kind::Star;
  if (s_star && d_star) return mc_id();
  if (d_star) {
    MetaGround g = *meta_ground_of(src);
    TypePtr gt = meta_ground_type(g);
    if (type_equal(src, gt)) return mc_inject(g);
    return mc_seq(coerce_meta(src, gt, label), mc_inject(g));
  }
  if (s_star) {
    MetaGround g = *meta_ground_of(dst);
    TypePtr gt = meta_ground_type(g);
    if (type_equal(dst, gt)) return mc_project(g, label);
    return mc_seq(mc_project(g, label), coerce_meta(gt, dst, label));
  }
  if (src->kind != dst->kind)
    throw std::logic_error("coerce_meta: inconsistent types");
  switch (src->kind) {
    case MetaType::Kind::Base:
      if (src->base != dst->base)
        throw std::logic_error("coerce_meta: inconsistent bases");
      return mc_id();
    case MetaType::Kind::Arrow:
      return mc_arrow(coerce_meta(dst->lhs, src->lhs, label),
                      coerce_meta(src->rhs, dst->rhs, label));
    case MetaType::Kind::Ref:
      return mc_ref(coerce_meta(dst->lhs, src->lhs, label),
                    coerce_meta(src->lhs, dst->lhs, label));
    case MetaType::Kind::Quote:
      return mc_quote(coerce_code(src->code, dst->code, label),
                      coerce_ec(src->gec, dst->gec, label));
    case MetaType::Kind::Forall: {
      TypePtr body_d = dst->lhs;
      if (dst->var != src->var)
        body_d = subst_classifier_type(dst->lhs, dst->var,
                                       Classifier::named(src->var));
      return mc_forall(src->var, coerce_meta(src->lhs, body_d, label));
    }
    case MetaType::Kind::Constr:
      if (src->c1 != dst->c1 || src->c2 != dst->c2)
        throw std::logic_error("coerce_meta: constraint mismatch");
      return mc_constr(src->c1, src->c2,
                       coerce_meta(src->lhs, dst->lhs, label));
    default: throw std::logic_error("coerce_meta: unreachable");
  }
}

// ---------------------------------------------------------------------------
// Typing check

namespace {

struct GInfer {  // inference result for gradual classifiers
  bool ill = false;
  std::optional<GClassifier> g;
};

GInfer ec_infer_dst(const SubtypeEnv& env, const ECPtr& a,
                    const GClassifier& src) {
  using K = ECCoercion::Kind;
  switch (a->kind) {
    case K::Id: return {false, src};
    case K::Inject:
      if (src != GClassifier::known(a->e1)) return {true, {}};
      return {false, GClassifier::unknown()};
    case K::Project:
      if (!src.star) return {true, {}};
      return {false, GClassifier::known(a->e1)};
    case K::Sub:
      if (src != GClassifier::known(a->e1) || !env.subtype(a->e1, a->e2))
        return {true, {}};
      return {false, GClassifier::known(a->e2)};
    case K::Fail: return {false, {}};
    case K::Seq: break;
  }
  GClassifier cur = src;
  for (const auto& at : ec_atoms(a)) {
    GInfer r = ec_infer_dst(env, at, cur);
    if (r.ill) return r;
    if (!r.g) return {false, {}};
    cur = *r.g;
  }
  return {false, cur};
}

struct CInfer {
  bool ill = false;
  std::optional<CodeTypePtr> t;
};

CInfer code_infer_dst(const CodeCoPtr& a, const CodeTypePtr& src);
CInfer code_infer_src(const CodeCoPtr& a, const CodeTypePtr& dst);

CInfer code_infer_dst(const CodeCoPtr& a, const CodeTypePtr& src) {
  using K = CodeCoercion::Kind;
  switch (a->kind) {
    case K::Id: return {false, src};
    case K::Inject:
      if (!code_type_equal(src, code_ground_type(a->g))) return {true, {}};
      return {false, ct_star()};
    case K::Project:
      if (src->kind != CodeType::Kind::Star) return {true, {}};
      return {false, code_ground_type(a->g)};
    case K::Fail: return {false, {}};
    case K::Arrow: {
      if (src->kind != CodeType::Kind::Arrow) return {true, {}};
      CInfer d = code_infer_src(a->a, src->dom);
      CInfer c = code_infer_dst(a->b, src->cod);
      if (d.ill || c.ill) return {true, {}};
      if (!d.t || !c.t) return {false, {}};
      return {false, ct_arrow(*d.t, *c.t)};
    }
    case K::Seq: break;
  }
  CodeTypePtr cur = src;
  for (const auto& at : code_atoms(a)) {
    CInfer r = code_infer_dst(at, cur);
    if (r.ill) return r;
    if (!r.t) return {false, {}};
    cur = *r.t;
  }
  return {false, cur};
}

CInfer code_infer_src(const CodeCoPtr& a, const CodeTypePtr& dst) {
  using K = CodeCoercion::Kind;
  switch (a->kind) {
    case K::Id: return {false, dst};
    case K::Inject:
      if (dst->kind != CodeType::Kind::Star) return {true, {}};
      return {false, code_ground_type(a->g)};
    case K::Project:
      if (!code_type_equal(dst, code_ground_type(a->g))) return {true, {}};
      return {false, ct_star()};
    case K::Fail: return {false, {}};
    case K::Arrow: {
      if (dst->kind != CodeType::Kind::Arrow) return {true, {}};
      CInfer d = code_infer_dst(a->a, dst->dom);
      CInfer c = code_infer_src(a->b, dst->cod);
      if (d.ill || c.ill) return {true, {}};
      if (!d.t || !c.t) return {false, {}};
      return {false, ct_arrow(*d.t, *c.t)};
    }
    case K::Seq: break;
  }
  CodeTypePtr cur = dst;
  auto ats = code_atoms(a);
  for (auto it = ats.rbegin(); it != ats.rend(); ++it) {
    CInfer r = code_infer_src(*it, cur);
    if (r.ill) return r;
    if (!r.t) return {false, {}};
    cur = *r.t;
  }
  return {false, cur};
}

struct MInfer {
  bool ill = false;
  std::optional<TypePtr> t;
};

MInfer meta_infer_dst(const SubtypeEnv& env, const MetaCoPtr& a,
                      const TypePtr& src);
MInfer meta_infer_src(const SubtypeEnv& env, const MetaCoPtr& a,
                      const TypePtr& dst);

MInfer meta_infer_dst(const SubtypeEnv& env, const MetaCoPtr& a,
                      const TypePtr& src) {
  using K = MetaCoercion::Kind;
  switch (a->kind) {
    case K::Id: return {false, src};
    case K::Inject:
      if (!type_equal(src, meta_ground_type(a->g))) return {true, {}};
      return {false, t_star()};
    case K::Project:
      if (src->kind != MetaType::Kind::Star) return {true, {}};
      return {false, meta_ground_type(a->g)};
    case K::Fail: return {false, {}};
    case K::Arrow: {
      if (src->kind != MetaType::Kind::Arrow) return {true, {}};
      MInfer d = meta_infer_src(env, a->a, src->lhs);
      MInfer c = meta_infer_dst(env, a->b, src->rhs);
      if (d.ill || c.ill) return {true, {}};
      if (!d.t || !c.t) return {false, {}};
      return {false, t_arrow(*d.t, *c.t)};
    }
    case K::Ref: {
      if (src->kind != MetaType::Kind::Ref) return {true, {}};
      MInfer r = meta_infer_dst(env, a->b, src->lhs);
      if (r.ill) return r;
      if (!r.t) return {false, {}};
      MInfer w = meta_infer_dst(env, a->a, *r.t);
      if (w.ill || (w.t && !type_equal(*w.t, src->lhs))) return {true, {}};
      return {false, t_ref(*r.t)};
    }
    case K::Quote: {
      if (src->kind != MetaType::Kind::Quote) return {true, {}};
      CInfer c = code_infer_dst(a->code, src->code);
      GInfer e = ec_infer_dst(env, a->ecc, src->gec);
      if (c.ill || e.ill) return {true, {}};
      if (!c.t || !e.g) return {false, {}};
      return {false, t_quote(*c.t, *e.g)};
    }
    case K::Forall: {
      if (src->kind != MetaType::Kind::Forall) return {true, {}};
      TypePtr body = src->lhs;
      if (src->var != a->var)
        body = subst_classifier_type(src->lhs, src->var,
                                     Classifier::named(a->var));
      MInfer r = meta_infer_dst(env, a->a, body);
      if (r.ill) return r;
      if (!r.t) return {false, {}};
      return {false, t_forall(a->var, *r.t)};
    }
    case K::Constr: {
      if (src->kind != MetaType::Kind::Constr || src->c1 != a->c1 ||
          src->c2 != a->c2)
        return {true, {}};
      MInfer r = meta_infer_dst(env.with(a->c1, a->c2), a->a, src->lhs);
      if (r.ill) return r;
      if (!r.t) return {false, {}};
      return {false, t_constr(a->c1, a->c2, *r.t)};
    }
    case K::Seq: break;
  }
  TypePtr cur = src;
  for (const auto& at : meta_atoms(a)) {
    MInfer r = meta_infer_dst(env, at, cur);
    if (r.ill) return r;
    if (!r.t) return {false, {}};
    cur = *r.t;
  }
  return {false, cur};
}

MInfer meta_infer_src(const SubtypeEnv& env, const MetaCoPtr& a,
                      const TypePtr& dst) {
  using K = MetaCoercion::Kind;
  switch (a->kind) {
    case K::Id: return {false, dst};
    case K::Inject:
      if (dst->kind != MetaType::Kind::Star) return {true, {}};
      return {false, meta_ground_type(a->g)};
    case K::Project:
      if (!type_equal(dst, meta_ground_type(a->g))) return {true, {}};
      return {false, t_star()};
    case K::Fail: return {false, {}};
    case K::Arrow: {
      if (dst->kind != MetaType::Kind::Arrow) return {true, {}};
      MInfer d = meta_infer_dst(env, a->a, dst->lhs);
      MInfer c = meta_infer_src(env, a->b, dst->rhs);
      if (d.ill || c.ill) return {true, {}};
      if (!d.t || !c.t) return {false, {}};
      return {false, t_arrow(*d.t, *c.t)};
    }
    case K::Ref: {
      if (dst->kind != MetaType::Kind::Ref) return {true, {}};
      MInfer r = meta_infer_src(env, a->b, dst->lhs);
      if (r.ill) return r;
      if (!r.t) return {false, {}};
      MInfer w = meta_infer_dst(env, a->a, dst->lhs);
      if (w.ill || (w.t && !type_equal(*w.t, *r.t))) return {true, {}};
      return {false, t_ref(*r.t)};
    }
    default: break;
  }
  if (a->kind == K::Seq) {
    TypePtr cur = dst;
    auto ats = meta_atoms(a);
    for (auto it = ats.rbegin(); it != ats.rend(); ++it) {
      MInfer r = meta_infer_src(env, *it, cur);
      if (r.ill) return r;
      if (!r.t) return {false, {}};
      cur = *r.t;
    }
    return {false, cur};
  }
  // Quote/Forall/Constr under a contravariant position: give up (treated as
  // unknown, which makes the surrounding check permissive but never unsound
  // for coercions produced by generation).
  return {false, {}};
}

}  // namespace

CoercionTyping meta_coercion_dst(const SubtypeEnv& env, const MetaCoPtr& c,
                                 const TypePtr& src) {
  MInfer r = meta_infer_dst(env, c, src);
  return {r.ill, r.t};
}

bool check_ec_coercion(const SubtypeEnv& env, const ECPtr& c,
                       const GClassifier& src, const GClassifier& dst) {
  GInfer r = ec_infer_dst(env, c, src);
  if (r.ill) return false;
  if (!r.g) return true;  // a failure coercion admits any target
  return *r.g == dst;
}

bool check_code_coercion(const CodeCoPtr& c, const CodeTypePtr& src,
                         const CodeTypePtr& dst) {
  CInfer r = code_infer_dst(c, src);
  if (r.ill) return false;
  if (!r.t) return true;
  return code_type_equal(*r.t, dst);
}

bool check_meta_coercion(const SubtypeEnv& env, const MetaCoPtr& c,
                         const TypePtr& src, const TypePtr& dst) {
  MInfer r = meta_infer_dst(env, c, src);
  if (r.ill) return false;
  if (!r.t) return true;
  return type_equal(*r.t, dst);
}

// ---------------------------------------------------------------------------
// Classifier substitution

ECPtr subst_classifier_ec_co(const ECPtr& c, const std::string& var,
                             const Classifier& repl) {
  using K = ECCoercion::Kind;
  switch (c->kind) {
    case K::Id:
    case K::Fail: return c;
    case K::Inject: return ec_inject(subst_classifier_ec(c->e1, var, repl));
    case K::Project:
      return ec_project(subst_classifier_ec(c->e1, var, repl), c->label);
    case K::Sub:
      return ec_sub(subst_classifier_ec(c->e1, var, repl),
                    subst_classifier_ec(c->e2, var, repl));
    case K::Seq: {
      std::vector<ECPtr> out;
      out.reserve(c->seq.size());
      for (const auto& s : c->seq)
        out.push_back(subst_classifier_ec_co(s, var, repl));
      return ec_seq(std::move(out));
    }
  }
  return c;
}

MetaCoPtr subst_classifier_meta_co(const MetaCoPtr& c, const std::string& var,
                                   const Classifier& repl) {
  using K = MetaCoercion::Kind;
  switch (c->kind) {
    case K::Id:
    case K::Fail: return c;
    case K::Inject: {
      MetaGround g = c->g;
      if (g.kind == MetaGround::Kind::Constr) {
        g.c1 = subst_classifier_ec(g.c1, var, repl);
        g.c2 = subst_classifier_ec(g.c2, var, repl);
      }
      return mc_inject(g);
    }
    case K::Project: {
      MetaGround g = c->g;
      if (g.kind == MetaGround::Kind::Constr) {
        g.c1 = subst_classifier_ec(g.c1, var, repl);
        g.c2 = subst_classifier_ec(g.c2, var, repl);
      }
      return mc_project(g, c->label);
    }
    case K::Arrow:
      return mc_arrow(subst_classifier_meta_co(c->a, var, repl),
                      subst_classifier_meta_co(c->b, var, repl));
    case K::Ref:
      return mc_ref(subst_classifier_meta_co(c->a, var, repl),
                    subst_classifier_meta_co(c->b, var, repl));
    case K::Quote:
      return mc_quote(c->code, subst_classifier_ec_co(c->ecc, var, repl));
    case K::Forall:
      if (c->var == var) return c;  // shadowed
      return mc_forall(c->var, subst_classifier_meta_co(c->a, var, repl));
    case K::Constr:
      return mc_constr(subst_classifier_ec(c->c1, var, repl),
                       subst_classifier_ec(c->c2, var, repl),
                       subst_classifier_meta_co(c->a, var, repl));
    case K::Seq: {
      std::vector<MetaCoPtr> out;
      out.reserve(c->seq.size());
      for (const auto& s : c->seq)
        out.push_back(subst_classifier_meta_co(s, var, repl));
      return mc_seq(std::move(out));
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {
std::string label_str(int l) { return "L" + std::to_string(l); }
}  // namespace

std::string ec_str(const ECPtr& c) {
  using K = ECCoercion::Kind;
  switch (c->kind) {
    case K::Id: return "id";
    case K::Inject: return c->e1.str() + "!";
    case K::Project: return c->e1.str() + "?" + label_str(c->label);
    case K::Sub: return c->e1.str() + "^" + c->e2.str();
    case K::Fail: return "bot(" + label_str(c->label) + ")";
    case K::Seq: {
      if (c->seq.empty()) return "id";
      std::string out;
      for (size_t i = 0; i < c->seq.size(); ++i) {
        if (i) out += ";";
        out += ec_str(c->seq[i]);
      }
      return out;
    }
  }
  return "?";
}

std::string code_co_str(const CodeCoPtr& c) {
  using K = CodeCoercion::Kind;
  switch (c->kind) {
    case K::Id: return "id";
    case K::Inject: return c->g.str() + "!";
    case K::Project: return c->g.str() + "?" + label_str(c->label);
    case K::Fail: return "bot(" + label_str(c->label) + ")";
    case K::Arrow:
      return "(" + code_co_str(c->a) + "->" + code_co_str(c->b) + ")";
    case K::Seq: {
      if (c->seq.empty()) return "id";
      std::string out;
      for (size_t i = 0; i < c->seq.size(); ++i) {
        if (i) out += ";";
        out += code_co_str(c->seq[i]);
      }
      return out;
    }
  }
  return "?";
}

std::string meta_co_str(const MetaCoPtr& c) {
  using K = MetaCoercion::Kind;
  switch (c->kind) {
    case K::Id: return "id";
    case K::Inject: return c->g.str() + "!";
    case K::Project: return c->g.str() + "?" + label_str(c->label);
    case K::Fail: return "bot(" + label_str(c->label) + ")";
    case K::Arrow:
      return "(" + meta_co_str(c->a) + "->" + meta_co_str(c->b) + ")";
    case K::Ref:
      return "Ref(" + meta_co_str(c->a) + "," + meta_co_str(c->b) + ")";
    case K::Quote:
      return "\"" + code_co_str(c->code) + "\"(" + ec_str(c->ecc) + ")";
    case K::Forall: return "forall " + c->var + "." + meta_co_str(c->a);
    case K::Constr:
      return "[" + c->c1.str() + "<:" + c->c2.str() + "]=>" +
             meta_co_str(c->a);
    case K::Seq: {
      if (c->seq.empty()) return "id";
      std::string out;
      for (size_t i = 0; i < c->seq.size(); ++i) {
        if (i) out += ";";
        out += meta_co_str(c->seq[i]);
      }
      return out;
    }
  }
  return "?";
}

}  // namespace gm
