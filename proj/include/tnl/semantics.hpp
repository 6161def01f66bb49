#pragma once

// Structures over BL-chains and t-norms, valuations, the inductive value
// of a formula, model checking, bounded semantic-consequence search, and
// the quantifier-shift demonstration model.
//
// Three algebra adapters share one evaluator: finite chains (elements are
// indices), continuous t-norms (rationals in [0,1]), and presented chains
// (component/value pairs).  Domains are either finite {0..n-1} or the
// naturals; quantifiers over the naturals take their value from declared
// limits that are sanity-checked against a generated prefix.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tnl/chain.hpp"
#include "tnl/presented.hpp"
#include "tnl/syntax.hpp"
#include "tnl/tnorm.hpp"

namespace tnl {

// ---------------------------------------------------------------- algebras

struct FiniteAlg {
  const FiniteChain* c;
  using Val = int;
  Val zero() const { return 0; }
  Val one() const { return c->n - 1; }
  Val mul(Val x, Val y) const { return c->mul[x][y]; }
  Val residuum(Val x, Val y) const { return c->residuum(x, y); }
  Val meet(Val x, Val y) const { return std::min(x, y); }
  Val join(Val x, Val y) const { return std::max(x, y); }
  bool le(Val x, Val y) const { return x <= y; }
  bool eq(Val x, Val y) const { return x == y; }
  std::string str(Val x) const { return std::to_string(x); }
};

struct TNormAlg {
  const TNorm* t;
  using Val = Rat;
  Val zero() const { return 0; }
  Val one() const { return 1; }
  Val mul(const Val& x, const Val& y) const { return t->apply(x, y); }
  Val residuum(const Val& x, const Val& y) const { return t->residuum(x, y); }
  Val meet(const Val& x, const Val& y) const { return std::min(x, y); }
  Val join(const Val& x, const Val& y) const { return std::max(x, y); }
  bool le(const Val& x, const Val& y) const { return x <= y; }
  bool eq(const Val& x, const Val& y) const { return x == y; }
  std::string str(const Val& x) const { return rat_str(x); }
};

struct PresentedAlg {
  const PresentedChain* p;
  using Val = PElem;
  Val zero() const { return p->bottom(); }
  Val one() const { return punit(); }
  Val mul(const Val& x, const Val& y) const { return p->mul(x, y); }
  Val residuum(const Val& x, const Val& y) const { return p->residuum(x, y); }
  Val meet(const Val& x, const Val& y) const { return p->meet(x, y); }
  Val join(const Val& x, const Val& y) const { return p->join(x, y); }
  bool le(const Val& x, const Val& y) const { return pelem_cmp(x, y) <= 0; }
  bool eq(const Val& x, const Val& y) const { return pelem_eq(x, y); }
  std::string str(const Val& x) const { return pelem_str(x); }
};

// --------------------------------------------------------------- structure

// Registered generator rule for predicates over a natural-number domain.
// "reciprocal" yields 1/(n+1), placed into a presented-chain component or
// carried through an affine range on [0,1].
struct Generator {
  std::string rule;  // currently: "reciprocal"
  int comp = -1;     // presented chains: target component
  Rat lo = 0, hi = 1;  // t-norms: value = lo + (hi-lo) * 1/(n+1)
};

using Valuation = std::map<std::string, long>;

template <class A>
struct Structure {
  bool nat_domain = false;
  long domain_size = 0;  // finite domains only

  std::map<std::string, long> consts;

  struct Pred {
    int arity = 0;
    std::vector<typename A::Val> table;  // finite: row-major over domain^arity
    std::optional<Generator> gen;        // nat domains: unary rule
  };
  std::map<std::string, Pred> preds;

  // Declared quantifier limits for natural-number domains: the value of
  // (forall/exists var) body, checked to bound a generated prefix.
  struct Limit {
    bool is_inf = true;
    std::string var;
    FormulaPtr body;
    typename A::Val value;
  };
  std::vector<Limit> limits;
};

// --------------------------------------------------------------- evaluation

template <class A>
struct EvalResult {
  bool ok = false;
  typename A::Val value{};
  bool declared_limit = false;  // some quantifier used a declared limit
  std::string error;            // offending subformula / reason when !ok
};

// How many generated prefix values a declared limit is checked against.
inline constexpr int kLimitPrefixDefault = 64;

namespace detail {

template <class A>
EvalResult<A> eval_error(std::string msg) {
  EvalResult<A> r;
  r.ok = false;
  r.error = std::move(msg);
  return r;
}

template <class A>
typename A::Val gen_value(const A&, const Generator&, long n);

template <>
inline Rat gen_value<TNormAlg>(const TNormAlg&, const Generator& g, long n) {
  return g.lo + (g.hi - g.lo) * Rat(1, n + 1);
}

template <>
inline PElem gen_value<PresentedAlg>(const PresentedAlg&, const Generator& g, long n) {
  return PElem{g.comp, Rat(1, n + 1)};
}

template <>
inline int gen_value<FiniteAlg>(const FiniteAlg&, const Generator&, long) {
  throw std::invalid_argument("generator rules need an infinite chain algebra");
}

inline FormulaPtr canon_body(const FormulaPtr& body, const std::string& bound) {
  // rename the quantified variable to a reserved name for limit lookup
  return substitute(body, bound, var("#q"));
}

}  // namespace detail

template <class A>
class Evaluator {
 public:
  Evaluator(const A& alg, const Structure<A>& s, int limit_prefix = kLimitPrefixDefault)
      : alg_(alg), s_(s), prefix_(limit_prefix) {}

  EvalResult<A> eval(const FormulaPtr& f, const Valuation& v) const {
    using R = EvalResult<A>;
    switch (f->kind) {
      case FKind::Zero: {
        R r;
        r.ok = true;
        r.value = alg_.zero();
        return r;
      }
      case FKind::One: {
        R r;
        r.ok = true;
        r.value = alg_.one();
        return r;
      }
      case FKind::Atom: return atom(f, v);
      case FKind::Conj: return binop(f, v, [this](auto a, auto b) { return alg_.mul(a, b); });
      case FKind::Impl:
        return binop(f, v, [this](auto a, auto b) { return alg_.residuum(a, b); });
      case FKind::And: return binop(f, v, [this](auto a, auto b) { return alg_.meet(a, b); });
      case FKind::Or: return binop(f, v, [this](auto a, auto b) { return alg_.join(a, b); });
      case FKind::Not: {
        R a = eval(f->a, v);
        if (!a.ok) return a;
        a.value = alg_.residuum(a.value, alg_.zero());
        return a;
      }
      case FKind::Power: {
        if (f->exp == kPowerHole)
          return detail::eval_error<A>("uninstantiated power hole in " + to_string(f));
        R a = eval(f->a, v);
        if (!a.ok) return a;
        typename A::Val acc = alg_.one();
        for (int i = 0; i < f->exp; ++i) acc = alg_.mul(acc, a.value);
        a.value = acc;
        return a;
      }
      case FKind::Forall: return quantifier(f, v, /*is_inf=*/true);
      case FKind::Exists: return quantifier(f, v, /*is_inf=*/false);
    }
    return detail::eval_error<A>("unreachable formula kind");
  }

 private:
  template <class Op>
  EvalResult<A> binop(const FormulaPtr& f, const Valuation& v, Op op) const {
    EvalResult<A> a = eval(f->a, v);
    if (!a.ok) return a;
    EvalResult<A> b = eval(f->b, v);
    if (!b.ok) return b;
    a.value = op(a.value, b.value);
    a.declared_limit = a.declared_limit || b.declared_limit;
    return a;
  }

  EvalResult<A> atom(const FormulaPtr& f, const Valuation& v) const {
    auto it = s_.preds.find(f->name);
    if (it == s_.preds.end())
      return detail::eval_error<A>("predicate " + f->name + " not interpreted");
    const auto& pred = it->second;
    if (pred.arity != static_cast<int>(f->args.size()))
      return detail::eval_error<A>("arity mismatch for " + f->name);
    std::vector<long> elems;
    for (const Term& t : f->args) {
      if (t.kind == TermKind::Var) {
        auto vt = v.find(t.name);
        if (vt == v.end())
          return detail::eval_error<A>("valuation missing variable " + t.name);
        elems.push_back(vt->second);
      } else {
        auto ct = s_.consts.find(t.name);
        if (ct == s_.consts.end())
          return detail::eval_error<A>("constant " + t.name + " not interpreted");
        elems.push_back(ct->second);
      }
    }
    EvalResult<A> r;
    if (pred.gen) {
      if (elems.size() != 1)
        return detail::eval_error<A>("generator predicates are unary: " + f->name);
      r.ok = true;
      r.value = detail::gen_value<A>(alg_, *pred.gen, elems[0]);
      return r;
    }
    long idx = 0;
    for (long e : elems) {
      if (e < 0 || e >= s_.domain_size)
        return detail::eval_error<A>("domain element out of range for " + f->name);
      idx = idx * s_.domain_size + e;
    }
    r.ok = true;
    r.value = pred.table[idx];
    return r;
  }

  EvalResult<A> quantifier(const FormulaPtr& f, const Valuation& v, bool is_inf) const {
    auto fv = free_vars(f->a);
    if (!fv.count(f->name)) return eval(f->a, v);  // vacuous binder

    if (!s_.nat_domain) {
      EvalResult<A> acc;
      Valuation w = v;
      for (long d = 0; d < s_.domain_size; ++d) {
        w[f->name] = d;
        EvalResult<A> sub = eval(f->a, w);
        if (!sub.ok) return sub;
        if (d == 0)
          acc = sub;
        else {
          acc.value = is_inf ? alg_.meet(acc.value, sub.value)
                             : alg_.join(acc.value, sub.value);
          acc.declared_limit = acc.declared_limit || sub.declared_limit;
        }
      }
      if (s_.domain_size == 0)
        return detail::eval_error<A>("empty domain under " + to_string(f));
      return acc;
    }

    // natural-number domain: find a declared limit for this family
    FormulaPtr want = detail::canon_body(f->a, f->name);
    for (const auto& lim : s_.limits) {
      if (lim.is_inf != is_inf) continue;
      if (!equal(detail::canon_body(lim.body, lim.var), want)) continue;
      // the declared value must bound the generated prefix
      Valuation w = v;
      for (long n = 0; n < prefix_; ++n) {
        w[f->name] = n;
        EvalResult<A> sub = eval(f->a, w);
        if (!sub.ok) return sub;
        bool bounds = is_inf ? alg_.le(lim.value, sub.value) : alg_.le(sub.value, lim.value);
        if (!bounds)
          return detail::eval_error<A>(
              "declared " + std::string(is_inf ? "infimum " : "supremum ") +
              alg_.str(lim.value) + " does not bound the family of " + to_string(f) +
              " at n=" + std::to_string(n) + " (value " + alg_.str(sub.value) + ")");
      }
      EvalResult<A> r;
      r.ok = true;
      r.value = lim.value;
      r.declared_limit = true;
      return r;
    }
    return detail::eval_error<A>("no declared " + std::string(is_inf ? "infimum" : "supremum") +
                                 " for quantifier family " + to_string(f));
  }

  const A& alg_;
  const Structure<A>& s_;
  int prefix_;
};

template <class A>
EvalResult<A> eval(const A& alg, const Structure<A>& s, const FormulaPtr& f,
                   const Valuation& v = {}, int limit_prefix = kLimitPrefixDefault) {
  return Evaluator<A>(alg, s, limit_prefix).eval(f, v);
}

// ------------------------------------------------------------ model check

struct ModelCheck {
  bool ok = false;
  bool sampled = false;         // nat domain: valuations were sampled, not exhausted
  bool declared_limit = false;  // some value came from a declared limit
  std::string witness;          // first failing formula, if any
  Valuation witness_valuation;
  std::string failing_value;
  std::string error;  // eval error, if any
};

inline constexpr long kNatSampleDefault = 8;

template <class A>
ModelCheck is_model(const A& alg, const Structure<A>& s, const std::vector<FormulaPtr>& gamma,
                    long nat_sample = kNatSampleDefault) {
  ModelCheck out;
  out.ok = true;
  for (const FormulaPtr& g : gamma) {
    std::vector<std::string> fv;
    for (const auto& x : free_vars(g)) fv.push_back(x);
    std::sort(fv.begin(), fv.end());
    long range = s.nat_domain ? nat_sample : s.domain_size;
    if (s.nat_domain && !fv.empty()) out.sampled = true;
    std::vector<long> odo(fv.size(), 0);
    while (true) {
      Valuation v;
      for (size_t i = 0; i < fv.size(); ++i) v[fv[i]] = odo[i];
      EvalResult<A> r = eval(alg, s, g, v);
      if (!r.ok) {
        out.ok = false;
        out.error = r.error;
        out.witness = to_string(g);
        out.witness_valuation = v;
        return out;
      }
      out.declared_limit = out.declared_limit || r.declared_limit;
      if (!alg.eq(r.value, alg.one())) {
        out.ok = false;
        out.witness = to_string(g);
        out.witness_valuation = v;
        out.failing_value = alg.str(r.value);
        return out;
      }
      size_t k = 0;
      while (k < odo.size() && ++odo[k] == range) odo[k++] = 0;
      if (k == odo.size() && !odo.empty()) break;
      if (odo.empty()) break;
    }
  }
  return out;
}

// ----------------------------------------------------- consequence search

struct SearchBounds {
  int max_chain_size = 3;
  long max_domain_size = 2;
  int value_grid = 4;  // t-norm structures draw values from {0, 1/g, ..., 1}
  std::vector<TNorm> tnorms;
  long max_structures = 2000000;  // per chain/t-norm honesty cap
};

struct FiniteCounterexample {
  FiniteChain chain;
  Structure<FiniteAlg> structure;
  Valuation valuation;
};

struct GridCounterexample {
  TNorm tnorm;
  Structure<TNormAlg> structure;
  Valuation valuation;
};

struct SearchResult {
  bool refuted = false;
  bool bounds_exhausted = false;  // caps hit somewhere; absence is not validity
  std::string description;       // printable witness or search summary
  std::optional<FiniteCounterexample> finite;
  std::optional<GridCounterexample> grid;
};

// Enumerates finite BL-chains x structures (then t-norm fixtures x grid
// structures) in deterministic order and returns the first structure that
// models gamma but gives phi a value < 1.  Refutation-only: a negative
// result never claims validity.
SearchResult consequence_search(const Signature& sig, const std::vector<FormulaPtr>& gamma,
                                const FormulaPtr& phi, const SearchBounds& bounds = {});

// ------------------------------------------------- infinitary-rule check

struct InfSoundnessReport {
  long checked = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// For sampled a, b, c with a <= inf_powers(b): a*b must equal a, and for
// c < 1 the join c v (a -> a*b) must be 1.  Exact via piece structure.
InfSoundnessReport inf_rule_soundness_check(const TNorm& t, int grid = 24);

// ------------------------------------------------------------- RC demo

// The shipped demonstration of the quantifier-shift gap: a natural-number
// model over MV3 + product-(0,1] where the shift axiom evaluates to the
// middle MV3 element, together with its image under embed_into_tnorm where
// the recomputed infimum lands on a piece-boundary idempotent and the same
// axiom evaluates to 1.
struct RcDemo {
  Signature sig;
  FormulaPtr shift_axiom;  // forall x (P&P) -> (forall x P) & (forall x P)
  PresentedChain chain;
  Structure<PresentedAlg> model;
  TNorm tnorm;
  EmbeddingMap map;
  Structure<TNormAlg> embedded_model;
};

RcDemo make_rc_demo();

}  // namespace tnl
