#include "tnl/henkin.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tnl {

std::string to_string(OracleAnswer::Kind k) {
  switch (k) {
    case OracleAnswer::Kind::Provable: return "provable";
    case OracleAnswer::Kind::Refutable: return "refutable";
    case OracleAnswer::Kind::Unknown: return "unknown";
  }
  return "unknown";
}

// ---------- default oracle ----------

namespace {

using Kind = OracleAnswer::Kind;

void subformulas(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  out.push_back(f);
  switch (f->kind) {
    case FKind::Atom:
    case FKind::Zero:
    case FKind::One:
      return;
    case FKind::Not:
    case FKind::Power:
    case FKind::Forall:
    case FKind::Exists:
      subformulas(f->a, out);
      return;
    default:
      subformulas(f->a, out);
      subformulas(f->b, out);
      return;
  }
}

bool contains_formula(const std::vector<FormulaPtr>& v, const FormulaPtr& f) {
  for (const FormulaPtr& g : v)
    if (equal(g, f)) return true;
  return false;
}

// Merges template maps; false when one name carries two different bodies.
bool merge_templates(std::map<std::string, ProofTemplate>& into,
                     const std::map<std::string, ProofTemplate>& from) {
  for (const auto& [name, t] : from) {
    auto it = into.find(name);
    if (it == into.end()) {
      into.emplace(name, t);
      continue;
    }
    if (it->second.steps.size() != t.steps.size()) return false;
    for (size_t i = 0; i < t.steps.size(); ++i)
      if (!equal(it->second.steps[i].conclusion, t.steps[i].conclusion)) return false;
  }
  return true;
}

// Appends steps to out, shifting premise indices past the existing block.
void append_steps(std::vector<ProofStep>& out, const std::vector<ProofStep>& steps) {
  int off = static_cast<int>(out.size());
  for (ProofStep st : steps) {
    if (st.kind == StepKind::MP) {
      st.i += off;
      st.j += off;
    } else if (st.kind == StepKind::Gen) {
      st.i += off;
    }
    out.push_back(std::move(st));
  }
}

// Backward chaining from a goal through hypotheses, axiom instances, and
// library proofs, combining by modus ponens and generalization.
struct Prover {
  const std::vector<FormulaPtr>& gexp;
  std::vector<std::pair<FormulaPtr, const Proof*>> libs;  // expanded conclusion -> proof
  std::vector<FormulaPtr> pool;                           // MP antecedent candidates
  std::map<std::string, int> failed;                      // goal text -> depth that failed

  std::optional<Proof> base(const FormulaPtr& f) const {
    for (const FormulaPtr& g : gexp)
      if (equal(g, f)) {
        Proof p;
        ProofStep st;
        st.conclusion = f;
        st.kind = StepKind::Hyp;
        p.steps = {st};
        return p;
      }
    auto ms = match_axiom(f);
    if (!ms.empty()) {
      Proof p;
      ProofStep st;
      st.conclusion = f;
      st.kind = StepKind::Axiom;
      st.schema = ms.front().id;
      p.steps = {st};
      return p;
    }
    for (const auto& [concl, pr] : libs)
      if (equal(concl, f)) return *pr;
    return std::nullopt;
  }

  // proof of b appended after a proof of a, closed by modus ponens on a -> b
  static std::optional<Proof> combine_mp(const Proof& pa, const Proof& pimp,
                                         const FormulaPtr& concl) {
    Proof out = pa;
    if (!merge_templates(out.templates, pimp.templates)) return std::nullopt;
    int ia = static_cast<int>(out.steps.size());
    append_steps(out.steps, pimp.steps);
    int ij = static_cast<int>(out.steps.size());
    ProofStep st;
    st.conclusion = concl;
    st.kind = StepKind::MP;
    st.i = ia;
    st.j = ij;
    out.steps.push_back(std::move(st));
    return out;
  }

  std::optional<Proof> prove(const FormulaPtr& f, int depth) {
    if (auto b = base(f)) return b;
    if (depth <= 0) return std::nullopt;
    std::string key = to_string(f);
    auto it = failed.find(key);
    if (it != failed.end() && it->second >= depth) return std::nullopt;

    // generalization
    if (f->kind == FKind::Forall) {
      if (auto sub = prove(f->a, depth - 1)) {
        Proof p = *sub;
        ProofStep st;
        st.conclusion = f;
        st.kind = StepKind::Gen;
        st.var = f->name;
        st.i = static_cast<int>(p.steps.size());
        p.steps.push_back(std::move(st));
        return p;
      }
    }
    // modus ponens with a known implication (hypothesis or library item)
    for (const FormulaPtr& g : pool) {
      if (g->kind != FKind::Impl || !equal(g->b, f)) continue;
      auto pimp = base(g);
      if (!pimp) continue;
      if (auto sub = prove(g->a, depth - 1))
        if (auto c = combine_mp(*sub, *pimp, f)) return c;
    }
    // modus ponens with an axiom implication a -> f
    for (const FormulaPtr& a : pool) {
      FormulaPtr af = make_impl(a, f);
      auto ms = match_axiom(af);
      if (ms.empty()) continue;
      if (auto sub = prove(a, depth - 1)) {
        Proof pimp;
        ProofStep st;
        st.conclusion = af;
        st.kind = StepKind::Axiom;
        st.schema = ms.front().id;
        pimp.steps = {st};
        if (auto c = combine_mp(*sub, pimp, f)) return c;
      }
    }
    failed[key] = depth;
    return std::nullopt;
  }
};

}  // namespace

OracleAnswer DefaultOracle::decide(const std::vector<FormulaPtr>& gamma,
                                   const FormulaPtr& phi) {
  OracleAnswer out;
  std::vector<FormulaPtr> gexp;
  gexp.reserve(gamma.size());
  for (const FormulaPtr& g : gamma) gexp.push_back(expand_sugar(g));
  FormulaPtr goal = expand_sugar(phi);

  Prover pv{gexp, {}, {}, {}};
  for (const Proof& lp : library) {
    if (lp.steps.empty() || !lp.steps.back().conclusion) continue;
    if (!check_proof(gexp, lp, inf_bound).ok()) continue;  // hypotheses not in gamma
    pv.libs.emplace_back(expand_sugar(lp.steps.back().conclusion), &lp);
  }
  {
    std::vector<FormulaPtr> cand;
    for (const FormulaPtr& g : gexp) subformulas(g, cand);
    subformulas(goal, cand);
    for (const auto& [c, pr] : pv.libs) cand.push_back(c);
    size_t n = cand.size();
    for (size_t i = 0; i < n; ++i)
      if (cand[i]->kind == FKind::Conj) cand.push_back(make_conj(cand[i]->b, cand[i]->a));
    std::set<std::string> seen;
    for (const FormulaPtr& c : cand)
      if (seen.insert(to_string(c)).second) pv.pool.push_back(c);
  }

  if (auto p = pv.prove(goal, closure_depth)) {
    Verdict v = check_proof(gexp, *p, inf_bound);
    if (v.ok() && equal(expand_sugar(p->steps.back().conclusion), goal)) {
      out.kind = Kind::Provable;
      out.proof = std::move(*p);
      return out;
    }
    out.note = "assembled proof failed re-checking: " + to_string(v);
  }

  Signature qsig = extend_signature(sig, gexp);
  qsig = extend_signature(std::move(qsig), {goal});
  SearchResult r = consequence_search(qsig, gexp, goal, bounds);
  if (r.refuted) {
    out.kind = Kind::Refutable;
    out.refutation = std::move(r);
    return out;
  }
  out.kind = Kind::Unknown;
  if (out.note.empty())
    out.note = r.bounds_exhausted
                   ? "no proof found and the countermodel search hit its caps"
                   : "no proof at depth " + std::to_string(closure_depth) +
                         ", no countermodel within bounds";
  return out;
}

// ---------- formula enumeration ----------

std::string enum_var(const Signature& sig, int i) {
  std::string n = "x" + std::to_string(i);
  while (sig.is_pred(n) || sig.is_const(n)) n += "_";
  return n;
}

std::string expansion_constant(const Signature& sig, int i) {
  std::string n = "h" + std::to_string(i);
  while (sig.is_pred(n) || sig.is_const(n)) n += "_";
  return n;
}

namespace {

constexpr int kNameLookupCap = 64;

int var_weight(const Signature& sig, const std::string& n) {
  for (int i = 1; i <= kNameLookupCap; ++i)
    if (enum_var(sig, i) == n) return i;
  return 1;
}

int const_weight(const Signature& sig, const std::string& n) {
  if (sig.is_const(n)) return 1;
  for (int i = 1; i <= kNameLookupCap; ++i)
    if (expansion_constant(sig, i) == n) return i + 1;
  return 1;
}

}  // namespace

int enum_weight(const FormulaPtr& f, const Signature& sig) {
  switch (f->kind) {
    case FKind::Atom: {
      int w = 1;
      for (const Term& t : f->args)
        w += t.kind == TermKind::Var ? var_weight(sig, t.name) : const_weight(sig, t.name);
      return w;
    }
    case FKind::Zero:
      return 1;
    case FKind::Conj:
    case FKind::Impl:
      return 1 + enum_weight(f->a, sig) + enum_weight(f->b, sig);
    case FKind::Forall:
    case FKind::Exists:
      return 1 + var_weight(sig, f->name) + enum_weight(f->a, sig);
    default:  // sugar is weighted through its expansion
      return enum_weight(expand_sugar(f), sig);
  }
}

std::vector<FormulaPtr> enumerate_formulas(const Signature& sig, int size_bound) {
  if (size_bound < 0) throw std::invalid_argument("negative enumeration bound");
  if (size_bound > 16)
    throw std::invalid_argument("enumeration bound too large (the listing grows exponentially)");

  // terms of one weight, in order: variable, then (weight 1) signature
  // constants, then the expansion constant of that weight
  auto terms_of = [&](int w) {
    std::vector<Term> ts;
    ts.push_back(var(enum_var(sig, w)));
    if (w == 1)
      for (const auto& c : sig.consts) ts.push_back(cnst(c));
    if (w >= 2) ts.push_back(cnst(expansion_constant(sig, w - 1)));
    return ts;
  };

  std::vector<std::vector<FormulaPtr>> byw(size_bound + 1);
  for (int w = 1; w <= size_bound; ++w) {
    std::vector<FormulaPtr>& out = byw[w];
    for (const auto& [pname, arity] : sig.preds) {
      if (arity == 0) {
        if (w == 1) out.push_back(make_atom(pname, {}));
        continue;
      }
      std::vector<Term> tuple;
      std::function<void(int, int)> go = [&](int pos, int remaining) {
        if (pos == arity) {
          if (remaining == 0) out.push_back(make_atom(pname, tuple));
          return;
        }
        int slots_left = arity - pos - 1;
        for (int wi = 1; wi + slots_left <= remaining; ++wi)
          for (const Term& t : terms_of(wi)) {
            tuple.push_back(t);
            go(pos + 1, remaining - wi);
            tuple.pop_back();
          }
      };
      go(0, w - 1);
    }
    if (w == 1) out.push_back(make_zero());
    for (int wa = 1; wa <= w - 2; ++wa)
      for (const FormulaPtr& a : byw[wa])
        for (const FormulaPtr& b : byw[w - 1 - wa]) out.push_back(make_conj(a, b));
    for (int wa = 1; wa <= w - 2; ++wa)
      for (const FormulaPtr& a : byw[wa])
        for (const FormulaPtr& b : byw[w - 1 - wa]) out.push_back(make_impl(a, b));
    for (int i = 1; i <= w - 2; ++i)
      for (const FormulaPtr& b : byw[w - 1 - i]) out.push_back(make_forall(enum_var(sig, i), b));
    for (int i = 1; i <= w - 2; ++i)
      for (const FormulaPtr& b : byw[w - 1 - i]) out.push_back(make_exists(enum_var(sig, i), b));
  }
  std::vector<FormulaPtr> all;
  for (int w = 1; w <= size_bound; ++w)
    all.insert(all.end(), byw[w].begin(), byw[w].end());
  return all;
}

// ---------- construction ----------

Membership cl_member(const TheoryState& st, const FormulaPtr& theta, Oracle& oracle) {
  Signature core_syms = extend_signature({}, st.gamma);
  Signature theta_syms = extend_signature({}, {theta});
  for (const auto& c : theta_syms.consts)
    if (!core_syms.consts.count(c)) return Membership::No;
  switch (oracle.decide(st.gamma, theta).kind) {
    case Kind::Provable: return Membership::Yes;
    case Kind::Refutable: return Membership::No;
    default: return Membership::Unknown;
  }
}

namespace {

// psi has the conclusion shape of the infinitary family: g \/ (a -> a & b)
bool inf_family_shape(const FormulaPtr& psi, FormulaPtr& g, FormulaPtr& alpha,
                      FormulaPtr& beta) {
  FormulaPtr rest;
  if (!decompose_or(psi, g, rest)) return false;
  if (rest->kind != FKind::Impl || rest->b->kind != FKind::Conj) return false;
  if (!equal(rest->b->a, rest->a)) return false;
  alpha = rest->a;
  beta = rest->b->b;
  return true;
}

}  // namespace

StepResult henkin_step(const TheoryState& st, const FormulaPtr& psi_in, Oracle& oracle,
                       const HenkinOptions& opts) {
  StepResult out;
  out.state = st;
  FormulaPtr psi = expand_sugar(psi_in);
  TraceRecord& rec = out.record;
  rec.index = st.index;
  rec.psi = psi;
  rec.phi_next = st.phi;
  rec.gamma_after = st.gamma;

  auto ask = [&](const FormulaPtr& f, bool with_psi) {
    std::vector<FormulaPtr> prem = st.gamma;
    if (with_psi) prem.push_back(psi);
    OracleAnswer a = oracle.decide(prem, f);
    rec.queries.push_back({f, with_psi, a.kind});
    return a.kind;
  };
  auto suspend = [&](const std::string& why) {
    out.state = st;  // discard any partial mutation
    rec.case_tag = "suspended";
    out.suspended = true;
    out.suspend_reason = why;
  };
  auto add_to_gamma = [&](const FormulaPtr& f) {
    if (contains_formula(out.state.gamma, f)) return;
    out.state.gamma.push_back(f);
    rec.gamma_delta.push_back(f);
  };

  FormulaPtr g, alpha, beta;
  if (psi->kind == FKind::Forall && is_sentence(psi)) {
    Kind q1 = ask(psi, false);
    if (q1 == Kind::Unknown) {
      suspend("gamma |- " + to_string(psi) + " undecided");
    } else if (q1 == Kind::Provable) {
      rec.case_tag = "1b";
    } else {
      Kind q2 = ask(expand_sugar(make_or(st.phi, psi)), false);
      if (q2 == Kind::Unknown) {
        suspend("gamma |- phi \\/ " + to_string(psi) + " undecided");
      } else if (q2 == Kind::Provable) {
        rec.case_tag = "1a-ii";
        add_to_gamma(expand_sugar(make_impl(st.phi, psi)));
      } else {
        rec.case_tag = "1a-i";
        std::string c;
        for (int i = 1;; ++i) {
          std::string cand = expansion_constant(st.sig, i);
          if (out.state.consumed.count(cand)) continue;
          bool used = mentions_const(st.phi, cand) || mentions_const(psi, cand);
          for (const FormulaPtr& m : st.gamma)
            if (used) break; else used = mentions_const(m, cand);
          if (!used) {
            c = cand;
            break;
          }
        }
        out.state.consumed.insert(c);
        rec.fresh_constant = c;
        out.state.phi =
            expand_sugar(make_or(st.phi, substitute(psi->a, psi->name, cnst(c))));
      }
    }
  } else if (is_sentence(psi) && inf_family_shape(psi, g, alpha, beta)) {
    Kind q1 = ask(st.phi, true);
    if (q1 == Kind::Unknown) {
      suspend("gamma, psi |- phi undecided");
    } else if (q1 == Kind::Refutable) {
      rec.case_tag = "2a";
      add_to_gamma(psi);
    } else {
      bool found = false;
      for (int k = 0; k <= opts.k_max && !found; ++k) {
        FormulaPtr fk = expand_sugar(
            make_or(make_or(st.phi, g), make_impl(alpha, make_power(beta, k))));
        if (ask(fk, false) == Kind::Refutable) {
          rec.case_tag = "2b";
          rec.k = k;
          out.state.phi = fk;
          found = true;
        }
      }
      if (!found)
        suspend("no k <= " + std::to_string(opts.k_max) +
                " with gamma |/- phi \\/ g \\/ (alpha -> beta^k)");
    }
  } else {
    Kind q1 = ask(st.phi, true);
    if (q1 == Kind::Unknown) {
      suspend("gamma, psi |- phi undecided");
    } else if (q1 == Kind::Provable) {
      rec.case_tag = "3a";
    } else {
      rec.case_tag = "3b";
      add_to_gamma(psi);
    }
  }

  if (!out.suspended) {
    out.state.index = st.index + 1;
    rec.gamma_after = out.state.gamma;
    rec.phi_next = out.state.phi;
  }
  return out;
}

Trace run_henkin(const Signature& sig, const std::vector<FormulaPtr>& gamma,
                 const FormulaPtr& phi, Oracle& oracle, int steps,
                 const HenkinOptions& opts) {
  if (steps < 0) throw std::invalid_argument("negative step count");
  if (!phi || !is_sentence(phi)) throw std::invalid_argument("phi must be a sentence");

  std::vector<FormulaPtr> gexp;
  for (const FormulaPtr& f : gamma) gexp.push_back(expand_sugar(f));
  FormulaPtr goal = expand_sugar(phi);
  Signature full = extend_signature(sig, gexp);
  full = extend_signature(std::move(full), {goal});

  Trace t;
  t.gamma0 = gexp;
  t.phi0 = goal;
  t.sig = full;

  OracleAnswer pre = oracle.decide(gexp, goal);
  if (pre.kind == Kind::Provable)
    throw std::invalid_argument("gamma proves phi; the extension needs gamma |/- phi");
  if (pre.kind == Kind::Unknown) {
    t.suspended = true;
    t.suspend_reason = "precondition gamma |/- phi undecided";
    return t;
  }

  std::vector<FormulaPtr> listing;
  for (int w = 1; w <= opts.max_enum_weight; ++w) {
    listing = enumerate_formulas(full, w);
    if (static_cast<int>(listing.size()) >= steps) break;
  }
  if (static_cast<int>(listing.size()) < steps)
    throw std::invalid_argument("step count exceeds the enumerable fragment at weight <= " +
                                std::to_string(opts.max_enum_weight));

  TheoryState st{0, gexp, goal, full, {}};
  for (int i = 0; i < steps; ++i) {
    StepResult r = henkin_step(st, listing[i], oracle, opts);
    t.records.push_back(r.record);
    if (r.suspended) {
      t.suspended = true;
      t.suspend_reason = r.suspend_reason;
      break;
    }
    st = std::move(r.state);
  }
  return t;
}

// ---------- trace checking ----------

namespace {

bool is_disjunct_of(const FormulaPtr& phi, const FormulaPtr& f) {
  if (equal(f, phi)) return true;
  FormulaPtr a, b;
  if (!decompose_or(f, a, b)) return false;
  return is_disjunct_of(phi, a) || is_disjunct_of(phi, b);
}

bool same_core(const std::vector<FormulaPtr>& a, const std::vector<FormulaPtr>& b) {
  if (a.size() != b.size()) return false;
  for (const FormulaPtr& f : a)
    if (!contains_formula(b, f)) return false;
  return true;
}

// recomputes the case tag from the recorded shape and verdicts
std::string expected_tag(const TraceRecord& r) {
  FormulaPtr g, alpha, beta;
  bool forall_sent = r.psi->kind == FKind::Forall && is_sentence(r.psi);
  bool family_sent = !forall_sent && is_sentence(r.psi) &&
                     inf_family_shape(r.psi, g, alpha, beta);
  if (r.queries.empty()) return "suspended";
  Kind q0 = r.queries[0].answer;
  if (forall_sent) {
    if (q0 == Kind::Provable) return "1b";
    if (q0 == Kind::Unknown || r.queries.size() < 2) return "suspended";
    Kind q1 = r.queries[1].answer;
    if (q1 == Kind::Provable) return "1a-ii";
    if (q1 == Kind::Refutable) return "1a-i";
    return "suspended";
  }
  if (family_sent) {
    if (q0 == Kind::Refutable) return "2a";
    if (q0 == Kind::Unknown) return "suspended";
    // provable: the scan must end in a refutable k-query
    if (r.queries.size() >= 2 && r.queries.back().answer == Kind::Refutable) return "2b";
    return "suspended";
  }
  if (q0 == Kind::Provable) return "3a";
  if (q0 == Kind::Refutable) return "3b";
  return "suspended";
}

}  // namespace

TraceCheck check_trace(const Trace& t, Oracle& oracle) {
  TraceCheck out;
  auto flag = [&](bool& b, const std::string& why) {
    b = false;
    out.violations.push_back(why);
  };

  std::vector<FormulaPtr> core = t.gamma0;
  FormulaPtr phi = t.phi0;
  std::set<std::string> fresh_seen;
  struct Processed {
    FormulaPtr psi;
    std::string tag;
  };
  std::vector<Processed> done;

  for (const TraceRecord& r : t.records) {
    std::string where = "step " + std::to_string(r.index) + ": ";

    if (expected_tag(r) != r.case_tag)
      flag(out.tags_consistent, where + "tag " + r.case_tag +
                                    " does not match the recorded verdicts (expected " +
                                    expected_tag(r) + ")");

    for (const QueryRecord& q : r.queries)
      if (!q.with_psi && equal(q.formula, phi) && q.answer == Kind::Provable)
        flag(out.no_provable_phi, where + "core-only query proved phi_i");

    if (r.case_tag == "suspended") {
      done.push_back({r.psi, r.case_tag});
      continue;  // state did not advance
    }

    // gamma: delta applied to the running core must give gamma_after
    std::vector<FormulaPtr> next = core;
    for (const FormulaPtr& d : r.gamma_delta)
      if (!contains_formula(next, d)) next.push_back(d);
    bool grew = true;
    for (const FormulaPtr& f : core)
      if (!contains_formula(r.gamma_after, f)) grew = false;
    if (!grew || !same_core(next, r.gamma_after))
      flag(out.gamma_monotone, where + "recorded core does not extend the previous one");

    // phi: changes only in 1a-i / 2b, keeping the old phi as a disjunct
    if (!equal(r.phi_next, phi)) {
      if (r.case_tag != "1a-i" && r.case_tag != "2b")
        flag(out.phi_growth_ok, where + "phi changed under case " + r.case_tag);
      else if (!is_disjunct_of(phi, r.phi_next))
        flag(out.phi_growth_ok, where + "previous phi is not a disjunct of the new one");
    }

    if (r.case_tag == "1a-i") {
      if (!r.fresh_constant) {
        flag(out.fresh_constants_ok, where + "1a-i without a fresh constant");
      } else {
        const std::string& c = *r.fresh_constant;
        if (!fresh_seen.insert(c).second)
          flag(out.fresh_constants_ok, where + "constant " + c + " introduced twice");
        bool used = mentions_const(phi, c) || mentions_const(r.psi, c);
        for (const FormulaPtr& m : core)
          if (used) break; else used = mentions_const(m, c);
        if (used)
          flag(out.fresh_constants_ok, where + "constant " + c + " occurs in the prior state");
      }
    }

    if (r.case_tag == "2b") {
      FormulaPtr g, alpha, beta;
      if (!r.k || !inf_family_shape(r.psi, g, alpha, beta)) {
        flag(out.k_witnesses_ok, where + "2b without a usable k or family shape");
      } else {
        FormulaPtr fk = expand_sugar(
            make_or(make_or(phi, g), make_impl(alpha, make_power(beta, *r.k))));
        if (!equal(fk, r.phi_next))
          flag(out.k_witnesses_ok, where + "phi_next differs from phi \\/ g \\/ (alpha -> beta^k)");
        else if (oracle.decide(core, fk).kind == Kind::Provable)
          flag(out.k_witnesses_ok,
               where + "recorded k=" + std::to_string(*r.k) + " is provable on replay");
      }
    }

    done.push_back({r.psi, r.case_tag});
    core = r.gamma_after;
    phi = r.phi_next;
  }

  // prelinearity progress: processed converse implication pairs, at least
  // one side not refuted from the final core
  for (size_t i = 0; i < done.size(); ++i) {
    const FormulaPtr& a = done[i].psi;
    if (a->kind != FKind::Impl || !is_sentence(a) || equal(a->a, a->b)) continue;
    for (size_t j = i + 1; j < done.size(); ++j) {
      const FormulaPtr& b = done[j].psi;
      if (b->kind != FKind::Impl) continue;
      if (!equal(a->a, b->b) || !equal(a->b, b->a)) continue;
      ++out.prelinearity_pairs;
      bool ra = oracle.decide(core, a).kind == Kind::Refutable;
      bool rb = oracle.decide(core, b).kind == Kind::Refutable;
      if (ra && rb)
        out.violations.push_back("prelinearity: both " + to_string(a) + " and its converse refuted");
      else
        ++out.prelinearity_ok;
    }
  }

  // Henkin progress: 1a-i witnesses still unproved from the final core
  for (const TraceRecord& r : t.records) {
    if (r.case_tag != "1a-i" || !r.fresh_constant) continue;
    ++out.henkin_foralls;
    FormulaPtr wit =
        expand_sugar(substitute(r.psi->a, r.psi->name, cnst(*r.fresh_constant)));
    if (oracle.decide(core, wit).kind == Kind::Provable)
      out.violations.push_back("witness " + to_string(wit) + " became provable");
    else
      ++out.henkin_ok;
  }

  return out;
}

// ---------- trace records ----------

std::string trace_to_records(const Trace& t) {
  using nlohmann::json;
  auto texts = [](const std::vector<FormulaPtr>& fs) {
    json a = json::array();
    for (const FormulaPtr& f : fs) a.push_back(to_string(f));
    return a;
  };
  // the header carries every symbol in play, enumeration constants included,
  // so the records parse back under the base signature alone
  Signature occ = t.sig;
  occ = extend_signature(std::move(occ), t.gamma0);
  occ = extend_signature(std::move(occ), {t.phi0});
  for (const TraceRecord& r : t.records) {
    std::vector<FormulaPtr> fs = {r.psi, r.phi_next};
    for (const QueryRecord& q : r.queries) fs.push_back(q.formula);
    fs.insert(fs.end(), r.gamma_delta.begin(), r.gamma_delta.end());
    occ = extend_signature(std::move(occ), fs);
  }
  std::ostringstream out;
  json h;
  json preds = json::object();
  for (const auto& [p, a] : occ.preds) preds[p] = a;
  json consts = json::array();
  for (const auto& c : occ.consts) consts.push_back(c);
  h["preds"] = preds;
  h["consts"] = consts;
  h["gamma0"] = texts(t.gamma0);
  h["phi0"] = to_string(t.phi0);
  out << h.dump() << "\n";
  for (const TraceRecord& r : t.records) {
    json j;
    j["i"] = r.index;
    j["psi"] = to_string(r.psi);
    j["case"] = r.case_tag;
    json qs = json::array();
    for (const QueryRecord& q : r.queries)
      qs.push_back({{"formula", to_string(q.formula)},
                    {"with_psi", q.with_psi},
                    {"answer", to_string(q.answer)}});
    j["queries"] = qs;
    j["delta"] = texts(r.gamma_delta);
    j["phi_next"] = to_string(r.phi_next);
    if (r.fresh_constant) j["fresh"] = *r.fresh_constant;
    if (r.k) j["k"] = *r.k;
    out << j.dump() << "\n";
  }
  if (t.suspended) {
    json s;
    s["suspended"] = t.suspend_reason;
    out << s.dump() << "\n";
  }
  return out.str();
}

Trace trace_from_records(const std::string& text, const Signature& sig) {
  using nlohmann::json;
  std::istringstream in(text);
  std::string line;
  std::vector<json> rows;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      rows.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw ParseError("bad trace record line: " + std::string(e.what()));
    }
  }
  if (rows.empty() || !rows[0].contains("gamma0") || !rows[0].contains("phi0"))
    throw ParseError("trace records must start with a gamma0/phi0 header");

  auto answer_of = [](const std::string& s) {
    if (s == "provable") return Kind::Provable;
    if (s == "refutable") return Kind::Refutable;
    if (s == "unknown") return Kind::Unknown;
    throw ParseError("unknown oracle answer: " + s);
  };

  Trace t;
  Signature cur = sig;
  try {
    if (rows[0].contains("preds"))
      for (const auto& [p, a] : rows[0]["preds"].items()) cur.add_pred(p, a.get<int>());
    if (rows[0].contains("consts"))
      for (const auto& c : rows[0]["consts"]) cur.add_const(c.get<std::string>());
    for (const auto& gt : rows[0]["gamma0"])
      t.gamma0.push_back(parse_formula(gt.get<std::string>(), cur));
    t.phi0 = parse_formula(rows[0]["phi0"].get<std::string>(), cur);
    cur = extend_signature(std::move(cur), t.gamma0);
    cur = extend_signature(std::move(cur), {t.phi0});

    std::vector<FormulaPtr> core = t.gamma0;
    for (size_t i = 1; i < rows.size(); ++i) {
      const json& j = rows[i];
      if (j.contains("suspended")) {
        t.suspended = true;
        t.suspend_reason = j["suspended"].get<std::string>();
        continue;
      }
      TraceRecord r;
      r.index = j.at("i").get<int>();
      r.psi = parse_formula(j.at("psi").get<std::string>(), cur);
      r.case_tag = j.at("case").get<std::string>();
      for (const auto& q : j.at("queries"))
        r.queries.push_back({parse_formula(q.at("formula").get<std::string>(), cur),
                             q.at("with_psi").get<bool>(),
                             answer_of(q.at("answer").get<std::string>())});
      if (j.contains("fresh")) {
        r.fresh_constant = j["fresh"].get<std::string>();
        cur.add_const(*r.fresh_constant);
      }
      if (j.contains("k")) r.k = j["k"].get<int>();
      for (const auto& d : j.at("delta")) {
        FormulaPtr f = parse_formula(d.get<std::string>(), cur);
        r.gamma_delta.push_back(f);
        if (!contains_formula(core, f)) core.push_back(f);
      }
      r.gamma_after = core;
      r.phi_next = parse_formula(j.at("phi_next").get<std::string>(), cur);
      t.records.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw ParseError("bad trace record field: " + std::string(e.what()));
  }
  t.sig = cur;
  return t;
}

// ---------- Lindenbaum quotients ----------

EquivFn default_lindenbaum_equiv(const Signature& sig) {
  auto cache = std::make_shared<std::map<std::pair<std::string, std::string>, bool>>();
  return [cache, sig](const FormulaPtr& a, const FormulaPtr& b) -> bool {
    std::string ka = to_string(a), kb = to_string(b);
    if (ka == kb) return true;
    auto key = ka < kb ? std::make_pair(ka, kb) : std::make_pair(kb, ka);
    auto it = cache->find(key);
    if (it != cache->end()) return it->second;
    auto not_refuted = [&](const FormulaPtr& f) {
      Signature q = extend_signature(sig, {f});
      SearchBounds bo;
      bo.max_chain_size = 4;
      bo.max_domain_size = 2;
      return !consequence_search(q, {}, f, bo).refuted;
    };
    bool r = not_refuted(make_impl(a, b)) && not_refuted(make_impl(b, a));
    (*cache)[key] = r;
    return r;
  };
}

Quotient lindenbaum_quotient(const std::vector<FormulaPtr>& sentences, const EquivFn& equiv) {
  Quotient q;
  const int n = static_cast<int>(sentences.size());
  if (n == 0) {
    q.totally_ordered = true;
    return q;
  }

  // equiv must behave as an equivalence relation on the list
  std::vector<std::vector<bool>> eq(n, std::vector<bool>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) eq[i][j] = equiv(sentences[i], sentences[j]);
  for (int i = 0; i < n; ++i)
    if (!eq[i][i])
      throw std::invalid_argument("equiv is not reflexive at " + to_string(sentences[i]));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (eq[i][j] != eq[j][i])
        throw std::invalid_argument("equiv is not symmetric at " + to_string(sentences[i]) +
                                    " / " + to_string(sentences[j]));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (eq[i][j] && eq[j][k] && !eq[i][k])
          throw std::invalid_argument("equiv is not transitive at " + to_string(sentences[i]) +
                                      " / " + to_string(sentences[j]) + " / " +
                                      to_string(sentences[k]));

  std::vector<int> cls(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j)
      if (eq[j][i]) {
        cls[i] = cls[j];
        break;
      }
    if (cls[i] < 0) {
      cls[i] = static_cast<int>(q.classes.size());
      q.classes.push_back({sentences[i], {}});
    }
    q.classes[cls[i]].members.push_back(sentences[i]);
  }
  const int m = static_cast<int>(q.classes.size());
  FormulaPtr one = make_one();

  q.le.assign(m, std::vector<bool>(m, false));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      q.le[i][j] = equiv(make_impl(q.classes[i].rep, q.classes[j].rep), one);

  auto class_of = [&](const FormulaPtr& f) {
    for (int c = 0; c < m; ++c)
      if (equiv(f, q.classes[c].rep)) return c;
    return -1;
  };

  q.conj.assign(m, std::vector<int>(m, -1));
  q.impl.assign(m, std::vector<int>(m, -1));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      FormulaPtr rc = make_conj(q.classes[i].rep, q.classes[j].rep);
      FormulaPtr ri = make_impl(q.classes[i].rep, q.classes[j].rep);
      q.conj[i][j] = class_of(rc);
      q.impl[i][j] = class_of(ri);
      for (const FormulaPtr& a : q.classes[i].members)
        for (const FormulaPtr& b : q.classes[j].members) {
          if (!equiv(make_conj(a, b), rc))
            q.violations.push_back("congruence: " + to_string(a) + " & " + to_string(b) +
                                   " differs from the representative conjunction");
          if (!equiv(make_impl(a, b), ri))
            q.violations.push_back("congruence: " + to_string(a) + " -> " + to_string(b) +
                                   " differs from the representative implication");
        }
    }

  bool antisym = true;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && q.le[i][j] && q.le[j][i]) {
        antisym = false;
        q.violations.push_back("order: distinct classes " + to_string(q.classes[i].rep) +
                               " and " + to_string(q.classes[j].rep) + " compare equal");
      }

  q.totally_ordered = true;
  for (int i = 0; i < m && q.totally_ordered; ++i)
    for (int j = 0; j < m; ++j)
      if (!q.le[i][j] && !q.le[j][i]) {
        q.totally_ordered = false;
        break;
      }

  if (q.totally_ordered && antisym) {
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return q.le[a][b] && !q.le[b][a]; });
    std::vector<int> inv(m);
    for (int p = 0; p < m; ++p) inv[order[p]] = p;
    Quotient s;
    s.totally_ordered = true;
    s.violations = q.violations;
    s.classes.reserve(m);
    for (int p = 0; p < m; ++p) s.classes.push_back(std::move(q.classes[order[p]]));
    s.le.assign(m, std::vector<bool>(m, false));
    s.conj.assign(m, std::vector<int>(m, -1));
    s.impl.assign(m, std::vector<int>(m, -1));
    auto remap = [&](int v) { return v < 0 ? -1 : inv[v]; };
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        s.le[inv[i]][inv[j]] = q.le[i][j];
        s.conj[inv[i]][inv[j]] = remap(q.conj[i][j]);
        s.impl[inv[i]][inv[j]] = remap(q.impl[i][j]);
      }
    return s;
  }
  return q;
}

}  // namespace tnl
