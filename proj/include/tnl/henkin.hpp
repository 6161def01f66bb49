#pragma once

// Bounded executor of the Henkin-style theory extension: a deterministic
// enumeration of the expanded language, the per-formula case analysis over
// a pluggable two-sided provability oracle, replayable step traces, and
// finite Lindenbaum quotients.
//
// Provability here is undecidable, so the oracle answers provable (with a
// proof accepted by check_proof), refutable (with a countermodel from the
// bounded consequence search), or unknown.  The construction suspends
// instead of guessing when a branch-deciding query comes back unknown;
// everything it records is witnessed and can be replayed by check_trace.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tnl/calculus.hpp"
#include "tnl/semantics.hpp"
#include "tnl/syntax.hpp"

namespace tnl {

// ---------- oracle ----------

struct OracleAnswer {
  enum class Kind { Provable, Refutable, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<Proof> proof;              // Provable: witness
  std::optional<SearchResult> refutation;  // Refutable: countermodel
  std::string note;                        // optional detail
};

std::string to_string(OracleAnswer::Kind k);

// Two-sided provability oracle deciding gamma |- phi.  Both directions must
// stay sound: a provable answer carries a proof accepted by
// check_proof(gamma, ...); a refutable answer carries a structure modeling
// gamma that gives phi a value < 1.  Unknown is always allowed.
struct Oracle {
  virtual ~Oracle() = default;
  virtual OracleAnswer decide(const std::vector<FormulaPtr>& gamma,
                              const FormulaPtr& phi) = 0;
};

// Bounded two-sided oracle.  The refutable side runs consequence_search
// over finite chains; the provable side chains backward from the goal
// through hypotheses, axiom instances, and a user-supplied proof library,
// combining them by modus ponens and generalization up to closure_depth
// levels, and re-checks every assembled proof before answering.  Anything
// else is unknown.
struct DefaultOracle : Oracle {
  Signature sig;               // base language; queries extend it with their own symbols
  std::vector<Proof> library;  // known proofs, usable when their hypotheses lie in gamma
  SearchBounds bounds;         // refutable-side search bounds
  int closure_depth = 2;       // provable-side chaining depth
  int inf_bound = kDefaultInfBound;

  DefaultOracle() = default;
  explicit DefaultOracle(Signature s) : sig(std::move(s)) {}
  OracleAnswer decide(const std::vector<FormulaPtr>& gamma, const FormulaPtr& phi) override;
};

// ---------- formula enumeration ----------

// The enumeration ranges over sig extended with countably many expansion
// constants h1, h2, ... (underscores appended while a name collides with a
// signature symbol); variables are x1, x2, ... likewise.
std::string enum_var(const Signature& sig, int i);
std::string expansion_constant(const Signature& sig, int i);

// Weight driving the enumeration order: every connective, atom, binder and
// 0 contributes 1, the variable x_i contributes i, signature constants
// contribute 1, and the expansion constant h_i contributes i + 1 (so only
// finitely many formulas exist below any bound).
int enum_weight(const FormulaPtr& f, const Signature& sig);

// All core-grammar formulas (0, atoms, &, ->, forall, exists) of weight at
// most size_bound, duplicate-free, in a fixed order: weight-major, and
// within one weight atoms, then 0, then &, then ->, then forall, then
// exists.  The listing for a smaller bound is a prefix of the listing for
// any larger one, and identical across runs.
std::vector<FormulaPtr> enumerate_formulas(const Signature& sig, int size_bound);

// ---------- construction state ----------

struct TheoryState {
  int index = 0;                   // next enumeration step i
  std::vector<FormulaPtr> gamma;   // explicit core of Gamma_i (the closure is lazy)
  FormulaPtr phi;                  // phi_i, a sentence
  Signature sig;                   // base language; expansion-constant names derive from it
  std::set<std::string> consumed;  // expansion constants already introduced
};

enum class Membership { Yes, No, Unknown };

// Lazy membership in cl(Gamma_i), which is never materialized: theta is a
// member when it mentions only constants occurring in the explicit core
// and the oracle proves it from the core.  A refutable answer is a No; an
// unknown answer stays unknown.
Membership cl_member(const TheoryState& st, const FormulaPtr& theta, Oracle& oracle);

// One oracle query made during a step, as recorded in the trace.
struct QueryRecord {
  FormulaPtr formula;     // consequent asked about
  bool with_psi = false;  // premises were the core plus psi, not the core alone
  OracleAnswer::Kind answer = OracleAnswer::Kind::Unknown;
};

struct TraceRecord {
  int index = 0;
  FormulaPtr psi;
  std::string case_tag;  // "1a-i" | "1a-ii" | "1b" | "2a" | "2b" | "3a" | "3b" | "suspended"
  std::vector<QueryRecord> queries;
  std::vector<FormulaPtr> gamma_delta;  // formulas added to the explicit core
  std::vector<FormulaPtr> gamma_after;  // explicit core after the step
  FormulaPtr phi_next;
  std::optional<std::string> fresh_constant;  // case 1a-i
  std::optional<int> k;                       // case 2b
};

struct Trace {
  std::vector<FormulaPtr> gamma0;
  FormulaPtr phi0;
  Signature sig;
  std::vector<TraceRecord> records;
  bool suspended = false;
  std::string suspend_reason;
};

struct HenkinOptions {
  int k_max = 16;            // case 2b: largest exponent tried before suspending
  int max_enum_weight = 10;  // largest enumeration weight run_henkin may request
};

// One step of the case analysis on psi:
//  1  psi a sentence forall x chi: branch on gamma |- psi and
//     gamma |- phi v psi; introduce a fresh expansion constant (1a-i) or
//     add phi -> psi (1a-ii).
//  2  psi a sentence g v (a -> a & b): branch on gamma, psi |- phi; on the
//     provable branch scan k = 0..k_max for a refutable
//     phi v g v (a -> b^k), skipping unknowns.
//  3  anything else: add psi iff gamma, psi |/- phi.
// A branch-deciding unknown suspends: the state comes back unchanged and
// the record is tagged "suspended".
struct StepResult {
  TheoryState state;
  TraceRecord record;
  bool suspended = false;
  std::string suspend_reason;
};
StepResult henkin_step(const TheoryState& st, const FormulaPtr& psi, Oracle& oracle,
                       const HenkinOptions& opts = {});

// Feeds the first `steps` enumerated formulas through henkin_step starting
// from (gamma, phi).  phi must be a sentence and the oracle must not prove
// gamma |- phi: a provable pre-check throws std::invalid_argument, an
// unknown one returns an immediately-suspended empty trace.  Mid-run
// suspension returns the partial trace with the suspended record last.
Trace run_henkin(const Signature& sig, const std::vector<FormulaPtr>& gamma,
                 const FormulaPtr& phi, Oracle& oracle, int steps,
                 const HenkinOptions& opts = {});

// ---------- trace checking ----------

struct TraceCheck {
  // hard invariants of the recorded prefix
  bool gamma_monotone = true;      // cores only grow and match the recorded deltas
  bool phi_growth_ok = true;       // phi changes only in 1a-i/2b and keeps the old phi as a disjunct
  bool no_provable_phi = true;     // no core-only query for phi_i answered provable
  bool fresh_constants_ok = true;  // 1a-i constants distinct and absent from the prior state
  bool tags_consistent = true;     // case tags match the recorded shapes and verdicts
  bool k_witnesses_ok = true;      // 2b: the recorded k is still not provable on replay
  // progress measures, re-queried against the final core
  int prelinearity_pairs = 0, prelinearity_ok = 0;  // processed (a->b, b->a) pairs
  int henkin_foralls = 0, henkin_ok = 0;            // 1a-i witnesses still unproved
  std::vector<std::string> violations;
  bool ok() const {
    return gamma_monotone && phi_growth_ok && no_provable_phi && fresh_constants_ok &&
           tags_consistent && k_witnesses_ok && prelinearity_ok == prelinearity_pairs &&
           henkin_ok == henkin_foralls;
  }
};
TraceCheck check_trace(const Trace& t, Oracle& oracle);

// ---------- trace records ----------

// Line-delimited structured log: a header object with the occurring
// signature and gamma0/phi0, one object per step (index, psi, case tag,
// queries, delta, phi_next, fresh constant and k when present), and a
// trailer when suspended.  The result of trace_from_records replays
// through check_trace; sig needs only the base language, every other
// symbol is reintroduced from the header and the fresh-constant fields.
std::string trace_to_records(const Trace& t);
Trace trace_from_records(const std::string& text, const Signature& sig);

// ---------- Lindenbaum quotients ----------

using EquivFn = std::function<bool(const FormulaPtr&, const FormulaPtr&)>;

// Equivalence used when none is supplied: mutual implication not refuted
// by consequence_search over all finite chains of size <= 4 and domains of
// size <= 2 — a bounded semantic surrogate for provable equivalence over
// the empty theory.  Memoizes decided pairs; shares the cache across
// copies.
EquivFn default_lindenbaum_equiv(const Signature& sig);

struct QuotientClass {
  FormulaPtr rep;  // first listed member
  std::vector<FormulaPtr> members;
};

struct Quotient {
  std::vector<QuotientClass> classes;  // ascending when totally ordered
  std::vector<std::vector<bool>> le;   // le[i][j]: class i <= class j
  // operation tables over class indices; -1 when the result leaves the
  // listed fragment (the operations are partial)
  std::vector<std::vector<int>> conj;
  std::vector<std::vector<int>> impl;
  bool totally_ordered = false;
  std::vector<std::string> violations;  // congruence failures with witnesses
  bool ok() const { return violations.empty(); }
};

// Partitions the sentences by equiv, orders classes by [a] <= [b] iff
// a -> b is equivalent to 1, and computes & and -> on representatives,
// checking operations and order for representative independence
// (congruence on the fragment; failures are reported in violations).
// equiv must behave as an equivalence relation on the list itself —
// reflexive, symmetric, transitive — which is checked and throws
// std::invalid_argument on failure.  equiv is also applied to formulas
// built from the listed ones (implications, conjunctions, 1).
Quotient lindenbaum_quotient(const std::vector<FormulaPtr>& sentences, const EquivFn& equiv);

}  // namespace tnl
