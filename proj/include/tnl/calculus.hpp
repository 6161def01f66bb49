#pragma once

// Hilbert-style calculus: axiom-schema recognition, proof objects with
// modus ponens / generalization / infinitary-family steps, the proof
// checker, and the lemma-on-constants proof transform.
//
// The infinitary rule
//     phi \/ (alpha -> beta^n) : n in N   /   phi \/ (alpha -> alpha & beta)
// (phi, alpha, beta sentences) cannot be checked for all n.  An Inf step
// instead names a proof template with a numeral hole; the checker
// instantiates it at n = 0..inf_bound and verifies each instance, so a
// proof using Inf is at best "valid with bounded inf" — never plain valid.
// The rule is checked for sentences only; the variant allowing open
// formulas in the family is out of scope.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tnl/syntax.hpp"

namespace tnl {

// ---------- axiom schemata ----------

// The eight propositional schemata, the five first-order schemata, and
// the shift axiom RC = forall x (chi & chi) -> (forall x chi) & (forall x chi).
enum class SchemaId {
  A1, A2, A3, A4, A5, A6, A7, A8,
  Forall1, Exists1, Forall2, Exists2, Lin, RC,
};

inline constexpr int kSchemaCount = 14;

// Canonical names: "A1".."A8", "forall1", "exists1", "forall2", "exists2",
// "lin", "RC".
std::string schema_name(SchemaId id);
// Case-insensitive lookup of the canonical names.
std::optional<SchemaId> schema_from_name(const std::string& name);

// One way a formula instantiates a schema.  bindings maps the schema's
// metavariables ("phi", "psi", "chi") to sugar-expanded subformulas; the
// quantifier schemata also report the bound variable and, for forall1 and
// exists1, the instantiating term.
struct AxiomMatch {
  SchemaId id;
  std::map<std::string, FormulaPtr> bindings;
  std::string var;            // quantifier schemata: bound variable
  std::optional<Term> term;   // forall1/exists1: witness term t
};

// All schemata the (sugar-expanded) formula instantiates, in SchemaId
// order, one representative binding per schema.  Side conditions are
// enforced: forall1/exists1 require t substitutable for x, and
// forall2/exists2/lin require x not free in the side formula.  Sugar in
// the input is expanded first; an empty result means no schema matches.
std::vector<AxiomMatch> match_axiom(const FormulaPtr& f);

// Inverts the sugar expansion of a \/ b: true iff f (after expansion) has
// the shape C & (C -> D) with C = (a->b)->b and D = (b->a)->a, binding a
// and b.  Used to recognize disjunctive sentences structurally.
bool decompose_or(const FormulaPtr& f, FormulaPtr& a, FormulaPtr& b);

// ---------- proofs ----------

enum class StepKind { Axiom, Hyp, MP, Gen, Inf };

// One proof line.  Premise indices i, j are 1-based step numbers and must
// refer to earlier steps.  An Inf step records the claimed decomposition
// phi \/ (alpha -> alpha & beta) plus the name of the template that proves
// the family member phi \/ (alpha -> beta^n) for each n.
struct ProofStep {
  FormulaPtr conclusion;
  StepKind kind = StepKind::Hyp;
  SchemaId schema = SchemaId::A1;   // Axiom
  int i = 0, j = 0;                 // MP: premises; Gen: premise i
  std::string var;                  // Gen: generalized variable
  std::string template_name;        // Inf
  FormulaPtr phi, alpha, beta;      // Inf decomposition
};

// A finite proof parameterized by a numeral: step formulas (and any Inf
// decompositions) may contain the power hole ^n.  Instantiating at n must
// yield a proof, from the same hypotheses, of phi \/ (alpha -> beta^n).
struct ProofTemplate {
  std::string name;
  std::vector<ProofStep> steps;
};

struct Proof {
  std::vector<ProofStep> steps;
  std::map<std::string, ProofTemplate> templates;
};

// Replaces every power hole in the template's formulas by the numeral n.
std::vector<ProofStep> instantiate_template(const ProofTemplate& t, int n);

// ---------- checking ----------

struct Verdict {
  enum class Kind { Valid, ValidBoundedInf, Invalid };
  Kind kind = Kind::Valid;
  int inf_bound = 0;    // ValidBoundedInf: instances 0..inf_bound were checked
  int step = 0;         // Invalid: offending 1-based step
  std::string reason;   // Invalid: what went wrong

  bool ok() const { return kind != Kind::Invalid; }
};

std::string to_string(const Verdict& v);

inline constexpr int kDefaultInfBound = 8;

// Checks every step of p against gamma:
//   Axiom  — match_axiom on the conclusion contains the claimed schema;
//   Hyp    — the conclusion equals some member of gamma (up to sugar);
//   MP i j — step j is (step i) -> conclusion;
//   Gen x i — the conclusion is forall x (step i); x unrestricted;
//   Inf    — the conclusion is phi \/ (alpha -> alpha & beta) for the
//            claimed sentences, and the named template instantiates to a
//            valid proof of phi \/ (alpha -> beta^n) for n = 0..inf_bound.
// Malformed steps (dangling indices, non-sentence Inf parameters, missing
// templates, uninstantiated holes) yield Invalid with the step and reason.
Verdict check_proof(const std::vector<FormulaPtr>& gamma, const Proof& p,
                    int inf_bound = kDefaultInfBound);

// ---------- lemma on constants ----------

// Given a proof p of phi from gamma, a constant c absent from gamma, and a
// variable x occurring nowhere in p, returns a proof of forall x phi[c/x]:
// every step is renamed c -> x (axiom steps re-matched after renaming) and
// a final generalization over x is appended.  Throws std::invalid_argument
// if c occurs in gamma, x is not fresh for p, or c occurs in an Inf
// decomposition (renaming would break the sentence restriction).
Proof lemma_on_constants_transform(const std::vector<FormulaPtr>& gamma,
                                   const Proof& p, const std::string& c,
                                   const std::string& x);

// ---------- proof files ----------

// Line-oriented format; `#` starts a comment.
//
//   template <name> {
//     1. <formula> ; axiom A8
//     2. <formula> ; mp 1 2
//   }
//   1. <formula> ; hyp
//   2. <formula> ; axiom forall1
//   3. <formula> ; gen x 2
//   4. <formula> ; inf template=<name> phi={<formula>} alpha={<formula>} beta={<formula>}
//
// Step numbers are 1-based and must be consecutive; the power hole ^n is
// allowed only inside template blocks.  Throws ParseError on bad input.
Proof parse_proof(const std::string& text, const Signature& sig);

}  // namespace tnl
