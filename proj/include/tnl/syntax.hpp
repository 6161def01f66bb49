#pragma once

// Predicate-language syntax: signatures, terms, formulas, parsing and
// printing, capture-avoiding substitution, and sugar expansion.
//
// Primitive connectives are & (strong conjunction), -> (implication), 0
// (falsum) and the quantifiers.  /\, \/, ~, 1 and ^n (n-fold &) are sugar
// nodes: they are kept in the tree as parsed and rewritten on demand by
// expand_sugar.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tnl {

// ---------- errors ----------

// Raised on malformed input text (formulas, fixture files).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a substitution would capture a variable.
struct CaptureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------- signature ----------

struct Signature {
  std::map<std::string, int> preds;  // name -> arity
  std::set<std::string> consts;

  bool is_pred(const std::string& n) const { return preds.count(n) > 0; }
  bool is_const(const std::string& n) const { return consts.count(n) > 0; }
  // Any identifier not declared as predicate or constant names a variable.
  bool is_var(const std::string& n) const { return !is_pred(n) && !is_const(n); }

  void add_pred(const std::string& n, int arity);
  void add_const(const std::string& n);
};

// ---------- terms ----------

enum class TermKind { Var, Const };

struct Term {
  TermKind kind;
  std::string name;

  bool operator==(const Term& o) const { return kind == o.kind && name == o.name; }
  bool operator<(const Term& o) const {
    if (kind != o.kind) return kind < o.kind;
    return name < o.name;
  }
};

inline Term var(std::string n) { return Term{TermKind::Var, std::move(n)}; }
inline Term cnst(std::string n) { return Term{TermKind::Const, std::move(n)}; }

// ---------- formulas ----------

enum class FKind {
  Atom,
  Zero,
  One,     // sugar: 0 -> 0
  Conj,    // &
  Impl,    // ->
  And,     // sugar: min conjunction
  Or,      // sugar: max disjunction
  Not,     // sugar ~
  Forall,
  Exists,
  Power,   // sugar: a^k, k-fold & associated to the left; a^0 = 1
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Exponent value marking an uninstantiated template hole (written a^n).
inline constexpr int kPowerHole = -1;

struct Formula {
  FKind kind;
  std::string name;        // Atom: predicate name; Forall/Exists: bound variable
  std::vector<Term> args;  // Atom only
  FormulaPtr a, b;         // operands; unary kinds use a
  int exp = 0;             // Power only; kPowerHole for a^n

  Formula(FKind k) : kind(k) {}
};

FormulaPtr make_atom(std::string pred, std::vector<Term> args);
FormulaPtr make_zero();
FormulaPtr make_one();
FormulaPtr make_conj(FormulaPtr a, FormulaPtr b);
FormulaPtr make_impl(FormulaPtr a, FormulaPtr b);
FormulaPtr make_and(FormulaPtr a, FormulaPtr b);
FormulaPtr make_or(FormulaPtr a, FormulaPtr b);
FormulaPtr make_not(FormulaPtr a);
FormulaPtr make_forall(std::string v, FormulaPtr a);
FormulaPtr make_exists(std::string v, FormulaPtr a);
FormulaPtr make_power(FormulaPtr a, int exp);

bool equal(const FormulaPtr& a, const FormulaPtr& b);
// Total order on formulas (kind rank, then components); used for the
// deterministic enumeration in the Henkin runner.
int compare(const FormulaPtr& a, const FormulaPtr& b);

std::set<std::string> free_vars(const FormulaPtr& f);
bool is_sentence(const FormulaPtr& f);
// Number of AST nodes (sugar counted as written).
int node_count(const FormulaPtr& f);

// True iff substituting t for free x in f captures no variable of t.
bool is_substitutable(const FormulaPtr& f, const std::string& x, const Term& t);
// Capture-avoiding substitution of t for free occurrences of x.
// Throws CaptureError instead of renaming.
FormulaPtr substitute(const FormulaPtr& f, const std::string& x, const Term& t);

// True iff constant c occurs as a term argument somewhere in f.
bool mentions_const(const FormulaPtr& f, const std::string& c);
// True iff variable x occurs anywhere in f: free, bound, or as a binder.
bool mentions_var(const FormulaPtr& f, const std::string& x);
// Replaces every occurrence of constant c by variable x.  Throws
// CaptureError if an occurrence sits under a binder over x.
FormulaPtr rename_const_to_var(const FormulaPtr& f, const std::string& c,
                               const std::string& x);

// Rewrites all sugar to the primitive connectives:
//   a /\ b  =>  a & (a -> b)
//   a \/ b  =>  ((a->b)->b) /\ ((b->a)->a), then /\ expanded
//   ~a      =>  a -> 0
//   1       =>  0 -> 0
//   a^k     =>  k-fold & associated to the left; a^1 = a, a^0 = 1
// Idempotent; throws ParseError on an uninstantiated power hole.
FormulaPtr expand_sugar(const FormulaPtr& f);

// Replaces every power hole a^n by a^k.
FormulaPtr instantiate_hole(const FormulaPtr& f, int k);
bool has_power_hole(const FormulaPtr& f);

std::string to_string(const FormulaPtr& f);
std::string to_string(const Term& t);

struct ParseOpts {
  bool allow_power_hole = false;  // permit a^n inside proof templates
};

// Parses the concrete grammar
//   impl  := or ('->' impl)?                right-associative
//   or    := and ('\/' and)*
//   and   := conj ('/\' conj)*
//   conj  := unary ('&' unary)*
//   unary := '~' unary | 'forall' v '.' impl | 'exists' v '.' impl | postfix
//   postfix := primary ('^' nat | '^' 'n')*
//   primary := '0' | '1' | ident ('(' term, ... ')')? | '(' impl ')'
// Binder scope extends maximally to the right.  Unknown formula-position
// identifiers, arity mismatches and binders over non-variables are errors.
FormulaPtr parse_formula(const std::string& text, const Signature& sig,
                         const ParseOpts& opts = {});

// Infers a signature from formula texts: applied identifiers and bare
// formula-position identifiers become predicates, binder-bound names are
// variables, remaining term identifiers become constants.
Signature infer_signature(const std::vector<std::string>& texts);

// Returns base extended with every predicate (with its arity) and constant
// symbol occurring in fs.  Variables never enter the signature.
Signature extend_signature(Signature base, const std::vector<FormulaPtr>& fs);

// Parses a signature file: one `pred NAME ARITY` or `const NAME` per line,
// `#` comments.
Signature parse_signature(const std::string& text);

}  // namespace tnl
