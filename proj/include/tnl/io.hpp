#pragma once

// Fixture-file loaders shared by the tests and the command-line tool:
// formula lists, chain and t-norm descriptions, structures over the three
// algebra adapters, proof files with expectation headers, and the FNV-1a
// content hash used in report provenance lines.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tnl/calculus.hpp"
#include "tnl/chain.hpp"
#include "tnl/presented.hpp"
#include "tnl/semantics.hpp"
#include "tnl/syntax.hpp"
#include "tnl/tnorm.hpp"

namespace tnl {

// ---------- files and hashing ----------

// Reads a whole file as bytes.  Throws std::runtime_error naming the path
// on failure.
std::string slurp(const std::string& path);

// 64-bit FNV-1a of the raw bytes, and its 16-digit hex rendering.
std::uint64_t fnv1a(std::string_view bytes);
std::string fnv1a_hex(std::string_view bytes);

// ---------- line-oriented fixture text ----------

// Non-empty lines with `#` comments stripped, whitespace-trimmed, in file
// order.
std::vector<std::string> fixture_lines(const std::string& text);

// One formula per line; `#` comments.  Errors carry the 1-based line.
std::vector<FormulaPtr> parse_formula_list(const std::string& text, const Signature& sig);

// Lines `<tag> <formula>`, as in the schema-instance corpus.
struct TaggedFormula {
  std::string tag;
  std::string text;
};
std::vector<TaggedFormula> parse_tagged_formulas(const std::string& text);

// ---------- chains and t-norms ----------

// `chain` header, then either
//   table N     followed by N*N element indices (the * table, row-major)
//   sum         followed by one component per line:
//                 mv K | mv-std | prod | godel
// A table yields a finite chain only; a sum always yields a presented
// chain, plus a finite chain when every component is a finite MV hoop.
struct ChainFile {
  std::optional<FiniteChain> finite;
  std::optional<PresentedChain> presented;
};
ChainFile parse_chain_file(const std::string& text);

// `tnorm` header, then piece lines `luk a b | prod a b | godel a b` with
// rational endpoints `p/q`; the piece list is validated before returning.
TNorm parse_tnorm_file(const std::string& text);

// ---------- structures ----------

// Model files share the line grammar
//   domain finite N | domain nat
//   const c = i
//   pred P = table v1 v2 ...                     (row-major over domain^arity)
//   pred P = gen reciprocal <placement> [limit-inf <value>]
//   limit inf|sup <var> {<formula>} = <value>
// and differ per algebra in the value grammar and generator placement:
//   finite chain     values are element indices; no generators
//   t-norm           values are rationals in [0,1]; placement `range lo hi`
//   presented chain  values are `(comp, p/q)` pairs or `unit`;
//                    placement `comp K`
// Tables require a finite domain, generators a natural-number domain.
// Every signature constant and predicate must be interpreted, and nothing
// outside the signature may be.  A gen line's `limit-inf v` declares v as
// the infimum of the generated family P(x); `limit` lines declare bounds
// for compound quantifier bodies the gen shorthand cannot express.
Structure<FiniteAlg> parse_finite_model(const std::string& text, const Signature& sig,
                                        const FiniteChain& chain);
Structure<TNormAlg> parse_tnorm_model(const std::string& text, const Signature& sig);
Structure<PresentedAlg> parse_presented_model(const std::string& text, const Signature& sig,
                                              const PresentedChain& chain);

// ---------- proof fixtures ----------

// A proof file plus its fixture header directives:
//   # sig: pred p 0 ; const c            signature entries, `;`-separated
//   # gamma: p ; p -> q                  hypotheses, `;`-separated
//   # expect valid
//   # expect valid-with-bounded-inf
//   # expect invalid step=3
// Directive lines are comments to the proof parser, so a fixture file is
// also a plain proof file.  sig/gamma lines accumulate; the last expect
// line wins; all are optional.
struct ProofFixture {
  Signature sig;
  std::vector<FormulaPtr> gamma;
  Proof proof;
  std::optional<Verdict::Kind> expect;
  int expect_step = 0;  // expect invalid: the offending 1-based step
};
ProofFixture parse_proof_fixture(const std::string& text);

}  // namespace tnl
