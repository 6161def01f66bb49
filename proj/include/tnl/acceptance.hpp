#pragma once

// Executable acceptance suite: eleven numbered checks that exercise the
// library end to end against the fixture corpus — residuation and lattice
// laws on value grids, decomposition and saturation over the exhaustive
// chain enumeration, infinitary-rule soundness, the quantifier-shift
// dichotomy, the proof corpus with its mutants, t-norm embeddings, the
// theory-extension runner, and the Lindenbaum fragment.  Each check
// reports pass/fail with a one-line account of what was counted; checks
// with a runtime budget fail when they exceed it.

#include <string>
#include <vector>

namespace tnl {

struct CriterionResult {
  int id = 0;
  std::string suite;   // "algebra" | "semantics" | "calculus" | "henkin"
  std::string name;
  bool pass = false;
  std::string detail;  // counts, witnesses, or the first failure
  double seconds = 0;
};

// Runs one suite ("algebra", "semantics", "calculus", "henkin") or "all",
// reading fixtures from fixture_dir.  Results come back ordered by id.
// Throws std::invalid_argument on an unknown suite name.
std::vector<CriterionResult> run_acceptance(const std::string& suite,
                                            const std::string& fixture_dir);

}  // namespace tnl
