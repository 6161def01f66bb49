#include "tnl/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tnl/calculus.hpp"
#include "tnl/chain.hpp"
#include "tnl/henkin.hpp"
#include "tnl/io.hpp"
#include "tnl/presented.hpp"
#include "tnl/semantics.hpp"
#include "tnl/syntax.hpp"
#include "tnl/tnorm.hpp"

namespace tnl {

namespace {

namespace stdfs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

std::vector<std::string> files_with_ext(const std::string& dir, const std::string& ext) {
  std::vector<std::string> out;
  for (const auto& e : stdfs::directory_iterator(dir))
    if (e.path().extension() == ext) out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

std::string base_name(const std::string& path) {
  return stdfs::path(path).filename().string();
}

// Largest k in 0..g with k/g <= r; r must lie in [0, 1].
int grid_floor(const Rat& r, int g) {
  BigInt k = (numerator(r) * g) / denominator(r);
  return k.convert_to<int>();
}

const std::vector<std::pair<std::string, TNorm>>& standard_tnorms() {
  static const std::vector<std::pair<std::string, TNorm>> ts = {
      {"lukasiewicz", tnorm_lukasiewicz()},
      {"product", tnorm_product()},
      {"godel", tnorm_godel()}};
  return ts;
}

// ---------- 1: residuation on 10^-2 grids ----------

Outcome c1_residuation(const std::string&) {
  const int g = 100;
  std::vector<Rat> v(g + 1);
  for (int i = 0; i <= g; ++i) v[i] = Rat(i, g);
  long triples = 0, oracle_points = 0;
  for (const auto& [name, t] : standard_tnorms()) {
    std::vector<std::vector<Rat>> mul(g + 1, std::vector<Rat>(g + 1));
    std::vector<std::vector<Rat>> res(g + 1, std::vector<Rat>(g + 1));
    for (int i = 0; i <= g; ++i)
      for (int j = 0; j <= g; ++j) {
        mul[i][j] = t.apply(v[i], v[j]);
        res[i][j] = t.residuum(v[i], v[j]);
      }
    for (int x = 0; x <= g; ++x)
      for (int z = 0; z <= g; ++z) {
        const Rat& xz = mul[x][z];
        for (int zp = 0; zp <= g; ++zp) {
          bool lhs = xz <= v[zp];
          bool rhs = v[z] <= res[x][zp];
          if (lhs != rhs)
            return fail("residuation breaks for " + name + " at x=" + rat_str(v[x]) +
                        ", z=" + rat_str(v[z]) + ", z'=" + rat_str(v[zp]));
          ++triples;
        }
      }
    // closed form against the descending-scan grid oracle
    for (int x = 0; x <= g; ++x)
      for (int zp = 0; zp <= g; ++zp) {
        int best = -1;
        for (int z = g; z >= 0; --z)
          if (mul[x][z] <= v[zp]) {
            best = z;
            break;
          }
        if (best != grid_floor(res[x][zp], g))
          return fail("grid oracle disagrees with residuum for " + name + " at x=" +
                      rat_str(v[x]) + ", z'=" + rat_str(v[zp]));
        ++oracle_points;
      }
  }
  std::ostringstream d;
  d << triples << " equivalence triples and " << oracle_points
    << " oracle points across 3 t-norms, exact rationals";
  return {true, d.str()};
}

// ---------- 2: derived lattice operations ----------

Outcome c2_lattice_ops(const std::string& fdir) {
  const int g = 100;
  std::vector<Rat> v(g + 1);
  for (int i = 0; i <= g; ++i) v[i] = Rat(i, g);
  long grid_pairs = 0;
  for (const auto& [name, t] : standard_tnorms()) {
    for (int i = 0; i <= g; ++i)
      for (int j = 0; j <= g; ++j) {
        const Rat &x = v[i], &y = v[j];
        if (t.apply(x, t.residuum(x, y)) != std::min(x, y))
          return fail("meet identity breaks for " + name + " at x=" + rat_str(x) +
                      ", y=" + rat_str(y));
        Rat join = std::min(t.residuum(t.residuum(x, y), y),
                            t.residuum(t.residuum(y, x), x));
        if (join != std::max(x, y))
          return fail("join identity breaks for " + name + " at x=" + rat_str(x) +
                      ", y=" + rat_str(y));
        ++grid_pairs;
      }
  }
  long chain_pairs = 0;
  int chain_files = 0;
  for (const std::string& path : files_with_ext(fdir + "/chains", ".chain")) {
    ChainFile cf = parse_chain_file(slurp(path));
    if (!cf.finite) continue;
    ++chain_files;
    const FiniteChain& c = *cf.finite;
    for (int x = 0; x < c.n; ++x)
      for (int y = 0; y < c.n; ++y) {
        if (c.apply(x, c.residuum(x, y)) != std::min(x, y))
          return fail("meet identity breaks in " + base_name(path));
        int join = std::min(c.residuum(c.residuum(x, y), y),
                            c.residuum(c.residuum(y, x), x));
        if (join != std::max(x, y)) return fail("join identity breaks in " + base_name(path));
        ++chain_pairs;
      }
  }
  if (chain_files == 0) return fail("no finite chain fixtures found");
  std::ostringstream d;
  d << grid_pairs << " grid pairs across 3 t-norms, " << chain_pairs
    << " exhaustive pairs across " << chain_files << " chain fixtures";
  return {true, d.str()};
}

// ---------- 3: decomposition round trip ----------

Outcome c3_decomposition(const std::string&) {
  std::vector<FiniteChain> chains = enumerate_bl_chains(6);
  long components = 0;
  for (const FiniteChain& c : chains) {
    Decomposition d = decompose(c);
    FiniteChain back = ordinal_sum(d.components);
    if (back.n != c.n || back.mul != c.mul)
      return fail("round trip alters a chain of size " + std::to_string(c.n));
    for (const FiniteHoop& h : d.components) {
      if (!h.satisfies_wajsberg())
        return fail("non-Wajsberg component in a chain of size " + std::to_string(c.n));
      ++components;
    }
  }
  std::ostringstream d;
  d << chains.size() << " chains rebuilt exactly, " << components
    << " components Wajsberg-checked exhaustively";
  return {true, d.str()};
}

// ---------- 4: stable-power condition vs component simplicity ----------

Outcome c4_k_vs_simplicity(const std::string&) {
  std::vector<FiniteChain> chains = enumerate_bl_chains(6);
  int holds = 0;
  for (const FiniteChain& c : chains) {
    bool k = check_K(c).holds;
    Decomposition d = decompose(c);
    bool simple = true;
    for (const FiniteHoop& h : d.components) simple = simple && h.is_simple();
    if (k != simple)
      return fail("condition and simplicity disagree on a chain of size " +
                  std::to_string(c.n) + ": " + c.table_str());
    if (k) ++holds;
  }
  std::ostringstream d;
  d << chains.size() << " chains, zero mismatches; the condition holds on " << holds;
  return {true, d.str()};
}

// ---------- 5: cut saturation ----------

Outcome c5_saturation(const std::string&) {
  std::vector<FiniteChain> chains = enumerate_bl_chains(6);
  long cuts = 0;
  for (const FiniteChain& c : chains) {
    for (const Cut& cut : enumerate_cuts(c)) {
      std::optional<int> s = saturating_idempotent(c, cut);
      if (!s) return fail("cut without a saturating idempotent at pos " +
                          std::to_string(cut.pos) + " in " + c.table_str());
      if (*s != cut.pos || !c.is_idempotent(*s))
        return fail("saturating element is not the idempotent min(Y) at pos " +
                    std::to_string(cut.pos) + " in " + c.table_str());
      ++cuts;
    }
  }
  std::ostringstream d;
  d << cuts << " cuts across " << chains.size() << " chains, each saturated by min(Y)";
  return {true, d.str()};
}

// ---------- 6: infinitary-rule soundness on t-norm fixtures ----------

Outcome c6_inf_soundness(const std::string& fdir) {
  const int g = 100;
  std::vector<std::string> files = files_with_ext(fdir + "/tnorms", ".tn");
  if (files.empty()) return fail("no t-norm fixtures found");
  std::ostringstream d;
  for (const std::string& path : files) {
    TNorm t = parse_tnorm_file(slurp(path));
    InfSoundnessReport rep = inf_rule_soundness_check(t, g);
    std::set<Rat> pts;
    for (int i = 0; i <= g; ++i) pts.insert(Rat(i, g));
    for (const Piece& p : t.pieces) {
      pts.insert(p.lo);
      pts.insert(p.hi);
    }
    long triples = rep.checked * static_cast<long>(pts.size() - 1);
    if (!rep.ok())
      return fail(base_name(path) + ": " + rep.violations.front());
    if (triples < 10000)
      return fail(base_name(path) + ": only " + std::to_string(triples) +
                  " verified triples");
    d << base_name(path) << "=" << triples << " ";
  }
  return {true, "verified triples per fixture: " + d.str()};
}

// ---------- 7: shift-axiom dichotomy ----------

Outcome c7_shift_dichotomy(const std::string& fdir) {
  // (i) every fixture instance is unrefuted over finite-domain structures
  // on every t-norm fixture (and on small finite chains).
  SearchBounds bounds;
  bounds.max_chain_size = 3;
  bounds.max_domain_size = 2;
  bounds.value_grid = 4;
  for (const std::string& path : files_with_ext(fdir + "/tnorms", ".tn"))
    bounds.tnorms.push_back(parse_tnorm_file(slurp(path)));

  std::vector<std::string> texts = fixture_lines(slurp(fdir + "/formulas/rc_instances.txt"));
  if (texts.empty()) return fail("no shift-axiom instances found");
  Signature isig = infer_signature(texts);
  for (const std::string& text : texts) {
    FormulaPtr inst = parse_formula(text, isig);
    SearchResult r = consequence_search(isig, {}, inst, bounds);
    if (r.refuted) return fail("instance refuted: " + text + " — " + r.description);
    if (r.bounds_exhausted) return fail("search caps hit on instance: " + text);
  }

  // (ii) the natural-number demonstration: value exactly the MV3 midpoint,
  // antecedent midpoint, consequent bottom, all in exact rationals; the
  // embedded image evaluates the same instance to 1.
  Signature sig = parse_signature(slurp(fdir + "/sig/p1.sig"));
  FormulaPtr rc = parse_formula_list(slurp(fdir + "/formulas/rc.fml"), sig).at(0);
  PresentedChain chain = *parse_chain_file(slurp(fdir + "/chains/rc_demo.chain")).presented;
  Structure<PresentedAlg> m =
      parse_presented_model(slurp(fdir + "/models/rc_demo.model"), sig, chain);
  PresentedAlg alg{&chain};

  PElem half{0, Rat(1, 2)};
  EvalResult<PresentedAlg> ante =
      eval(alg, m, parse_formula("forall x. P(x) & P(x)", sig));
  EvalResult<PresentedAlg> cons =
      eval(alg, m, parse_formula("(forall x. P(x)) & (forall x. P(x))", sig));
  EvalResult<PresentedAlg> whole = eval(alg, m, rc);
  if (!ante.ok || !cons.ok || !whole.ok)
    return fail("demonstration model evaluation error: " + ante.error + cons.error +
                whole.error);
  if (!pelem_eq(ante.value, half))
    return fail("antecedent is " + pelem_str(ante.value) + ", want " + pelem_str(half));
  if (!pelem_eq(cons.value, chain.bottom()))
    return fail("consequent is " + pelem_str(cons.value) + ", want bottom");
  if (!pelem_eq(whole.value, half))
    return fail("shift axiom evaluates to " + pelem_str(whole.value) + ", want " +
                pelem_str(half));

  TNorm t = parse_tnorm_file(slurp(fdir + "/tnorms/luk_prod.tn"));
  Structure<TNormAlg> em =
      parse_tnorm_model(slurp(fdir + "/models/rc_demo_embedded.model"), sig);
  EvalResult<TNormAlg> ev = eval(TNormAlg{&t}, em, rc);
  if (!ev.ok || ev.value != Rat(1))
    return fail("embedded image evaluates to " + (ev.ok ? rat_str(ev.value) : ev.error) +
                ", want 1");

  // the file corpus and the built-in demonstration must agree
  RcDemo demo = make_rc_demo();
  EvalResult<PresentedAlg> built =
      eval(PresentedAlg{&demo.chain}, demo.model, demo.shift_axiom);
  if (!built.ok || !pelem_eq(built.value, whole.value))
    return fail("fixture corpus and built-in demonstration disagree");

  std::ostringstream d;
  d << texts.size() << " instances unrefuted on " << bounds.tnorms.size()
    << " t-norm fixtures; demonstration value " << pelem_str(whole.value)
    << ", embedded value 1";
  return {true, d.str()};
}

// ---------- 8: proof corpus and mutation suite ----------

Outcome c8_proof_corpus(const std::string& fdir) {
  std::map<std::string, int> schema_uses;
  std::map<std::string, int> rule_uses;
  auto record = [&](const std::vector<ProofStep>& steps) {
    for (const ProofStep& st : steps) {
      switch (st.kind) {
        case StepKind::Axiom:
          ++rule_uses["axiom"];
          ++schema_uses[schema_name(st.schema)];
          break;
        case StepKind::Hyp: ++rule_uses["hyp"]; break;
        case StepKind::MP: ++rule_uses["mp"]; break;
        case StepKind::Gen: ++rule_uses["gen"]; break;
        case StepKind::Inf: ++rule_uses["inf"]; break;
      }
    }
  };

  int valid_count = 0, inf_templates = 0;
  std::vector<std::pair<std::string, ProofFixture>> sweep;
  for (const std::string& path : files_with_ext(fdir + "/proofs/valid", ".prf")) {
    ProofFixture f = parse_proof_fixture(slurp(path));
    if (!f.expect) return fail(base_name(path) + " has no expectation header");
    Verdict v = check_proof(f.gamma, f.proof);
    if (v.kind != *f.expect)
      return fail(base_name(path) + " expected accept, got: " + to_string(v));
    record(f.proof.steps);
    for (const auto& [name, tmpl] : f.proof.templates) record(tmpl.steps);
    inf_templates += static_cast<int>(f.proof.templates.size());
    bool uses_inf = false;
    for (const ProofStep& st : f.proof.steps) uses_inf = uses_inf || st.kind == StepKind::Inf;
    if (!uses_inf) sweep.emplace_back(base_name(path), std::move(f));
    ++valid_count;
  }
  if (valid_count < 20)
    return fail("only " + std::to_string(valid_count) + " valid fixtures");
  for (int i = 0; i < kSchemaCount; ++i) {
    std::string name = schema_name(static_cast<SchemaId>(i));
    if (schema_uses[name] == 0) return fail("no valid fixture uses schema " + name);
  }
  for (const char* rule : {"axiom", "hyp", "mp", "gen", "inf"})
    if (rule_uses[rule] == 0) return fail(std::string("no valid fixture uses rule ") + rule);
  if (inf_templates == 0) return fail("no infinitary template in the corpus");

  int mutant_count = 0;
  for (const std::string& path : files_with_ext(fdir + "/proofs/mutants", ".prf")) {
    ProofFixture f = parse_proof_fixture(slurp(path));
    if (!f.expect || *f.expect != Verdict::Kind::Invalid)
      return fail(base_name(path) + " lacks an invalid-step expectation");
    Verdict v = check_proof(f.gamma, f.proof);
    if (v.kind != Verdict::Kind::Invalid)
      return fail(base_name(path) + " was accepted: " + to_string(v));
    if (v.step != f.expect_step)
      return fail(base_name(path) + " rejected at step " + std::to_string(v.step) +
                  ", annotated step " + std::to_string(f.expect_step));
    ++mutant_count;
  }
  if (mutant_count < 20)
    return fail("only " + std::to_string(mutant_count) + " mutants");

  // soundness sweep: accepted conclusions survive the bounded search
  SearchBounds bounds;
  bounds.max_chain_size = 5;
  bounds.max_domain_size = 3;
  for (const auto& [name, f] : sweep) {
    SearchResult r =
        consequence_search(f.sig, f.gamma, f.proof.steps.back().conclusion, bounds);
    if (r.refuted)
      return fail("accepted conclusion of " + name + " refuted: " + r.description);
  }
  std::ostringstream d;
  d << valid_count << " proofs accepted (all " << kSchemaCount
    << " schemata, every rule), " << mutant_count << " mutants rejected at their "
    << "annotated steps, " << sweep.size() << " conclusions swept over chains <= 5";
  return {true, d.str()};
}

// ---------- 9: embedding into t-norms ----------

Outcome c9_embedding(const std::string&) {
  const std::vector<std::pair<std::string, CompKind>> tops = {
      {"standard MV", CompKind::StdMV}, {"product", CompKind::ProdHoop}};
  std::vector<Rat> want_breaks = {Rat(0), Rat(1, 4), Rat(1, 2), Rat(1)};
  long pairs = 0;
  for (const auto& [label, kind] : tops) {
    PresentedChain p{{CompDesc{CompKind::FiniteMV, 3}, CompDesc{kind, 0}}};
    p.validate();
    EmbedResult er = embed_into_tnorm(p);
    if (!er.report.ok)
      return fail("MV3 + " + label + ": " + er.report.violations.front());
    if (er.map.breakpoints() != want_breaks)
      return fail("MV3 + " + label + ": unexpected breakpoints " + er.map.describe());
    if (er.map.map(PElem{0, Rat(0)}) != Rat(0) ||
        er.map.map(PElem{0, Rat(1, 2)}) != Rat(1, 4) || er.map.map(punit()) != Rat(1))
      return fail("MV3 + " + label + ": MV component lands off {0, 1/4, 1/2}");
    std::vector<PElem> sample = sample_elements(p, 40);
    for (size_t i = 0; i < sample.size(); ++i)
      for (size_t j = 0; j < sample.size(); ++j) {
        bool lt = pelem_cmp(sample[i], sample[j]) < 0;
        if (lt != (er.map.map(sample[i]) < er.map.map(sample[j])))
          return fail("MV3 + " + label + ": order not strictly preserved at " +
                      pelem_str(sample[i]) + " vs " + pelem_str(sample[j]));
      }
    pairs += er.report.pairs_checked;
  }
  std::ostringstream d;
  d << "both embeddings homomorphic (" << pairs
    << " exact pairs), breakpoints (0, 1/4, 1/2, 1), order strict on 40+ samples";
  return {true, d.str()};
}

// ---------- 10: theory-extension runner ----------

Outcome c10_extension_runner(const std::string& fdir) {
  Signature sig = parse_signature(slurp(fdir + "/sig/toy.sig"));
  std::vector<FormulaPtr> gamma =
      parse_formula_list(slurp(fdir + "/fragments/toy_gamma.fml"), sig);
  FormulaPtr phi = parse_formula_list(slurp(fdir + "/fragments/toy_phi.fml"), sig).at(0);

  DefaultOracle oracle(sig);
  Trace t = run_henkin(sig, gamma, phi, oracle, 25);
  TraceCheck tc = check_trace(t, oracle);
  if (!tc.ok())
    return fail(tc.violations.empty() ? "trace check failed" : tc.violations.front());
  if (t.suspended && t.suspend_reason.empty())
    return fail("suspension without an unresolved query");
  std::ostringstream d;
  d << t.records.size() << " steps, " << (t.suspended ? "suspended: " + t.suspend_reason
                                                      : std::string("no suspension"))
    << "; prelinearity " << tc.prelinearity_ok << "/" << tc.prelinearity_pairs
    << ", fresh witnesses " << tc.henkin_ok << "/" << tc.henkin_foralls;
  return {true, d.str()};
}

// ---------- 11: Lindenbaum fragment ----------

Outcome c11_lindenbaum(const std::string& fdir) {
  Signature sig = parse_signature(slurp(fdir + "/sig/p1c.sig"));
  std::vector<FormulaPtr> frag =
      parse_formula_list(slurp(fdir + "/formulas/lindenbaum30.txt"), sig);
  if (frag.size() < 30)
    return fail("fragment has only " + std::to_string(frag.size()) + " sentences");
  Quotient q = lindenbaum_quotient(frag, default_lindenbaum_equiv(sig));
  if (!q.ok()) return fail("congruence: " + q.violations.front());
  if (!q.totally_ordered) return fail("quotient is not totally ordered");

  auto class_of = [&](const FormulaPtr& f) -> int {
    for (size_t i = 0; i < q.classes.size(); ++i)
      for (const FormulaPtr& m : q.classes[i].members)
        if (equal(m, f)) return static_cast<int>(i);
    return -1;
  };
  int pairs = 0;
  for (const FormulaPtr& s : frag) {
    if (s->kind != FKind::Forall) continue;
    int ci = class_of(s);
    for (const std::string& k : sig.consts) {
      int cj = class_of(substitute(s->a, s->name, cnst(k)));
      if (cj < 0) continue;  // instance not listed in the fragment
      ++pairs;
      if (!q.le[ci][cj])
        return fail("[" + to_string(s) + "] is not below its instance at " + k);
    }
  }
  if (pairs == 0) return fail("no universal/instance pair listed in the fragment");
  std::ostringstream d;
  d << frag.size() << " sentences, " << q.classes.size()
    << " ordered classes, congruence clean, " << pairs
    << " universal-below-instance pairs";
  return {true, d.str()};
}

// ---------- dispatch ----------

struct Entry {
  int id;
  const char* suite;
  const char* name;
  Outcome (*fn)(const std::string&);
  double budget;  // seconds; 0 = unbudgeted
};

const Entry kEntries[] = {
    {1, "algebra", "residuation", c1_residuation, 10},
    {2, "algebra", "derived lattice operations", c2_lattice_ops, 0},
    {3, "algebra", "decomposition round trip", c3_decomposition, 60},
    {4, "algebra", "stable powers vs simplicity", c4_k_vs_simplicity, 0},
    {5, "algebra", "cut saturation", c5_saturation, 0},
    {6, "semantics", "infinitary rule soundness", c6_inf_soundness, 0},
    {7, "semantics", "shift-axiom dichotomy", c7_shift_dichotomy, 0},
    {8, "calculus", "proof corpus and mutants", c8_proof_corpus, 0},
    {9, "algebra", "t-norm embedding", c9_embedding, 0},
    {10, "henkin", "extension runner", c10_extension_runner, 120},
    {11, "henkin", "lindenbaum fragment", c11_lindenbaum, 0},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& suite,
                                            const std::string& fixture_dir) {
  bool known = suite == "all";
  for (const Entry& e : kEntries) known = known || suite == e.suite;
  if (!known) throw std::invalid_argument("unknown suite '" + suite + "'");

  std::vector<CriterionResult> out;
  for (const Entry& e : kEntries) {
    if (suite != "all" && suite != e.suite) continue;
    CriterionResult r;
    r.id = e.id;
    r.suite = e.suite;
    r.name = e.name;
    auto t0 = std::chrono::steady_clock::now();
    try {
      Outcome o = e.fn(fixture_dir);
      r.pass = o.pass;
      r.detail = o.detail;
    } catch (const std::exception& ex) {
      r.pass = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (e.budget > 0 && r.seconds >= e.budget) {
      r.pass = false;
      std::ostringstream b;
      b << r.detail << " [over the " << e.budget << "s budget]";
      r.detail = b.str();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace tnl
