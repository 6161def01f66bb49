#include "doctest.h"

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "tnl/calculus.hpp"
#include "tnl/henkin.hpp"
#include "tnl/semantics.hpp"
#include "tnl/syntax.hpp"

using namespace tnl;

namespace {

using K = OracleAnswer::Kind;

Signature sig_of(std::initializer_list<std::pair<std::string, int>> preds,
                 std::initializer_list<std::string> consts = {}) {
  Signature s;
  for (const auto& [n, a] : preds) s.add_pred(n, a);
  for (const auto& n : consts) s.add_const(n);
  return s;
}

FormulaPtr F(const std::string& text, const Signature& s) { return parse_formula(text, s); }

std::vector<std::string> texts(const std::vector<FormulaPtr>& fs) {
  std::vector<std::string> out;
  for (const FormulaPtr& f : fs) out.push_back(to_string(f));
  return out;
}

std::vector<std::string> tags(const Trace& t) {
  std::vector<std::string> out;
  for (const TraceRecord& r : t.records) out.push_back(r.case_tag);
  return out;
}

std::vector<FormulaPtr> load_formula_lines(const std::string& path, const Signature& s) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "cannot open ", path);
  std::vector<FormulaPtr> out;
  std::string line;
  while (std::getline(in, line)) {
    auto h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    out.push_back(parse_formula(line.substr(b, e - b + 1), s));
  }
  return out;
}

struct UnknownOracle final : Oracle {
  OracleAnswer decide(const std::vector<FormulaPtr>&, const FormulaPtr&) override {
    OracleAnswer a;
    a.kind = K::Unknown;
    a.note = "scripted unknown";
    return a;
  }
};

}  // namespace

// ---------- naming and enumeration ----------

TEST_CASE("variable and expansion constant names avoid the signature") {
  Signature s = sig_of({{"P", 1}});
  CHECK(enum_var(s, 1) == "x1");
  CHECK(enum_var(s, 3) == "x3");
  CHECK(expansion_constant(s, 1) == "h1");
  CHECK(expansion_constant(s, 2) == "h2");

  Signature clash = sig_of({{"P", 1}, {"h1", 0}}, {"x1"});
  CHECK(enum_var(clash, 1) == "x1_");
  CHECK(enum_var(clash, 2) == "x2");
  CHECK(expansion_constant(clash, 1) == "h1_");
}

TEST_CASE("formula weights count atoms, connectives, and variable indices") {
  Signature s = sig_of({{"p", 0}, {"P", 1}}, {"c"});
  CHECK(enum_weight(F("p", s), s) == 1);
  CHECK(enum_weight(F("0", s), s) == 1);
  CHECK(enum_weight(F("P(c)", s), s) == 2);
  CHECK(enum_weight(F("P(x1)", s), s) == 2);
  CHECK(enum_weight(F("P(x2)", s), s) == 3);
  CHECK(enum_weight(make_atom("P", {cnst("h1")}), s) == 3);
  CHECK(enum_weight(make_atom("P", {cnst("h2")}), s) == 4);
  CHECK(enum_weight(F("p -> 0", s), s) == 3);
  CHECK(enum_weight(F("forall x1. 0", s), s) == 3);
  CHECK(enum_weight(F("forall x2. 0", s), s) == 4);
  CHECK(enum_weight(F("exists x1. P(x1)", s), s) == 4);
  // sugar is weighted through its expansion
  CHECK(enum_weight(make_one(), s) == 3);
  CHECK(enum_weight(F("~p", s), s) == 3);
  CHECK(enum_weight(F("p^2", s), s) == 3);
  CHECK(enum_weight(F("p \\/ p", s), s) == 17);  // l & (l -> r) counts l twice
}

TEST_CASE("enumeration lists the weight-one formulas of a propositional signature in order") {
  Signature s = sig_of({{"p", 0}});
  CHECK(texts(enumerate_formulas(s, 1)) == std::vector<std::string>{"p", "0"});

  Signature s2 = sig_of({{"p", 0}, {"q", 0}});
  auto all = enumerate_formulas(s2, 3);
  REQUIRE(all.size() == 3 + 9 + 9 + 3 + 3);
  CHECK(to_string(all[0]) == "p");
  CHECK(to_string(all[1]) == "q");
  CHECK(to_string(all[2]) == "0");
  CHECK(to_string(all[3]) == "p & p");
  CHECK(to_string(all[4]) == "p & q");
  CHECK(to_string(all[5]) == "p & 0");
  CHECK(to_string(all[12]) == "p -> p");
  CHECK(to_string(all[21]) == "forall x1. p");
  CHECK(to_string(all[24]) == "exists x1. p");
}

TEST_CASE("enumeration of a monadic signature starts with its frozen prefix") {
  Signature s = sig_of({{"P", 1}});
  auto all = enumerate_formulas(s, 3);
  CHECK(texts(all) == std::vector<std::string>{"0", "P(x1)", "P(x2)", "P(h1)", "0 & 0",
                                               "0 -> 0", "forall x1. 0", "exists x1. 0"});
}

TEST_CASE("enumeration is deterministic, duplicate-free, weight-ordered, and prefix-stable") {
  Signature s = sig_of({{"P", 1}, {"q", 0}}, {"c"});
  auto a4 = enumerate_formulas(s, 4);
  auto again = enumerate_formulas(s, 4);
  REQUIRE(a4.size() == again.size());
  for (size_t i = 0; i < a4.size(); ++i) CHECK(equal(a4[i], again[i]));

  std::set<std::string> seen;
  int prev = 0;
  for (const FormulaPtr& f : a4) {
    INFO("formula: ", to_string(f));
    CHECK(seen.insert(to_string(f)).second);
    int w = enum_weight(f, s);
    CHECK(w >= prev);
    CHECK(w <= 4);
    prev = w;
  }

  auto a5 = enumerate_formulas(s, 5);
  REQUIRE(a5.size() > a4.size());
  for (size_t i = 0; i < a4.size(); ++i) CHECK(equal(a4[i], a5[i]));

  CHECK_THROWS_AS(enumerate_formulas(s, -1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_formulas(s, 17), std::invalid_argument);
}

// ---------- the default oracle ----------

TEST_CASE("oracle proves members, axiom instances, and modus-ponens closures") {
  Signature s = sig_of({{"p", 0}, {"q", 0}});
  DefaultOracle o(s);

  OracleAnswer a = o.decide({F("p", s)}, F("p", s));
  REQUIRE(a.kind == K::Provable);
  REQUIRE(a.proof.has_value());
  CHECK(check_proof({F("p", s)}, *a.proof).ok());

  a = o.decide({}, F("p & q -> p", s));
  REQUIRE(a.kind == K::Provable);
  CHECK(check_proof({}, *a.proof).ok());

  std::vector<FormulaPtr> g = {F("p", s), F("p -> q", s)};
  a = o.decide(g, F("q", s));
  REQUIRE(a.kind == K::Provable);
  REQUIRE(a.proof.has_value());
  CHECK(check_proof(g, *a.proof).ok());
  CHECK(equal(expand_sugar(a.proof->steps.back().conclusion), F("q", s)));

  Signature sp = sig_of({{"P", 1}});
  DefaultOracle op(sp);
  a = op.decide({F("P(x1)", sp)}, F("forall x1. P(x1)", sp));
  REQUIRE(a.kind == K::Provable);
  CHECK(check_proof({F("P(x1)", sp)}, *a.proof).ok());
}

TEST_CASE("oracle closure depth bounds the implication chains it finds") {
  Signature s = sig_of({{"P", 1}});
  std::vector<FormulaPtr> g = {F("P(x1) & 0", s)};

  DefaultOracle two(s);  // default depth reaches the commuted projection
  OracleAnswer a = two.decide(g, F("0", s));
  REQUIRE(a.kind == K::Provable);
  CHECK(check_proof(g, *a.proof).ok());
  CHECK(equal(expand_sugar(a.proof->steps.back().conclusion), F("0", s)));

  DefaultOracle one(s);
  one.closure_depth = 1;
  a = one.decide(g, F("0", s));
  CHECK(a.kind == K::Unknown);  // premises have no model, so no refutation either
  CHECK(!a.note.empty());

  // the already-commuted member needs only one step
  a = one.decide({F("0 & P(x1)", s)}, F("0", s));
  CHECK(a.kind == K::Provable);
}

TEST_CASE("oracle uses library proofs only when their hypotheses are present") {
  Signature s = sig_of({{"p", 0}, {"q", 0}});
  Proof lib;
  {
    ProofStep h1;
    h1.conclusion = F("p", s);
    h1.kind = StepKind::Hyp;
    ProofStep h2;
    h2.conclusion = F("p -> q", s);
    h2.kind = StepKind::Hyp;
    ProofStep mp;
    mp.conclusion = F("q", s);
    mp.kind = StepKind::MP;
    mp.i = 1;
    mp.j = 2;
    lib.steps = {h1, h2, mp};
  }

  DefaultOracle o(s);
  o.library = {lib};
  o.closure_depth = 1;  // too shallow to rebuild q by hand

  std::vector<FormulaPtr> g = {F("p", s), F("p -> q", s)};
  OracleAnswer a = o.decide(g, F("forall x1. q", s));
  REQUIRE(a.kind == K::Provable);
  CHECK(check_proof(g, *a.proof).ok());

  DefaultOracle bare(s);
  bare.closure_depth = 1;
  CHECK(bare.decide(g, F("forall x1. q", s)).kind == K::Unknown);

  // hypotheses outside gamma disqualify the library item
  a = o.decide({F("p", s)}, F("q", s));
  CHECK(a.kind == K::Refutable);
}

TEST_CASE("oracle refutes with a countermodel and reports unknown otherwise") {
  Signature s = sig_of({{"p", 0}, {"q", 0}, {"P", 1}});
  DefaultOracle o(s);

  OracleAnswer a = o.decide({}, F("0", s));
  REQUIRE(a.kind == K::Refutable);
  REQUIRE(a.refutation.has_value());
  CHECK(a.refutation->refuted);

  a = o.decide({F("p", s)}, F("q", s));
  CHECK(a.kind == K::Refutable);

  // unsatisfiable premises refute nothing, and the goal has no short proof
  a = o.decide({F("P(x1) & 0", s)}, F("q", s));
  CHECK(a.kind == K::Unknown);
  CHECK(!a.note.empty());
}

TEST_CASE("closure membership requires constants from the core") {
  Signature s = sig_of({{"p", 0}, {"q", 0}, {"P", 1}}, {"c"});
  DefaultOracle o(s);

  TheoryState st{0, {F("p", s), F("p -> q", s)}, F("0", s), s, {}};
  CHECK(cl_member(st, F("q", s), o) == Membership::Yes);
  CHECK(cl_member(st, F("0", s), o) == Membership::No);

  // c is absent from the core, so P(c) is outside regardless of provability
  TheoryState stp{0, {F("forall x1. P(x1)", s)}, F("0", s), s, {}};
  UnknownOracle never;
  CHECK(cl_member(stp, F("P(c)", s), never) == Membership::No);

  TheoryState stu{0, {F("P(x1) & 0", s)}, F("0", s), s, {}};
  CHECK(cl_member(stu, F("q", s), o) == Membership::Unknown);
}

// ---------- single steps ----------

TEST_CASE("step files a neutral sentence into the core when consistent") {
  Signature s = sig_of({{"p", 0}});
  DefaultOracle o(s);
  TheoryState st{0, {}, F("0", s), s, {}};

  StepResult r1 = henkin_step(st, F("p", s), o, {});
  REQUIRE(!r1.suspended);
  CHECK(r1.record.case_tag == "3b");
  REQUIRE(r1.record.queries.size() == 1);
  CHECK(r1.record.queries[0].with_psi);
  CHECK(r1.record.queries[0].answer == K::Refutable);
  CHECK(texts(r1.record.gamma_delta) == std::vector<std::string>{"p"});
  CHECK(r1.state.index == 1);
  CHECK(equal(r1.state.phi, st.phi));

  StepResult r2 = henkin_step(r1.state, F("0", s), o, {});
  REQUIRE(!r2.suspended);
  CHECK(r2.record.case_tag == "3a");
  CHECK(r2.record.gamma_delta.empty());
  CHECK(texts(r2.state.gamma) == std::vector<std::string>{"p"});
}

TEST_CASE("step keeps a provable universal and records its verdict") {
  Signature s = sig_of({{"P", 1}});
  DefaultOracle o(s);
  TheoryState st{0, {F("P(x1)", s)}, F("0", s), s, {}};

  StepResult r = henkin_step(st, F("forall x1. P(x1)", s), o, {});
  REQUIRE(!r.suspended);
  CHECK(r.record.case_tag == "1b");
  REQUIRE(r.record.queries.size() == 1);
  CHECK(!r.record.queries[0].with_psi);
  CHECK(r.record.queries[0].answer == K::Provable);
  CHECK(r.record.gamma_delta.empty());
  CHECK(equal(r.state.phi, st.phi));
}

TEST_CASE("step introduces a fresh witness constant for an unprovable universal") {
  Signature s = sig_of({{"P", 1}});
  DefaultOracle o(s);
  TheoryState st{0, {}, F("0", s), s, {}};
  FormulaPtr psi = F("forall x1. P(x1)", s);

  StepResult r = henkin_step(st, psi, o, {});
  REQUIRE(!r.suspended);
  CHECK(r.record.case_tag == "1a-i");
  REQUIRE(r.record.fresh_constant.has_value());
  CHECK(*r.record.fresh_constant == "h1");
  CHECK(r.state.consumed.count("h1") == 1);
  FormulaPtr want = expand_sugar(make_or(F("0", s), make_atom("P", {cnst("h1")})));
  CHECK(equal(r.state.phi, want));
  CHECK(r.record.gamma_delta.empty());
  REQUIRE(r.record.queries.size() == 2);
  CHECK(r.record.queries[0].answer == K::Refutable);
  CHECK(r.record.queries[1].answer == K::Refutable);

  // the next witness skips both consumed and occurring names
  StepResult r2 = henkin_step(r.state, F("forall x2. P(x2)", s), o, {});
  REQUIRE(!r2.suspended);
  CHECK(r2.record.case_tag == "1a-i");
  REQUIRE(r2.record.fresh_constant.has_value());
  CHECK(*r2.record.fresh_constant == "h2");
  FormulaPtr want2 = expand_sugar(make_or(want, make_atom("P", {cnst("h2")})));
  CHECK(equal(r2.state.phi, want2));
}

TEST_CASE("step adds an implication when the disjunction is already provable") {
  Signature s = sig_of({{"q", 0}, {"P", 1}});
  DefaultOracle o(s);
  FormulaPtr member = expand_sugar(F("q \\/ (forall x1. P(x1))", s));
  TheoryState st{0, {member}, F("q", s), s, {}};

  StepResult r = henkin_step(st, F("forall x1. P(x1)", s), o, {});
  REQUIRE(!r.suspended);
  CHECK(r.record.case_tag == "1a-ii");
  REQUIRE(r.record.queries.size() == 2);
  CHECK(r.record.queries[0].answer == K::Refutable);
  CHECK(r.record.queries[1].answer == K::Provable);
  REQUIRE(r.record.gamma_delta.size() == 1);
  FormulaPtr want = expand_sugar(F("q -> (forall x1. P(x1))", s));
  CHECK(equal(r.record.gamma_delta[0], want));
  CHECK(equal(r.state.phi, st.phi));
}

TEST_CASE("step files a harmless disjunctive bound and scans exponents otherwise") {
  Signature s = sig_of({{"p", 0}, {"q", 0}, {"r", 0}});
  DefaultOracle o(s);
  FormulaPtr psi = F("q \\/ (p -> p & r)", s);
  FormulaPtr psix = expand_sugar(psi);

  // consistent with the goal: filed into the core
  TheoryState st{0, {}, F("0", s), s, {}};
  StepResult r = henkin_step(st, psi, o, {});
  REQUIRE(!r.suspended);
  CHECK(r.record.case_tag == "2a");
  REQUIRE(r.record.queries.size() == 1);
  CHECK(r.record.queries[0].with_psi);
  CHECK(r.record.queries[0].answer == K::Refutable);
  REQUIRE(r.record.gamma_delta.size() == 1);
  CHECK(equal(r.record.gamma_delta[0], psix));

  // proving the goal: the disjunct moves onto phi with a finite exponent
  TheoryState st2{0, {}, psix, s, {}};
  StepResult r2 = henkin_step(st2, psi, o, {});
  REQUIRE(!r2.suspended);
  CHECK(r2.record.case_tag == "2b");
  REQUIRE(r2.record.k.has_value());
  CHECK(*r2.record.k == 1);
  REQUIRE(r2.record.queries.size() == 3);
  CHECK(r2.record.queries[0].answer == K::Provable);
  CHECK(r2.record.queries[1].answer == K::Unknown);  // exponent 0 is skipped, not fatal
  CHECK(r2.record.queries[2].answer == K::Refutable);
  FormulaPtr want = expand_sugar(
      make_or(make_or(psix, F("q", s)), make_impl(F("p", s), make_power(F("r", s), 1))));
  CHECK(equal(r2.state.phi, want));
  CHECK(r2.record.gamma_delta.empty());

  // no usable exponent within the cap: suspended
  HenkinOptions tight;
  tight.k_max = 0;
  StepResult r3 = henkin_step(st2, psi, o, tight);
  CHECK(r3.suspended);
  CHECK(r3.record.case_tag == "suspended");
  CHECK(r3.suspend_reason.find("k <= 0") != std::string::npos);
}

TEST_CASE("step suspends and leaves the state untouched when the oracle is undecided") {
  Signature s = sig_of({{"p", 0}, {"q", 0}});
  UnknownOracle u;
  TheoryState st{0, {F("p", s)}, F("0", s), s, {}};

  StepResult r = henkin_step(st, F("q", s), u, {});
  CHECK(r.suspended);
  CHECK(r.record.case_tag == "suspended");
  CHECK(!r.suspend_reason.empty());
  CHECK(r.state.index == 0);
  CHECK(texts(r.state.gamma) == std::vector<std::string>{"p"});
  CHECK(equal(r.state.phi, st.phi));
}

// ---------- full runs ----------

TEST_CASE("run builds a two-step trace over a propositional signature") {
  Signature s = sig_of({{"p", 0}});
  DefaultOracle o(s);
  Trace t = run_henkin(s, {}, F("0", s), o, 2);

  CHECK(!t.suspended);
  CHECK(tags(t) == std::vector<std::string>{"3b", "3a"});
  REQUIRE(t.records.size() == 2);
  CHECK(t.records[0].index == 0);
  CHECK(t.records[1].index == 1);
  CHECK(to_string(t.records[0].psi) == "p");
  CHECK(to_string(t.records[1].psi) == "0");
  CHECK(texts(t.records[0].gamma_after) == std::vector<std::string>{"p"});
  CHECK(texts(t.records[1].gamma_after) == std::vector<std::string>{"p"});

  TraceCheck c = check_trace(t, o);
  INFO("violations: ", c.violations.empty() ? std::string("none") : c.violations[0]);
  CHECK(c.ok());

  Trace empty = run_henkin(s, {}, F("0", s), o, 0);
  CHECK(empty.records.empty());
  CHECK(!empty.suspended);
}

TEST_CASE("run rejects a provable goal and suspends on an undecided precondition") {
  Signature s = sig_of({{"p", 0}, {"P", 1}});
  DefaultOracle o(s);
  CHECK_THROWS_AS(run_henkin(s, {F("p", s)}, F("p", s), o, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_henkin(s, {}, F("P(x1)", s), o, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_henkin(s, {}, F("0", s), o, -1), std::invalid_argument);

  HenkinOptions small;
  small.max_enum_weight = 2;
  Signature sp = sig_of({{"p", 0}});
  DefaultOracle op(sp);
  CHECK_THROWS_AS(run_henkin(sp, {}, F("0", sp), op, 5, small), std::invalid_argument);

  UnknownOracle u;
  Trace t = run_henkin(s, {}, F("0", s), u, 3);
  CHECK(t.suspended);
  CHECK(t.records.empty());
  CHECK(t.suspend_reason.find("precondition") != std::string::npos);
}

TEST_CASE("run processes a monadic signature and suspends on an unmodellable branch") {
  Signature s = sig_of({{"P", 1}});
  DefaultOracle o(s);
  Trace t = run_henkin(s, {}, F("0", s), o, 8);

  CHECK(tags(t) == std::vector<std::string>{"3a", "3b", "3b", "3b", "3a", "3b", "1a-i",
                                            "suspended"});
  CHECK(t.suspended);
  CHECK(t.suspend_reason.find("undecided") != std::string::npos);
  REQUIRE(t.records.size() == 8);
  CHECK(to_string(t.records[6].psi) == "forall x1. 0");
  REQUIRE(t.records[6].fresh_constant.has_value());
  CHECK(*t.records[6].fresh_constant == "h2");  // h1 already occurs in the core
  CHECK(texts(t.records[5].gamma_after) ==
        std::vector<std::string>{"P(x1)", "P(x2)", "P(h1)", "0 -> 0"});
  CHECK(to_string(t.records[7].psi) == "exists x1. 0");

  TraceCheck c = check_trace(t, o);
  INFO("violations: ", c.violations.empty() ? std::string("none") : c.violations[0]);
  CHECK(c.ok());
  CHECK(c.henkin_foralls == 1);
  CHECK(c.henkin_ok == 1);
  CHECK(c.prelinearity_pairs == 0);
}

// ---------- trace checking ----------

TEST_CASE("trace checker accepts recorded runs and flags mutations") {
  Signature s = sig_of({{"p", 0}});
  DefaultOracle o(s);
  Trace base = run_henkin(s, {}, F("0", s), o, 2);
  REQUIRE(check_trace(base, o).ok());

  SUBCASE("a shrunken core is caught") {
    Trace t = base;
    t.records[0].gamma_after.clear();
    TraceCheck c = check_trace(t, o);
    CHECK(!c.gamma_monotone);
    CHECK(!c.ok());
  }
  SUBCASE("a flipped case tag is caught") {
    Trace t = base;
    t.records[0].case_tag = "3a";
    TraceCheck c = check_trace(t, o);
    CHECK(!c.tags_consistent);
  }
  SUBCASE("an unexplained phi change is caught") {
    Trace t = base;
    t.records[0].phi_next = F("p", s);
    TraceCheck c = check_trace(t, o);
    CHECK(!c.phi_growth_ok);
  }
  SUBCASE("a provable goal on a core-only query is caught") {
    Trace t = base;
    t.records[1].queries[0].with_psi = false;  // 3a verdict now claims gamma |- phi
    TraceCheck c = check_trace(t, o);
    CHECK(!c.no_provable_phi);
  }
  SUBCASE("a duplicated witness constant is caught") {
    Signature sp = sig_of({{"P", 1}});
    DefaultOracle op(sp);
    Trace t = run_henkin(sp, {}, F("0", sp), op, 8);
    t.records[6].fresh_constant = "h1";  // occurs in the core via P(h1)
    TraceCheck c = check_trace(t, op);
    CHECK(!c.fresh_constants_ok);
  }
}

TEST_CASE("trace checker replays exponent witnesses") {
  Signature s = sig_of({{"p", 0}, {"q", 0}, {"r", 0}});
  DefaultOracle o(s);
  FormulaPtr psi = expand_sugar(F("q \\/ (p -> p & r)", s));
  FormulaPtr zero = F("0", s);
  FormulaPtr fk = expand_sugar(
      make_or(make_or(zero, F("q", s)), make_impl(F("p", s), make_power(F("r", s), 3))));

  Trace t;
  t.sig = s;
  t.gamma0 = {fk};  // the scan target is already a member, so the replay proves it
  t.phi0 = zero;
  TraceRecord r;
  r.index = 0;
  r.psi = psi;
  r.case_tag = "2b";
  r.queries.push_back({zero, true, K::Provable});
  r.queries.push_back({fk, false, K::Refutable});
  r.gamma_after = t.gamma0;
  r.phi_next = fk;
  r.k = 3;
  t.records.push_back(r);

  TraceCheck c = check_trace(t, o);
  CHECK(c.tags_consistent);
  CHECK(!c.k_witnesses_ok);
  CHECK(!c.ok());

  // the same record against a neutral core passes the replay
  Trace good = t;
  good.gamma0.clear();
  good.records[0].gamma_after.clear();
  TraceCheck cg = check_trace(good, o);
  CHECK(cg.k_witnesses_ok);
}

// ---------- trace records ----------

TEST_CASE("trace records round-trip through the line format") {
  Signature s = sig_of({{"P", 1}});
  DefaultOracle o(s);
  Trace t = run_henkin(s, {}, F("0", s), o, 8);

  std::string text = trace_to_records(t);
  CHECK(text.find("\"h1\"") != std::string::npos);  // enumeration constants survive
  Trace back = trace_from_records(text, s);

  CHECK(equal(back.phi0, t.phi0));
  REQUIRE(back.gamma0.size() == t.gamma0.size());
  REQUIRE(back.records.size() == t.records.size());
  for (size_t i = 0; i < t.records.size(); ++i) {
    INFO("record ", i);
    CHECK(back.records[i].index == t.records[i].index);
    CHECK(back.records[i].case_tag == t.records[i].case_tag);
    CHECK(equal(back.records[i].psi, t.records[i].psi));
    CHECK(equal(back.records[i].phi_next, t.records[i].phi_next));
    CHECK(back.records[i].fresh_constant == t.records[i].fresh_constant);
    CHECK(back.records[i].k == t.records[i].k);
    REQUIRE(back.records[i].queries.size() == t.records[i].queries.size());
    for (size_t j = 0; j < t.records[i].queries.size(); ++j) {
      CHECK(equal(back.records[i].queries[j].formula, t.records[i].queries[j].formula));
      CHECK(back.records[i].queries[j].with_psi == t.records[i].queries[j].with_psi);
      CHECK(back.records[i].queries[j].answer == t.records[i].queries[j].answer);
    }
    CHECK(texts(back.records[i].gamma_after) == texts(t.records[i].gamma_after));
  }
  CHECK(back.suspended == t.suspended);
  CHECK(back.suspend_reason == t.suspend_reason);

  TraceCheck c = check_trace(back, o);
  INFO("violations: ", c.violations.empty() ? std::string("none") : c.violations[0]);
  CHECK(c.ok());
}

TEST_CASE("trace records reject malformed input") {
  Signature s = sig_of({{"p", 0}});
  CHECK_THROWS_AS(trace_from_records("", s), ParseError);
  CHECK_THROWS_AS(trace_from_records("{}\n", s), ParseError);
  CHECK_THROWS_AS(trace_from_records("not json\n", s), ParseError);

  std::string header = R"({"preds":{"p":0},"consts":[],"gamma0":[],"phi0":"0"})";
  CHECK_THROWS_AS(trace_from_records(header + "\n{\"i\":0}\n", s), ParseError);
  std::string bad_answer =
      header +
      "\n" R"({"i":0,"psi":"p","case":"3b","queries":[{"formula":"0","with_psi":true,"answer":"maybe"}],"delta":["p"],"phi_next":"0"})" "\n";
  CHECK_THROWS_AS(trace_from_records(bad_answer, s), ParseError);
}

// ---------- Lindenbaum quotients ----------

TEST_CASE("semantic equivalence groups sentences with equal values on small chains") {
  Signature s = sig_of({{"p", 0}});
  EquivFn eq = default_lindenbaum_equiv(s);
  CHECK(eq(make_one(), F("0 -> 0", s)));
  CHECK(eq(F("p", s), F("p", s)));
  CHECK(eq(F("p", s), F("p /\\ p", s)));
  CHECK(!eq(F("p", s), F("p & p", s)));
  CHECK(!eq(F("p", s), F("0", s)));
  CHECK(!eq(F("p", s), make_one()));
}

TEST_CASE("quotient orders classes and tabulates operations inside the fragment") {
  Signature s = sig_of({{"p", 0}});
  EquivFn eq = default_lindenbaum_equiv(s);
  std::vector<FormulaPtr> frag = {F("p", s), F("0", s), F("p & p", s), F("0 -> 0", s)};
  Quotient q = lindenbaum_quotient(frag, eq);

  REQUIRE(q.classes.size() == 4);
  CHECK(q.totally_ordered);
  CHECK(q.ok());
  CHECK(to_string(q.classes[0].rep) == "0");
  CHECK(to_string(q.classes[1].rep) == "p & p");
  CHECK(to_string(q.classes[2].rep) == "p");
  CHECK(to_string(q.classes[3].rep) == "0 -> 0");
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) CHECK(q.le[i][j] == (i <= j));

  CHECK(q.conj[2][2] == 1);    // p & p lands on its own class
  CHECK(q.impl[3][2] == 2);    // 1 -> p collapses to p
  CHECK(q.impl[2][3] == 3);    // p -> 1 collapses to 1
  CHECK(q.impl[2][1] == -1);   // p -> p&p leaves the fragment
  CHECK(q.conj[0][2] == 0);    // 0 & p collapses to 0
}

TEST_CASE("quotient marks operations leaving the fragment") {
  Signature s = sig_of({{"p", 0}});
  EquivFn eq = default_lindenbaum_equiv(s);
  Quotient q = lindenbaum_quotient({F("0", s), F("p", s), F("0 -> 0", s)}, eq);
  REQUIRE(q.classes.size() == 3);
  CHECK(q.totally_ordered);
  CHECK(q.conj[1][1] == -1);  // p & p is not represented
}

TEST_CASE("quotient reports congruence failures of a coarse relation") {
  Signature s = sig_of({{"p", 0}, {"q", 0}});
  auto grade = [](const std::string& t) {
    if (t == "p" || t == "q") return 1;
    if (t == "p & p" || t == "q & q") return 2;
    return 0;
  };
  EquivFn crude = [grade](const FormulaPtr& a, const FormulaPtr& b) {
    std::string ta = to_string(a), tb = to_string(b);
    if (ta == tb) return true;
    int ga = grade(ta), gb = grade(tb);
    return ga != 0 && ga == gb;
  };
  Quotient q = lindenbaum_quotient({F("p", s), F("q", s), F("p & p", s), F("q & q", s)}, crude);
  REQUIRE(q.classes.size() == 2);
  CHECK(!q.violations.empty());
  CHECK(!q.ok());
}

TEST_CASE("quotient rejects relations that are not equivalences") {
  Signature s = sig_of({{"p", 0}, {"q", 0}});
  std::vector<FormulaPtr> frag = {F("p", s), F("p & p", s), F("q", s)};

  EquivFn never = [](const FormulaPtr&, const FormulaPtr&) { return false; };
  CHECK_THROWS_AS(lindenbaum_quotient(frag, never), std::invalid_argument);

  EquivFn asym = [](const FormulaPtr& a, const FormulaPtr& b) {
    std::string ta = to_string(a), tb = to_string(b);
    return ta == tb || (ta == "p" && tb == "q");
  };
  CHECK_THROWS_AS(lindenbaum_quotient(frag, asym), std::invalid_argument);

  EquivFn chainy = [](const FormulaPtr& a, const FormulaPtr& b) {
    std::string ta = to_string(a), tb = to_string(b);
    if (ta == tb) return true;
    auto pair = [&](const char* x, const char* y) {
      return (ta == x && tb == y) || (ta == y && tb == x);
    };
    return pair("p", "p & p") || pair("p & p", "q");
  };
  CHECK_THROWS_AS(lindenbaum_quotient(frag, chainy), std::invalid_argument);
}

TEST_CASE("universal sentences sit below every instance in the quotient order") {
  Signature s = sig_of({{"P", 1}}, {"c", "d"});
  EquivFn eq = default_lindenbaum_equiv(s);
  std::vector<FormulaPtr> frag = {F("forall x1. P(x1)", s), F("P(c)", s), F("P(d)", s),
                                  F("exists x1. P(x1)", s), make_one(), F("0", s)};
  Quotient q = lindenbaum_quotient(frag, eq);

  REQUIRE(q.classes.size() == 6);
  CHECK(!q.totally_ordered);  // P(c) and P(d) are incomparable over the empty theory
  // insertion order: forall, P(c), P(d), exists, 1, 0
  CHECK(q.le[0][1]);
  CHECK(q.le[0][2]);
  CHECK(q.le[1][3]);
  CHECK(q.le[2][3]);
  CHECK(q.le[3][4]);
  CHECK(q.le[5][0]);
  CHECK(!q.le[1][2]);
  CHECK(!q.le[2][1]);
}

TEST_CASE("thirty-sentence fragment collapses to seven ordered classes") {
  Signature s = sig_of({{"P", 1}}, {"c"});
  std::vector<FormulaPtr> frag =
      load_formula_lines(std::string(FIXTURE_DIR) + "/formulas/lindenbaum30.txt", s);
  REQUIRE(frag.size() == 30);

  Quotient q = lindenbaum_quotient(frag, default_lindenbaum_equiv(s));
  REQUIRE(q.classes.size() == 7);
  CHECK(q.totally_ordered);
  INFO("violations: ", q.violations.empty() ? std::string("none") : q.violations[0]);
  CHECK(q.ok());

  CHECK(to_string(q.classes[0].rep) == "0");
  CHECK(to_string(q.classes[1].rep) == "(forall x1. P(x1))^3");
  CHECK(to_string(q.classes[2].rep) == "(forall x1. P(x1))^2");
  CHECK(to_string(q.classes[3].rep) == "forall x1. P(x1)");
  CHECK(to_string(q.classes[4].rep) == "P(c)");
  CHECK(to_string(q.classes[5].rep) == "exists x1. P(x1)");
  CHECK(to_string(q.classes[6].rep) == "0 -> 0");

  CHECK(q.classes[0].members.size() == 4);
  CHECK(q.classes[1].members.size() == 3);
  CHECK(q.classes[2].members.size() == 3);
  CHECK(q.classes[3].members.size() == 5);
  CHECK(q.classes[4].members.size() == 5);
  CHECK(q.classes[5].members.size() == 5);
  CHECK(q.classes[6].members.size() == 5);

  for (size_t i = 0; i < 7; ++i)
    for (size_t j = 0; j < 7; ++j) CHECK(q.le[i][j] == (i <= j));

  CHECK(q.conj[3][3] == 2);   // the universal squared stays inside
  CHECK(q.conj[4][4] == -1);  // the squared instance does not
  CHECK(q.impl[6][4] == 4);
  CHECK(q.impl[4][6] == 6);
}
