#include "tnl/syntax.hpp"

#include <random>

#include "doctest.h"

using namespace tnl;

namespace {

Signature toy_sig() {
  Signature s;
  s.add_pred("P", 1);
  s.add_pred("Q", 1);
  s.add_pred("R", 2);
  s.add_pred("p", 0);
  s.add_pred("q", 0);
  s.add_const("c");
  s.add_const("d");
  return s;
}

FormulaPtr parse(const std::string& t) { return parse_formula(t, toy_sig()); }

// Random formula generator for round-trip and substitution properties.
struct Gen {
  std::mt19937 rng;
  Signature sig = toy_sig();
  std::vector<std::string> vars{"x", "y", "z"};

  explicit Gen(unsigned seed) : rng(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  Term term() {
    if (pick(2) == 0) return var(vars[pick(static_cast<int>(vars.size()))]);
    return cnst(pick(2) == 0 ? "c" : "d");
  }

  FormulaPtr atom() {
    switch (pick(5)) {
      case 0: return make_atom("P", {term()});
      case 1: return make_atom("Q", {term()});
      case 2: return make_atom("R", {term(), term()});
      case 3: return make_atom("p", {});
      default: return make_atom("q", {});
    }
  }

  FormulaPtr formula(int depth) {
    if (depth == 0) {
      switch (pick(3)) {
        case 0: return make_zero();
        case 1: return make_one();
        default: return atom();
      }
    }
    switch (pick(10)) {
      case 0: return make_conj(formula(depth - 1), formula(depth - 1));
      case 1: return make_impl(formula(depth - 1), formula(depth - 1));
      case 2: return make_and(formula(depth - 1), formula(depth - 1));
      case 3: return make_or(formula(depth - 1), formula(depth - 1));
      case 4: return make_not(formula(depth - 1));
      case 5: return make_forall(vars[pick(3)], formula(depth - 1));
      case 6: return make_exists(vars[pick(3)], formula(depth - 1));
      case 7: return make_power(atom(), 1 + pick(3));
      default: return atom();
    }
  }
};

}  // namespace

TEST_CASE("parsing respects precedence and associativity") {
  // -> is right-associative and loosest
  FormulaPtr f = parse("p -> q -> p");
  CHECK(f->kind == FKind::Impl);
  CHECK(f->b->kind == FKind::Impl);

  // ~ > & > /\ > \/ > ->
  f = parse("~p & q \\/ p /\\ q -> 0");
  CHECK(f->kind == FKind::Impl);
  CHECK(f->a->kind == FKind::Or);
  CHECK(f->a->a->kind == FKind::Conj);
  CHECK(f->a->a->a->kind == FKind::Not);
  CHECK(f->a->b->kind == FKind::And);

  // & is left-associative
  f = parse("p & q & p");
  CHECK(f->kind == FKind::Conj);
  CHECK(f->a->kind == FKind::Conj);
  CHECK(equal(f->a->a, parse("p")));

  // binder scope extends maximally right
  f = parse("forall x. P(x) -> q");
  CHECK(f->kind == FKind::Forall);
  CHECK(f->a->kind == FKind::Impl);
  f = parse("(forall x. P(x)) -> q");
  CHECK(f->kind == FKind::Impl);
  CHECK(f->a->kind == FKind::Forall);
}

TEST_CASE("parse errors carry positions and causes") {
  CHECK_THROWS_AS(parse("P(c, d)"), ParseError);       // arity mismatch
  CHECK_THROWS_AS(parse("unknownpred"), ParseError);   // unknown predicate
  CHECK_THROWS_AS(parse("forall c. P(c)"), ParseError);  // binder over constant
  CHECK_THROWS_AS(parse("p -> "), ParseError);
  CHECK_THROWS_AS(parse("p q"), ParseError);           // trailing input
  CHECK_THROWS_AS(parse("P(p)"), ParseError);          // predicate used as term
  CHECK_THROWS_AS(parse("p^n"), ParseError);           // hole needs opt-in
  ParseOpts h;
  h.allow_power_hole = true;
  CHECK(parse_formula("p^n", toy_sig(), h)->exp == kPowerHole);
}

TEST_CASE("print/parse round trip on crafted corner cases") {
  for (const char* s : {
           "p -> q -> p",
           "(p -> q) -> p",
           "p & (q & p)",
           "p & q & p",
           "~(p & q)^2",
           "(~p)^2",
           "forall x. P(x) -> exists y. R(x,y)",
           "(forall x. P(x)) -> (exists y. P(y)) \\/ q",
           "p /\\ q \\/ p & q",
           "P(c)^3 & Q(d)^0",
           "~~~p",
           "forall x. forall y. R(x,y) \\/ ~R(y,x)",
       }) {
    FormulaPtr f = parse(s);
    CHECK(equal(parse(to_string(f)), f));
  }
}

TEST_CASE("print/parse round trip on random formulas") {
  Gen g(20240817);
  for (int i = 0; i < 500; ++i) {
    FormulaPtr f = g.formula(4);
    CAPTURE(to_string(f));
    CHECK(equal(parse(to_string(f)), f));
  }
}

TEST_CASE("expand_sugar matches the defining equations") {
  // a /\ b  =>  a & (a -> b)
  CHECK(equal(expand_sugar(parse("p /\\ q")), parse("p & (p -> q)")));
  // a \/ b  =>  ((a->b)->b) & (((a->b)->b) -> ((b->a)->a))
  CHECK(equal(expand_sugar(parse("p \\/ q")),
              parse("((p->q)->q) & (((p->q)->q) -> ((q->p)->p))")));
  // ~a => a -> 0, 1 => 0 -> 0
  CHECK(equal(expand_sugar(parse("~p")), parse("p -> 0")));
  CHECK(equal(expand_sugar(parse("1")), parse("0 -> 0")));
  // powers: left association, ^1 = base, ^0 = 1
  CHECK(equal(expand_sugar(parse("p^3")), parse("(p & p) & p")));
  CHECK(equal(expand_sugar(parse("p^1")), parse("p")));
  CHECK(equal(expand_sugar(parse("p^0")), parse("0 -> 0")));
}

TEST_CASE("expand_sugar is idempotent and preserves free variables") {
  Gen g(42);
  for (int i = 0; i < 300; ++i) {
    FormulaPtr f = g.formula(4);
    FormulaPtr e = expand_sugar(f);
    CHECK(equal(expand_sugar(e), e));
    CHECK(free_vars(e) == free_vars(f));
  }
  // Exception by design: a^0 abbreviates 1, so the base formula (and its
  // variables) vanish.
  FormulaPtr z = expand_sugar(make_power(parse("P(x)"), 0));
  CHECK(equal(z, expand_sugar(parse("1"))));
  CHECK(free_vars(z).empty());
}

TEST_CASE("substitution basics") {
  FormulaPtr f = parse("P(x) -> forall x. R(x,y)");
  // only free occurrences are replaced
  FormulaPtr g = substitute(f, "x", cnst("c"));
  CHECK(equal(g, parse("P(c) -> forall x. R(x,y)")));
  // substituting a variable by itself is the identity
  CHECK(equal(substitute(f, "x", var("x")), f));
  CHECK(equal(substitute(f, "y", var("y")), f));
  // no free occurrence: unchanged
  CHECK(equal(substitute(f, "z", cnst("d")), f));
}

TEST_CASE("substitution refuses capture") {
  FormulaPtr f = parse("exists y. R(x,y)");
  CHECK_FALSE(is_substitutable(f, "x", var("y")));
  CHECK_THROWS_AS(substitute(f, "x", var("y")), CaptureError);
  // a constant is always substitutable
  CHECK(is_substitutable(f, "x", cnst("c")));
  // bound occurrences do not trigger capture
  FormulaPtr h = parse("forall x. R(x,x)");
  CHECK(is_substitutable(h, "x", var("y")));
  CHECK(equal(substitute(h, "x", var("y")), h));
}

TEST_CASE("free_vars after substitution by a constant") {
  Gen g(7);
  for (int i = 0; i < 300; ++i) {
    FormulaPtr f = g.formula(4);
    auto fv = free_vars(f);
    FormulaPtr s = substitute(f, "x", cnst("c"));
    auto want = fv;
    want.erase("x");
    CHECK(free_vars(s) == want);
  }
}

TEST_CASE("sentences") {
  CHECK(is_sentence(parse("forall x. P(x)")));
  CHECK(is_sentence(parse("p -> q")));
  CHECK_FALSE(is_sentence(parse("P(x)")));
  CHECK_FALSE(is_sentence(parse("forall x. R(x,y)")));
}

TEST_CASE("signature files and inference") {
  Signature s = parse_signature("# comment\npred P 1\nconst c  # trailing\n");
  CHECK(s.preds.at("P") == 1);
  CHECK(s.is_const("c"));
  CHECK_THROWS_AS(parse_signature("pred c 1\nconst c"), ParseError);

  Signature inf = infer_signature({"forall x. P(x) -> Q(c)", "p & R(c,d)^2"});
  CHECK(inf.preds.at("P") == 1);
  CHECK(inf.preds.at("Q") == 1);
  CHECK(inf.preds.at("R") == 2);
  CHECK(inf.preds.at("p") == 0);
  CHECK(inf.is_const("c"));
  CHECK(inf.is_const("d"));
  CHECK(inf.is_var("x"));
}

TEST_CASE("instantiate_hole") {
  ParseOpts h;
  h.allow_power_hole = true;
  FormulaPtr t = parse_formula("p \\/ (q -> q^n)", toy_sig(), h);
  CHECK(has_power_hole(t));
  FormulaPtr t2 = instantiate_hole(t, 2);
  CHECK_FALSE(has_power_hole(t2));
  CHECK(equal(t2, parse("p \\/ (q -> q^2)")));
  CHECK_THROWS_AS(expand_sugar(t), ParseError);
}
