#include "tnl/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tnl {

// ---------- signature ----------

void Signature::add_pred(const std::string& n, int arity) {
  if (arity < 0) throw ParseError("negative arity for predicate " + n);
  if (is_const(n)) throw ParseError("name used as both predicate and constant: " + n);
  auto it = preds.find(n);
  if (it != preds.end() && it->second != arity)
    throw ParseError("conflicting arities for predicate " + n);
  preds[n] = arity;
}

void Signature::add_const(const std::string& n) {
  if (is_pred(n)) throw ParseError("name used as both predicate and constant: " + n);
  consts.insert(n);
}

// ---------- constructors ----------

static std::shared_ptr<Formula> node(FKind k) { return std::make_shared<Formula>(k); }

FormulaPtr make_atom(std::string pred, std::vector<Term> args) {
  auto f = node(FKind::Atom);
  f->name = std::move(pred);
  f->args = std::move(args);
  return f;
}

FormulaPtr make_zero() { return node(FKind::Zero); }
FormulaPtr make_one() { return node(FKind::One); }

static FormulaPtr binary(FKind k, FormulaPtr a, FormulaPtr b) {
  auto f = node(k);
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}

FormulaPtr make_conj(FormulaPtr a, FormulaPtr b) { return binary(FKind::Conj, std::move(a), std::move(b)); }
FormulaPtr make_impl(FormulaPtr a, FormulaPtr b) { return binary(FKind::Impl, std::move(a), std::move(b)); }
FormulaPtr make_and(FormulaPtr a, FormulaPtr b) { return binary(FKind::And, std::move(a), std::move(b)); }
FormulaPtr make_or(FormulaPtr a, FormulaPtr b) { return binary(FKind::Or, std::move(a), std::move(b)); }

FormulaPtr make_not(FormulaPtr a) {
  auto f = node(FKind::Not);
  f->a = std::move(a);
  return f;
}

static FormulaPtr quant(FKind k, std::string v, FormulaPtr a) {
  auto f = node(k);
  f->name = std::move(v);
  f->a = std::move(a);
  return f;
}

FormulaPtr make_forall(std::string v, FormulaPtr a) { return quant(FKind::Forall, std::move(v), std::move(a)); }
FormulaPtr make_exists(std::string v, FormulaPtr a) { return quant(FKind::Exists, std::move(v), std::move(a)); }

FormulaPtr make_power(FormulaPtr a, int exp) {
  if (exp < 0 && exp != kPowerHole) throw ParseError("negative power exponent");
  auto f = node(FKind::Power);
  f->a = std::move(a);
  f->exp = exp;
  return f;
}

// ---------- structural comparison ----------

int compare(const FormulaPtr& x, const FormulaPtr& y) {
  if (x.get() == y.get()) return 0;
  if (x->kind != y->kind) return x->kind < y->kind ? -1 : 1;
  switch (x->kind) {
    case FKind::Atom: {
      if (x->name != y->name) return x->name < y->name ? -1 : 1;
      if (x->args.size() != y->args.size()) return x->args.size() < y->args.size() ? -1 : 1;
      for (size_t i = 0; i < x->args.size(); ++i) {
        if (x->args[i] < y->args[i]) return -1;
        if (y->args[i] < x->args[i]) return 1;
      }
      return 0;
    }
    case FKind::Zero:
    case FKind::One:
      return 0;
    case FKind::Forall:
    case FKind::Exists: {
      if (x->name != y->name) return x->name < y->name ? -1 : 1;
      return compare(x->a, y->a);
    }
    case FKind::Not:
      return compare(x->a, y->a);
    case FKind::Power: {
      if (x->exp != y->exp) return x->exp < y->exp ? -1 : 1;
      return compare(x->a, y->a);
    }
    default: {  // binary
      int c = compare(x->a, y->a);
      if (c != 0) return c;
      return compare(x->b, y->b);
    }
  }
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) { return compare(a, b) == 0; }

// ---------- queries ----------

static void free_vars_rec(const FormulaPtr& f, std::set<std::string>& bound,
                          std::set<std::string>& out) {
  switch (f->kind) {
    case FKind::Atom:
      for (const Term& t : f->args)
        if (t.kind == TermKind::Var && !bound.count(t.name)) out.insert(t.name);
      return;
    case FKind::Zero:
    case FKind::One:
      return;
    case FKind::Forall:
    case FKind::Exists: {
      bool fresh = bound.insert(f->name).second;
      free_vars_rec(f->a, bound, out);
      if (fresh) bound.erase(f->name);
      return;
    }
    case FKind::Not:
    case FKind::Power:
      free_vars_rec(f->a, bound, out);
      return;
    default:
      free_vars_rec(f->a, bound, out);
      free_vars_rec(f->b, bound, out);
      return;
  }
}

std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

bool is_sentence(const FormulaPtr& f) { return free_vars(f).empty(); }

int node_count(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Atom:
    case FKind::Zero:
    case FKind::One:
      return 1;
    case FKind::Not:
    case FKind::Power:
    case FKind::Forall:
    case FKind::Exists:
      return 1 + node_count(f->a);
    default:
      return 1 + node_count(f->a) + node_count(f->b);
  }
}

// ---------- substitution ----------

namespace {

// shared worker: check = true only tests substitutability.
FormulaPtr subst_rec(const FormulaPtr& f, const std::string& x, const Term& t,
                     bool check_only, bool& ok) {
  switch (f->kind) {
    case FKind::Atom: {
      bool hit = false;
      for (const Term& a : f->args)
        if (a.kind == TermKind::Var && a.name == x) hit = true;
      if (!hit) return f;
      if (check_only) return f;
      std::vector<Term> args = f->args;
      for (Term& a : args)
        if (a.kind == TermKind::Var && a.name == x) a = t;
      return make_atom(f->name, std::move(args));
    }
    case FKind::Zero:
    case FKind::One:
      return f;
    case FKind::Forall:
    case FKind::Exists: {
      if (f->name == x) return f;  // x is bound below; nothing free
      if (t.kind == TermKind::Var && t.name == f->name && free_vars(f->a).count(x)) {
        ok = false;  // t would be captured by this binder
        if (check_only) return f;
        throw CaptureError("substituting " + t.name + " for " + x +
                           " is captured by binder over " + f->name);
      }
      FormulaPtr a = subst_rec(f->a, x, t, check_only, ok);
      if (check_only || a == f->a) return f;
      return quant(f->kind, f->name, a);
    }
    case FKind::Not:
    case FKind::Power: {
      FormulaPtr a = subst_rec(f->a, x, t, check_only, ok);
      if (check_only || a == f->a) return f;
      return f->kind == FKind::Not ? make_not(a) : make_power(a, f->exp);
    }
    default: {
      FormulaPtr a = subst_rec(f->a, x, t, check_only, ok);
      FormulaPtr b = subst_rec(f->b, x, t, check_only, ok);
      if (check_only || (a == f->a && b == f->b)) return f;
      return binary(f->kind, a, b);
    }
  }
}

}  // namespace

bool is_substitutable(const FormulaPtr& f, const std::string& x, const Term& t) {
  bool ok = true;
  subst_rec(f, x, t, /*check_only=*/true, ok);
  return ok;
}

FormulaPtr substitute(const FormulaPtr& f, const std::string& x, const Term& t) {
  bool ok = true;
  return subst_rec(f, x, t, /*check_only=*/false, ok);
}

// ---------- constant renaming ----------

bool mentions_const(const FormulaPtr& f, const std::string& c) {
  switch (f->kind) {
    case FKind::Atom:
      for (const Term& t : f->args)
        if (t.kind == TermKind::Const && t.name == c) return true;
      return false;
    case FKind::Zero:
    case FKind::One:
      return false;
    case FKind::Forall:
    case FKind::Exists:
    case FKind::Not:
    case FKind::Power:
      return mentions_const(f->a, c);
    default:
      return mentions_const(f->a, c) || mentions_const(f->b, c);
  }
}

bool mentions_var(const FormulaPtr& f, const std::string& x) {
  switch (f->kind) {
    case FKind::Atom:
      for (const Term& t : f->args)
        if (t.kind == TermKind::Var && t.name == x) return true;
      return false;
    case FKind::Zero:
    case FKind::One:
      return false;
    case FKind::Forall:
    case FKind::Exists:
      return f->name == x || mentions_var(f->a, x);
    case FKind::Not:
    case FKind::Power:
      return mentions_var(f->a, x);
    default:
      return mentions_var(f->a, x) || mentions_var(f->b, x);
  }
}

FormulaPtr rename_const_to_var(const FormulaPtr& f, const std::string& c,
                               const std::string& x) {
  switch (f->kind) {
    case FKind::Atom: {
      if (!mentions_const(f, c)) return f;
      std::vector<Term> args = f->args;
      for (Term& t : args)
        if (t.kind == TermKind::Const && t.name == c) t = var(x);
      return make_atom(f->name, std::move(args));
    }
    case FKind::Zero:
    case FKind::One:
      return f;
    case FKind::Forall:
    case FKind::Exists: {
      if (f->name == x && mentions_const(f->a, c))
        throw CaptureError("renaming constant " + c + " to " + x +
                           " is captured by binder over " + f->name);
      FormulaPtr a = rename_const_to_var(f->a, c, x);
      return a == f->a ? f : quant(f->kind, f->name, a);
    }
    case FKind::Not:
    case FKind::Power: {
      FormulaPtr a = rename_const_to_var(f->a, c, x);
      if (a == f->a) return f;
      return f->kind == FKind::Not ? make_not(a) : make_power(a, f->exp);
    }
    default: {
      FormulaPtr a = rename_const_to_var(f->a, c, x);
      FormulaPtr b = rename_const_to_var(f->b, c, x);
      return (a == f->a && b == f->b) ? f : binary(f->kind, a, b);
    }
  }
}

// ---------- sugar ----------

FormulaPtr expand_sugar(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Atom:
    case FKind::Zero:
      return f;
    case FKind::One:
      return make_impl(make_zero(), make_zero());
    case FKind::Conj: {
      FormulaPtr a = expand_sugar(f->a), b = expand_sugar(f->b);
      return (a == f->a && b == f->b) ? f : make_conj(a, b);
    }
    case FKind::Impl: {
      FormulaPtr a = expand_sugar(f->a), b = expand_sugar(f->b);
      return (a == f->a && b == f->b) ? f : make_impl(a, b);
    }
    case FKind::And: {
      FormulaPtr a = expand_sugar(f->a), b = expand_sugar(f->b);
      return make_conj(a, make_impl(a, b));
    }
    case FKind::Or: {
      FormulaPtr a = expand_sugar(f->a), b = expand_sugar(f->b);
      FormulaPtr l = make_impl(make_impl(a, b), b);
      FormulaPtr r = make_impl(make_impl(b, a), a);
      return make_conj(l, make_impl(l, r));
    }
    case FKind::Not:
      return make_impl(expand_sugar(f->a), make_zero());
    case FKind::Forall:
    case FKind::Exists: {
      FormulaPtr a = expand_sugar(f->a);
      return a == f->a ? f : quant(f->kind, f->name, a);
    }
    case FKind::Power: {
      if (f->exp == kPowerHole)
        throw ParseError("uninstantiated power hole in " + to_string(f));
      if (f->exp == 0) return expand_sugar(make_one());
      FormulaPtr base = expand_sugar(f->a);
      FormulaPtr acc = base;
      for (int i = 1; i < f->exp; ++i) acc = make_conj(acc, base);
      return acc;
    }
  }
  throw std::logic_error("unreachable formula kind");
}

FormulaPtr instantiate_hole(const FormulaPtr& f, int k) {
  switch (f->kind) {
    case FKind::Atom:
    case FKind::Zero:
    case FKind::One:
      return f;
    case FKind::Not: {
      FormulaPtr a = instantiate_hole(f->a, k);
      return a == f->a ? f : make_not(a);
    }
    case FKind::Power: {
      FormulaPtr a = instantiate_hole(f->a, k);
      int e = f->exp == kPowerHole ? k : f->exp;
      return (a == f->a && e == f->exp) ? f : make_power(a, e);
    }
    case FKind::Forall:
    case FKind::Exists: {
      FormulaPtr a = instantiate_hole(f->a, k);
      return a == f->a ? f : quant(f->kind, f->name, a);
    }
    default: {
      FormulaPtr a = instantiate_hole(f->a, k);
      FormulaPtr b = instantiate_hole(f->b, k);
      return (a == f->a && b == f->b) ? f : binary(f->kind, a, b);
    }
  }
}

bool has_power_hole(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Atom:
    case FKind::Zero:
    case FKind::One:
      return false;
    case FKind::Power:
      return f->exp == kPowerHole || has_power_hole(f->a);
    case FKind::Not:
    case FKind::Forall:
    case FKind::Exists:
      return has_power_hole(f->a);
    default:
      return has_power_hole(f->a) || has_power_hole(f->b);
  }
}

// ---------- printing ----------

namespace {

// Precedence levels; binders sit at implication level because their scope
// extends maximally to the right.
enum Prec { kImp = 1, kOr = 2, kAnd = 3, kConj = 4, kNot = 5, kPow = 6, kPrim = 7 };

void print_rec(const FormulaPtr& f, int ctx, std::string& out) {
  auto wrap = [&](int mine, auto&& body) {
    bool paren = mine < ctx;
    if (paren) out += '(';
    body();
    if (paren) out += ')';
  };
  switch (f->kind) {
    case FKind::Atom:
      out += f->name;
      if (!f->args.empty()) {
        out += '(';
        for (size_t i = 0; i < f->args.size(); ++i) {
          if (i) out += ',';
          out += f->args[i].name;
        }
        out += ')';
      }
      return;
    case FKind::Zero:
      out += '0';
      return;
    case FKind::One:
      out += '1';
      return;
    case FKind::Impl:
      wrap(kImp, [&] {
        print_rec(f->a, kImp + 1, out);
        out += " -> ";
        print_rec(f->b, kImp, out);
      });
      return;
    case FKind::Or:
      wrap(kOr, [&] {
        print_rec(f->a, kOr, out);
        out += " \\/ ";
        print_rec(f->b, kOr + 1, out);
      });
      return;
    case FKind::And:
      wrap(kAnd, [&] {
        print_rec(f->a, kAnd, out);
        out += " /\\ ";
        print_rec(f->b, kAnd + 1, out);
      });
      return;
    case FKind::Conj:
      wrap(kConj, [&] {
        print_rec(f->a, kConj, out);
        out += " & ";
        print_rec(f->b, kConj + 1, out);
      });
      return;
    case FKind::Not:
      wrap(kNot, [&] {
        out += '~';
        print_rec(f->a, kNot, out);
      });
      return;
    case FKind::Power:
      wrap(kPow, [&] {
        print_rec(f->a, kPrim, out);
        out += '^';
        out += f->exp == kPowerHole ? std::string("n") : std::to_string(f->exp);
      });
      return;
    case FKind::Forall:
    case FKind::Exists:
      wrap(kImp, [&] {
        out += f->kind == FKind::Forall ? "forall " : "exists ";
        out += f->name;
        out += ". ";
        print_rec(f->a, kImp, out);
      });
      return;
  }
}

}  // namespace

std::string to_string(const FormulaPtr& f) {
  std::string out;
  print_rec(f, kImp, out);
  return out;
}

std::string to_string(const Term& t) { return t.name; }

// ---------- lexer / parser ----------

namespace {

enum class Tok { Ident, Nat, Zero, One, Amp, Arrow, Wedge, Vee, Tilde, Caret,
                 LParen, RParen, Comma, Dot, Forall, Exists, End };

struct Lexer {
  const std::string& s;
  size_t i = 0;
  Tok tok = Tok::End;
  std::string text;  // Ident / Nat payload

  explicit Lexer(const std::string& src) : s(src) { next(); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(i) + " in: " + s);
  }

  void next() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) {
      tok = Tok::End;
      return;
    }
    char c = s[i];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      text = s.substr(i, j - i);
      i = j;
      if (text == "forall") tok = Tok::Forall;
      else if (text == "exists") tok = Tok::Exists;
      else tok = Tok::Ident;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      text = s.substr(i, j - i);
      i = j;
      if (text == "0") tok = Tok::Zero;
      else if (text == "1") tok = Tok::One;
      else tok = Tok::Nat;
      return;
    }
    ++i;
    switch (c) {
      case '&': tok = Tok::Amp; return;
      case '^': tok = Tok::Caret; return;
      case '(': tok = Tok::LParen; return;
      case ')': tok = Tok::RParen; return;
      case ',': tok = Tok::Comma; return;
      case '.': tok = Tok::Dot; return;
      case '~': tok = Tok::Tilde; return;
      case '-':
        if (i < s.size() && s[i] == '>') {
          ++i;
          tok = Tok::Arrow;
          return;
        }
        fail("stray '-'");
      case '/':
        if (i < s.size() && s[i] == '\\') {
          ++i;
          tok = Tok::Wedge;
          return;
        }
        fail("stray '/'");
      case '\\':
        if (i < s.size() && s[i] == '/') {
          ++i;
          tok = Tok::Vee;
          return;
        }
        fail("stray '\\'");
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
  }
};

struct Parser {
  Lexer lx;
  const Signature& sig;
  ParseOpts opts;

  Parser(const std::string& text, const Signature& s, const ParseOpts& o)
      : lx(text), sig(s), opts(o) {}

  void expect(Tok t, const char* what) {
    if (lx.tok != t) lx.fail(std::string("expected ") + what);
    lx.next();
  }

  Term term() {
    if (lx.tok != Tok::Ident) lx.fail("expected term");
    std::string n = lx.text;
    lx.next();
    if (sig.is_pred(n)) lx.fail("predicate used as term: " + n);
    return sig.is_const(n) ? cnst(n) : var(n);
  }

  FormulaPtr primary() {
    switch (lx.tok) {
      case Tok::Zero:
        lx.next();
        return make_zero();
      case Tok::One:
        lx.next();
        return make_one();
      case Tok::LParen: {
        lx.next();
        FormulaPtr f = impl();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident: {
        std::string n = lx.text;
        lx.next();
        std::vector<Term> args;
        if (lx.tok == Tok::LParen) {
          lx.next();
          if (lx.tok != Tok::RParen) {
            args.push_back(term());
            while (lx.tok == Tok::Comma) {
              lx.next();
              args.push_back(term());
            }
          }
          expect(Tok::RParen, "')'");
        }
        if (!sig.is_pred(n)) lx.fail("unknown predicate: " + n);
        int arity = sig.preds.at(n);
        if (static_cast<int>(args.size()) != arity)
          lx.fail("predicate " + n + " expects " + std::to_string(arity) +
                  " argument(s), got " + std::to_string(args.size()));
        return make_atom(n, std::move(args));
      }
      default:
        lx.fail("expected formula");
    }
  }

  FormulaPtr postfix() {
    FormulaPtr f = primary();
    while (lx.tok == Tok::Caret) {
      lx.next();
      if (lx.tok == Tok::Nat || lx.tok == Tok::Zero || lx.tok == Tok::One) {
        f = make_power(f, std::stoi(lx.text));
        lx.next();
      } else if (lx.tok == Tok::Ident && lx.text == "n" && opts.allow_power_hole) {
        f = make_power(f, kPowerHole);
        lx.next();
      } else {
        lx.fail("expected exponent");
      }
    }
    return f;
  }

  FormulaPtr unary() {
    switch (lx.tok) {
      case Tok::Tilde:
        lx.next();
        return make_not(unary());
      case Tok::Forall:
      case Tok::Exists: {
        bool fa = lx.tok == Tok::Forall;
        lx.next();
        if (lx.tok != Tok::Ident) lx.fail("expected bound variable");
        std::string v = lx.text;
        if (!sig.is_var(v)) lx.fail("binder over non-variable: " + v);
        lx.next();
        expect(Tok::Dot, "'.'");
        FormulaPtr body = impl();
        return fa ? make_forall(v, body) : make_exists(v, body);
      }
      default:
        return postfix();
    }
  }

  FormulaPtr conj() {
    FormulaPtr f = unary();
    while (lx.tok == Tok::Amp) {
      lx.next();
      f = make_conj(f, unary());
    }
    return f;
  }

  FormulaPtr andf() {
    FormulaPtr f = conj();
    while (lx.tok == Tok::Wedge) {
      lx.next();
      f = make_and(f, conj());
    }
    return f;
  }

  FormulaPtr orf() {
    FormulaPtr f = andf();
    while (lx.tok == Tok::Vee) {
      lx.next();
      f = make_or(f, andf());
    }
    return f;
  }

  FormulaPtr impl() {
    FormulaPtr f = orf();
    if (lx.tok == Tok::Arrow) {
      lx.next();
      return make_impl(f, impl());
    }
    return f;
  }

  FormulaPtr top() {
    FormulaPtr f = impl();
    if (lx.tok != Tok::End) lx.fail("trailing input");
    return f;
  }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text, const Signature& sig,
                         const ParseOpts& opts) {
  Parser p(text, sig, opts);
  return p.top();
}

// ---------- signature inference / files ----------

Signature infer_signature(const std::vector<std::string>& texts) {
  Signature sig;
  // First pass: formula-position identifiers (applied or bare) are
  // predicates.  Binder variables and exponents are skipped.
  for (const std::string& text : texts) {
    Lexer lx(text);
    std::string pending;  // identifier waiting for a possible '('
    auto flush = [&]() {
      if (!pending.empty()) {
        sig.add_pred(pending, 0);
        pending.clear();
      }
    };
    while (lx.tok != Tok::End) {
      switch (lx.tok) {
        case Tok::Forall:
        case Tok::Exists:
          flush();
          lx.next();
          if (lx.tok == Tok::Ident) lx.next();  // binder variable
          break;
        case Tok::Caret:
          flush();
          lx.next();
          if (lx.tok != Tok::End) lx.next();  // exponent (nat or hole)
          break;
        case Tok::Ident:
          flush();
          pending = lx.text;
          lx.next();
          break;
        case Tok::LParen:
          if (!pending.empty()) {
            // applied identifier: count top-level commas to get the arity
            std::string name = pending;
            pending.clear();
            lx.next();
            int arity = 0;
            if (lx.tok != Tok::RParen) {
              arity = 1;
              while (lx.tok != Tok::RParen) {
                if (lx.tok == Tok::End) throw ParseError("unbalanced '(' in: " + text);
                if (lx.tok == Tok::Comma) ++arity;
                lx.next();
              }
            }
            lx.next();  // ')'
            sig.add_pred(name, arity);
          } else {
            lx.next();
          }
          break;
        default:
          flush();
          lx.next();
          break;
      }
    }
    flush();
  }
  // Second pass: identifiers inside a predicate's argument list that are not
  // binder-bound anywhere in the same text become constants.
  for (const std::string& text : texts) {
    std::set<std::string> binder_names;
    {
      Lexer lx(text);
      bool after_binder = false;
      while (lx.tok != Tok::End) {
        if (after_binder && lx.tok == Tok::Ident) binder_names.insert(lx.text);
        after_binder = lx.tok == Tok::Forall || lx.tok == Tok::Exists;
        lx.next();
      }
    }
    Lexer lx(text);
    bool prev_was_pred = false;
    bool in_args = false;
    while (lx.tok != Tok::End) {
      switch (lx.tok) {
        case Tok::Ident:
          if (in_args && !binder_names.count(lx.text)) sig.add_const(lx.text);
          prev_was_pred = !in_args && sig.is_pred(lx.text);
          break;
        case Tok::LParen:
          if (prev_was_pred) in_args = true;  // terms are flat: no nesting
          prev_was_pred = false;
          break;
        case Tok::RParen:
          in_args = false;
          prev_was_pred = false;
          break;
        default:
          prev_was_pred = false;
          break;
      }
      lx.next();
    }
  }
  return sig;
}

namespace {

void collect_symbols(const FormulaPtr& f, Signature& sig) {
  switch (f->kind) {
    case FKind::Atom:
      sig.add_pred(f->name, static_cast<int>(f->args.size()));
      for (const Term& t : f->args)
        if (t.kind == TermKind::Const) sig.add_const(t.name);
      return;
    case FKind::Zero:
    case FKind::One:
      return;
    case FKind::Not:
    case FKind::Power:
    case FKind::Forall:
    case FKind::Exists:
      collect_symbols(f->a, sig);
      return;
    default:
      collect_symbols(f->a, sig);
      collect_symbols(f->b, sig);
      return;
  }
}

}  // namespace

Signature extend_signature(Signature base, const std::vector<FormulaPtr>& fs) {
  for (const FormulaPtr& f : fs) collect_symbols(f, base);
  return base;
}

Signature parse_signature(const std::string& text) {
  Signature sig;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "pred") {
      std::string name;
      int arity;
      if (!(ls >> name >> arity))
        throw ParseError("signature line " + std::to_string(lineno) +
                         ": expected `pred NAME ARITY`");
      sig.add_pred(name, arity);
    } else if (kw == "const") {
      std::string name;
      if (!(ls >> name))
        throw ParseError("signature line " + std::to_string(lineno) +
                         ": expected `const NAME`");
      sig.add_const(name);
    } else {
      throw ParseError("signature line " + std::to_string(lineno) +
                       ": unknown keyword " + kw);
    }
  }
  return sig;
}

}  // namespace tnl
