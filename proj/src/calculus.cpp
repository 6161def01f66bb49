#include "tnl/calculus.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace tnl {

// ---------- schema names ----------

std::string schema_name(SchemaId id) {
  static const char* names[kSchemaCount] = {
      "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8",
      "forall1", "exists1", "forall2", "exists2", "lin", "RC"};
  return names[static_cast<int>(id)];
}

std::optional<SchemaId> schema_from_name(const std::string& name) {
  std::string low;
  for (char ch : name) low += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  for (int i = 0; i < kSchemaCount; ++i) {
    std::string canon = schema_name(static_cast<SchemaId>(i));
    for (char& ch : canon) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (low == canon) return static_cast<SchemaId>(i);
  }
  return std::nullopt;
}

// ---------- schema matching ----------

namespace {

// Metavariables are atoms spelled ?name; each binds once per match.
FormulaPtr meta(const char* n) { return make_atom(std::string("?") + n, {}); }

bool match_pattern(const FormulaPtr& pat, const FormulaPtr& f,
                   std::map<std::string, FormulaPtr>& b) {
  if (pat->kind == FKind::Atom && !pat->name.empty() && pat->name[0] == '?') {
    std::string key = pat->name.substr(1);
    auto it = b.find(key);
    if (it != b.end()) return equal(it->second, f);
    b.emplace(std::move(key), f);
    return true;
  }
  if (pat->kind != f->kind) return false;
  switch (pat->kind) {
    case FKind::Zero:
      return true;
    case FKind::Conj:
    case FKind::Impl:
      return match_pattern(pat->a, f->a, b) && match_pattern(pat->b, f->b, b);
    default:
      return false;  // patterns are built from 0, &, -> and metavariables
  }
}

const std::vector<std::pair<SchemaId, FormulaPtr>>& prop_patterns() {
  static const std::vector<std::pair<SchemaId, FormulaPtr>> pats = [] {
    FormulaPtr P = meta("phi"), Q = meta("psi"), C = meta("chi");
    std::vector<std::pair<SchemaId, FormulaPtr>> v;
    v.emplace_back(SchemaId::A1,
                   make_impl(make_impl(P, Q),
                             make_impl(make_impl(Q, C), make_impl(P, C))));
    v.emplace_back(SchemaId::A2, make_impl(make_conj(P, Q), P));
    v.emplace_back(SchemaId::A3, make_impl(make_conj(P, Q), make_conj(Q, P)));
    v.emplace_back(SchemaId::A4, make_impl(make_conj(P, make_impl(P, Q)),
                                           make_conj(Q, make_impl(Q, P))));
    v.emplace_back(SchemaId::A5, make_impl(make_impl(P, make_impl(Q, C)),
                                           make_impl(make_conj(P, Q), C)));
    v.emplace_back(SchemaId::A6, make_impl(make_impl(make_conj(P, Q), C),
                                           make_impl(P, make_impl(Q, C))));
    v.emplace_back(SchemaId::A7,
                   make_impl(make_impl(make_impl(P, Q), C),
                             make_impl(make_impl(make_impl(Q, P), C), C)));
    v.emplace_back(SchemaId::A8, make_impl(make_zero(), P));
    return v;
  }();
  return pats;
}

// Recognizes the sugar expansion of a \/ b:
//   C & (C -> D)  with  C = (a->b)->b,  D = (b->a)->a.
bool match_or(const FormulaPtr& f, FormulaPtr& a, FormulaPtr& b) {
  if (f->kind != FKind::Conj) return false;
  const FormulaPtr& c = f->a;
  if (f->b->kind != FKind::Impl || !equal(f->b->a, c)) return false;
  const FormulaPtr& d = f->b->b;
  if (c->kind != FKind::Impl || c->a->kind != FKind::Impl) return false;
  a = c->a->a;
  b = c->a->b;
  if (!equal(c->b, b)) return false;
  if (d->kind != FKind::Impl || d->a->kind != FKind::Impl) return false;
  return equal(d->a->a, b) && equal(d->a->b, a) && equal(d->b, a);
}

void collect_terms(const FormulaPtr& f, std::set<Term>& out) {
  switch (f->kind) {
    case FKind::Atom:
      for (const Term& t : f->args) out.insert(t);
      return;
    case FKind::Zero:
    case FKind::One:
      return;
    case FKind::Not:
    case FKind::Power:
    case FKind::Forall:
    case FKind::Exists:
      collect_terms(f->a, out);
      return;
    default:
      collect_terms(f->a, out);
      collect_terms(f->b, out);
      return;
  }
}

// forall1: forall x phi -> phi[x/t], t substitutable for x in phi.  The
// witness t is inferred: when x is free in the body the candidate set is
// the terms of the right-hand side, and at most one candidate can satisfy
// substitute(body, x, t) = rhs.
void match_forall1(const FormulaPtr& f, std::vector<AxiomMatch>& out) {
  if (f->kind != FKind::Impl || f->a->kind != FKind::Forall) return;
  const std::string& x = f->a->name;
  const FormulaPtr& body = f->a->a;
  const FormulaPtr& rhs = f->b;
  AxiomMatch m{SchemaId::Forall1, {{"phi", body}}, x, std::nullopt};
  if (!free_vars(body).count(x)) {
    if (!equal(body, rhs)) return;
    m.term = var(x);
    out.push_back(std::move(m));
    return;
  }
  std::set<Term> cands;
  collect_terms(rhs, cands);
  for (const Term& t : cands) {
    if (!is_substitutable(body, x, t)) continue;
    if (!equal(substitute(body, x, t), rhs)) continue;
    m.term = t;
    out.push_back(std::move(m));
    return;
  }
}

// exists1: phi[x/t] -> exists x phi, t substitutable for x in phi.
void match_exists1(const FormulaPtr& f, std::vector<AxiomMatch>& out) {
  if (f->kind != FKind::Impl || f->b->kind != FKind::Exists) return;
  const std::string& x = f->b->name;
  const FormulaPtr& body = f->b->a;
  const FormulaPtr& lhs = f->a;
  AxiomMatch m{SchemaId::Exists1, {{"phi", body}}, x, std::nullopt};
  if (!free_vars(body).count(x)) {
    if (!equal(body, lhs)) return;
    m.term = var(x);
    out.push_back(std::move(m));
    return;
  }
  std::set<Term> cands;
  collect_terms(lhs, cands);
  for (const Term& t : cands) {
    if (!is_substitutable(body, x, t)) continue;
    if (!equal(substitute(body, x, t), lhs)) continue;
    m.term = t;
    out.push_back(std::move(m));
    return;
  }
}

// forall2: forall x (phi -> psi) -> (phi -> forall x psi), x not free in phi.
void match_forall2(const FormulaPtr& f, std::vector<AxiomMatch>& out) {
  if (f->kind != FKind::Impl || f->a->kind != FKind::Forall) return;
  const std::string& x = f->a->name;
  const FormulaPtr& inner = f->a->a;
  if (inner->kind != FKind::Impl) return;
  const FormulaPtr& rhs = f->b;
  if (rhs->kind != FKind::Impl || rhs->b->kind != FKind::Forall) return;
  if (rhs->b->name != x) return;
  if (!equal(inner->a, rhs->a) || !equal(inner->b, rhs->b->a)) return;
  if (free_vars(inner->a).count(x)) return;
  out.push_back({SchemaId::Forall2,
                 {{"phi", inner->a}, {"psi", inner->b}},
                 x,
                 std::nullopt});
}

// exists2: forall x (psi -> phi) -> (exists x psi -> phi), x not free in phi.
void match_exists2(const FormulaPtr& f, std::vector<AxiomMatch>& out) {
  if (f->kind != FKind::Impl || f->a->kind != FKind::Forall) return;
  const std::string& x = f->a->name;
  const FormulaPtr& inner = f->a->a;
  if (inner->kind != FKind::Impl) return;
  const FormulaPtr& rhs = f->b;
  if (rhs->kind != FKind::Impl || rhs->a->kind != FKind::Exists) return;
  if (rhs->a->name != x) return;
  if (!equal(inner->a, rhs->a->a) || !equal(inner->b, rhs->b)) return;
  if (free_vars(inner->b).count(x)) return;
  out.push_back({SchemaId::Exists2,
                 {{"psi", inner->a}, {"phi", inner->b}},
                 x,
                 std::nullopt});
}

// lin: forall x (psi \/ phi) -> ((forall x psi) \/ phi), x not free in phi.
void match_lin(const FormulaPtr& f, std::vector<AxiomMatch>& out) {
  if (f->kind != FKind::Impl || f->a->kind != FKind::Forall) return;
  const std::string& x = f->a->name;
  FormulaPtr p, q, l, r;
  if (!match_or(f->a->a, p, q)) return;
  if (!match_or(f->b, l, r)) return;
  if (l->kind != FKind::Forall || l->name != x) return;
  if (!equal(l->a, p) || !equal(r, q)) return;
  if (free_vars(q).count(x)) return;
  out.push_back({SchemaId::Lin, {{"psi", p}, {"phi", q}}, x, std::nullopt});
}

// RC: forall x (chi & chi) -> (forall x chi) & (forall x chi).
void match_rc(const FormulaPtr& f, std::vector<AxiomMatch>& out) {
  if (f->kind != FKind::Impl || f->a->kind != FKind::Forall) return;
  const std::string& x = f->a->name;
  const FormulaPtr& ante = f->a->a;
  if (ante->kind != FKind::Conj || !equal(ante->a, ante->b)) return;
  const FormulaPtr& cons = f->b;
  if (cons->kind != FKind::Conj || !equal(cons->a, cons->b)) return;
  if (cons->a->kind != FKind::Forall || cons->a->name != x) return;
  if (!equal(cons->a->a, ante->a)) return;
  out.push_back({SchemaId::RC, {{"chi", ante->a}}, x, std::nullopt});
}

}  // namespace

bool decompose_or(const FormulaPtr& f, FormulaPtr& a, FormulaPtr& b) {
  return match_or(expand_sugar(f), a, b);
}

std::vector<AxiomMatch> match_axiom(const FormulaPtr& f0) {
  FormulaPtr f = expand_sugar(f0);
  std::vector<AxiomMatch> out;
  for (const auto& [id, pat] : prop_patterns()) {
    std::map<std::string, FormulaPtr> b;
    if (match_pattern(pat, f, b)) out.push_back({id, std::move(b), "", std::nullopt});
  }
  match_forall1(f, out);
  match_exists1(f, out);
  match_forall2(f, out);
  match_exists2(f, out);
  match_lin(f, out);
  match_rc(f, out);
  return out;
}

// ---------- checking ----------

namespace {

// Inf steps may appear inside templates; cap the nesting so a template
// that names itself cannot recurse forever.
constexpr int kMaxTemplateDepth = 4;

struct Failure {
  int step;
  std::string reason;
};

std::optional<Failure> check_steps(const std::vector<FormulaPtr>& gamma_exp,
                                   const std::vector<ProofStep>& steps,
                                   const std::map<std::string, ProofTemplate>& templates,
                                   int inf_bound, int depth, bool& used_inf) {
  std::vector<FormulaPtr> exp;  // sugar-expanded conclusions so far
  exp.reserve(steps.size());
  for (int k = 1; k <= static_cast<int>(steps.size()); ++k) {
    const ProofStep& st = steps[k - 1];
    if (!st.conclusion) return Failure{k, "missing conclusion"};
    FormulaPtr ek;
    try {
      ek = expand_sugar(st.conclusion);
    } catch (const ParseError& e) {
      return Failure{k, e.what()};
    }
    switch (st.kind) {
      case StepKind::Axiom: {
        std::vector<AxiomMatch> ms = match_axiom(ek);
        bool found = false;
        for (const AxiomMatch& m : ms) found = found || m.id == st.schema;
        if (!found) {
          std::string r = "not an instance of " + schema_name(st.schema);
          if (ms.empty()) {
            r += " (no schema matches)";
          } else {
            r += " (matches";
            for (const AxiomMatch& m : ms) r += " " + schema_name(m.id);
            r += ")";
          }
          return Failure{k, r};
        }
        break;
      }
      case StepKind::Hyp: {
        bool found = false;
        for (const FormulaPtr& g : gamma_exp) found = found || equal(g, ek);
        if (!found) return Failure{k, "not a hypothesis"};
        break;
      }
      case StepKind::MP: {
        if (st.i < 1 || st.i >= k || st.j < 1 || st.j >= k)
          return Failure{k, "premise index out of range"};
        const FormulaPtr& prem = exp[st.i - 1];
        const FormulaPtr& imp = exp[st.j - 1];
        if (imp->kind != FKind::Impl)
          return Failure{k, "step " + std::to_string(st.j) + " is not an implication"};
        if (!equal(imp->a, prem))
          return Failure{k, "antecedent of step " + std::to_string(st.j) +
                                " differs from step " + std::to_string(st.i)};
        if (!equal(imp->b, ek))
          return Failure{k, "consequent of step " + std::to_string(st.j) +
                                " differs from the conclusion"};
        break;
      }
      case StepKind::Gen: {
        if (st.i < 1 || st.i >= k) return Failure{k, "premise index out of range"};
        if (ek->kind != FKind::Forall || ek->name != st.var)
          return Failure{k, "conclusion is not a universal over " + st.var};
        if (!equal(ek->a, exp[st.i - 1]))
          return Failure{k, "body differs from step " + std::to_string(st.i)};
        break;
      }
      case StepKind::Inf: {
        if (!st.phi || !st.alpha || !st.beta)
          return Failure{k, "missing inf decomposition"};
        for (const auto& [nm, g] : std::initializer_list<std::pair<const char*, FormulaPtr>>{
                 {"phi", st.phi}, {"alpha", st.alpha}, {"beta", st.beta}}) {
          if (has_power_hole(g)) return Failure{k, std::string("inf parameter ") + nm + " has an uninstantiated power hole"};
          if (!is_sentence(g)) return Failure{k, std::string("inf parameter ") + nm + " is not a sentence"};
        }
        FormulaPtr want;
        try {
          want = expand_sugar(
              make_or(st.phi, make_impl(st.alpha, make_conj(st.alpha, st.beta))));
        } catch (const ParseError& e) {
          return Failure{k, e.what()};
        }
        if (!equal(ek, want))
          return Failure{k, "conclusion is not phi \\/ (alpha -> alpha & beta) "
                            "for the given sentences"};
        auto it = templates.find(st.template_name);
        if (it == templates.end())
          return Failure{k, "unknown template '" + st.template_name + "'"};
        if (it->second.steps.empty())
          return Failure{k, "template '" + st.template_name + "' has no steps"};
        if (depth >= kMaxTemplateDepth)
          return Failure{k, "template nesting exceeds depth " +
                                std::to_string(kMaxTemplateDepth)};
        for (int n = 0; n <= inf_bound; ++n) {
          std::vector<ProofStep> inst = instantiate_template(it->second, n);
          if (auto sub = check_steps(gamma_exp, inst, templates, inf_bound,
                                     depth + 1, used_inf))
            return Failure{k, "inf instance at n=" + std::to_string(n) +
                                  " invalid at template step " +
                                  std::to_string(sub->step) + ": " + sub->reason};
          FormulaPtr want_n = expand_sugar(
              make_or(st.phi, make_impl(st.alpha, make_power(st.beta, n))));
          if (!equal(expand_sugar(inst.back().conclusion), want_n))
            return Failure{k, "inf instance at n=" + std::to_string(n) +
                                  " does not conclude phi \\/ (alpha -> beta^n)"};
        }
        used_inf = true;
        break;
      }
    }
    exp.push_back(std::move(ek));
  }
  return std::nullopt;
}

}  // namespace

std::vector<ProofStep> instantiate_template(const ProofTemplate& t, int n) {
  std::vector<ProofStep> out;
  out.reserve(t.steps.size());
  for (const ProofStep& st : t.steps) {
    ProofStep r = st;
    r.conclusion = instantiate_hole(st.conclusion, n);
    if (st.kind == StepKind::Inf) {
      if (st.phi) r.phi = instantiate_hole(st.phi, n);
      if (st.alpha) r.alpha = instantiate_hole(st.alpha, n);
      if (st.beta) r.beta = instantiate_hole(st.beta, n);
    }
    out.push_back(std::move(r));
  }
  return out;
}

Verdict check_proof(const std::vector<FormulaPtr>& gamma, const Proof& p,
                    int inf_bound) {
  if (inf_bound < 0) throw std::invalid_argument("inf_bound must be >= 0");
  std::vector<FormulaPtr> gamma_exp;
  gamma_exp.reserve(gamma.size());
  for (const FormulaPtr& g : gamma) gamma_exp.push_back(expand_sugar(g));
  bool used_inf = false;
  if (auto f = check_steps(gamma_exp, p.steps, p.templates, inf_bound, 0, used_inf)) {
    Verdict v;
    v.kind = Verdict::Kind::Invalid;
    v.step = f->step;
    v.reason = f->reason;
    return v;
  }
  Verdict v;
  v.kind = used_inf ? Verdict::Kind::ValidBoundedInf : Verdict::Kind::Valid;
  v.inf_bound = used_inf ? inf_bound : 0;
  return v;
}

std::string to_string(const Verdict& v) {
  switch (v.kind) {
    case Verdict::Kind::Valid:
      return "valid";
    case Verdict::Kind::ValidBoundedInf:
      return "valid-with-bounded-inf(" + std::to_string(v.inf_bound) + ")";
    default:
      return "invalid at step " + std::to_string(v.step) + ": " + v.reason;
  }
}

// ---------- lemma on constants ----------

namespace {

void guard_inf_decomposition(const ProofStep& st, const std::string& c) {
  if (st.kind != StepKind::Inf) return;
  for (const FormulaPtr& g : {st.phi, st.alpha, st.beta})
    if (g && mentions_const(g, c))
      throw std::invalid_argument(
          "constant " + c +
          " occurs in an inf decomposition; renaming it would break the "
          "sentence restriction");
}

ProofStep rename_step(const ProofStep& st, const std::string& c,
                      const std::string& x, int k) {
  ProofStep r = st;
  r.conclusion = rename_const_to_var(st.conclusion, c, x);
  if (st.kind == StepKind::Axiom && !has_power_hole(r.conclusion)) {
    // Renaming must preserve the claimed schema (substitutability and
    // freeness side conditions are re-checked by match_axiom).
    bool still = false;
    for (const AxiomMatch& m : match_axiom(r.conclusion))
      still = still || m.id == st.schema;
    if (!still)
      throw std::invalid_argument("renamed step " + std::to_string(k) +
                                  " no longer instantiates " +
                                  schema_name(st.schema));
  }
  return r;
}

}  // namespace

Proof lemma_on_constants_transform(const std::vector<FormulaPtr>& gamma,
                                   const Proof& p, const std::string& c,
                                   const std::string& x) {
  if (p.steps.empty()) throw std::invalid_argument("empty proof");
  for (const FormulaPtr& g : gamma)
    if (mentions_const(g, c))
      throw std::invalid_argument("constant " + c + " occurs in a hypothesis");
  auto fresh_guard = [&](const ProofStep& st) {
    if (mentions_var(st.conclusion, x) || (st.phi && mentions_var(st.phi, x)) ||
        (st.alpha && mentions_var(st.alpha, x)) ||
        (st.beta && mentions_var(st.beta, x)))
      throw std::invalid_argument("variable " + x + " is not fresh for the proof");
  };
  for (const ProofStep& st : p.steps) {
    fresh_guard(st);
    guard_inf_decomposition(st, c);
  }
  for (const auto& [name, t] : p.templates)
    for (const ProofStep& st : t.steps) {
      fresh_guard(st);
      guard_inf_decomposition(st, c);
    }

  Proof out;
  for (int k = 1; k <= static_cast<int>(p.steps.size()); ++k)
    out.steps.push_back(rename_step(p.steps[k - 1], c, x, k));
  for (const auto& [name, t] : p.templates) {
    ProofTemplate rt{name, {}};
    for (int k = 1; k <= static_cast<int>(t.steps.size()); ++k)
      rt.steps.push_back(rename_step(t.steps[k - 1], c, x, k));
    out.templates[name] = std::move(rt);
  }

  ProofStep gen;
  gen.conclusion = make_forall(x, out.steps.back().conclusion);
  gen.kind = StepKind::Gen;
  gen.var = x;
  gen.i = static_cast<int>(out.steps.size());
  out.steps.push_back(std::move(gen));
  return out;
}

// ---------- proof files ----------

namespace {

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string decomment(const std::string& s) {
  size_t h = s.find('#');
  return h == std::string::npos ? s : s.substr(0, h);
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

int parse_index(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad " + what + ": '" + s + "'");
  }
}

// Parses `key={...} key2=token ...` after an `inf` keyword.  Brace values
// may contain spaces; bare values end at whitespace.
std::map<std::string, std::string> parse_kv(const std::string& s) {
  std::map<std::string, std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    size_t eq = s.find('=', i);
    if (eq == std::string::npos) throw ParseError("expected key=value in inf justification");
    std::string key = strip(s.substr(i, eq - i));
    if (key.empty()) throw ParseError("empty key in inf justification");
    i = eq + 1;
    std::string val;
    if (i < s.size() && s[i] == '{') {
      size_t close = s.find('}', i);
      if (close == std::string::npos) throw ParseError("unterminated '{' in inf justification");
      val = strip(s.substr(i + 1, close - i - 1));
      i = close + 1;
    } else {
      size_t end = i;
      while (end < s.size() && !std::isspace(static_cast<unsigned char>(s[end]))) ++end;
      val = s.substr(i, end - i);
      i = end;
    }
    if (out.count(key)) throw ParseError("duplicate key '" + key + "' in inf justification");
    out[key] = val;
  }
  return out;
}

ProofStep parse_step_line(const std::string& line, int expect_k,
                          const Signature& sig, bool in_template) {
  size_t dot = line.find('.');
  if (dot == std::string::npos) throw ParseError("step line missing '.': " + line);
  int k = parse_index(strip(line.substr(0, dot)), "step number");
  if (k != expect_k)
    throw ParseError("expected step " + std::to_string(expect_k) + ", got " +
                     std::to_string(k));
  size_t semi = line.find(';', dot);
  if (semi == std::string::npos) throw ParseError("step line missing ';': " + line);
  ParseOpts opts;
  opts.allow_power_hole = in_template;
  ProofStep st;
  st.conclusion = parse_formula(strip(line.substr(dot + 1, semi - dot - 1)), sig, opts);
  std::string just = strip(line.substr(semi + 1));
  std::vector<std::string> w = words(just);
  if (w.empty()) throw ParseError("missing justification: " + line);
  if (w[0] == "axiom") {
    if (w.size() != 2) throw ParseError("axiom justification needs a schema name");
    auto id = schema_from_name(w[1]);
    if (!id) throw ParseError("unknown schema '" + w[1] + "'");
    st.kind = StepKind::Axiom;
    st.schema = *id;
  } else if (w[0] == "hyp") {
    if (w.size() != 1) throw ParseError("hyp justification takes no arguments");
    st.kind = StepKind::Hyp;
  } else if (w[0] == "mp") {
    if (w.size() != 3) throw ParseError("mp justification needs two premise indices");
    st.kind = StepKind::MP;
    st.i = parse_index(w[1], "premise index");
    st.j = parse_index(w[2], "premise index");
  } else if (w[0] == "gen") {
    if (w.size() != 3) throw ParseError("gen justification needs a variable and a premise index");
    st.kind = StepKind::Gen;
    st.var = w[1];
    st.i = parse_index(w[2], "premise index");
  } else if (w[0] == "inf") {
    st.kind = StepKind::Inf;
    auto kv = parse_kv(strip(just.substr(3)));
    for (const char* key : {"template", "phi", "alpha", "beta"})
      if (!kv.count(key))
        throw ParseError(std::string("inf justification missing ") + key + "=");
    for (const auto& [key, val] : kv)
      if (key != "template" && key != "phi" && key != "alpha" && key != "beta")
        throw ParseError("unknown key '" + key + "' in inf justification");
    st.template_name = kv["template"];
    st.phi = parse_formula(kv["phi"], sig, opts);
    st.alpha = parse_formula(kv["alpha"], sig, opts);
    st.beta = parse_formula(kv["beta"], sig, opts);
  } else {
    throw ParseError("unknown justification '" + w[0] + "'");
  }
  return st;
}

}  // namespace

Proof parse_proof(const std::string& text, const Signature& sig) {
  Proof p;
  std::istringstream in(text);
  std::string raw;
  bool in_template = false;
  ProofTemplate tmpl;
  while (std::getline(in, raw)) {
    std::string line = strip(decomment(raw));
    if (line.empty()) continue;
    std::vector<std::string> w = words(line);
    if (!in_template && w[0] == "template") {
      if (w.size() != 3 || w[2] != "{")
        throw ParseError("expected 'template <name> {': " + line);
      if (p.templates.count(w[1])) throw ParseError("duplicate template '" + w[1] + "'");
      tmpl = ProofTemplate{w[1], {}};
      in_template = true;
      continue;
    }
    if (in_template && line == "}") {
      if (tmpl.steps.empty())
        throw ParseError("template '" + tmpl.name + "' has no steps");
      p.templates[tmpl.name] = std::move(tmpl);
      in_template = false;
      continue;
    }
    auto& steps = in_template ? tmpl.steps : p.steps;
    steps.push_back(parse_step_line(line, static_cast<int>(steps.size()) + 1, sig,
                                    in_template));
  }
  if (in_template) throw ParseError("unterminated template block '" + tmpl.name + "'");
  return p;
}

}  // namespace tnl
