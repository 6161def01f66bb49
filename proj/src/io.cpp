#include "tnl/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace tnl {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

ParseError at_line(int lineno, const std::string& msg) {
  return ParseError("line " + std::to_string(lineno) + ": " + msg);
}

// Calls fn(lineno, line) for every comment-stripped non-empty line.
template <class Fn>
void each_line(const std::string& text, Fn fn) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (!line.empty()) fn(lineno, line);
  }
}

Rat rat_at(int lineno, const std::string& tok) {
  try {
    return rat_parse(tok);
  } catch (const std::invalid_argument& e) {
    throw at_line(lineno, e.what());
  }
}

}  // namespace

// ---------- files and hashing ----------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fnv1a_hex(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(bytes)));
  return buf;
}

// ---------- line-oriented fixture text ----------

std::vector<std::string> fixture_lines(const std::string& text) {
  std::vector<std::string> out;
  each_line(text, [&](int, const std::string& line) { out.push_back(line); });
  return out;
}

std::vector<FormulaPtr> parse_formula_list(const std::string& text, const Signature& sig) {
  std::vector<FormulaPtr> out;
  each_line(text, [&](int lineno, const std::string& line) {
    try {
      out.push_back(parse_formula(line, sig));
    } catch (const ParseError& e) {
      throw at_line(lineno, e.what());
    }
  });
  return out;
}

std::vector<TaggedFormula> parse_tagged_formulas(const std::string& text) {
  std::vector<TaggedFormula> out;
  each_line(text, [&](int lineno, const std::string& line) {
    auto sp = line.find_first_of(" \t");
    if (sp == std::string::npos) throw at_line(lineno, "expected '<tag> <formula>'");
    TaggedFormula tf{line.substr(0, sp), trim(line.substr(sp + 1))};
    if (tf.text.empty()) throw at_line(lineno, "expected '<tag> <formula>'");
    out.push_back(std::move(tf));
  });
  return out;
}

// ---------- chains and t-norms ----------

ChainFile parse_chain_file(const std::string& text) {
  std::vector<std::pair<int, std::string>> lines;
  each_line(text, [&](int n, const std::string& l) { lines.emplace_back(n, l); });
  if (lines.empty() || lines[0].second != "chain")
    throw ParseError("chain file must start with a 'chain' header");
  if (lines.size() < 2) throw ParseError("chain file: missing body after the header");

  ChainFile out;
  std::istringstream head(lines[1].second);
  std::string form;
  head >> form;

  if (form == "table") {
    int n = 0;
    if (!(head >> n) || n < 2) throw at_line(lines[1].first, "table size must be >= 2");
    std::vector<int> vals;
    std::string tok;
    while (head >> tok) vals.push_back(std::stoi(tok));
    for (size_t i = 2; i < lines.size(); ++i) {
      std::istringstream row(lines[i].second);
      while (row >> tok) {
        size_t used = 0;
        int v;
        try {
          v = std::stoi(tok, &used);
        } catch (const std::exception&) {
          throw at_line(lines[i].first, "expected an element index, got '" + tok + "'");
        }
        if (used != tok.size())
          throw at_line(lines[i].first, "expected an element index, got '" + tok + "'");
        vals.push_back(v);
      }
    }
    if (static_cast<int>(vals.size()) != n * n)
      throw ParseError("chain file: table needs " + std::to_string(n * n) +
                       " entries, got " + std::to_string(vals.size()));
    FiniteChain c;
    c.n = n;
    c.mul.assign(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int v = vals[i * n + j];
        if (v < 0 || v >= n)
          throw ParseError("chain file: table entry " + std::to_string(v) +
                           " outside 0.." + std::to_string(n - 1));
        c.mul[i][j] = v;
      }
    out.finite = std::move(c);
    return out;
  }

  if (form != "sum")
    throw at_line(lines[1].first, "expected 'table N' or 'sum', got '" + form + "'");

  std::vector<CompDesc> comps;
  std::vector<FiniteHoop> hoops;
  bool all_finite = true;
  for (size_t i = 2; i < lines.size(); ++i) {
    std::istringstream ls(lines[i].second);
    std::string kind;
    ls >> kind;
    if (kind == "mv") {
      int k = 0;
      if (!(ls >> k) || k < 2) throw at_line(lines[i].first, "expected 'mv K' with K >= 2");
      comps.push_back(CompDesc{CompKind::FiniteMV, k});
      hoops.push_back(mv_hoop(k));
    } else if (kind == "mv-std") {
      comps.push_back(CompDesc{CompKind::StdMV, 0});
      all_finite = false;
    } else if (kind == "prod") {
      comps.push_back(CompDesc{CompKind::ProdHoop, 0});
      all_finite = false;
    } else if (kind == "godel") {
      comps.push_back(CompDesc{CompKind::GodelHoop, 0});
      all_finite = false;
    } else {
      throw at_line(lines[i].first, "unknown component '" + kind + "'");
    }
    std::string extra;
    if (ls >> extra) throw at_line(lines[i].first, "trailing input '" + extra + "'");
  }
  PresentedChain p{comps};
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("chain file: ") + e.what());
  }
  out.presented = std::move(p);
  if (all_finite) out.finite = ordinal_sum(hoops);
  return out;
}

TNorm parse_tnorm_file(const std::string& text) {
  std::vector<std::pair<int, std::string>> lines;
  each_line(text, [&](int n, const std::string& l) { lines.emplace_back(n, l); });
  if (lines.empty() || lines[0].second != "tnorm")
    throw ParseError("t-norm file must start with a 'tnorm' header");

  TNorm t;
  for (size_t i = 1; i < lines.size(); ++i) {
    std::istringstream ls(lines[i].second);
    std::string kind, lo, hi;
    if (!(ls >> kind >> lo >> hi))
      throw at_line(lines[i].first, "expected '<luk|prod|godel> LO HI'");
    std::string extra;
    if (ls >> extra) throw at_line(lines[i].first, "trailing input '" + extra + "'");
    Piece p;
    if (kind == "luk")
      p.kind = PieceKind::Luk;
    else if (kind == "prod")
      p.kind = PieceKind::Prod;
    else if (kind == "godel")
      p.kind = PieceKind::Godel;
    else
      throw at_line(lines[i].first, "unknown piece kind '" + kind + "'");
    p.lo = rat_at(lines[i].first, lo);
    p.hi = rat_at(lines[i].first, hi);
    t.pieces.push_back(p);
  }
  try {
    t.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("t-norm file: ") + e.what());
  }
  return t;
}

// ---------- structures ----------

namespace {

// Line-level scan shared by the three model loaders; value text is kept
// raw and interpreted per algebra.
struct RawModel {
  bool have_domain = false;
  bool nat = false;
  long size = 0;

  std::vector<std::pair<std::string, long>> consts;

  struct RawPred {
    int lineno = 0;
    std::string name;
    bool is_table = false;
    std::string rest;  // text after `table` / `gen`
  };
  std::vector<RawPred> preds;

  struct RawLimit {
    int lineno = 0;
    bool is_inf = true;
    std::string var, body, value;
  };
  std::vector<RawLimit> limits;
};

RawModel scan_model(const std::string& text) {
  RawModel m;
  each_line(text, [&](int lineno, const std::string& line) {
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw == "domain") {
      if (m.have_domain) throw at_line(lineno, "duplicate domain line");
      std::string which;
      ls >> which;
      if (which == "nat") {
        m.nat = true;
      } else if (which == "finite") {
        if (!(ls >> m.size) || m.size < 1)
          throw at_line(lineno, "domain size must be >= 1");
      } else {
        throw at_line(lineno, "expected 'domain finite N' or 'domain nat'");
      }
      m.have_domain = true;
    } else if (kw == "const") {
      std::string name, eq;
      long v = 0;
      if (!(ls >> name >> eq >> v) || eq != "=")
        throw at_line(lineno, "expected 'const NAME = N'");
      m.consts.emplace_back(name, v);
    } else if (kw == "pred") {
      std::string name, eq, form;
      if (!(ls >> name >> eq >> form) || eq != "=")
        throw at_line(lineno, "expected 'pred NAME = table ...' or 'pred NAME = gen ...'");
      RawModel::RawPred p;
      p.lineno = lineno;
      p.name = name;
      if (form == "table")
        p.is_table = true;
      else if (form == "gen")
        p.is_table = false;
      else
        throw at_line(lineno, "predicate interpretation must be 'table' or 'gen'");
      std::string rest;
      std::getline(ls, rest);
      p.rest = trim(rest);
      m.preds.push_back(std::move(p));
    } else if (kw == "limit") {
      RawModel::RawLimit l;
      l.lineno = lineno;
      std::string which;
      ls >> which;
      if (which == "inf")
        l.is_inf = true;
      else if (which == "sup")
        l.is_inf = false;
      else
        throw at_line(lineno, "expected 'limit inf|sup VAR {FORMULA} = VALUE'");
      if (!(ls >> l.var)) throw at_line(lineno, "missing bound variable");
      std::string rest;
      std::getline(ls, rest);
      rest = trim(rest);
      if (rest.empty() || rest[0] != '{')
        throw at_line(lineno, "expected '{' after the bound variable");
      auto close = rest.find('}');
      if (close == std::string::npos) throw at_line(lineno, "missing '}'");
      l.body = trim(rest.substr(1, close - 1));
      std::string tail = trim(rest.substr(close + 1));
      if (tail.empty() || tail[0] != '=')
        throw at_line(lineno, "expected '=' after the family formula");
      l.value = trim(tail.substr(1));
      if (l.value.empty()) throw at_line(lineno, "missing limit value");
      m.limits.push_back(std::move(l));
    } else {
      throw at_line(lineno, "unknown directive '" + kw + "'");
    }
  });
  if (!m.have_domain) throw ParseError("model file: missing domain line");
  return m;
}

// The per-algebra hooks: read one value from the stream, and read the
// generator placement clause.  read_gen absent means generators are
// rejected outright.
template <class A>
Structure<A> build_model(
    const RawModel& m, const Signature& sig,
    const std::function<typename A::Val(int, std::istringstream&)>& read_val,
    const std::function<Generator(int, std::istringstream&)>& read_gen) {
  Structure<A> s;
  s.nat_domain = m.nat;
  s.domain_size = m.nat ? 0 : m.size;

  for (const auto& [name, v] : m.consts) {
    if (!sig.is_const(name))
      throw ParseError("model file: constant " + name + " is not in the signature");
    if (s.consts.count(name))
      throw ParseError("model file: constant " + name + " interpreted twice");
    if (v < 0 || (!m.nat && v >= m.size))
      throw ParseError("model file: constant " + name + " outside the domain");
    s.consts[name] = v;
  }
  for (const std::string& c : sig.consts)
    if (!s.consts.count(c))
      throw ParseError("model file: constant " + c + " not interpreted");

  for (const auto& rp : m.preds) {
    auto it = sig.preds.find(rp.name);
    if (it == sig.preds.end())
      throw at_line(rp.lineno, "predicate " + rp.name + " is not in the signature");
    if (s.preds.count(rp.name))
      throw at_line(rp.lineno, "predicate " + rp.name + " interpreted twice");
    typename Structure<A>::Pred pred;
    pred.arity = it->second;
    std::istringstream vs(rp.rest);
    if (rp.is_table) {
      if (m.nat) throw at_line(rp.lineno, "tables need a finite domain");
      long cells = 1;
      for (int i = 0; i < pred.arity; ++i) cells *= m.size;
      for (long i = 0; i < cells; ++i) pred.table.push_back(read_val(rp.lineno, vs));
      std::string extra;
      if (vs >> extra)
        throw at_line(rp.lineno, "table for " + rp.name + " has more than " +
                                     std::to_string(cells) + " entries");
    } else {
      if (!read_gen)
        throw at_line(rp.lineno, "generator rules need an infinite chain algebra");
      if (!m.nat) throw at_line(rp.lineno, "generator rules need 'domain nat'");
      if (pred.arity != 1)
        throw at_line(rp.lineno, "generator predicates are unary");
      std::string rule;
      if (!(vs >> rule) || rule != "reciprocal")
        throw at_line(rp.lineno, "unknown generator rule '" + rule + "'");
      Generator g = read_gen(rp.lineno, vs);
      std::string kw;
      if (vs >> kw) {
        if (kw != "limit-inf")
          throw at_line(rp.lineno, "expected 'limit-inf VALUE', got '" + kw + "'");
        typename Structure<A>::Limit lim;
        lim.is_inf = true;
        lim.var = "x";
        lim.body = make_atom(rp.name, {var("x")});
        lim.value = read_val(rp.lineno, vs);
        s.limits.push_back(std::move(lim));
        std::string extra;
        if (vs >> extra) throw at_line(rp.lineno, "trailing input '" + extra + "'");
      }
      pred.gen = g;
    }
    s.preds[rp.name] = std::move(pred);
  }
  for (const auto& [p, k] : sig.preds) {
    (void)k;
    if (!s.preds.count(p)) throw ParseError("model file: predicate " + p + " not interpreted");
  }

  for (const auto& rl : m.limits) {
    typename Structure<A>::Limit lim;
    lim.is_inf = rl.is_inf;
    lim.var = rl.var;
    try {
      lim.body = parse_formula(rl.body, sig);
    } catch (const ParseError& e) {
      throw at_line(rl.lineno, e.what());
    }
    std::istringstream vs(rl.value);
    lim.value = read_val(rl.lineno, vs);
    std::string extra;
    if (vs >> extra) throw at_line(rl.lineno, "trailing input '" + extra + "'");
    s.limits.push_back(std::move(lim));
  }
  return s;
}

}  // namespace

Structure<FiniteAlg> parse_finite_model(const std::string& text, const Signature& sig,
                                        const FiniteChain& chain) {
  RawModel m = scan_model(text);
  if (m.nat)
    throw ParseError("model file: finite chain structures need a finite domain");
  auto read_val = [&chain](int lineno, std::istringstream& vs) -> int {
    long v;
    if (!(vs >> v)) throw at_line(lineno, "expected a chain element index");
    if (v < 0 || v >= chain.n)
      throw at_line(lineno, "chain element " + std::to_string(v) + " outside 0.." +
                                std::to_string(chain.n - 1));
    return static_cast<int>(v);
  };
  return build_model<FiniteAlg>(m, sig, read_val, nullptr);
}

Structure<TNormAlg> parse_tnorm_model(const std::string& text, const Signature& sig) {
  RawModel m = scan_model(text);
  auto read_val = [](int lineno, std::istringstream& vs) -> Rat {
    std::string tok;
    if (!(vs >> tok)) throw at_line(lineno, "expected a rational value");
    Rat v = rat_at(lineno, tok);
    if (v < 0 || v > 1) throw at_line(lineno, "value " + rat_str(v) + " outside [0,1]");
    return v;
  };
  auto read_gen = [&read_val](int lineno, std::istringstream& vs) -> Generator {
    std::string kw;
    if (!(vs >> kw) || kw != "range")
      throw at_line(lineno, "expected 'range LO HI' after the rule name");
    Generator g;
    g.rule = "reciprocal";
    g.lo = read_val(lineno, vs);
    g.hi = read_val(lineno, vs);
    if (g.lo >= g.hi) throw at_line(lineno, "generator range is empty");
    return g;
  };
  return build_model<TNormAlg>(m, sig, read_val, read_gen);
}

Structure<PresentedAlg> parse_presented_model(const std::string& text, const Signature& sig,
                                              const PresentedChain& chain) {
  RawModel m = scan_model(text);
  auto read_val = [&chain](int lineno, std::istringstream& vs) -> PElem {
    vs >> std::ws;
    if (vs.peek() == 'u') {
      std::string tok;
      vs >> tok;
      if (tok != "unit") throw at_line(lineno, "expected '(comp, p/q)' or 'unit'");
      return punit();
    }
    if (vs.peek() != '(') throw at_line(lineno, "expected '(comp, p/q)' or 'unit'");
    std::string pair;
    char ch;
    while (vs.get(ch)) {
      pair += ch;
      if (ch == ')') break;
    }
    if (pair.empty() || pair.back() != ')') throw at_line(lineno, "missing ')'");
    auto comma = pair.find(',');
    if (comma == std::string::npos) throw at_line(lineno, "expected '(comp, p/q)'");
    std::string cs = trim(pair.substr(1, comma - 1));
    std::string rs = trim(pair.substr(comma + 1, pair.size() - comma - 2));
    int comp;
    try {
      size_t used = 0;
      comp = std::stoi(cs, &used);
      if (used != cs.size()) throw std::invalid_argument(cs);
    } catch (const std::exception&) {
      throw at_line(lineno, "expected a component index, got '" + cs + "'");
    }
    PElem e{comp, rat_at(lineno, rs)};
    if (!chain.carries(e))
      throw at_line(lineno, "element " + pelem_str(e) + " is not carried by the chain");
    return chain.canon(e);
  };
  auto read_gen = [&chain](int lineno, std::istringstream& vs) -> Generator {
    std::string kw;
    if (!(vs >> kw) || kw != "comp")
      throw at_line(lineno, "expected 'comp K' after the rule name");
    int k;
    if (!(vs >> k) || k < 0 || k >= static_cast<int>(chain.comps.size()))
      throw at_line(lineno, "component index outside the chain");
    Generator g;
    g.rule = "reciprocal";
    g.comp = k;
    return g;
  };
  return build_model<PresentedAlg>(m, sig, read_val, read_gen);
}

// ---------- proof fixtures ----------

ProofFixture parse_proof_fixture(const std::string& text) {
  ProofFixture fx;
  std::string sig_text, gamma_text;
  std::optional<std::pair<int, std::string>> expect;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string t = trim(raw);
    if (t.rfind("# sig:", 0) == 0)
      sig_text += t.substr(6) + "\n";
    else if (t.rfind("# gamma:", 0) == 0)
      gamma_text += t.substr(8) + ";";
    else if (t.rfind("# expect ", 0) == 0)
      expect = {lineno, trim(t.substr(9))};
  }

  for (char& c : sig_text)
    if (c == ';') c = '\n';
  fx.sig = parse_signature(sig_text);

  std::istringstream gs(gamma_text);
  std::string part;
  while (std::getline(gs, part, ';')) {
    part = trim(part);
    if (part.empty()) continue;
    fx.gamma.push_back(parse_formula(part, fx.sig));
  }

  if (expect) {
    const std::string& e = expect->second;
    if (e == "valid") {
      fx.expect = Verdict::Kind::Valid;
    } else if (e == "valid-with-bounded-inf") {
      fx.expect = Verdict::Kind::ValidBoundedInf;
    } else if (e.rfind("invalid", 0) == 0) {
      std::istringstream es(e.substr(7));
      std::string stepkw;
      if (!(es >> stepkw) || stepkw.rfind("step=", 0) != 0)
        throw at_line(expect->first, "expected 'invalid step=K'");
      try {
        fx.expect_step = std::stoi(stepkw.substr(5));
      } catch (const std::exception&) {
        throw at_line(expect->first, "expected 'invalid step=K'");
      }
      fx.expect = Verdict::Kind::Invalid;
    } else {
      throw at_line(expect->first, "unknown expectation '" + e + "'");
    }
  }

  fx.proof = parse_proof(text, fx.sig);
  return fx;
}

}  // namespace tnl
