#include "tnl/semantics.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

namespace tnl {

namespace {

// odometer over mixed bases; returns false when it wraps around
bool advance(std::vector<long>& odo, const std::vector<long>& base) {
  for (size_t i = 0; i < odo.size(); ++i) {
    if (++odo[i] < base[i]) return true;
    odo[i] = 0;
  }
  return false;  // wrapped (or empty): enumeration done
}

std::string valuation_str(const Valuation& v) {
  std::ostringstream os;
  for (auto it = v.begin(); it != v.end(); ++it) {
    if (it != v.begin()) os << ", ";
    os << it->first << "=" << it->second;
  }
  return os.str();
}

// Enumerates structures for `sig` over domain sizes 1..max_domain with
// values drawn from a finite palette, calling `visit` in deterministic
// order (domain size, then constant map, then tables, lexicographic).
// visit returns true to stop.  Returns {stopped, cap_hit}.
template <class A, class ValueOf>
std::pair<bool, bool> enumerate_structures(
    const Signature& sig, long max_domain, long palette, long max_structures,
    const ValueOf& value_of,
    const std::function<bool(const Structure<A>&, long)>& visit) {
  long seen = 0;
  for (long m = 1; m <= max_domain; ++m) {
    std::vector<std::string> cnames(sig.consts.begin(), sig.consts.end());
    std::vector<std::string> pnames;
    for (const auto& [p, k] : sig.preds) pnames.push_back(p);

    std::vector<long> codo(cnames.size(), 0), cbase(cnames.size(), m);
    do {
      std::vector<long> tslots;  // per predicate: m^arity table entries
      long total_slots = 0;
      for (const std::string& p : pnames) {
        long cells = 1;
        for (int i = 0; i < sig.preds.at(p); ++i) cells *= m;
        tslots.push_back(cells);
        total_slots += cells;
      }
      std::vector<long> todo(total_slots, 0), tbase(total_slots, palette);
      do {
        if (++seen > max_structures) return {false, true};
        Structure<A> s;
        s.nat_domain = false;
        s.domain_size = m;
        for (size_t i = 0; i < cnames.size(); ++i) s.consts[cnames[i]] = codo[i];
        long off = 0;
        for (size_t i = 0; i < pnames.size(); ++i) {
          typename Structure<A>::Pred pred;
          pred.arity = sig.preds.at(pnames[i]);
          for (long j = 0; j < tslots[i]; ++j) pred.table.push_back(value_of(todo[off + j]));
          off += tslots[i];
          s.preds[pnames[i]] = std::move(pred);
        }
        if (visit(s, m)) return {true, false};
      } while (advance(todo, tbase));
    } while (advance(codo, cbase));
  }
  return {false, false};
}

}  // namespace

SearchResult consequence_search(const Signature& sig, const std::vector<FormulaPtr>& gamma,
                                const FormulaPtr& phi, const SearchBounds& bounds) {
  if (bounds.max_chain_size < 2 || bounds.max_domain_size < 1)
    throw std::invalid_argument(
        "consequence_search: bounds too small to instantiate the signature");

  SearchResult out;
  std::vector<std::string> fv;
  for (const auto& x : free_vars(phi)) fv.push_back(x);
  std::sort(fv.begin(), fv.end());

  // refutes phi on one structure if some valuation gives it a value < 1
  auto refute_on = [&](const auto& alg, const auto& s, long m, Valuation& witness,
                       std::string& value_str) {
    std::vector<long> odo(fv.size(), 0), base(fv.size(), m);
    do {
      Valuation v;
      for (size_t i = 0; i < fv.size(); ++i) v[fv[i]] = odo[i];
      auto r = eval(alg, s, phi, v);
      if (!r.ok) return false;  // unsafe instance: not a counterexample
      if (!alg.eq(r.value, alg.one())) {
        witness = v;
        value_str = alg.str(r.value);
        return true;
      }
    } while (advance(odo, base));
    return false;
  };

  for (const FiniteChain& chain : enumerate_bl_chains(bounds.max_chain_size)) {
    FiniteAlg alg{&chain};
    auto [stopped, cap] = enumerate_structures<FiniteAlg>(
        sig, bounds.max_domain_size, chain.n, bounds.max_structures,
        [](long i) { return static_cast<int>(i); },
        [&](const Structure<FiniteAlg>& s, long m) {
          if (!is_model(alg, s, gamma).ok) return false;
          Valuation witness;
          std::string val;
          if (!refute_on(alg, s, m, witness, val)) return false;
          out.refuted = true;
          out.finite = FiniteCounterexample{chain, s, witness};
          std::ostringstream os;
          os << "countermodel: chain of size " << chain.n << ", domain " << m;
          for (const auto& [c, e] : s.consts) os << ", " << c << "=" << e;
          for (const auto& [p, pr] : s.preds) {
            os << ", " << p << "=[";
            for (size_t i = 0; i < pr.table.size(); ++i)
              os << (i ? " " : "") << pr.table[i];
            os << "]";
          }
          if (!witness.empty()) os << ", valuation " << valuation_str(witness);
          os << ", value " << val;
          out.description = os.str();
          return true;
        });
    if (cap) out.bounds_exhausted = true;
    if (stopped) return out;
  }

  for (const TNorm& t : bounds.tnorms) {
    TNormAlg alg{&t};
    long palette = bounds.value_grid + 1;
    auto [stopped, cap] = enumerate_structures<TNormAlg>(
        sig, bounds.max_domain_size, palette, bounds.max_structures,
        [&](long i) { return Rat(i, bounds.value_grid); },
        [&](const Structure<TNormAlg>& s, long m) {
          if (!is_model(alg, s, gamma).ok) return false;
          Valuation witness;
          std::string val;
          if (!refute_on(alg, s, m, witness, val)) return false;
          out.refuted = true;
          out.grid = GridCounterexample{t, s, witness};
          std::ostringstream os;
          os << "countermodel: t-norm " << t.describe() << ", domain " << m;
          for (const auto& [c, e] : s.consts) os << ", " << c << "=" << e;
          for (const auto& [p, pr] : s.preds) {
            os << ", " << p << "=[";
            for (size_t i = 0; i < pr.table.size(); ++i)
              os << (i ? " " : "") << rat_str(pr.table[i]);
            os << "]";
          }
          if (!witness.empty()) os << ", valuation " << valuation_str(witness);
          os << ", value " << val;
          out.description = os.str();
          return true;
        });
    if (cap) out.bounds_exhausted = true;
    if (stopped) return out;
  }

  out.refuted = false;
  if (out.description.empty())
    out.description = out.bounds_exhausted
                          ? "no counterexample found (enumeration cap hit; search incomplete)"
                          : "no counterexample found within bounds (not a validity claim)";
  return out;
}

InfSoundnessReport inf_rule_soundness_check(const TNorm& t, int grid) {
  InfSoundnessReport rep;
  std::vector<Rat> pts;
  for (int i = 0; i <= grid; ++i) pts.push_back(Rat(i, grid));
  for (const Piece& p : t.pieces) {
    pts.push_back(p.lo);
    pts.push_back(p.hi);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  for (const Rat& b : pts) {
    Rat infb = t.inf_powers(b);
    for (const Rat& a : pts) {
      if (a > infb) continue;  // premise "a <= b^n for all n" fails
      ++rep.checked;
      Rat ab = t.apply(a, b);
      if (ab != a)
        rep.violations.push_back("a*b != a at a=" + rat_str(a) + ", b=" + rat_str(b) +
                                 " (a*b=" + rat_str(ab) + ")");
      for (const Rat& c : pts) {
        if (c == 1) continue;
        Rat lhs = std::max(c, t.residuum(a, ab));
        if (lhs != 1)
          rep.violations.push_back("c v (a -> a*b) != 1 at a=" + rat_str(a) +
                                   ", b=" + rat_str(b) + ", c=" + rat_str(c));
      }
    }
  }
  return rep;
}

RcDemo make_rc_demo() {
  RcDemo d;
  d.sig.preds["P"] = 1;
  d.shift_axiom = parse_formula(
      "(forall x. P(x) & P(x)) -> (forall x. P(x)) & (forall x. P(x))", d.sig);
  d.chain = PresentedChain{{CompDesc{CompKind::FiniteMV, 3}, CompDesc{CompKind::ProdHoop, 0}}};
  d.chain.validate();

  PElem half_mv{0, Rat(1, 2)};
  d.model.nat_domain = true;
  Structure<PresentedAlg>::Pred p;
  p.arity = 1;
  p.gen = Generator{"reciprocal", /*comp=*/1, 0, 1};
  d.model.preds["P"] = p;
  d.model.limits.push_back({true, "x", parse_formula("P(x)", d.sig), half_mv});
  d.model.limits.push_back({true, "x", parse_formula("P(x) & P(x)", d.sig), half_mv});

  EmbedResult e = embed_into_tnorm(d.chain);
  d.tnorm = e.tnorm;
  d.map = e.map;

  // image of the generator family lies in the product piece [1/2, 1]; its
  // genuine infimum in [0,1] is the piece boundary 1/2, an idempotent --
  // not the image of the chain-side declared infimum
  Rat lo = d.map.cut[1], hi = d.map.cut[2];
  d.embedded_model.nat_domain = true;
  Structure<TNormAlg>::Pred q;
  q.arity = 1;
  q.gen = Generator{"reciprocal", -1, lo, hi};
  d.embedded_model.preds["P"] = q;
  d.embedded_model.limits.push_back({true, "x", parse_formula("P(x)", d.sig), lo});
  d.embedded_model.limits.push_back({true, "x", parse_formula("P(x) & P(x)", d.sig), lo});
  return d;
}

}  // namespace tnl
