#include "tnl/presented.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tnl {

const char* comp_kind_name(CompKind k) {
  switch (k) {
    case CompKind::FiniteMV: return "mv";
    case CompKind::StdMV: return "mv-std";
    case CompKind::ProdHoop: return "prod";
    case CompKind::GodelHoop: return "godel";
  }
  return "?";
}

PElem punit() { return PElem{-1, 1}; }

bool is_punit(const PElem& e) { return e.val == 1; }

int pelem_cmp(const PElem& a, const PElem& b) {
  bool ua = is_punit(a), ub = is_punit(b);
  if (ua || ub) return ua && ub ? 0 : (ua ? 1 : -1);  // unit on top
  if (a.comp != b.comp) return a.comp < b.comp ? -1 : 1;
  if (a.val != b.val) return a.val < b.val ? -1 : 1;
  return 0;
}

bool pelem_eq(const PElem& a, const PElem& b) { return pelem_cmp(a, b) == 0; }

std::string pelem_str(const PElem& e) {
  if (is_punit(e)) return "1";
  return "(" + std::to_string(e.comp) + ", " + rat_str(e.val) + ")";
}

// ---------------------------------------------------------------- chain ops

void PresentedChain::validate() const {
  if (comps.empty()) throw std::invalid_argument("presented chain: no components");
  if (comps.front().kind == CompKind::ProdHoop)
    throw std::invalid_argument(
        "presented chain: first component must be bounded (product hoop has no 0)");
  for (const CompDesc& c : comps)
    if (c.kind == CompKind::FiniteMV && c.size < 2)
      throw std::invalid_argument("presented chain: finite MV component needs size >= 2");
}

bool PresentedChain::carries(const PElem& e) const {
  if (is_punit(e)) return true;
  if (e.comp < 0 || e.comp >= static_cast<int>(comps.size())) return false;
  const CompDesc& c = comps[e.comp];
  switch (c.kind) {
    case CompKind::FiniteMV: {
      if (e.val < 0 || e.val > 1) return false;
      Rat steps = e.val * (c.size - 1);
      return denominator(steps) == 1;
    }
    case CompKind::StdMV:
    case CompKind::GodelHoop:
      return e.val >= 0 && e.val <= 1;
    case CompKind::ProdHoop:
      return e.val > 0 && e.val <= 1;
  }
  return false;
}

PElem PresentedChain::canon(PElem e) const {
  if (e.val == 1) return punit();
  return e;
}

PElem PresentedChain::bottom() const {
  validate();
  return PElem{0, 0};
}

namespace {

Rat local_mul(CompKind k, const Rat& x, const Rat& y) {
  switch (k) {
    case CompKind::FiniteMV:
    case CompKind::StdMV: {
      Rat v = x + y - 1;
      return v > 0 ? v : Rat(0);
    }
    case CompKind::ProdHoop:
      return x * y;
    case CompKind::GodelHoop:
      return std::min(x, y);
  }
  return 0;
}

// local residuum for x > y (otherwise the result is the unit)
Rat local_res(CompKind k, const Rat& x, const Rat& y) {
  switch (k) {
    case CompKind::FiniteMV:
    case CompKind::StdMV:
      return 1 - x + y;
    case CompKind::ProdHoop:
      return y / x;
    case CompKind::GodelHoop:
      return y;
  }
  return 0;
}

}  // namespace

PElem PresentedChain::mul(const PElem& x0, const PElem& y0) const {
  PElem x = canon(x0), y = canon(y0);
  if (is_punit(x)) return y;
  if (is_punit(y)) return x;
  if (x.comp == y.comp)
    return canon(PElem{x.comp, local_mul(comps[x.comp].kind, x.val, y.val)});
  return x.comp < y.comp ? x : y;  // lower component absorbs
}

PElem PresentedChain::residuum(const PElem& x0, const PElem& y0) const {
  PElem x = canon(x0), y = canon(y0);
  if (pelem_cmp(x, y) <= 0) return punit();
  if (is_punit(x)) return y;  // 1 -> y = y
  if (x.comp == y.comp)
    return canon(PElem{x.comp, local_res(comps[x.comp].kind, x.val, y.val)});
  return y;  // x strictly above y's component
}

PElem PresentedChain::meet(const PElem& x, const PElem& y) const {
  return pelem_cmp(x, y) <= 0 ? canon(x) : canon(y);
}

PElem PresentedChain::join(const PElem& x, const PElem& y) const {
  return pelem_cmp(x, y) >= 0 ? canon(x) : canon(y);
}

bool PresentedChain::is_idempotent(const PElem& e0) const {
  PElem e = canon(e0);
  if (is_punit(e)) return true;
  switch (comps[e.comp].kind) {
    case CompKind::FiniteMV:
    case CompKind::StdMV:
      return e.val == 0;
    case CompKind::ProdHoop:
      return false;  // carrier is (0,1); squares strictly decrease
    case CompKind::GodelHoop:
      return true;
  }
  return false;
}

std::string PresentedChain::describe() const {
  std::ostringstream os;
  for (size_t i = 0; i < comps.size(); ++i) {
    if (i) os << " + ";
    os << comp_kind_name(comps[i].kind);
    if (comps[i].kind == CompKind::FiniteMV) os << " " << comps[i].size;
  }
  return os.str();
}

// ------------------------------------------------------------- saturation

SaturationReport is_weakly_saturated(const PresentedChain& p) {
  SaturationReport rep;
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    rep.ok = false;
    rep.lines.push_back(e.what());
    return rep;
  }
  rep.ok = true;
  rep.lines.push_back(
      "boundary idempotents between components are not carrier elements; the "
      "t-norm embedding supplies them as piece endpoints, so clauses are "
      "checked per component descriptor");
  for (size_t i = 0; i < p.comps.size(); ++i) {
    std::ostringstream os;
    os << "component " << i << " (" << comp_kind_name(p.comps[i].kind);
    if (p.comps[i].kind == CompKind::FiniteMV) os << " " << p.comps[i].size;
    os << "): ";
    switch (p.comps[i].kind) {
      case CompKind::FiniteMV:
        os << "non-idempotents bracketed by the component bottom and the upper "
              "boundary idempotent; bracket is a finite MV-algebra, Archimedean "
              "(powers of any non-unit element reach the bottom)";
        break;
      case CompKind::StdMV:
        os << "non-idempotents bracketed by 0 and the upper boundary idempotent; "
              "bracket is the standard MV-algebra, Archimedean (s^n = "
              "max(n*s-(n-1), 0) reaches 0)";
        break;
      case CompKind::ProdHoop:
        os << "non-idempotents bracketed once the lower boundary idempotent is "
              "adjoined; bracket is a product algebra, Archimedean (s^n -> 0 for "
              "s < 1)";
        break;
      case CompKind::GodelHoop:
        os << "every element idempotent; the run is a maximal Goedel interval "
              "(neighboring components contribute non-idempotents arbitrarily "
              "close to the shared boundary)";
        break;
    }
    rep.lines.push_back(os.str());
  }
  return rep;
}

// ------------------------------------------------------ wedge connectivity

bool is_wedge_connected(const PresentedChain& p, const std::vector<PElem>& family,
                        const PElem& declared_inf) {
  PElem inf = p.canon(declared_inf);
  for (const PElem& e0 : family) {
    PElem e = p.canon(e0);
    if (pelem_cmp(inf, e) > 0)
      throw std::invalid_argument("declared infimum " + pelem_str(inf) +
                                  " is not a lower bound of " + pelem_str(e));
  }
  for (const PElem& e0 : family)
    if (p.canon(e0).comp == inf.comp) return true;
  return false;
}

bool is_wedge_connected(const Decomposition& d, const std::vector<int>& family,
                        int declared_inf) {
  for (int e : family)
    if (e < declared_inf)
      throw std::invalid_argument("declared infimum is not a lower bound");
  for (int e : family)
    if (d.elem_component[e] == d.elem_component[declared_inf]) return true;
  return false;
}

// -------------------------------------------------------------- embedding

Rat EmbeddingMap::map(const PElem& e) const {
  if (is_punit(e)) return 1;
  const Rat& lo = cut[e.comp];
  const Rat& hi = cut[e.comp + 1];
  return lo + (hi - lo) * e.val;
}

std::vector<Rat> EmbeddingMap::breakpoints() const {
  std::vector<Rat> pts(cut.begin(), cut.end());
  for (size_t i = 0; i < comps.size(); ++i)
    if (comps[i].kind == CompKind::FiniteMV)
      for (int j = 0; j < comps[i].size; ++j)
        pts.push_back(map(PElem{static_cast<int>(i), Rat(j, comps[i].size - 1)}));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::string EmbeddingMap::describe() const {
  std::ostringstream os;
  for (size_t i = 0; i < comps.size(); ++i) {
    os << "component " << i << " (" << comp_kind_name(comps[i].kind);
    if (comps[i].kind == CompKind::FiniteMV) os << " " << comps[i].size;
    os << ") -> [" << rat_str(cut[i]) << ", " << rat_str(cut[i + 1])
       << "] via x |-> " << rat_str(cut[i]) << " + " << rat_str(cut[i + 1] - cut[i])
       << "*x\n";
  }
  return os.str();
}

std::vector<PElem> sample_elements(const PresentedChain& p, int at_least) {
  std::vector<PElem> out;
  out.push_back(punit());
  bool has_dense = false;
  for (size_t i = 0; i < p.comps.size(); ++i) {
    int ci = static_cast<int>(i);
    const CompDesc& c = p.comps[i];
    if (c.kind == CompKind::FiniteMV) {
      for (int j = 0; j < c.size - 1; ++j) out.push_back(PElem{ci, Rat(j, c.size - 1)});
      continue;
    }
    has_dense = true;
    if (c.kind != CompKind::ProdHoop) out.push_back(PElem{ci, 0});
    for (int n = 2; n <= 9; ++n) {
      out.push_back(PElem{ci, Rat(1, n)});
      out.push_back(PElem{ci, Rat(n - 1, n)});
    }
  }
  auto dedup = [](std::vector<PElem>& v) {
    std::sort(v.begin(), v.end(),
              [](const PElem& a, const PElem& b) { return pelem_cmp(a, b) < 0; });
    v.erase(std::unique(v.begin(), v.end(), pelem_eq), v.end());
  };
  dedup(out);
  for (int d = 11; has_dense && static_cast<int>(out.size()) < at_least; d += 2) {
    for (size_t i = 0; i < p.comps.size(); ++i) {
      if (p.comps[i].kind == CompKind::FiniteMV) continue;
      for (int j = 1; j < d; ++j) out.push_back(PElem{static_cast<int>(i), Rat(j, d)});
    }
    dedup(out);
  }
  return out;
}

EmbedResult embed_into_tnorm(const PresentedChain& p) {
  p.validate();
  SaturationReport sat = is_weakly_saturated(p);
  if (!sat.ok)
    throw std::invalid_argument("embed_into_tnorm: not weakly saturated: " +
                                (sat.lines.empty() ? "" : sat.lines.front()));

  EmbedResult res;
  int m = static_cast<int>(p.comps.size());
  res.map.comps = p.comps;
  for (int i = 0; i <= m; ++i) res.map.cut.push_back(Rat(i, m));
  for (int i = 0; i < m; ++i) {
    PieceKind pk = PieceKind::Luk;
    switch (p.comps[i].kind) {
      case CompKind::FiniteMV:
      case CompKind::StdMV: pk = PieceKind::Luk; break;
      case CompKind::ProdHoop: pk = PieceKind::Prod; break;
      case CompKind::GodelHoop: pk = PieceKind::Godel; break;
    }
    res.tnorm.pieces.push_back(Piece{pk, res.map.cut[i], res.map.cut[i + 1]});
  }
  res.tnorm.validate();

  std::vector<PElem> sample = sample_elements(p, 51);
  EmbedReport& rep = res.report;
  rep.ok = true;
  for (const PElem& x : sample)
    for (const PElem& y : sample) {
      ++rep.pairs_checked;
      Rat gx = res.map.map(x), gy = res.map.map(y);
      if (pelem_cmp(x, y) < 0 && !(gx < gy)) {
        rep.ok = false;
        rep.violations.push_back("order not preserved at " + pelem_str(x) + ", " +
                                 pelem_str(y));
        continue;
      }
      Rat want_mul = res.map.map(p.mul(x, y));
      Rat got_mul = res.tnorm.apply(gx, gy);
      if (want_mul != got_mul)
        rep.violations.push_back("mul mismatch at " + pelem_str(x) + ", " +
                                 pelem_str(y) + ": chain gives " + rat_str(want_mul) +
                                 ", t-norm gives " + rat_str(got_mul));
      Rat want_res = res.map.map(p.residuum(x, y));
      Rat got_res = res.tnorm.residuum(gx, gy);
      if (want_res != got_res)
        rep.violations.push_back("residuum mismatch at " + pelem_str(x) + ", " +
                                 pelem_str(y) + ": chain gives " + rat_str(want_res) +
                                 ", t-norm gives " + rat_str(got_res));
    }
  if (!rep.violations.empty()) rep.ok = false;
  return res;
}

}  // namespace tnl
