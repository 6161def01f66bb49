#include "tnl/chain.hpp"

#include <algorithm>
#include <stdexcept>

namespace tnl {

// ---------- FiniteChain ----------

int FiniteChain::residuum(int x, int y) const {
  for (int z = n - 1; z >= 0; --z)
    if (mul[x][z] <= y) return z;
  return -1;  // impossible on a valid chain: x*0 = 0 <= y
}

std::vector<int> FiniteChain::idempotents() const {
  std::vector<int> out;
  for (int x = 0; x < n; ++x)
    if (mul[x][x] == x) out.push_back(x);
  return out;
}

int FiniteChain::stable_power(int x) const {
  int p = x;
  for (int k = 0; k < n + 1; ++k) {
    int q = mul[p][x];
    if (q == p) return p;
    p = q;
  }
  return p;  // powers descend, so the loop always stabilizes within n steps
}

std::string FiniteChain::table_str() const {
  std::string s;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (y) s += ' ';
      s += std::to_string(mul[x][y]);
    }
    s += '\n';
  }
  return s;
}

// ---------- law scan ----------

BlCheckReport check_bl_chain(const FiniteChain& c, int max_witnesses) {
  BlCheckReport rep;
  auto flag = [&](const std::string& v) {
    rep.ok = false;
    if (static_cast<int>(rep.violations.size()) < max_witnesses)
      rep.violations.push_back(v);
  };
  const int n = c.n;
  if (n < 2) {
    flag("carrier must have at least 2 elements");
    return rep;
  }
  if (static_cast<int>(c.mul.size()) != n) {
    flag("product table has wrong dimensions");
    return rep;
  }
  for (int x = 0; x < n; ++x) {
    if (static_cast<int>(c.mul[x].size()) != n) {
      flag("product table has wrong dimensions");
      return rep;
    }
    for (int y = 0; y < n; ++y)
      if (c.mul[x][y] < 0 || c.mul[x][y] >= n) {
        flag("table entry out of range at (" + std::to_string(x) + "," +
             std::to_string(y) + ")");
        return rep;
      }
  }
  auto s = [](int x) { return std::to_string(x); };
  for (int x = 0; x < n; ++x) {
    if (c.mul[x][n - 1] != x)
      flag("unit: " + s(x) + "*" + s(n - 1) + " = " + s(c.mul[x][n - 1]));
    for (int y = 0; y <= x; ++y)
      if (c.mul[x][y] != c.mul[y][x])
        flag("commutativity: " + s(x) + "*" + s(y) + " != " + s(y) + "*" + s(x));
  }
  for (int x = 0; x < n && rep.violations.size() < 1000; ++x)
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        if (c.mul[c.mul[x][y]][z] != c.mul[x][c.mul[y][z]])
          flag("associativity: (" + s(x) + "*" + s(y) + ")*" + s(z) + " != " +
               s(x) + "*(" + s(y) + "*" + s(z) + ")");
        if (y <= z && c.mul[x][y] > c.mul[x][z])
          flag("monotonicity: " + s(y) + " <= " + s(z) + " but " + s(x) + "*" +
               s(y) + " > " + s(x) + "*" + s(z));
      }
    }
  if (!rep.ok) return rep;  // residua are meaningless without the above
  // residuation: x*z <= y iff z <= res(x,y)
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int r = c.residuum(x, y);
      if (r < 0) {
        flag("residuum undefined for (" + s(x) + "," + s(y) + ")");
        continue;
      }
      for (int z = 0; z < n; ++z)
        if ((c.mul[x][z] <= y) != (z <= r))
          flag("residuation: x=" + s(x) + " y=" + s(y) + " z=" + s(z));
      // divisibility: min(x,y) = x * (x -> y)
      if (c.mul[x][r] != std::min(x, y))
        flag("divisibility: " + s(x) + "*(" + s(x) + "->" + s(y) + ") = " +
             s(c.mul[x][r]) + " != min = " + s(std::min(x, y)));
    }
  return rep;
}

// ---------- FiniteHoop ----------

int FiniteHoop::residuum(int x, int y) const {
  for (int z = size - 1; z >= 0; --z)
    if (mul[x][z] <= y) return z;
  return -1;
}

bool FiniteHoop::satisfies_wajsberg() const {
  for (int x = 0; x < size; ++x)
    for (int y = 0; y < size; ++y)
      if (residuum(residuum(x, y), y) != residuum(residuum(y, x), x))
        return false;
  return true;
}

std::vector<std::vector<int>> FiniteHoop::filters() const {
  // Exhaustive subset scan; component sizes are small.
  std::vector<std::vector<int>> out;
  if (size > 20) throw std::invalid_argument("filter enumeration is exhaustive; hoop too large");
  for (unsigned mask = 0; mask < (1u << size); ++mask) {
    if (!(mask >> unit() & 1)) continue;  // must contain the unit
    bool good = true;
    // upward closure: everything above a member is a member
    for (int x = 0; x < size && good; ++x)
      if (mask >> x & 1)
        for (int y = x + 1; y < size; ++y)
          if (!(mask >> y & 1)) { good = false; break; }
    // closure under the product
    for (int x = 0; x < size && good; ++x)
      if (mask >> x & 1)
        for (int y = x; y < size && good; ++y)
          if ((mask >> y & 1) && !(mask >> mul[x][y] & 1)) good = false;
    if (!good) continue;
    std::vector<int> elems;
    for (int x = 0; x < size; ++x)
      if (mask >> x & 1) elems.push_back(x);
    out.push_back(std::move(elems));
  }
  return out;
}

bool FiniteHoop::is_simple() const {
  for (const auto& f : filters())
    if (static_cast<int>(f.size()) != 1 && static_cast<int>(f.size()) != size)
      return false;
  return true;
}

FiniteHoop mv_hoop(int s) {
  if (s < 2) throw std::invalid_argument("MV component needs at least 2 elements");
  FiniteHoop h;
  h.size = s;
  h.mul.assign(s, std::vector<int>(s));
  for (int x = 0; x < s; ++x)
    for (int y = 0; y < s; ++y) h.mul[x][y] = std::max(x + y - (s - 1), 0);
  return h;
}

// ---------- decomposition / ordinal sum ----------

Decomposition decompose(const FiniteChain& c) {
  BlCheckReport rep = check_bl_chain(c);
  if (!rep.ok)
    throw std::invalid_argument("decompose: not a BL-chain: " +
                                (rep.violations.empty() ? std::string("?")
                                                        : rep.violations.front()));
  std::vector<int> idem = c.idempotents();  // includes 0 and n-1
  Decomposition d;
  d.elem_component.assign(c.n, -1);
  for (size_t k = 0; k + 1 < idem.size(); ++k) {
    int lo = idem[k], next = idem[k + 1];
    // component carrier: chain elements [lo, next) plus a fresh local unit
    int body = next - lo;
    FiniteHoop h;
    h.size = body + 1;
    h.mul.assign(h.size, std::vector<int>(h.size));
    for (int x = 0; x < h.size; ++x)
      for (int y = 0; y < h.size; ++y) {
        if (x == h.unit()) h.mul[x][y] = y;
        else if (y == h.unit()) h.mul[x][y] = x;
        else h.mul[x][y] = c.mul[lo + x][lo + y] - lo;
      }
    for (int e = lo; e < next; ++e) d.elem_component[e] = static_cast<int>(d.components.size());
    d.components.push_back(std::move(h));
  }
  return d;
}

FiniteChain ordinal_sum(const std::vector<FiniteHoop>& components) {
  if (components.empty())
    throw std::invalid_argument("ordinal_sum: empty component list");
  int n = 1;
  std::vector<int> offset;
  for (const FiniteHoop& h : components) {
    if (h.size < 2) throw std::invalid_argument("ordinal_sum: component with fewer than 2 elements");
    offset.push_back(n - 1);
    n += h.size - 1;
  }
  FiniteChain c;
  c.n = n;
  c.mul.assign(n, std::vector<int>(n));
  auto comp_of = [&](int e) {
    for (int i = static_cast<int>(components.size()) - 1; i >= 0; --i)
      if (e >= offset[i]) return i;
    return 0;
  };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == n - 1) { c.mul[x][y] = y; continue; }
      if (y == n - 1) { c.mul[x][y] = x; continue; }
      int i = comp_of(x), j = comp_of(y);
      if (i == j)
        c.mul[x][y] = offset[i] + components[i].mul[x - offset[i]][y - offset[i]];
      else
        c.mul[x][y] = std::min(x, y);  // lower component wins across parts
    }
  return c;
}

// ---------- cuts / saturation ----------

std::vector<Cut> enumerate_cuts(const FiniteChain& c) {
  std::vector<Cut> out;
  for (int pos = 0; pos < c.n; ++pos) {
    // X = [0,pos), Y = [pos,n); X <= Y holds by construction.
    bool ok = true;
    // Y closed under the product
    for (int y1 = pos; y1 < c.n && ok; ++y1)
      for (int y2 = y1; y2 < c.n && ok; ++y2)
        if (c.mul[y1][y2] < pos) ok = false;
    // x*y = x across the parts
    for (int x = 0; x < pos && ok; ++x)
      for (int y = pos; y < c.n && ok; ++y)
        if (c.mul[x][y] != x) ok = false;
    if (ok) out.push_back(Cut{pos});
  }
  return out;
}

std::optional<int> saturating_idempotent(const FiniteChain& c, const Cut& cut) {
  int u = cut.pos;  // min(Y)
  if (!c.is_idempotent(u)) return std::nullopt;
  // u must dominate X and be dominated by Y; immediate from the positions.
  return u;
}

// ---------- bounded-infinity surrogate ----------

KReport check_K(const FiniteChain& c) {
  KReport rep;
  for (int b = 0; b < c.n; ++b) {
    int inf = c.stable_power(b);  // == the exact infimum of the powers of b
    for (int a = 0; a <= inf; ++a) {
      if (c.residuum(a, c.mul[a][b]) != c.unit()) {
        rep.holds = false;
        rep.witnesses.push_back("a=" + std::to_string(a) + " b=" + std::to_string(b) +
                                " inf(b^n)=" + std::to_string(inf));
      }
    }
  }
  return rep;
}

// ---------- enumeration ----------

std::vector<FiniteChain> enumerate_bl_chains(int max_size) {
  std::vector<FiniteChain> out;
  for (int n = 2; n <= max_size; ++n) {
    // compositions of n-1 into parts >= 1; part p contributes MV_{p+1}
    std::vector<FiniteChain> of_size;
    int total = n - 1;
    std::vector<int> parts;
    auto rec = [&](auto&& self, int rest) -> void {
      if (rest == 0) {
        std::vector<FiniteHoop> comps;
        for (int p : parts) comps.push_back(mv_hoop(p + 1));
        of_size.push_back(ordinal_sum(comps));
        return;
      }
      for (int p = 1; p <= rest; ++p) {
        parts.push_back(p);
        self(self, rest - p);
        parts.pop_back();
      }
    };
    rec(rec, total);
    std::sort(of_size.begin(), of_size.end(),
              [](const FiniteChain& a, const FiniteChain& b) { return a.mul < b.mul; });
    for (auto& c : of_size) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace tnl
