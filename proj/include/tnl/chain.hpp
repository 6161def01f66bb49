#pragma once

// Finite BL-chains as explicit monoid tables over 0 < 1 < ... < n-1, their
// residua, decomposition into totally ordered Wajsberg hoop components at
// idempotent boundaries, ordinal sums, cuts and saturation, the bounded-
// infinity condition (stable powers), and exhaustive enumeration of all
// finite BL-chains up to a given size.

#include <optional>
#include <string>
#include <vector>

namespace tnl {

// ---------- finite chains ----------

struct FiniteChain {
  int n = 0;                          // carrier 0..n-1, 0 bottom, n-1 top/unit
  std::vector<std::vector<int>> mul;  // n x n, commutative monoid table

  int unit() const { return n - 1; }
  int apply(int x, int y) const { return mul[x][y]; }

  // max{z : x*z <= y}; requires residuation to hold (checked by
  // check_bl_chain); on a valid chain this always exists since x*0 = 0.
  int residuum(int x, int y) const;

  bool is_idempotent(int x) const { return mul[x][x] == x; }
  std::vector<int> idempotents() const;

  // Least stable power x^k = x^(k+1); the value returned is the power's
  // value (an idempotent), not the exponent.
  int stable_power(int x) const;

  std::string table_str() const;
};

// Report from the exhaustive BL-chain law scan: commutativity,
// associativity, monotonicity, unit, existence of residua, the residuation
// equivalence, and divisibility.  Violations are capped at `max_witnesses`.
struct BlCheckReport {
  bool ok = true;
  std::vector<std::string> violations;
};

BlCheckReport check_bl_chain(const FiniteChain& c, int max_witnesses = 10);

// ---------- hoop components ----------

// A finite totally ordered hoop: carrier 0..size-1 with unit size-1 and the
// restriction of the chain product.  For components of a BL-chain these are
// Wajsberg hoops (finite MV-chains).
struct FiniteHoop {
  int size = 0;
  std::vector<std::vector<int>> mul;

  int unit() const { return size - 1; }
  int residuum(int x, int y) const;  // max{z : x*z <= y}; unit if x <= y

  // (x -> y) -> y == (y -> x) -> x for all pairs.
  bool satisfies_wajsberg() const;

  // Enumerates every filter (subset containing the unit, upward closed,
  // closed under *) and reports whether only {unit} and the full carrier
  // occur.
  bool is_simple() const;
  std::vector<std::vector<int>> filters() const;
};

// The s-element Wajsberg chain-hoop (Lukasiewicz table).
FiniteHoop mv_hoop(int s);

// ---------- decomposition / ordinal sum ----------

struct Decomposition {
  std::vector<FiniteHoop> components;  // bottom to top
  // component index of every non-unit chain element; the top element (the
  // shared unit) is assigned -1.
  std::vector<int> elem_component;
};

// Splits a finite BL-chain at its idempotents into Wajsberg hoop
// components; runs of adjacent idempotents become 2-element components.
// Throws std::invalid_argument if check_bl_chain fails.
Decomposition decompose(const FiniteChain& c);

// Glues finite hoop components bottom-to-top, identifying all component
// units with the single chain unit.  Throws on an empty list.
FiniteChain ordinal_sum(const std::vector<FiniteHoop>& components);

// ---------- cuts and saturation ----------

// A cut (X, Y): X is the complement downset of Y, every y in Y dominates
// every x in X, Y is closed under *, and x*y = x across the parts.  On a
// finite chain a cut is determined by the split position: Y = [pos, n).
struct Cut {
  int pos;  // first element of Y; Y nonempty, X may be empty (pos == 0)
};

std::vector<Cut> enumerate_cuts(const FiniteChain& c);

// The saturating idempotent of a cut: min(Y), verified idempotent and
// between the parts.  nullopt if (exceptionally) no idempotent separates.
std::optional<int> saturating_idempotent(const FiniteChain& c, const Cut& cut);

// ---------- bounded-infinity condition ----------

// Finite surrogate of the quasi-identity "if a <= b^n for every n then
// a*b = a": for all a, b with a <= stable_power(b), checks a -> a*b = unit.
struct KReport {
  bool holds = true;
  std::vector<std::string> witnesses;
};

KReport check_K(const FiniteChain& c);

// ---------- enumeration ----------

// All finite BL-chains with 2..max_size elements, each as an ordinal sum of
// MV components (complete by the decomposition theorem: every finite
// BL-chain splits at its idempotents into finite MV-chains).  Deterministic
// order: by size, then lexicographically by flattened product table.
std::vector<FiniteChain> enumerate_bl_chains(int max_size);

}  // namespace tnl
