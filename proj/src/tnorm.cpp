#include "tnl/tnorm.hpp"

#include <algorithm>
#include <stdexcept>

namespace tnl {

void TNorm::validate() const {
  Rat prev = 0;
  for (const Piece& p : pieces) {
    if (p.lo < 0 || p.hi > 1 || p.lo >= p.hi)
      throw std::invalid_argument("piece interval [" + rat_str(p.lo) + "," +
                                  rat_str(p.hi) + "] is malformed");
    if (p.lo < prev)
      throw std::invalid_argument("pieces overlap or are out of order at " +
                                  rat_str(p.lo));
    prev = p.hi;
  }
}

const Piece* TNorm::piece_containing(const Rat& x, const Rat& y) const {
  for (const Piece& p : pieces)
    if (p.lo <= x && x <= p.hi && p.lo <= y && y <= p.hi) return &p;
  return nullptr;
}

Rat TNorm::apply(const Rat& x, const Rat& y) const {
  const Piece* p = piece_containing(x, y);
  if (p == nullptr) return std::min(x, y);  // ordinal-sum default
  switch (p->kind) {
    case PieceKind::Luk: {
      Rat v = x + y - p->hi;
      return v > p->lo ? v : p->lo;
    }
    case PieceKind::Prod:
      // affine conjugate of multiplication: lo + (x-lo)(y-lo)/(hi-lo)
      return p->lo + (x - p->lo) * (y - p->lo) / (p->hi - p->lo);
    case PieceKind::Godel:
      return std::min(x, y);
  }
  throw std::logic_error("unreachable piece kind");
}

Rat TNorm::residuum(const Rat& x, const Rat& y) const {
  if (x <= y) return 1;
  // x > y from here on; the residuum never exceeds the piece top of x.
  const Piece* p = piece_containing(x, y);
  if (p == nullptr || p->kind == PieceKind::Godel) return y;
  if (p->kind == PieceKind::Luk) return p->hi - x + y;
  // product piece: lo + (hi-lo)(y-lo)/(x-lo); if x == lo then y < lo is
  // impossible, so x > lo here
  return p->lo + (p->hi - p->lo) * (y - p->lo) / (x - p->lo);
}

Rat TNorm::inf_powers(const Rat& x) const {
  if (x == 1) return 1;
  for (const Piece& p : pieces) {
    if (p.kind == PieceKind::Godel) continue;
    if (p.lo <= x && x < p.hi) return p.lo;  // x == p.hi is idempotent
  }
  return x;  // Goedel region or breakpoint: idempotent
}

std::string piece_kind_name(PieceKind k) {
  switch (k) {
    case PieceKind::Luk: return "luk";
    case PieceKind::Prod: return "prod";
    case PieceKind::Godel: return "godel";
  }
  return "?";
}

std::string TNorm::describe() const {
  if (pieces.empty()) return "godel on [0,1]";
  std::string s;
  for (const Piece& p : pieces) {
    if (!s.empty()) s += ", ";
    s += piece_kind_name(p.kind) + " [" + rat_str(p.lo) + "," + rat_str(p.hi) + "]";
  }
  return s;
}

TNorm tnorm_lukasiewicz() { return TNorm{{Piece{PieceKind::Luk, 0, 1}}}; }
TNorm tnorm_product() { return TNorm{{Piece{PieceKind::Prod, 0, 1}}}; }
TNorm tnorm_godel() { return TNorm{{Piece{PieceKind::Godel, 0, 1}}}; }

}  // namespace tnl
