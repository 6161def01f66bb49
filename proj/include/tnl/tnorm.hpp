#pragma once

// Continuous t-norms on [0,1] in piecewise form: an ordered list of
// Lukasiewicz / product / Goedel pieces over rational breakpoints.  Outside
// the listed pieces the operation defaults to min, so idempotent (Goedel)
// regions may be left as gaps.  Every piece endpoint is an idempotent.

#include <optional>
#include <string>
#include <vector>

#include "tnl/rational.hpp"

namespace tnl {

enum class PieceKind { Luk, Prod, Godel };

struct Piece {
  PieceKind kind;
  Rat lo, hi;
};

struct TNorm {
  std::vector<Piece> pieces;  // sorted, non-overlapping, within [0,1]

  // Throws std::invalid_argument if the piece list is malformed.
  void validate() const;

  // Piece containing x in its interior or as an endpoint shared with the
  // gap default; for the operation only the piece with both operands
  // strictly inside matters.
  const Piece* piece_containing(const Rat& x, const Rat& y) const;

  Rat apply(const Rat& x, const Rat& y) const;
  Rat residuum(const Rat& x, const Rat& y) const;

  // Exact infimum of the power sequence x, x*x, x*x*x, ...  For x interior
  // to a Luk or product piece this is the piece's lower endpoint (reached
  // after finitely many steps for Luk, as a limit for product); idempotent
  // x is its own infimum.
  Rat inf_powers(const Rat& x) const;

  bool is_idempotent(const Rat& x) const { return apply(x, x) == x; }

  std::string describe() const;
};

TNorm tnorm_lukasiewicz();
TNorm tnorm_product();
TNorm tnorm_godel();

std::string piece_kind_name(PieceKind k);

}  // namespace tnl
