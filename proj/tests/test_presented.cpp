#include "doctest.h"
#include "tnl/presented.hpp"

using namespace tnl;

namespace {

PresentedChain mv3_plus_prod() {
  return PresentedChain{{CompDesc{CompKind::FiniteMV, 3}, CompDesc{CompKind::ProdHoop, 0}}};
}

}  // namespace

TEST_CASE("ordinal-sum case equations on a presented chain") {
  PresentedChain p = mv3_plus_prod();
  p.validate();
  PElem a{0, Rat(1, 2)}, third{1, Rat(1, 3)}, half{1, Rat(1, 2)};

  // same component: local operations
  CHECK(pelem_eq(p.mul(a, a), PElem{0, 0}));
  CHECK(pelem_eq(p.mul(third, half), PElem{1, Rat(1, 6)}));
  CHECK(pelem_eq(p.residuum(half, third), PElem{1, Rat(2, 3)}));
  CHECK(pelem_eq(p.residuum(a, PElem{0, 0}), a));

  // across components: lower absorbs, residuum is 1 upward and y downward
  CHECK(pelem_eq(p.mul(a, third), a));
  CHECK(pelem_eq(p.residuum(a, third), punit()));
  CHECK(pelem_eq(p.residuum(third, a), a));

  // the shared unit
  CHECK(pelem_eq(p.mul(punit(), third), third));
  CHECK(pelem_eq(p.mul(PElem{0, 1}, third), third));  // (i,1) is the unit
  CHECK(pelem_eq(p.residuum(third, punit()), punit()));
  CHECK(pelem_eq(p.residuum(punit(), third), third));

  CHECK(pelem_eq(p.bottom(), PElem{0, 0}));
  CHECK(p.is_idempotent(p.bottom()));
  CHECK(p.is_idempotent(punit()));
  CHECK_FALSE(p.is_idempotent(a));
  CHECK_FALSE(p.is_idempotent(half));
}

TEST_CASE("hoop identities hold on sampled pairs of a presented chain") {
  for (PresentedChain p :
       {mv3_plus_prod(),
        PresentedChain{{CompDesc{CompKind::StdMV, 0}, CompDesc{CompKind::GodelHoop, 0},
                        CompDesc{CompKind::FiniteMV, 4}}}}) {
    auto sample = sample_elements(p, 40);
    for (const PElem& x : sample)
      for (const PElem& y : sample) {
        // divisibility and the two-implication join
        CHECK(pelem_eq(p.meet(x, y), p.mul(x, p.residuum(x, y))));
        PElem l = p.residuum(p.residuum(x, y), y);
        PElem r = p.residuum(p.residuum(y, x), x);
        CHECK(pelem_eq(p.join(x, y), p.meet(l, r)));
        // adjunction on a third element
        for (const PElem& z : {p.bottom(), punit(), p.meet(x, y)}) {
          bool lhs = pelem_cmp(p.mul(x, z), y) <= 0;
          bool rhs = pelem_cmp(z, p.residuum(x, y)) <= 0;
          CHECK(lhs == rhs);
        }
      }
  }
}

TEST_CASE("carrier membership respects each component kind") {
  PresentedChain p = mv3_plus_prod();
  CHECK(p.carries(PElem{0, Rat(1, 2)}));
  CHECK_FALSE(p.carries(PElem{0, Rat(1, 4)}));  // off the MV3 grid
  CHECK(p.carries(PElem{1, Rat(1, 1000)}));
  CHECK_FALSE(p.carries(PElem{1, 0}));  // product hoop has no 0
  CHECK(p.carries(punit()));
  CHECK_FALSE(p.carries(PElem{2, Rat(1, 2)}));

  PresentedChain bad{{CompDesc{CompKind::ProdHoop, 0}}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("weak saturation reports per component descriptor") {
  SaturationReport ok = is_weakly_saturated(mv3_plus_prod());
  CHECK(ok.ok);
  REQUIRE(ok.lines.size() == 3);  // preamble + one line per component

  SaturationReport bad = is_weakly_saturated(PresentedChain{{CompDesc{CompKind::ProdHoop, 0}}});
  CHECK_FALSE(bad.ok);
}

TEST_CASE("wedge connectivity of families with declared infima") {
  PresentedChain p = mv3_plus_prod();
  std::vector<PElem> recip = {PElem{1, Rat(1, 2)}, PElem{1, Rat(1, 3)}, PElem{1, Rat(1, 4)}};
  PElem a{0, Rat(1, 2)};

  // reciprocal family in the product component, infimum down in MV3:
  // neither connected nor an idempotent infimum -- the flagged RC case
  CHECK_FALSE(is_wedge_connected(p, recip, a));
  CHECK_FALSE(p.is_idempotent(a));

  CHECK(is_wedge_connected(p, {a}, a));  // singleton family
  CHECK(is_wedge_connected(p, recip, PElem{1, Rat(1, 100)}));
  CHECK_THROWS_AS(is_wedge_connected(p, recip, PElem{1, Rat(1, 2)}), std::invalid_argument);

  // finite-chain overload via a decomposition
  FiniteChain g3;
  g3.n = 3;
  g3.mul = {{0, 0, 0}, {0, 1, 1}, {0, 1, 2}};
  Decomposition d = decompose(g3);
  CHECK(is_wedge_connected(d, {0}, 0));
  CHECK_FALSE(is_wedge_connected(d, {1, 2}, 0));
  CHECK_THROWS_AS(is_wedge_connected(d, {0}, 1), std::invalid_argument);
}

TEST_CASE("embedding: MV3 + standard MV lands on breakpoints 0, 1/4, 1/2, 1") {
  PresentedChain p{{CompDesc{CompKind::FiniteMV, 3}, CompDesc{CompKind::StdMV, 0}}};
  EmbedResult e = embed_into_tnorm(p);
  CHECK(e.report.ok);
  CHECK(e.report.pairs_checked >= 2500);
  CHECK(e.map.breakpoints() == std::vector<Rat>{0, Rat(1, 4), Rat(1, 2), 1});
  CHECK(e.map.map(PElem{0, 0}) == 0);
  CHECK(e.map.map(PElem{0, Rat(1, 2)}) == Rat(1, 4));
  CHECK(e.map.map(punit()) == 1);
  CHECK(e.map.map(PElem{1, Rat(1, 3)}) == Rat(1, 2) + Rat(1, 6));
  REQUIRE(e.tnorm.pieces.size() == 2);
  CHECK(e.tnorm.pieces[0].kind == PieceKind::Luk);
  CHECK(e.tnorm.pieces[1].kind == PieceKind::Luk);
}

TEST_CASE("embedding: single standard MV component maps identically") {
  PresentedChain p{{CompDesc{CompKind::StdMV, 0}}};
  EmbedResult e = embed_into_tnorm(p);
  CHECK(e.report.ok);
  for (int n = 1; n <= 7; ++n) CHECK(e.map.map(PElem{0, Rat(1, n)}) == Rat(1, n));
  CHECK(e.map.breakpoints() == std::vector<Rat>{0, 1});
}

TEST_CASE("embedding: MV3 + product hoop, x -> 1/2 + x/2 on the product piece") {
  PresentedChain p = mv3_plus_prod();
  EmbedResult e = embed_into_tnorm(p);
  CHECK(e.report.ok);
  CHECK(e.report.violations.empty());
  REQUIRE(e.tnorm.pieces.size() == 2);
  CHECK(e.tnorm.pieces[1].kind == PieceKind::Prod);
  for (int n = 1; n <= 9; ++n)
    CHECK(e.map.map(PElem{1, Rat(1, n)}) == Rat(1, 2) + Rat(1, 2 * n));

  // the image boundary 1/2 is a t-norm idempotent even though the chain
  // never reaches it: the reciprocal family's recomputed infimum lands here
  CHECK(e.tnorm.apply(Rat(1, 2), Rat(1, 2)) == Rat(1, 2));
  CHECK(e.tnorm.residuum(Rat(1, 2), e.tnorm.apply(Rat(1, 2), Rat(1, 2))) == 1);
  // whereas the chain-side value of the same residuum shape is 1/2, not 1
  PElem a{0, Rat(1, 2)};
  CHECK(pelem_eq(p.residuum(a, p.mul(a, a)), a));

  CHECK_THROWS_AS(embed_into_tnorm(PresentedChain{{CompDesc{CompKind::ProdHoop, 0}}}),
                  std::invalid_argument);
}

TEST_CASE("embedding: Goedel component becomes a godel piece") {
  PresentedChain p{{CompDesc{CompKind::FiniteMV, 2}, CompDesc{CompKind::GodelHoop, 0},
                    CompDesc{CompKind::ProdHoop, 0}}};
  EmbedResult e = embed_into_tnorm(p);
  CHECK(e.report.ok);
  CHECK(e.tnorm.pieces[1].kind == PieceKind::Godel);
  // godel piece: interior elements stay idempotent under the embedding
  Rat mid = e.map.map(PElem{1, Rat(1, 2)});
  CHECK(e.tnorm.apply(mid, mid) == mid);
}

TEST_CASE("element samples are deterministic, sorted, and large enough") {
  PresentedChain p = mv3_plus_prod();
  auto s1 = sample_elements(p, 51);
  auto s2 = sample_elements(p, 51);
  REQUIRE(s1.size() == s2.size());
  CHECK(s1.size() >= 51);
  for (size_t i = 0; i < s1.size(); ++i) CHECK(pelem_eq(s1[i], s2[i]));
  for (size_t i = 0; i + 1 < s1.size(); ++i) CHECK(pelem_cmp(s1[i], s1[i + 1]) < 0);
  for (const PElem& e : s1) CHECK(p.carries(e));
}
