#pragma once

#include <optional>

#include "fibcheck/fincat.hpp"
#include "fibcheck/report.hpp"

namespace fibcheck {

struct Adjunction {
  Functor left;    // L : C -> D
  Functor right;   // R : D -> C
  NatTrans unit;   // id_C ⇒ R∘L
  NatTrans counit;  // L∘R ⇒ id_D
};

// true iff the data is well formed and both triangle identities hold.
// Throws BoundaryMismatch when the functor boundaries do not even line up.
bool check_adjunction(const Adjunction& adj);

// Universal-arrow search: initial objects of the commas (c ↓ R), smallest id
// first. Returns a fully verified adjunction, or nothing.
std::optional<Adjunction> find_left_adjoint(const Functor& r, long cap = 100000);
std::optional<Adjunction> find_right_adjoint(const Functor& l, long cap = 100000);

// Left adjoint whose unit components are all isomorphisms.
std::optional<Adjunction> has_lari(const Functor& r, long cap = 100000);

struct FiberedAdjunction {
  CatPtr base;
  Adjunction adj;
  Functor proj_left_src;   // projection of adj.left.src to base
  Functor proj_right_src;  // projection of adj.right.src to base
};

// phi : E -> F strictly over the base (pSrc : E -> B, pDst : F -> B).
// Searches psi : F -> E with psi ⊣ phi and vertical unit; per object the
// transposition maps must be bijections for every base arrow.
std::optional<FiberedAdjunction> find_fibered_left_adjoint(const Functor& phi,
                                                           const Functor& pSrc,
                                                           const Functor& pDst);
// phi ⊣ psi with vertical counit, via opposites.
std::optional<FiberedAdjunction> find_fibered_right_adjoint(const Functor& phi,
                                                            const Functor& pSrc,
                                                            const Functor& pDst);

bool is_fibered_lari(const FiberedAdjunction& fa);

// Equivalent characterizations of "psi is a fibered left adjoint of phi",
// each evaluated independently on the candidate pair:
//   ii  - some vertical natural unit transposes to bijections
//   iii - fiberwise adjunctions plus the sliced-comma fibered equivalence
//   iv  - bi-diagrammatic data (vertical unit, two vertical counits, triangles)
CheckReport fibered_adjunction_criteria_agree(const Functor& phi, const Functor& psi,
                                              const Functor& pSrc, const Functor& pDst);

// Mate of alpha : L'∘k ⇒ m∘L across L ⊣ R and L' ⊣ R'; the result is
// (R'm ε) ∘ (R' α R) ∘ (η' k R) : k∘R ⇒ R'∘m.
NatTrans compute_mate(const Functor& k, const Functor& m, const NatTrans& alpha,
                      const Adjunction& adjL, const Adjunction& adjR);

// Inverse direction: gamma : k∘R ⇒ R'∘m goes to (ε' m L) ∘ (L' γ L) ∘ (L' k η)
// : L'∘k ⇒ m∘L.
NatTrans mate_of_right_square(const Functor& k, const Functor& m, const NatTrans& gamma,
                              const Adjunction& adjL, const Adjunction& adjR);

}  // namespace fibcheck
