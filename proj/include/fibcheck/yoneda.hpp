#pragma once

#include "fibcheck/twosided.hpp"

namespace fibcheck {

// strict sections s : A×B -> total with φ∘s = id
std::vector<Functor> enumerate_sections(const TwoSidedInstance& inst, long cap = 200000);

// s(u, id_b) ξ-cocartesian and s(id_a, v) π-cartesian
bool is_ts_cartesian_section(const TwoSidedInstance& inst, const Functor& s);

// yon(d)(x,y) = (∅_x)_! ((!_y)* d) for a initial in A, b terminal in B and
// d in the bifiber over (a,b); functorial action induced by the lifts.
Functor yon(const TwoSidedInstance& inst, ObjId a, ObjId b, ObjId d);

ObjId ev(const TwoSidedInstance& inst, const Functor& s, ObjId a, ObjId b);

// (1) yon lands in two-sided cartesian sections, (2) ev∘yon = id,
// (3) yon(ev s) is vertically naturally isomorphic to s,
// (4) the coherence-of-transport comparisons are isomorphisms
CheckReport yoneda_check(const TwoSidedInstance& inst);

// pull back along (∂₁, ∂₀) : a↓A × B↓b -> A×B and run yoneda_check at the
// initial/terminal identities
CheckReport dependent_yoneda_check(const TwoSidedInstance& inst, ObjId a, ObjId b);

}  // namespace fibcheck
