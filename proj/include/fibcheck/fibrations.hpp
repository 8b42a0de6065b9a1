#pragma once

#include "fibcheck/adjunctions.hpp"
#include "fibcheck/fincat.hpp"

namespace fibcheck {

// Invariant: src(lift) == source and dst(lift) == target. For cocartesian
// lifts the anchor is source, for cartesian lifts the anchor is target.
struct LiftWitness {
  MorId base_arrow;
  ObjId source;
  MorId lift;
  ObjId target;
};

bool is_cocartesian_arrow(const Functor& pi, MorId f);
bool is_cartesian_arrow(const Functor& pi, MorId f);

// smallest-id cocartesian arrow from e with projection u
std::optional<LiftWitness> cocartesian_lift(const Functor& pi, MorId u, ObjId e);
// smallest-id cartesian arrow into e with projection u
std::optional<LiftWitness> cartesian_lift(const Functor& pi, MorId u, ObjId e);
std::vector<MorId> all_cocartesian_lifts(const Functor& pi, MorId u, ObjId e);

bool is_cocartesian_fibration(const Functor& pi);
bool is_cartesian_fibration(const Functor& pi);
bool is_discrete_opfibration(const Functor& pi);
bool is_discrete_fibration(const Functor& pi);

// unique g over v with g∘f == h, for f pi-cocartesian
std::optional<MorId> cocart_fill(const Functor& pi, MorId f, MorId h, MorId v);
// unique g over v with f∘g == h, for f pi-cartesian
std::optional<MorId> cart_fill(const Functor& pi, MorId f, MorId h, MorId v);

// smallest pi-cocartesian arrow with projection exactly w and source x
std::optional<MorId> cocart_lift_over(const Functor& pi, MorId w, ObjId x);
// smallest pi-cartesian arrow with projection exactly w and target x
std::optional<MorId> cart_lift_over(const Functor& pi, MorId w, ObjId x);

// Auxiliary categories for the Chevalley-style criteria, built once per pi.
struct ChevalleyAux {
  ArrowCat arr;            // E^{Δ¹}
  CommaCat pi_down_base;   // π ↓ B
  Functor leibniz;         // i0 ⋔ π : E^{Δ¹} -> π↓B
  Functor iota;            // ι : E -> π↓B, e ↦ (e, πe, id)
  Functor comma_to_base;   // ∂₁' : π↓B -> B
};
ChevalleyAux chevalley_aux(const Functor& pi);

// E^{Δ¹} -> π↓B has a LARI
bool chevalley_lari_check(const Functor& pi);
// ι : E -> π↓B has a fibered left adjoint over B
bool transport_adjoint_check(const Functor& pi);

// square phi over k between fibrations piSrc and piDst
bool is_cocartesian_functor(const Functor& phi, const Functor& k, const Functor& piSrc,
                            const Functor& piDst);
bool is_cartesian_functor(const Functor& phi, const Functor& k, const Functor& piSrc,
                          const Functor& piDst);

// mate characterization: the mate of the canonical identity 2-cell between
// the comma squares is invertible
bool cocart_functor_mate_check(const Functor& phi, const Functor& k, const Functor& piSrc,
                               const Functor& piDst);

}  // namespace fibcheck
