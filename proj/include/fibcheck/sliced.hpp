#pragma once

#include "fibcheck/fibrations.hpp"
#include "fibcheck/report.hpp"

namespace fibcheck {

// Fibered functor φ : F -> E with π∘φ = ξ strictly over the base.
struct SlicedMap {
  CatPtr base;
  Functor pr_src;  // ξ : F -> B
  Functor pr_dst;  // π : E -> B
  Functor map;     // φ : F -> E
  void check() const;  // throws NotOverBase
};

SlicedMap identity_sliced(const Functor& pi);  // φ = id over pi

// Vertical arrows of π : E -> B as a category over B. Objects are the
// π-vertical arrows; morphisms are all arrow-category squares between them.
struct VertCat {
  CatPtr cat;
  Functor proj;                               // to B
  std::vector<MorId> obj_arrow;               // object -> vertical arrow of E
  std::vector<ObjId> arrow_obj;               // arrow of E -> object (-1 if not vertical)
  std::vector<std::pair<MorId, MorId>> square;
  std::optional<MorId> mor_at(ObjId srcO, ObjId dstO, MorId a, MorId b) const;
  std::map<std::array<int, 4>, MorId> mor_at_;
};
VertCat vertical_arrows(const Functor& pi);

struct SlicedProd {
  CatPtr cat;
  Functor proj;                  // to base
  std::vector<Functor> factors;  // to each total
  std::vector<std::vector<ObjId>> objs;
  std::vector<std::vector<MorId>> mors;
  std::optional<ObjId> obj_index(const std::vector<ObjId>& t) const;
  std::optional<MorId> mor_index(const std::vector<MorId>& t) const;
  std::map<std::vector<ObjId>, ObjId> oid_;
  std::map<std::vector<MorId>, MorId> mid_;
};
SlicedProd sliced_product(const std::vector<Functor>& pis);

// α ↓_B β for α : X -> G and β : Y -> G over B (proj_g : G -> B).
// Objects (x, y, m : α x -> β y vertical in G); morphisms are comma squares.
struct SlicedComma {
  CatPtr cat;
  Functor pX, pY;  // projections to X and Y
  Functor proj;    // to B
  std::vector<CommaObj> objs;
  std::vector<std::pair<MorId, MorId>> mor_pair;
  std::optional<ObjId> obj_index(ObjId x, ObjId y, MorId m) const;
  std::optional<MorId> mor_at(ObjId srcO, ObjId dstO, MorId f, MorId g) const;
  std::map<std::array<int, 3>, ObjId> oid_;
  std::map<std::array<int, 4>, MorId> mid_;
};
SlicedComma sliced_comma(const Functor& alpha, const Functor& beta, const Functor& proj_g);

// every π-vertical arrow has a φ-cocartesian lift with prescribed source
bool is_sliced_cocartesian(const SlicedMap& phi);

// The sliced Leibniz cotensor, inclusion, and their adjoints, built once.
struct SlicedLariData {
  SlicedComma phi_down_e;  // φ ↓_B E
  VertCat vert_f;          // Vert_ξ(F)
  Functor leibniz;         // i0 ⋔_B φ : Vert_ξ(F) -> φ↓_B E
  Functor iota;            // ι_φ : F -> φ↓_B E
  Functor comma_to_e;      // ∂₁ : φ↓_B E -> E
  std::optional<FiberedAdjunction> chi;  // fibered LARI of leibniz, over B
  std::optional<FiberedAdjunction> tau;  // fibered left adjoint of iota, over E
};
SlicedLariData sliced_lari_data(const SlicedMap& phi);

// (i) elementary lifts, (ii) fibered LARI of the sliced Leibniz cotensor,
// (iii) fibered left adjoint of the fibered inclusion, over E
CheckReport sliced_cocart_criteria_agree(const SlicedMap& phi);

// under "ξ, π cocartesian and φ cocartesian functor": sliced cocartesian
// iff cocartesian fibration F -> E in the usual sense
CheckReport sliced_vs_absolute_check(const SlicedMap& phi);

// ∂₁ : ψ ↓_B φ -> F is a cocartesian fibration whose tautological
// identity-extension squares are cocartesian lifts
bool sliced_comma_codomain_check(const SlicedMap& psi, const SlicedMap& phi);

// cartesian functor between cartesian fibrations that is sliced cocartesian
bool is_cocart_in_cart(const SlicedMap& phi);

// (i) lifting functor cartesian, (ii) transport functor cartesian,
// (iii)/(iv) the two filler-isomorphism conditions
CheckReport cocart_in_cart_criteria_agree(const SlicedMap& phi);

struct SlicedCospan {
  SlicedMap psi;  // F -> G over B
  SlicedMap phi;  // E -> G over B
};

// dependent products commute with sliced commas (finite index set)
bool prod_comma_commutation_check(const std::vector<SlicedCospan>& data);

}  // namespace fibcheck
