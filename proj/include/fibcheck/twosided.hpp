#pragma once

#include "fibcheck/sliced.hpp"

namespace fibcheck {

// Two-variable family presented as φ = ⟨ξ,π⟩ : total -> A×B.
struct TwoSidedInstance {
  CatPtr a, b;
  CatPtr total;
  ProductCat ab;
  Functor phi;  // total -> ab.cat
  Functor xi() const { return compose(ab.proj1, phi); }
  Functor pi() const { return compose(ab.proj2, phi); }
  void check() const;
};

TwoSidedInstance make_instance(CatPtr a, CatPtr b, const Functor& xi, const Functor& pi);
TwoSidedInstance identity_instance(CatPtr a, CatPtr b);
// ⟨cod, dom⟩ : A^{Δ¹} -> A×A; cod is the cocartesian leg
TwoSidedInstance hom_span_instance(CatPtr a);
// comma span of F : C -> X <- D : G over (D, C): cocartesian leg = pG
TwoSidedInstance comma_span_instance(const Functor& f, const Functor& g);
TwoSidedInstance swap_legs(const TwoSidedInstance& inst);
// transpose-opposite: cocart-left of the dual is cart-right of the original
TwoSidedInstance dual_instance(const TwoSidedInstance& inst);
// the A^{Δ²}-style span: hom-span composed with itself
TwoSidedInstance two_simplex_instance(CatPtr a);

FiberCat bifiber(const TwoSidedInstance& inst, ObjId a, ObjId b);

bool is_cocart_on_left(const TwoSidedInstance& inst);
bool is_cart_on_right(const TwoSidedInstance& inst);

// (i) sliced cocartesian over B, (ii) cocartesian functor over A,
// (iii) fibered left adjoint of ι_ξ over A×B, (iv) elementary
CheckReport cocart_on_left_criteria_agree(const TwoSidedInstance& inst);
CheckReport cart_on_right_criteria_agree(const TwoSidedInstance& inst);

// the comparison filler h : u_!(v* e) -> v*(u_! e) plus the arrows it is
// built from; built only when the instance is cocart-left and cart-right
struct CommutationData {
  MorId k, k1;    // ξ-cocart lift at e, π-cart lift at e
  MorId f, f1;    // ξ-cocart lift at v*e, π-cart lift at u_!e
  MorId g, g1;    // fillers through f (ξ) and f1 (π)
  MorId h, h1;    // the comparison fillers; the Lemma says h == h1
  bool iso = false;
};
CommutationData commutation_square(const TwoSidedInstance& inst, MorId u, MorId v, ObjId e);

bool is_two_sided(const TwoSidedInstance& inst);

// definition, lifting functor cartesian, transport functor cartesian, the
// dual RARI condition, the four-adjoint square with mate, and the
// factorization criterion for commuting lifts
CheckReport two_sided_criteria_agree(const TwoSidedInstance& inst);

struct TwoSidedMap {
  Functor t;  // total_P -> total_Q
  Functor k;  // A -> C
  Functor m;  // B -> D
};

bool is_two_sided_functor(const TwoSidedInstance& p, const TwoSidedInstance& q,
                          const TwoSidedMap& f);

TwoSidedInstance span_compose(const TwoSidedInstance& p, const TwoSidedInstance& q);
// the composite's lifts are identity-extended lifts of the factors
bool span_compose_lift_formula_check(const TwoSidedInstance& p, const TwoSidedInstance& q);

struct PulledBackInstance {
  TwoSidedInstance inst;
  TwoSidedMap cmp;  // comparison square into the original
};
PulledBackInstance pullback_two_sided(const TwoSidedInstance& p, const Functor& k,
                                      const Functor& m);
// κ : P -> Q over A×B pulled back along k×m is two-sided again
bool two_sided_functor_pullback_stability_check(const TwoSidedInstance& p,
                                                const TwoSidedInstance& q, const Functor& t,
                                                const Functor& k, const Functor& m);

TwoSidedInstance whisker_two_sided(const TwoSidedInstance& p, const Functor& k, const Functor& m);

TwoSidedInstance free_two_sided(const Functor& xi, const Functor& pi);
// the Σ-formula category the bifiber of the free fibration must match
CatPtr free_bifiber_formula(const Functor& xi, const Functor& pi, ObjId a, ObjId b);

struct ProductInstance {
  TwoSidedInstance inst;
  std::vector<TwoSidedMap> cones;
};
ProductInstance two_sided_product(const std::vector<TwoSidedInstance>& ps);
ProductInstance two_sided_sliced_product(const std::vector<TwoSidedInstance>& ps);
// terminal universal property against a candidate cone
bool product_cone_universal_check(const ProductInstance& prod,
                                  const std::vector<TwoSidedInstance>& ps,
                                  const TwoSidedInstance& t, const std::vector<TwoSidedMap>& cone,
                                  long cap = 200000);

// the sliced cotensor X ⋔ φ over A×B
struct CotensorInstance {
  TwoSidedInstance inst;
  std::vector<Functor> obj_functor;  // object -> vertical functor X -> total
  std::vector<ObjId> obj_point;      // object -> point of A×B
  std::vector<MorId> mor_base;       // morphism -> base arrow in A×B
  std::vector<std::vector<MorId>> mor_comp;  // morphism -> component family
};
CotensorInstance two_sided_cotensor(CatPtr x, const TwoSidedInstance& p, long cap = 100000);

// the Leibniz square of j : Y -> X against κ : P -> Q over A×B is two-sided
bool leibniz_cotensor_functor_check(const Functor& j, const TwoSidedInstance& p,
                                    const TwoSidedInstance& q, const Functor& t,
                                    long cap = 100000);

bool is_two_sided_discrete(const TwoSidedInstance& inst);
// definition vs. "cocart-left, cart-right, groupoid bifibers", plus the
// corollary checks (cocartesian = vertical-on-the-other-leg; discrete
// instances are two-sided)
CheckReport discrete_criteria_agree(const TwoSidedInstance& inst);

// legs as plain fibrations restricted over one point of the other side
Functor leg_restriction_a(const TwoSidedInstance& inst, ObjId b, SubCat* out_sub = nullptr);
Functor leg_restriction_b(const TwoSidedInstance& inst, ObjId a, SubCat* out_sub = nullptr);

}  // namespace fibcheck
