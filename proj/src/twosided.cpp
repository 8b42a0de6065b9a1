#include "fibcheck/twosided.hpp"

#include <functional>

namespace fibcheck {

void TwoSidedInstance::check() const {
  phi.check();
  if (!same_cat(phi.dst, ab.cat)) fail(ErrorCode::NotOverBase, "instance: phi must land in A×B");
}

TwoSidedInstance make_instance(CatPtr a, CatPtr b, const Functor& xi, const Functor& pi) {
  if (!same_cat(xi.src, pi.src)) fail(ErrorCode::BaseMismatch, "legs have different totals");
  if (!same_cat(xi.dst, a) || !same_cat(pi.dst, b))
    fail(ErrorCode::BaseMismatch, "legs do not match the named bases");
  TwoSidedInstance inst;
  inst.a = a;
  inst.b = b;
  inst.total = xi.src;
  inst.ab = product(a, b);
  inst.phi = inst.ab.pairing(xi, pi);
  return inst;
}

TwoSidedInstance identity_instance(CatPtr a, CatPtr b) {
  ProductCat p = product(a, b);
  return make_instance(a, b, p.proj1, p.proj2);
}

TwoSidedInstance hom_span_instance(CatPtr a) {
  ArrowCat ac = arrow_category(a);
  return make_instance(a, a, ac.cod, ac.dom);
}

TwoSidedInstance comma_span_instance(const Functor& f, const Functor& g) {
  CommaCat k = comma(f, g);
  return make_instance(g.src, f.src, k.pG, k.pF);
}

TwoSidedInstance swap_legs(const TwoSidedInstance& inst) {
  return make_instance(inst.b, inst.a, inst.pi(), inst.xi());
}

TwoSidedInstance two_simplex_instance(CatPtr a) {
  TwoSidedInstance h = hom_span_instance(a);
  return span_compose(h, h);
}

FiberCat bifiber(const TwoSidedInstance& inst, ObjId a, ObjId b) {
  if (a < 0 || a >= inst.a->n_obj || b < 0 || b >= inst.b->n_obj)
    fail(ErrorCode::UnknownObject, "bifiber: no such base pair");
  return fiber(inst.phi, inst.ab.pair_obj(a, b));
}

TwoSidedInstance dual_instance(const TwoSidedInstance& inst) {
  return make_instance(opposite(inst.b), opposite(inst.a), opposite_functor(inst.pi()),
                       opposite_functor(inst.xi()));
}

bool is_cocart_on_left(const TwoSidedInstance& inst) {
  Functor xi = inst.xi(), pi = inst.pi();
  if (!is_cocartesian_fibration(xi)) return false;
  // verticality of a cocartesian arrow is the invariant notion: the class of
  // cocartesian arrows is closed under composing with isos, so the π-image
  // must only be an isomorphism
  const FinCat& B = *inst.b;
  for (MorId f = 0; f < inst.total->n_mor(); ++f)
    if (is_cocartesian_arrow(xi, f) && !B.is_iso(pi.mo(f))) return false;
  return true;
}

bool is_cart_on_right(const TwoSidedInstance& inst) {
  return is_cocart_on_left(dual_instance(inst));
}

namespace {

// ξ↓A over A×B, with its inclusion and projection
struct LeftCommaData {
  CommaCat cm;      // comma(ξ, id_A): objects (e, a', u : ξe -> a')
  Functor to_ab;    // (e, a', u) ↦ (a', πe)
  Functor iota;     // e ↦ (e, ξe, id)
};

LeftCommaData left_comma_data(const TwoSidedInstance& inst) {
  LeftCommaData d;
  Functor xi = inst.xi(), pi = inst.pi();
  d.cm = comma(xi, identity_functor(inst.a));
  const FinCat& E = *inst.total;
  d.to_ab.src = d.cm.cat;
  d.to_ab.dst = inst.ab.cat;
  d.to_ab.on_obj.resize(d.cm.cat->n_obj);
  for (size_t o = 0; o < d.cm.objs.size(); ++o)
    d.to_ab.on_obj[o] = inst.ab.pair_obj(d.cm.objs[o].d, pi.ob(d.cm.objs[o].c));
  d.to_ab.on_mor.resize(d.cm.cat->n_mor());
  for (MorId m = 0; m < d.cm.cat->n_mor(); ++m) {
    auto [s, va] = d.cm.mor_pair[m];
    d.to_ab.on_mor[m] = inst.ab.pair_mor(va, pi.mo(s));
  }
  d.iota.src = inst.total;
  d.iota.dst = d.cm.cat;
  d.iota.on_obj.resize(E.n_obj);
  for (ObjId e = 0; e < E.n_obj; ++e)
    d.iota.on_obj[e] = *d.cm.obj_index(e, xi.ob(e), inst.a->id(xi.ob(e)));
  d.iota.on_mor.resize(E.n_mor());
  for (MorId m = 0; m < E.n_mor(); ++m)
    d.iota.on_mor[m] =
        *d.cm.mor_at(d.iota.on_obj[E.src(m)], d.iota.on_obj[E.dst(m)], m, xi.mo(m));
  return d;
}

// B↓π over A×B, with its inclusion
struct RightCommaData {
  CommaCat cm;      // comma(id_B, π): objects (b', e, v : b' -> πe)
  Functor to_ab;    // (b', e, v) ↦ (ξe, b')
  Functor iota;     // e ↦ (πe, e, id)
};

RightCommaData right_comma_data(const TwoSidedInstance& inst) {
  RightCommaData d;
  Functor xi = inst.xi(), pi = inst.pi();
  d.cm = comma(identity_functor(inst.b), pi);
  const FinCat& E = *inst.total;
  d.to_ab.src = d.cm.cat;
  d.to_ab.dst = inst.ab.cat;
  d.to_ab.on_obj.resize(d.cm.cat->n_obj);
  for (size_t o = 0; o < d.cm.objs.size(); ++o)
    d.to_ab.on_obj[o] = inst.ab.pair_obj(xi.ob(d.cm.objs[o].d), d.cm.objs[o].c);
  d.to_ab.on_mor.resize(d.cm.cat->n_mor());
  for (MorId m = 0; m < d.cm.cat->n_mor(); ++m) {
    auto [vb, s] = d.cm.mor_pair[m];
    d.to_ab.on_mor[m] = inst.ab.pair_mor(xi.mo(s), vb);
  }
  d.iota.src = inst.total;
  d.iota.dst = d.cm.cat;
  d.iota.on_obj.resize(E.n_obj);
  for (ObjId e = 0; e < E.n_obj; ++e)
    d.iota.on_obj[e] = *d.cm.obj_index(pi.ob(e), e, inst.b->id(pi.ob(e)));
  d.iota.on_mor.resize(E.n_mor());
  for (MorId m = 0; m < E.n_mor(); ++m)
    d.iota.on_mor[m] =
        *d.cm.mor_at(d.iota.on_obj[E.src(m)], d.iota.on_obj[E.dst(m)], pi.mo(m), m);
  return d;
}

SlicedMap over_b_map(const TwoSidedInstance& inst) {
  return SlicedMap{inst.b, inst.pi(), inst.ab.proj2, inst.phi};
}

}  // namespace

CheckReport cocart_on_left_criteria_agree(const TwoSidedInstance& inst) {
  CheckReport rep;
  rep.name = "cocart-on-left";
  Functor xi = inst.xi(), pi = inst.pi();
  // (i) φ is a cocartesian fibration sliced over B
  rep.add("sliced-over-B", is_sliced_cocartesian(over_b_map(inst)));
  // (ii) φ is a cocartesian functor over A between cocartesian fibrations
  bool ii = is_cocartesian_fibration(xi) && is_cocartesian_fibration(inst.ab.proj1) &&
            is_cocartesian_functor(inst.phi, identity_functor(inst.a), xi, inst.ab.proj1);
  rep.add("cocartesian-functor-over-A", ii);
  // (iii) ι_ξ has a fibered left adjoint over A×B
  LeftCommaData d = left_comma_data(inst);
  rep.add("fibered-left-adjoint",
          find_fibered_left_adjoint(d.iota, inst.phi, d.to_ab).has_value());
  // (iv) elementary
  rep.add("elementary", is_cocart_on_left(inst));
  return rep;
}

CheckReport cart_on_right_criteria_agree(const TwoSidedInstance& inst) {
  CheckReport rep = cocart_on_left_criteria_agree(dual_instance(inst));
  rep.name = "cart-on-right";
  return rep;
}

CommutationData commutation_square(const TwoSidedInstance& inst, MorId u, MorId v, ObjId e) {
  Functor xi = inst.xi(), pi = inst.pi();
  const FinCat& E = *inst.total;
  const FinCat& A = *inst.a;
  const FinCat& B = *inst.b;
  if (xi.ob(e) != A.src(u) || pi.ob(e) != B.dst(v))
    fail(ErrorCode::UnknownObject, "commutation_square: e is not over (src u, dst v)");
  // transports anchored over exact arrows of A×B, so all fills are strict
  auto lift_up = [&](ObjId at, ObjId b_here) {
    return cocart_lift_over(inst.phi, inst.ab.pair_mor(u, B.id(b_here)), at);
  };
  auto lift_down = [&](ObjId at, ObjId a_here) {
    return cart_lift_over(inst.phi, inst.ab.pair_mor(A.id(a_here), v), at);
  };
  auto kw = lift_up(e, B.dst(v));
  auto k1w = lift_down(e, A.src(u));
  if (!kw || !k1w)
    fail(ErrorCode::PreconditionFailed, "commutation_square needs cocart-left and cart-right");
  CommutationData cd;
  cd.k = *kw;
  cd.k1 = *k1w;
  ObjId ve = E.src(cd.k1);
  ObjId ue = E.dst(cd.k);
  auto fw = lift_up(ve, B.src(v));
  auto f1w = lift_down(ue, A.dst(u));
  if (!fw || !f1w)
    fail(ErrorCode::PreconditionFailed, "commutation_square: transported lifts missing");
  cd.f = *fw;
  cd.f1 = *f1w;
  MorId c = E.compose(cd.k, cd.k1);
  auto g = cocart_fill(inst.phi, cd.f, c, inst.ab.pair_mor(A.id(A.dst(u)), v));
  auto g1 = cart_fill(inst.phi, cd.f1, c, inst.ab.pair_mor(u, B.id(B.src(v))));
  if (!g || !g1) fail(ErrorCode::PreconditionFailed, "commutation_square: fillers missing");
  cd.g = *g;
  cd.g1 = *g1;
  MorId vert = inst.ab.pair_mor(A.id(A.dst(u)), B.id(B.src(v)));
  auto h = cart_fill(inst.phi, cd.f1, cd.g, vert);
  auto h1 = cocart_fill(inst.phi, cd.f, cd.g1, vert);
  if (!h || !h1) fail(ErrorCode::PreconditionFailed, "commutation_square: comparison missing");
  cd.h = *h;
  cd.h1 = *h1;
  cd.iso = E.is_iso(cd.h);
  return cd;
}

bool is_two_sided(const TwoSidedInstance& inst) {
  if (!is_cocart_on_left(inst) || !is_cart_on_right(inst)) return false;
  Functor xi = inst.xi(), pi = inst.pi();
  const FinCat& A = *inst.a;
  const FinCat& B = *inst.b;
  for (MorId u = 0; u < A.n_mor(); ++u) {
    if (A.is_id(u)) continue;
    for (MorId v = 0; v < B.n_mor(); ++v) {
      if (B.is_id(v)) continue;
      for (ObjId e = 0; e < inst.total->n_obj; ++e) {
        if (xi.ob(e) != A.src(u) || pi.ob(e) != B.dst(v)) continue;
        CommutationData cd = commutation_square(inst, u, v, e);
        if (!cd.iso) return false;
      }
    }
  }
  return true;
}

namespace {

// χ_B / τ_B route: φ a cocartesian fibration in cartesian fibrations over B
// with the lifting (or transport) functor cartesian.
bool chi_route(const TwoSidedInstance& inst, bool transport) {
  SlicedMap phiB = over_b_map(inst);
  if (!is_cocart_in_cart(phiB)) return false;
  SlicedLariData d = sliced_lari_data(phiB);
  if (transport) {
    if (!d.tau) return false;
    return is_cartesian_functor(d.tau->adj.left, identity_functor(phiB.base), d.phi_down_e.proj,
                                phiB.pr_src);
  }
  if (!d.chi || !is_fibered_lari(*d.chi)) return false;
  return is_cartesian_functor(d.chi->adj.left, identity_functor(phiB.base), d.phi_down_e.proj,
                              d.vert_f.proj);
}

NatTrans invert_nat(const NatTrans& a) {
  NatTrans r;
  r.src = a.dst;
  r.dst = a.src;
  r.component.resize(a.component.size());
  for (size_t i = 0; i < a.component.size(); ++i) {
    auto inv = a.src.dst->inverse(a.component[i]);
    if (!inv) fail(ErrorCode::PreconditionFailed, "invert_nat: component not invertible");
    r.component[i] = *inv;
  }
  return r;
}

// condition (iv): the four displayed fibered adjoints exist and the mate of
// the identity 2-cell is a fibered isomorphism
bool adjoint_square_route(const TwoSidedInstance& inst) {
  LeftCommaData lc = left_comma_data(inst);
  RightCommaData rc = right_comma_data(inst);
  auto tau_xi = find_fibered_left_adjoint(lc.iota, inst.phi, lc.to_ab);
  if (!tau_xi) return false;
  auto tau_pi = find_fibered_right_adjoint(rc.iota, inst.phi, rc.to_ab);
  if (!tau_pi) return false;
  // F := ξ↓A ×_E B↓π over A×B
  PullbackCat fp = pullback(lc.cm.pF, rc.cm.pG);
  Functor f_to_ab;
  f_to_ab.src = fp.cat;
  f_to_ab.dst = inst.ab.cat;
  f_to_ab.on_obj.resize(fp.cat->n_obj);
  f_to_ab.on_mor.resize(fp.cat->n_mor());
  for (ObjId o = 0; o < fp.cat->n_obj; ++o) {
    f_to_ab.on_obj[o] =
        inst.ab.pair_obj(lc.cm.objs[fp.objs[o].first].d, rc.cm.objs[fp.objs[o].second].c);
  }
  for (MorId m = 0; m < fp.cat->n_mor(); ++m) {
    auto [mx, my] = fp.mor_pair[m];
    f_to_ab.on_mor[m] =
        inst.ab.pair_mor(lc.cm.mor_pair[mx].second, rc.cm.mor_pair[my].first);
  }
  // R1 := ⟨ι_ξ ∂₁', id⟩ : B↓π -> F and R2 := ⟨id, ι^π ∂₀'⟩ : ξ↓A -> F
  Functor r1;
  r1.src = rc.cm.cat;
  r1.dst = fp.cat;
  r1.on_obj.resize(r1.src->n_obj);
  r1.on_mor.resize(r1.src->n_mor());
  for (ObjId o = 0; o < r1.src->n_obj; ++o)
    r1.on_obj[o] = *fp.obj_index(lc.iota.ob(rc.cm.objs[o].d), o);
  for (MorId m = 0; m < r1.src->n_mor(); ++m)
    r1.on_mor[m] = *fp.mor_index(lc.iota.mo(rc.cm.mor_pair[m].second), m);
  Functor r2;
  r2.src = lc.cm.cat;
  r2.dst = fp.cat;
  r2.on_obj.resize(r2.src->n_obj);
  r2.on_mor.resize(r2.src->n_mor());
  for (ObjId o = 0; o < r2.src->n_obj; ++o)
    r2.on_obj[o] = *fp.obj_index(o, rc.iota.ob(lc.cm.objs[o].c));
  for (MorId m = 0; m < r2.src->n_mor(); ++m)
    r2.on_mor[m] = *fp.mor_index(m, rc.iota.mo(lc.cm.mor_pair[m].first));
  auto ell = find_fibered_left_adjoint(r1, rc.to_ab, f_to_ab);
  if (!ell) return false;
  auto rr = find_fibered_right_adjoint(r2, lc.to_ab, f_to_ab);
  if (!rr) return false;
  // mate of the identity R2∘ι_ξ = R1∘ι^π across (τ_ξ ⊣ ι_ξ) and (ℓ ⊣ R1):
  // μ0 : ℓ∘R2 ⇒ ι^π∘τ_ξ; it is invertible since ℓ is unique up to iso
  Functor lhs = compose(r2, lc.iota);
  Functor rhs = compose(r1, rc.iota);
  if (!equal_functor(lhs, rhs)) fail(ErrorCode::SquareMismatch, "adjoint square not strict");
  NatTrans gamma;
  gamma.src = lhs;
  gamma.dst = rhs;
  gamma.component.resize(inst.total->n_obj);
  for (ObjId e = 0; e < inst.total->n_obj; ++e)
    gamma.component[e] = fp.cat->id(lhs.ob(e));
  NatTrans mu0 = mate_of_right_square(r2, rc.iota, gamma, tau_xi->adj, ell->adj);
  if (!is_natural_iso(mu0)) return false;
  // paste to the comparison τ_ξ∘r ⇒ τ^π∘ℓ
  const Functor& tau_xi_f = tau_xi->adj.left;    // ξ↓A -> E
  const Functor& tau_pi_f = tau_pi->adj.right;   // B↓π -> E
  const Functor& ell_f = ell->adj.left;          // F -> B↓π
  const Functor& r_f = rr->adj.right;            // F -> ξ↓A
  NatTrans step1 = whisker_right(tau_pi->adj.unit, compose(tau_xi_f, r_f));
  NatTrans step2 = whisker_left(tau_pi_f, whisker_right(invert_nat(mu0), r_f));
  NatTrans step3 = whisker_left(compose(tau_pi_f, ell_f), rr->adj.counit);
  NatTrans mate = nat_vcompose(step3, nat_vcompose(step2, step1));
  return is_natural_iso(mate);
}

// factorization criterion from the commutation proposition
bool comm_lifts_route(const TwoSidedInstance& inst) {
  if (!is_cocart_on_left(inst) || !is_cart_on_right(inst)) return false;
  Functor xi = inst.xi(), pi = inst.pi();
  const FinCat& E = *inst.total;
  const FinCat& A = *inst.a;
  const FinCat& B = *inst.b;
  for (MorId u = 0; u < A.n_mor(); ++u) {
    if (A.is_id(u)) continue;
    for (MorId v = 0; v < B.n_mor(); ++v) {
      if (B.is_id(v)) continue;
      for (ObjId e = 0; e < E.n_obj; ++e) {
        if (xi.ob(e) != A.src(u) || pi.ob(e) != B.dst(v)) continue;
        auto k = cocart_lift_over(inst.phi, inst.ab.pair_mor(u, B.id(B.dst(v))), e);
        auto k1 = cart_lift_over(inst.phi, inst.ab.pair_mor(A.id(A.src(u)), v), e);
        if (!k || !k1) return false;
        MorId c = E.compose(*k, *k1);
        ObjId ve = E.src(*k1), ue = E.dst(*k);
        for (ObjId d = 0; d < E.n_obj; ++d) {
          for (MorId f : E.hom(ve, d)) {
            if (!B.is_iso(pi.mo(f))) continue;  // π-vertical up to iso
            for (MorId g : E.hom(d, ue)) {
              if (!A.is_iso(xi.mo(g))) continue;  // ξ-vertical up to iso
              if (E.compose(g, f) != c) continue;
              if (is_cocartesian_arrow(xi, f) != is_cartesian_arrow(pi, g)) return false;
            }
          }
        }
      }
    }
  }
  return true;
}

}  // namespace

CheckReport two_sided_criteria_agree(const TwoSidedInstance& inst) {
  CheckReport rep;
  rep.name = "two-sided";
  rep.add("definition", is_two_sided(inst));
  rep.add("lifting-functor-cartesian", chi_route(inst, false));
  rep.add("transport-functor-cartesian", chi_route(inst, true));
  {
    TwoSidedInstance d = dual_instance(inst);
    rep.add("dual-rari-cocartesian", chi_route(d, false));
  }
  rep.add("adjoint-square-mate", adjoint_square_route(inst));
  rep.add("commuting-lifts-factorization", comm_lifts_route(inst));
  return rep;
}

bool is_two_sided_functor(const TwoSidedInstance& p, const TwoSidedInstance& q,
                          const TwoSidedMap& f) {
  Functor km = q.ab.pairing(compose(f.k, p.ab.proj1), compose(f.m, p.ab.proj2));
  if (!equal_functor(compose(q.phi, f.t), compose(km, p.phi)))
    fail(ErrorCode::SquareMismatch, "two-sided map square does not commute");
  return is_cocartesian_functor(f.t, f.k, p.xi(), q.xi()) &&
         is_cartesian_functor(f.t, f.m, p.pi(), q.pi());
}

TwoSidedInstance span_compose(const TwoSidedInstance& p, const TwoSidedInstance& q) {
  if (!same_cat(p.b, q.a)) fail(ErrorCode::BaseMismatch, "span_compose middle mismatch");
  PullbackCat pb = pullback(p.pi(), q.xi());
  return make_instance(p.a, q.b, compose(p.xi(), pb.p1), compose(q.pi(), pb.p2));
}

bool span_compose_lift_formula_check(const TwoSidedInstance& p, const TwoSidedInstance& q) {
  PullbackCat pb = pullback(p.pi(), q.xi());
  TwoSidedInstance r = make_instance(p.a, q.b, compose(p.xi(), pb.p1), compose(q.pi(), pb.p2));
  Functor rxi = r.xi(), rpi = r.pi();
  Functor pxi = p.xi();
  Functor qpi = q.pi();
  const FinCat& A = *p.a;
  const FinCat& C = *q.b;
  for (size_t o = 0; o < pb.objs.size(); ++o) {
    auto [e, f] = pb.objs[o];
    for (MorId u : A.from(pxi.ob(e))) {
      if (A.is_id(u)) continue;
      auto le = cocart_lift_over(p.phi, p.ab.pair_mor(u, p.b->id(p.pi().ob(e))), e);
      if (!le) return false;
      auto m = pb.mor_index(*le, q.total->id(f));
      if (!m) return false;  // the P-lift is strictly π-vertical
      if (!is_cocartesian_arrow(rxi, *m)) return false;
    }
    for (MorId w : C.to(qpi.ob(f))) {
      if (C.is_id(w)) continue;
      auto lf = cart_lift_over(q.phi, q.ab.pair_mor(q.a->id(q.xi().ob(f)), w), f);
      if (!lf) return false;
      auto m = pb.mor_index(p.total->id(e), *lf);
      if (!m) return false;
      if (!is_cartesian_arrow(rpi, *m)) return false;
    }
  }
  return true;
}

PulledBackInstance pullback_two_sided(const TwoSidedInstance& p, const Functor& k,
                                      const Functor& m) {
  if (!same_cat(k.dst, p.a) || !same_cat(m.dst, p.b))
    fail(ErrorCode::BaseMismatch, "pullback_two_sided base mismatch");
  ProductCat ab2 = product(k.src, m.src);
  Functor km = p.ab.pairing(compose(k, ab2.proj1), compose(m, ab2.proj2));
  PullbackCat pb = pullback(p.phi, km);
  Functor xi2 = compose(ab2.proj1, pb.p2);
  Functor pi2 = compose(ab2.proj2, pb.p2);
  PulledBackInstance out{make_instance(k.src, m.src, xi2, pi2), TwoSidedMap{pb.p1, k, m}};
  return out;
}

bool two_sided_functor_pullback_stability_check(const TwoSidedInstance& p,
                                                const TwoSidedInstance& q, const Functor& t,
                                                const Functor& k, const Functor& m) {
  // κ := t : P -> Q over id_{A×B}; pull back both instances along k×m and
  // check the induced functor is two-sided
  PulledBackInstance p2 = pullback_two_sided(p, k, m);
  PulledBackInstance q2 = pullback_two_sided(q, k, m);
  // induced map on pullback totals: (e, x') ↦ (t e, x')
  PullbackCat ppb = pullback(p.phi, p.ab.pairing(compose(k, p2.inst.ab.proj1),
                                                 compose(m, p2.inst.ab.proj2)));
  PullbackCat qpb = pullback(q.phi, q.ab.pairing(compose(k, q2.inst.ab.proj1),
                                                 compose(m, q2.inst.ab.proj2)));
  Functor ind;
  ind.src = ppb.cat;
  ind.dst = qpb.cat;
  ind.on_obj.resize(ppb.cat->n_obj);
  ind.on_mor.resize(ppb.cat->n_mor());
  for (ObjId o = 0; o < ppb.cat->n_obj; ++o)
    ind.on_obj[o] = *qpb.obj_index(t.ob(ppb.objs[o].first), ppb.objs[o].second);
  for (MorId mm = 0; mm < ppb.cat->n_mor(); ++mm)
    ind.on_mor[mm] = *qpb.mor_index(t.mo(ppb.mor_pair[mm].first), ppb.mor_pair[mm].second);
  TwoSidedMap f{ind, identity_functor(p2.inst.a), identity_functor(p2.inst.b)};
  return is_two_sided_functor(p2.inst, q2.inst, f);
}

TwoSidedInstance whisker_two_sided(const TwoSidedInstance& p, const Functor& k,
                                   const Functor& m) {
  if (!same_cat(k.src, p.a) || !same_cat(m.src, p.b))
    fail(ErrorCode::BaseMismatch, "whisker_two_sided base mismatch");
  if (!is_cocartesian_fibration(k))
    fail(ErrorCode::PreconditionFailed, "whisker: k must be a cocartesian fibration");
  if (!is_cartesian_fibration(m))
    fail(ErrorCode::PreconditionFailed, "whisker: m must be a cartesian fibration");
  return make_instance(k.dst, m.dst, compose(k, p.xi()), compose(m, p.pi()));
}

TwoSidedInstance free_two_sided(const Functor& xi, const Functor& pi) {
  if (!same_cat(xi.src, pi.src)) fail(ErrorCode::BaseMismatch, "free_two_sided span mismatch");
  CommaCat c1 = comma(xi, identity_functor(xi.dst));      // (e, a, u : ξe -> a)
  CommaCat c2 = comma(identity_functor(pi.dst), pi);      // (b, e, v : b -> πe)
  PullbackCat pb = pullback(c1.pF, c2.pG);
  return make_instance(xi.dst, pi.dst, compose(c1.pG, pb.p1), compose(c2.pF, pb.p2));
}

CatPtr free_bifiber_formula(const Functor& xi, const Functor& pi, ObjId a, ObjId b) {
  const FinCat& E = *xi.src;
  const FinCat& A = *xi.dst;
  const FinCat& B = *pi.dst;
  CatBuilder bl("free_formula");
  struct Obj {
    MorId m, w;
    ObjId x;
  };
  std::vector<Obj> objs;
  for (MorId m = 0; m < A.n_mor(); ++m) {
    if (A.dst(m) != a) continue;
    for (MorId w = 0; w < B.n_mor(); ++w) {
      if (B.src(w) != b) continue;
      for (ObjId x = 0; x < E.n_obj; ++x) {
        if (xi.ob(x) != A.src(m) || pi.ob(x) != B.dst(w)) continue;
        bl.add_object("");
        objs.push_back({m, w, x});
      }
    }
  }
  std::vector<MorId> gen;  // ambient E-morphism per formula morphism
  std::vector<std::pair<int, int>> ends;
  gen.resize(objs.size());
  ends.resize(objs.size());
  for (size_t i = 0; i < objs.size(); ++i) {
    gen[i] = E.id(objs[i].x);
    ends[i] = {(int)i, (int)i};
  }
  std::map<std::array<int, 3>, MorId> midx;  // (srcIdx, dstIdx, E-mor)
  for (size_t i = 0; i < objs.size(); ++i)
    midx[{(int)i, (int)i, E.id(objs[i].x)}] = static_cast<MorId>(i);
  for (size_t i = 0; i < objs.size(); ++i)
    for (size_t j = 0; j < objs.size(); ++j)
      for (MorId g : E.hom(objs[i].x, objs[j].x)) {
        if (E.is_id(g)) continue;
        if (A.compose(objs[j].m, xi.mo(g)) != objs[i].m) continue;
        if (B.compose(pi.mo(g), objs[i].w) != objs[j].w) continue;
        MorId mm = bl.add_mor(static_cast<ObjId>(i), static_cast<ObjId>(j), "");
        gen.push_back(g);
        ends.push_back({(int)i, (int)j});
        midx[{(int)i, (int)j, g}] = mm;
      }
  for (size_t m1 = 0; m1 < gen.size(); ++m1)
    for (size_t m2 = 0; m2 < gen.size(); ++m2) {
      if (ends[m1].second != ends[m2].first) continue;
      MorId g = E.compose(gen[m2], gen[m1]);
      bl.set_comp(static_cast<MorId>(m2), static_cast<MorId>(m1),
                  midx.at({ends[m1].first, ends[m2].second, g}));
    }
  return bl.build(false);
}

ProductInstance two_sided_product(const std::vector<TwoSidedInstance>& ps) {
  if (ps.empty()) fail(ErrorCode::PreconditionFailed, "two_sided_product needs a factor");
  ProductInstance out;
  out.inst = ps[0];
  out.cones.push_back(TwoSidedMap{identity_functor(ps[0].total), identity_functor(ps[0].a),
                                  identity_functor(ps[0].b)});
  for (size_t i = 1; i < ps.size(); ++i) {
    ProductCat tp = product(out.inst.total, ps[i].total);
    ProductCat pa = product(out.inst.a, ps[i].a);
    ProductCat pb = product(out.inst.b, ps[i].b);
    Functor xi = pa.pairing(compose(out.inst.xi(), tp.proj1), compose(ps[i].xi(), tp.proj2));
    Functor pi = pb.pairing(compose(out.inst.pi(), tp.proj1), compose(ps[i].pi(), tp.proj2));
    TwoSidedInstance next = make_instance(pa.cat, pb.cat, xi, pi);
    std::vector<TwoSidedMap> cones;
    for (TwoSidedMap& c : out.cones)
      cones.push_back(TwoSidedMap{compose(c.t, tp.proj1), compose(c.k, pa.proj1),
                                  compose(c.m, pb.proj1)});
    cones.push_back(TwoSidedMap{tp.proj2, pa.proj2, pb.proj2});
    out.inst = next;
    out.cones = cones;
  }
  return out;
}

ProductInstance two_sided_sliced_product(const std::vector<TwoSidedInstance>& ps) {
  if (ps.empty()) fail(ErrorCode::PreconditionFailed, "sliced product needs a factor");
  for (const TwoSidedInstance& p : ps)
    if (!same_cat(p.ab.cat, ps[0].ab.cat))
      fail(ErrorCode::BaseMismatch, "sliced product needs a common base");
  std::vector<Functor> phis;
  for (const TwoSidedInstance& p : ps) phis.push_back(p.phi);
  SlicedProd sp = sliced_product(phis);
  Functor xi = compose(ps[0].ab.proj1, sp.proj);
  Functor pi = compose(ps[0].ab.proj2, sp.proj);
  ProductInstance out;
  out.inst = make_instance(ps[0].a, ps[0].b, xi, pi);
  for (size_t i = 0; i < ps.size(); ++i)
    out.cones.push_back(
        TwoSidedMap{sp.factors[i], identity_functor(ps[0].a), identity_functor(ps[0].b)});
  return out;
}

bool product_cone_universal_check(const ProductInstance& prod,
                                  const std::vector<TwoSidedInstance>& ps,
                                  const TwoSidedInstance& t, const std::vector<TwoSidedMap>& cone,
                                  long cap) {
  // mediating candidates: lifts of the cone base maps through the product
  // projection; exactly one must be a two-sided functor commuting with the
  // cones
  if (cone.size() != ps.size()) fail(ErrorCode::PreconditionFailed, "cone arity mismatch");
  // base map into the product base: pair the cone base maps componentwise
  Functor bk = cone[0].k, bm = cone[0].m;
  for (size_t i = 1; i < cone.size(); ++i) {
    ProductCat pa = product(bk.dst, cone[i].k.dst);
    ProductCat pb = product(bm.dst, cone[i].m.dst);
    bk = pa.pairing(bk, cone[i].k);
    bm = pb.pairing(bm, cone[i].m);
  }
  if (!same_cat(bk.dst, prod.inst.a) || !same_cat(bm.dst, prod.inst.b)) {
    // sliced case: bases are identities
    bk = cone[0].k;
    bm = cone[0].m;
  }
  Functor base_map = prod.inst.ab.pairing(compose(bk, t.ab.proj1), compose(bm, t.ab.proj2));
  Functor target = compose(base_map, t.phi);
  std::vector<Functor> cands = enumerate_lifts(prod.inst.phi, target, cap);
  int mediating = 0;
  for (const Functor& med : cands) {
    bool ok = true;
    for (size_t i = 0; i < ps.size() && ok; ++i)
      if (!equal_functor(compose(prod.cones[i].t, med), cone[i].t)) ok = false;
    if (!ok) continue;
    TwoSidedMap f{med, bk, bm};
    if (is_two_sided_functor(t, prod.inst, f)) ++mediating;
  }
  return mediating == 1;
}

// ---- cotensor ----

CotensorInstance two_sided_cotensor(CatPtr x, const TwoSidedInstance& p, long cap) {
  CotensorInstance out;
  const FinCat& AB = *p.ab.cat;
  const FinCat& E = *p.total;
  CatBuilder b("cotensor");
  std::vector<std::vector<Functor>> per_point(AB.n_obj);
  for (ObjId w = 0; w < AB.n_obj; ++w) {
    Functor cst;
    cst.src = x;
    cst.dst = p.ab.cat;
    cst.on_obj.assign(x->n_obj, w);
    cst.on_mor.assign(x->n_mor(), AB.id(w));
    per_point[w] = enumerate_lifts(p.phi, cst, cap);
    for (const Functor& f : per_point[w]) {
      b.add_object("");
      out.obj_functor.push_back(f);
      out.obj_point.push_back(w);
    }
  }
  const int n = static_cast<int>(out.obj_functor.size());
  // morphisms: base arrow ζ plus a ζ-vertical natural family
  struct MorEntry {
    MorId zeta;
    std::vector<MorId> comp;
  };
  std::vector<MorEntry> entries(n);
  for (int o = 0; o < n; ++o) {
    MorEntry e;
    e.zeta = AB.id(out.obj_point[o]);
    e.comp.resize(x->n_obj);
    for (ObjId i = 0; i < x->n_obj; ++i) e.comp[i] = E.id(out.obj_functor[o].ob(i));
    entries[o] = e;
  }
  std::map<std::pair<std::pair<int, int>, std::pair<MorId, std::vector<MorId>>>, MorId> midx;
  for (int o = 0; o < n; ++o) midx[{{o, o}, {entries[o].zeta, entries[o].comp}}] = o;
  long total = n;
  for (int o1 = 0; o1 < n; ++o1)
    for (int o2 = 0; o2 < n; ++o2) {
      const Functor& w1 = out.obj_functor[o1];
      const Functor& w2 = out.obj_functor[o2];
      for (MorId zeta : AB.hom(out.obj_point[o1], out.obj_point[o2])) {
        // enumerate families t_i : w1(i) -> w2(i) over ζ with naturality
        std::vector<MorId> comp(x->n_obj, -1);
        std::function<void(ObjId)> rec = [&](ObjId i) {
          if (i == x->n_obj) {
            if (AB.is_id(zeta) && o1 == o2) {
              bool isid = true;
              for (ObjId ii = 0; ii < x->n_obj; ++ii)
                if (!E.is_id(comp[ii])) isid = false;
              if (isid) return;
            }
            if (++total > cap) fail(ErrorCode::SizeCapExceeded, "cotensor cap exceeded");
            MorId mm = b.add_mor(o1, o2, "");
            entries.push_back({zeta, comp});
            midx[{{o1, o2}, {zeta, comp}}] = mm;
            return;
          }
          for (MorId t : E.hom(w1.ob(i), w2.ob(i))) {
            if (p.phi.mo(t) != zeta) continue;
            comp[i] = t;
            bool ok = true;
            for (MorId f = 0; f < x->n_mor() && ok; ++f) {
              ObjId s = x->src(f), d = x->dst(f);
              if (comp[s] < 0 || comp[d] < 0) continue;
              if (E.compose(w2.mo(f), comp[s]) != E.compose(comp[d], w1.mo(f))) ok = false;
            }
            if (ok) rec(i + 1);
          }
          comp[i] = -1;
        };
        rec(0);
      }
    }
  for (MorId m1 = 0; m1 < b.n_mor(); ++m1)
    for (MorId m2 = 0; m2 < b.n_mor(); ++m2) {
      if (b.peek().dst(m1) != b.peek().src(m2)) continue;
      MorId zeta = AB.compose(entries[m2].zeta, entries[m1].zeta);
      std::vector<MorId> comp(x->n_obj);
      for (ObjId i = 0; i < x->n_obj; ++i)
        comp[i] = E.compose(entries[m2].comp[i], entries[m1].comp[i]);
      b.set_comp(m2, m1, midx.at({{b.peek().src(m1), b.peek().dst(m2)}, {zeta, comp}}));
    }
  CatPtr cot = b.build(false);
  Functor phic;
  phic.src = cot;
  phic.dst = p.ab.cat;
  phic.on_obj = out.obj_point;
  phic.on_mor.resize(cot->n_mor());
  for (MorId m = 0; m < cot->n_mor(); ++m) phic.on_mor[m] = entries[m].zeta;
  out.inst = make_instance(p.a, p.b, compose(p.ab.proj1, phic), compose(p.ab.proj2, phic));
  out.mor_base = phic.on_mor;
  for (const MorEntry& e : entries) out.mor_comp.push_back(e.comp);
  return out;
}

bool leibniz_cotensor_functor_check(const Functor& j, const TwoSidedInstance& p,
                                    const TwoSidedInstance& q, const Functor& t, long cap) {
  if (!same_cat(p.ab.cat, q.ab.cat))
    fail(ErrorCode::BaseMismatch, "leibniz check needs a common base");
  CatPtr x = j.dst, y = j.src;
  CotensorInstance xp = two_sided_cotensor(x, p, cap);
  CotensorInstance yp = two_sided_cotensor(y, p, cap);
  CotensorInstance xq = two_sided_cotensor(x, q, cap);
  CotensorInstance yq = two_sided_cotensor(y, q, cap);
  auto find_obj = [](const CotensorInstance& c, ObjId point, const Functor& w) -> ObjId {
    for (size_t o = 0; o < c.obj_functor.size(); ++o)
      if (c.obj_point[o] == point && c.obj_functor[o].on_obj == w.on_obj &&
          c.obj_functor[o].on_mor == w.on_mor)
        return static_cast<ObjId>(o);
    fail(ErrorCode::UnknownObject, "cotensor object lookup failed");
  };
  auto find_mor = [](const CotensorInstance& c, ObjId so, ObjId dobj, MorId zeta,
                     const std::vector<MorId>& comp) -> MorId {
    for (MorId m = 0; m < c.inst.total->n_mor(); ++m)
      if (c.inst.total->src(m) == so && c.inst.total->dst(m) == dobj && c.mor_base[m] == zeta &&
          c.mor_comp[m] == comp)
        return m;
    fail(ErrorCode::UnknownMorphism, "cotensor morphism lookup failed");
  };
  // restriction along j and postcomposition with κ = t
  auto restrict_along_j = [&](const CotensorInstance& cx, const CotensorInstance& cy) {
    Functor r;
    r.src = cx.inst.total;
    r.dst = cy.inst.total;
    r.on_obj.resize(r.src->n_obj);
    r.on_mor.resize(r.src->n_mor());
    for (ObjId o = 0; o < r.src->n_obj; ++o) {
      Functor wj = compose(cx.obj_functor[o], j);
      r.on_obj[o] = find_obj(cy, cx.obj_point[o], wj);
    }
    for (MorId m = 0; m < r.src->n_mor(); ++m) {
      std::vector<MorId> comp(y->n_obj);
      for (ObjId i = 0; i < y->n_obj; ++i) comp[i] = cx.mor_comp[m][j.ob(i)];
      r.on_mor[m] = find_mor(cy, r.on_obj[r.src->src(m)], r.on_obj[r.src->dst(m)],
                             cx.mor_base[m], comp);
    }
    return r;
  };
  auto postcompose_t = [&](const CotensorInstance& cp, const CotensorInstance& cq, CatPtr shape) {
    Functor r;
    r.src = cp.inst.total;
    r.dst = cq.inst.total;
    r.on_obj.resize(r.src->n_obj);
    r.on_mor.resize(r.src->n_mor());
    for (ObjId o = 0; o < r.src->n_obj; ++o)
      r.on_obj[o] = find_obj(cq, cp.obj_point[o], compose(t, cp.obj_functor[o]));
    for (MorId m = 0; m < r.src->n_mor(); ++m) {
      std::vector<MorId> comp(shape->n_obj);
      for (ObjId i = 0; i < shape->n_obj; ++i) comp[i] = t.mo(cp.mor_comp[m][i]);
      r.on_mor[m] = find_mor(cq, r.on_obj[r.src->src(m)], r.on_obj[r.src->dst(m)],
                             cp.mor_base[m], comp);
    }
    return r;
  };
  Functor ty = postcompose_t(yp, yq, y);  // Y⋔P -> Y⋔Q
  Functor rx = restrict_along_j(xq, yq);  // X⋔Q -> Y⋔Q
  PullbackCat pb = pullback(ty, rx);
  Functor xi_pb = compose(yp.inst.xi(), pb.p1);
  Functor pi_pb = compose(yp.inst.pi(), pb.p1);
  TwoSidedInstance pb_inst = make_instance(p.a, p.b, xi_pb, pi_pb);
  Functor can = pb.mediate(restrict_along_j(xp, yp), postcompose_t(xp, xq, x));
  TwoSidedMap f{can, identity_functor(p.a), identity_functor(p.b)};
  return is_two_sided(pb_inst) && is_two_sided(xp.inst) && is_two_sided_functor(xp.inst, pb_inst, f);
}

// ---- discrete families ----

Functor leg_restriction_a(const TwoSidedInstance& inst, ObjId b, SubCat* out_sub) {
  Functor pi = inst.pi();
  const FinCat& E = *inst.total;
  const FinCat& B = *inst.b;
  std::vector<ObjId> objs;
  for (ObjId e = 0; e < E.n_obj; ++e)
    if (pi.ob(e) == b) objs.push_back(e);
  CatBuilder bl("E_" + B.obj_name(b));
  std::vector<ObjId> oi(E.n_obj, -1);
  for (ObjId e : objs) oi[e] = bl.add_object(E.obj_name(e));
  std::vector<MorId> morsel;
  std::vector<MorId> mi(E.n_mor(), -1);
  for (ObjId e : objs) {
    mi[E.id(e)] = static_cast<MorId>(morsel.size());
    morsel.push_back(E.id(e));
  }
  for (MorId m = 0; m < E.n_mor(); ++m) {
    if (E.is_id(m)) continue;
    if (oi[E.src(m)] < 0 || oi[E.dst(m)] < 0) continue;
    if (pi.mo(m) != B.id(b)) continue;
    mi[m] = bl.add_mor(oi[E.src(m)], oi[E.dst(m)], E.mor_name(m));
    morsel.push_back(m);
  }
  for (MorId f : morsel)
    for (MorId g : morsel) {
      if (!E.composable(g, f)) continue;
      if (mi[E.compose(g, f)] < 0) continue;
      bl.set_comp(mi[g], mi[f], mi[E.compose(g, f)]);
    }
  CatPtr sub = bl.build(false);
  Functor xi_b;
  xi_b.src = sub;
  xi_b.dst = inst.a;
  Functor xi = inst.xi();
  xi_b.on_obj.resize(sub->n_obj);
  for (size_t i = 0; i < objs.size(); ++i) xi_b.on_obj[i] = xi.ob(objs[i]);
  xi_b.on_mor.resize(sub->n_mor());
  for (size_t i = 0; i < morsel.size(); ++i) xi_b.on_mor[i] = xi.mo(morsel[i]);
  if (out_sub) {
    out_sub->cat = sub;
    out_sub->objs = objs;
    out_sub->morsel = morsel;
    out_sub->obj_index = oi;
    out_sub->mor_index = mi;
    out_sub->incl.src = sub;
    out_sub->incl.dst = inst.total;
    out_sub->incl.on_obj = objs;
    out_sub->incl.on_mor = morsel;
  }
  return xi_b;
}

Functor leg_restriction_b(const TwoSidedInstance& inst, ObjId a, SubCat* out_sub) {
  return leg_restriction_a(dual_instance(inst), a, out_sub);
}

bool is_two_sided_discrete(const TwoSidedInstance& inst) {
  for (ObjId b = 0; b < inst.b->n_obj; ++b)
    if (!is_discrete_opfibration(leg_restriction_a(inst, b))) return false;
  for (ObjId a = 0; a < inst.a->n_obj; ++a) {
    // dual instance: the restriction is a discrete opfibration iff the
    // original leg is a discrete fibration
    if (!is_discrete_opfibration(leg_restriction_b(inst, a))) return false;
  }
  return true;
}

CheckReport discrete_criteria_agree(const TwoSidedInstance& inst) {
  CheckReport rep;
  rep.name = "two-sided-discrete";
  bool def = is_two_sided_discrete(inst);
  rep.add("leg-restrictions-discrete", def);
  bool groupoid = true;
  for (ObjId a = 0; a < inst.a->n_obj && groupoid; ++a)
    for (ObjId b = 0; b < inst.b->n_obj && groupoid; ++b) {
      FiberCat f = bifiber(inst, a, b);
      for (MorId m = 0; m < f.cat->n_mor(); ++m)
        if (!f.cat->is_iso(m)) {
          groupoid = false;
          break;
        }
    }
  rep.add("cocart-cart-groupoid-bifibers",
          is_cocart_on_left(inst) && is_cart_on_right(inst) && groupoid);
  if (def && rep.agree()) {
    Functor xi = inst.xi(), pi = inst.pi();
    const FinCat& E = *inst.total;
    bool cor1 = true, cor2 = true;
    for (MorId f = 0; f < E.n_mor(); ++f) {
      bool pvert = inst.b->is_iso(pi.mo(f));
      bool xvert = inst.a->is_iso(xi.mo(f));
      if (is_cocartesian_arrow(xi, f) != pvert) cor1 = false;
      if (is_cartesian_arrow(pi, f) != xvert) cor2 = false;
    }
    rep.add("cocartesian-iff-pi-vertical", cor1);
    rep.add("cartesian-iff-xi-vertical", cor2);
    rep.add("discrete-implies-two-sided", is_two_sided(inst));
  }
  return rep;
}

}  // namespace fibcheck
