#include "fibcheck/fibrations.hpp"

namespace fibcheck {

bool is_cocartesian_arrow(const Functor& pi, MorId f) {
  const FinCat& E = *pi.src;
  const FinCat& B = *pi.dst;
  if (f < 0 || f >= E.n_mor()) fail(ErrorCode::UnknownMorphism, "is_cocartesian_arrow");
  ObjId e = E.src(f), e1 = E.dst(f);
  MorId uf = pi.mo(f);
  for (MorId v : B.from(B.dst(uf))) {
    MorId vu = B.compose(v, uf);
    for (MorId h : E.from(e)) {
      if (pi.mo(h) != vu) continue;
      int count = 0;
      for (MorId g : E.from(e1)) {
        if (pi.mo(g) != v) continue;
        if (E.dst(g) != E.dst(h)) continue;
        if (E.compose(g, f) == h) ++count;
      }
      if (count != 1) return false;
    }
  }
  return true;
}

bool is_cartesian_arrow(const Functor& pi, MorId f) {
  return is_cocartesian_arrow(opposite_functor(pi), f);
}

std::optional<LiftWitness> cocartesian_lift(const Functor& pi, MorId u, ObjId e) {
  const FinCat& B = *pi.dst;
  if (pi.ob(e) != B.src(u))
    fail(ErrorCode::NotOverSource, "cocartesian_lift: object not over src of the arrow");
  for (MorId f : pi.src->from(e)) {
    if (pi.mo(f) != u) continue;
    if (is_cocartesian_arrow(pi, f)) return LiftWitness{u, e, f, pi.src->dst(f)};
  }
  return std::nullopt;
}

std::optional<LiftWitness> cartesian_lift(const Functor& pi, MorId u, ObjId e) {
  const FinCat& B = *pi.dst;
  if (pi.ob(e) != B.dst(u))
    fail(ErrorCode::NotOverSource, "cartesian_lift: object not over dst of the arrow");
  for (MorId f : pi.src->to(e)) {
    if (pi.mo(f) != u) continue;
    if (is_cartesian_arrow(pi, f)) return LiftWitness{u, pi.src->src(f), f, e};
  }
  return std::nullopt;
}

std::vector<MorId> all_cocartesian_lifts(const Functor& pi, MorId u, ObjId e) {
  std::vector<MorId> out;
  for (MorId f : pi.src->from(e)) {
    if (pi.mo(f) != u) continue;
    if (is_cocartesian_arrow(pi, f)) out.push_back(f);
  }
  return out;
}

bool is_cocartesian_fibration(const Functor& pi) {
  const FinCat& B = *pi.dst;
  for (MorId u = 0; u < B.n_mor(); ++u) {
    if (B.is_id(u)) continue;  // identities lift to identities
    for (ObjId e = 0; e < pi.src->n_obj; ++e) {
      if (pi.ob(e) != B.src(u)) continue;
      if (!cocartesian_lift(pi, u, e)) return false;
    }
  }
  return true;
}

bool is_cartesian_fibration(const Functor& pi) {
  return is_cocartesian_fibration(opposite_functor(pi));
}

bool is_discrete_opfibration(const Functor& pi) {
  const FinCat& B = *pi.dst;
  const FinCat& E = *pi.src;
  for (MorId u = 0; u < B.n_mor(); ++u)
    for (ObjId e = 0; e < E.n_obj; ++e) {
      if (pi.ob(e) != B.src(u)) continue;
      int count = 0;
      for (MorId f : E.from(e))
        if (pi.mo(f) == u) ++count;
      if (count != 1) return false;
    }
  return true;
}

bool is_discrete_fibration(const Functor& pi) {
  return is_discrete_opfibration(opposite_functor(pi));
}

std::optional<MorId> cocart_fill(const Functor& pi, MorId f, MorId h, MorId v) {
  const FinCat& E = *pi.src;
  if (E.src(f) != E.src(h)) fail(ErrorCode::BoundaryMismatch, "cocart_fill: sources differ");
  MorId found = -1;
  for (MorId g : E.from(E.dst(f))) {
    if (pi.mo(g) != v) continue;
    if (E.dst(g) != E.dst(h)) continue;
    if (E.compose(g, f) != h) continue;
    if (found >= 0) return std::nullopt;
    found = g;
  }
  if (found < 0) return std::nullopt;
  return found;
}

std::optional<MorId> cart_fill(const Functor& pi, MorId f, MorId h, MorId v) {
  const FinCat& E = *pi.src;
  if (E.dst(f) != E.dst(h)) fail(ErrorCode::BoundaryMismatch, "cart_fill: targets differ");
  MorId found = -1;
  for (MorId g : E.to(E.src(f))) {
    if (pi.mo(g) != v) continue;
    if (E.src(g) != E.src(h)) continue;
    if (E.compose(f, g) != h) continue;
    if (found >= 0) return std::nullopt;
    found = g;
  }
  if (found < 0) return std::nullopt;
  return found;
}

std::optional<MorId> cocart_lift_over(const Functor& pi, MorId w, ObjId x) {
  const FinCat& E = *pi.src;
  if (pi.ob(x) != pi.dst->src(w)) fail(ErrorCode::NotOverSource, "cocart_lift_over");
  for (MorId f : E.from(x)) {
    if (pi.mo(f) != w) continue;
    if (is_cocartesian_arrow(pi, f)) return f;
  }
  return std::nullopt;
}

std::optional<MorId> cart_lift_over(const Functor& pi, MorId w, ObjId x) {
  const FinCat& E = *pi.src;
  if (pi.ob(x) != pi.dst->dst(w)) fail(ErrorCode::NotOverSource, "cart_lift_over");
  for (MorId f : E.to(x)) {
    if (pi.mo(f) != w) continue;
    if (is_cartesian_arrow(pi, f)) return f;
  }
  return std::nullopt;
}

ChevalleyAux chevalley_aux(const Functor& pi) {
  ChevalleyAux aux;
  aux.arr = arrow_category(pi.src);
  aux.pi_down_base = comma(pi, identity_functor(pi.dst));
  const FinCat& E = *pi.src;
  // Leibniz map: (f : e -> e') ↦ (e, π e', π f), square (a,b) ↦ (a, π b)
  Functor& lz = aux.leibniz;
  lz.src = aux.arr.cat;
  lz.dst = aux.pi_down_base.cat;
  lz.on_obj.resize(aux.arr.cat->n_obj);
  for (ObjId o = 0; o < aux.arr.cat->n_obj; ++o) {
    MorId f = aux.arr.obj_arrow[o];
    lz.on_obj[o] = *aux.pi_down_base.obj_index(E.src(f), pi.ob(E.dst(f)), pi.mo(f));
  }
  lz.on_mor.resize(aux.arr.cat->n_mor());
  for (MorId m = 0; m < aux.arr.cat->n_mor(); ++m) {
    auto [a, b] = aux.arr.square[m];
    lz.on_mor[m] = *aux.pi_down_base.mor_at(lz.on_obj[aux.arr.cat->src(m)],
                                            lz.on_obj[aux.arr.cat->dst(m)], a, pi.mo(b));
  }
  lz.name = "i0⋔π";
  // ι : E -> π↓B
  Functor& io = aux.iota;
  io.src = pi.src;
  io.dst = aux.pi_down_base.cat;
  io.on_obj.resize(E.n_obj);
  for (ObjId e = 0; e < E.n_obj; ++e)
    io.on_obj[e] = *aux.pi_down_base.obj_index(e, pi.ob(e), pi.dst->id(pi.ob(e)));
  io.on_mor.resize(E.n_mor());
  for (MorId m = 0; m < E.n_mor(); ++m)
    io.on_mor[m] =
        *aux.pi_down_base.mor_at(io.on_obj[E.src(m)], io.on_obj[E.dst(m)], m, pi.mo(m));
  io.name = "ι";
  aux.comma_to_base = aux.pi_down_base.pG;
  return aux;
}

bool chevalley_lari_check(const Functor& pi) {
  ChevalleyAux aux = chevalley_aux(pi);
  return has_lari(aux.leibniz).has_value();
}

bool transport_adjoint_check(const Functor& pi) {
  ChevalleyAux aux = chevalley_aux(pi);
  return find_fibered_left_adjoint(aux.iota, pi, aux.comma_to_base).has_value();
}

bool is_cocartesian_functor(const Functor& phi, const Functor& k, const Functor& piSrc,
                            const Functor& piDst) {
  if (!equal_functor(compose(piDst, phi), compose(k, piSrc)))
    fail(ErrorCode::SquareMismatch, "is_cocartesian_functor: square does not commute");
  for (MorId f = 0; f < piSrc.src->n_mor(); ++f)
    if (is_cocartesian_arrow(piSrc, f) && !is_cocartesian_arrow(piDst, phi.mo(f))) return false;
  return true;
}

bool is_cartesian_functor(const Functor& phi, const Functor& k, const Functor& piSrc,
                          const Functor& piDst) {
  if (!equal_functor(compose(piDst, phi), compose(k, piSrc)))
    fail(ErrorCode::SquareMismatch, "is_cartesian_functor: square does not commute");
  for (MorId f = 0; f < piSrc.src->n_mor(); ++f)
    if (is_cartesian_arrow(piSrc, f) && !is_cartesian_arrow(piDst, phi.mo(f))) return false;
  return true;
}

bool cocart_functor_mate_check(const Functor& phi, const Functor& k, const Functor& piSrc,
                               const Functor& piDst) {
  if (!equal_functor(compose(piDst, phi), compose(k, piSrc)))
    fail(ErrorCode::SquareMismatch, "cocart_functor_mate_check: square does not commute");
  if (!is_cocartesian_fibration(piSrc) || !is_cocartesian_fibration(piDst))
    fail(ErrorCode::PreconditionFailed, "mate check needs cocartesian fibrations on both sides");
  ChevalleyAux sa = chevalley_aux(piSrc);
  ChevalleyAux da = chevalley_aux(piDst);
  auto fa1 = find_fibered_left_adjoint(sa.iota, piSrc, sa.comma_to_base);
  auto fa2 = find_fibered_left_adjoint(da.iota, piDst, da.comma_to_base);
  if (!fa1 || !fa2)
    fail(ErrorCode::PreconditionFailed, "transport adjoint missing despite cocartesian input");
  // φ↓k : ξ↓A -> π↓B
  Functor pk;
  pk.src = sa.pi_down_base.cat;
  pk.dst = da.pi_down_base.cat;
  pk.on_obj.resize(pk.src->n_obj);
  for (ObjId o = 0; o < pk.src->n_obj; ++o) {
    const CommaObj& co = sa.pi_down_base.objs[o];
    pk.on_obj[o] = *da.pi_down_base.obj_index(phi.ob(co.c), k.ob(co.d), k.mo(co.m));
  }
  pk.on_mor.resize(pk.src->n_mor());
  for (MorId m = 0; m < pk.src->n_mor(); ++m) {
    auto [u, v] = sa.pi_down_base.mor_pair[m];
    pk.on_mor[m] = *da.pi_down_base.mor_at(pk.on_obj[pk.src->src(m)], pk.on_obj[pk.src->dst(m)],
                                           phi.mo(u), k.mo(v));
  }
  // canonical identity 2-cell (φ↓k)∘ι_ξ = ι_π∘φ
  Functor lhs = compose(pk, sa.iota);
  Functor rhs = compose(da.iota, phi);
  if (!equal_functor(lhs, rhs))
    fail(ErrorCode::SquareMismatch, "comma square is not strictly commutative");
  NatTrans gamma;
  gamma.src = lhs;
  gamma.dst = rhs;
  gamma.component.resize(phi.src->n_obj);
  for (ObjId x = 0; x < phi.src->n_obj; ++x)
    gamma.component[x] = da.pi_down_base.cat->id(lhs.ob(x));
  NatTrans mate = mate_of_right_square(pk, phi, gamma, fa1->adj, fa2->adj);
  return is_natural_iso(mate);
}

}  // namespace fibcheck
