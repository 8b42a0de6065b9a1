#include "fibcheck/adjunctions.hpp"

#include <functional>

namespace fibcheck {

bool check_adjunction(const Adjunction& adj) {
  const Functor& L = adj.left;
  const Functor& R = adj.right;
  if (!same_cat(L.src, R.dst) || !same_cat(L.dst, R.src))
    fail(ErrorCode::BoundaryMismatch, "adjunction functor boundaries do not match");
  if (!equal_functor(adj.unit.src, identity_functor(L.src)) ||
      !equal_functor(adj.unit.dst, compose(R, L)) ||
      !equal_functor(adj.counit.src, compose(L, R)) ||
      !equal_functor(adj.counit.dst, identity_functor(L.dst)))
    fail(ErrorCode::BoundaryMismatch, "unit/counit boundaries do not match");
  if (!adj.unit.well_formed() || !adj.counit.well_formed()) return false;
  const FinCat& C = *L.src;
  const FinCat& D = *L.dst;
  for (ObjId c = 0; c < C.n_obj; ++c) {
    // ε_{Lc} ∘ L(η_c) = id_{Lc}
    if (D.compose(adj.counit.component[L.ob(c)], L.mo(adj.unit.component[c])) != D.id(L.ob(c)))
      return false;
  }
  for (ObjId d = 0; d < D.n_obj; ++d) {
    // R(ε_d) ∘ η_{Rd} = id_{Rd}
    if (C.compose(R.mo(adj.counit.component[d]), adj.unit.component[R.ob(d)]) != C.id(R.ob(d)))
      return false;
  }
  return true;
}

namespace {

// Initial object of c ↓ R, searched directly: candidates (d, m : c -> R d) in
// (d, m) order; initial means a unique connecting morphism to every candidate.
struct UniversalArrow {
  ObjId d;
  MorId eta;
};

std::optional<UniversalArrow> initial_universal_arrow(const Functor& r, ObjId c) {
  const FinCat& C = *r.dst;
  const FinCat& D = *r.src;
  for (ObjId d = 0; d < D.n_obj; ++d)
    for (MorId m : C.hom(c, r.ob(d))) {
      bool initial = true;
      for (ObjId d2 = 0; d2 < D.n_obj && initial; ++d2)
        for (MorId m2 : C.hom(c, r.ob(d2))) {
          int count = 0;
          for (MorId g : D.hom(d, d2))
            if (C.compose(r.mo(g), m) == m2) ++count;
          if (count != 1) {
            initial = false;
            break;
          }
        }
      if (initial) return UniversalArrow{d, m};
    }
  return std::nullopt;
}

}  // namespace

std::optional<Adjunction> find_left_adjoint(const Functor& r, long cap) {
  const FinCat& C = *r.dst;
  const FinCat& D = *r.src;
  if (static_cast<long>(C.n_obj) * D.n_mor() > cap)
    fail(ErrorCode::SizeCapExceeded, "find_left_adjoint search too large");
  std::vector<ObjId> lob(C.n_obj);
  std::vector<MorId> eta(C.n_obj);
  for (ObjId c = 0; c < C.n_obj; ++c) {
    auto ua = initial_universal_arrow(r, c);
    if (!ua) return std::nullopt;
    lob[c] = ua->d;
    eta[c] = ua->eta;
  }
  Functor L;
  L.src = r.dst;
  L.dst = r.src;
  L.on_obj = lob;
  L.on_mor.assign(C.n_mor(), -1);
  for (MorId f = 0; f < C.n_mor(); ++f) {
    ObjId c = C.src(f), c2 = C.dst(f);
    MorId target = C.compose(eta[c2], f);
    MorId found = -1;
    for (MorId g : D.hom(lob[c], lob[c2]))
      if (C.compose(r.mo(g), eta[c]) == target) {
        if (found >= 0) return std::nullopt;  // initiality violated
        found = g;
      }
    if (found < 0) return std::nullopt;
    L.on_mor[f] = found;
  }
  try {
    L.check();
  } catch (const Error&) {
    return std::nullopt;
  }
  NatTrans unit;
  unit.src = identity_functor(r.dst);
  unit.dst = compose(r, L);
  unit.component = eta;
  if (!unit.well_formed()) return std::nullopt;
  NatTrans counit;
  counit.src = compose(L, r);
  counit.dst = identity_functor(r.src);
  counit.component.assign(D.n_obj, -1);
  for (ObjId d = 0; d < D.n_obj; ++d) {
    MorId found = -1;
    for (MorId g : D.hom(lob[r.ob(d)], d))
      if (C.compose(r.mo(g), eta[r.ob(d)]) == C.id(r.ob(d))) {
        if (found >= 0) return std::nullopt;
        found = g;
      }
    if (found < 0) return std::nullopt;
    counit.component[d] = found;
  }
  if (!counit.well_formed()) return std::nullopt;
  Adjunction adj{L, r, unit, counit};
  if (!check_adjunction(adj)) return std::nullopt;
  return adj;
}

std::optional<Adjunction> find_right_adjoint(const Functor& l, long cap) {
  auto found = find_left_adjoint(opposite_functor(l), cap);
  if (!found) return std::nullopt;
  Adjunction adj;
  adj.left = l;
  adj.right.src = l.dst;
  adj.right.dst = l.src;
  adj.right.on_obj = found->left.on_obj;
  adj.right.on_mor = found->left.on_mor;
  adj.unit.src = identity_functor(l.src);
  adj.unit.dst = compose(adj.right, adj.left);
  adj.unit.component = found->counit.component;
  adj.counit.src = compose(adj.left, adj.right);
  adj.counit.dst = identity_functor(l.dst);
  adj.counit.component = found->unit.component;
  if (!check_adjunction(adj)) return std::nullopt;
  return adj;
}

std::optional<Adjunction> has_lari(const Functor& r, long cap) {
  auto adj = find_left_adjoint(r, cap);
  if (!adj) return std::nullopt;
  for (MorId m : adj->unit.component)
    if (!r.dst->is_iso(m)) return std::nullopt;
  return adj;
}

// ---- fibered adjoints ----

namespace {

void require_over(const Functor& phi, const Functor& pSrc, const Functor& pDst) {
  if (!same_cat(pSrc.dst, pDst.dst)) fail(ErrorCode::NotOverBase, "projections disagree on base");
  if (!equal_functor(compose(pDst, phi), pSrc))
    fail(ErrorCode::NotOverBase, "functor does not commute with the projections");
}

// the transposition map k |-> phi(k)∘eta must be a bijection
// { k : x -> e over u } -> { m : d -> phi e over u }
bool transposes_bijectively(const Functor& phi, const Functor& pSrc, const Functor& pDst,
                            ObjId d, ObjId x, MorId eta) {
  const FinCat& E = *phi.src;
  const FinCat& F = *phi.dst;
  const FinCat& B = *pDst.dst;
  ObjId b = pDst.ob(d);
  for (MorId u : B.from(b)) {
    for (ObjId e = 0; e < E.n_obj; ++e) {
      if (pSrc.ob(e) != B.dst(u)) continue;
      std::vector<MorId> image;
      for (MorId k : E.hom(x, e)) {
        if (pSrc.mo(k) != u) continue;
        image.push_back(F.compose(phi.mo(k), eta));
      }
      size_t targets = 0;
      for (MorId m : F.hom(d, phi.ob(e)))
        if (pDst.mo(m) == u) ++targets;
      if (image.size() != targets) return false;
      std::sort(image.begin(), image.end());
      if (std::adjacent_find(image.begin(), image.end()) != image.end()) return false;
    }
  }
  return true;
}

}  // namespace

std::optional<FiberedAdjunction> find_fibered_left_adjoint(const Functor& phi,
                                                           const Functor& pSrc,
                                                           const Functor& pDst) {
  require_over(phi, pSrc, pDst);
  const FinCat& E = *phi.src;
  const FinCat& F = *phi.dst;
  const FinCat& B = *pDst.dst;

  std::vector<ObjId> psi_ob(F.n_obj, -1);
  std::vector<MorId> eta(F.n_obj, -1);
  for (ObjId d = 0; d < F.n_obj; ++d) {
    ObjId b = pDst.ob(d);
    bool done = false;
    for (ObjId x = 0; x < E.n_obj && !done; ++x) {
      if (pSrc.ob(x) != b) continue;
      for (MorId m : F.hom(d, phi.ob(x))) {
        if (pDst.mo(m) != B.id(b)) continue;
        if (transposes_bijectively(phi, pSrc, pDst, d, x, m)) {
          psi_ob[d] = x;
          eta[d] = m;
          done = true;
          break;
        }
      }
    }
    if (!done) return std::nullopt;
  }

  Functor psi;
  psi.src = phi.dst;
  psi.dst = phi.src;
  psi.on_obj = psi_ob;
  psi.on_mor.assign(F.n_mor(), -1);
  for (MorId g = 0; g < F.n_mor(); ++g) {
    ObjId d = F.src(g), d2 = F.dst(g);
    MorId u = pDst.mo(g);
    MorId target = F.compose(eta[d2], g);
    MorId found = -1;
    for (MorId k : E.hom(psi_ob[d], psi_ob[d2])) {
      if (pSrc.mo(k) != u) continue;
      if (F.compose(phi.mo(k), eta[d]) == target) {
        if (found >= 0) return std::nullopt;
        found = k;
      }
    }
    if (found < 0) return std::nullopt;
    psi.on_mor[g] = found;
  }
  try {
    psi.check();
  } catch (const Error&) {
    return std::nullopt;
  }

  NatTrans unit;
  unit.src = identity_functor(phi.dst);
  unit.dst = compose(phi, psi);
  unit.component = eta;
  if (!unit.well_formed()) return std::nullopt;

  NatTrans counit;
  counit.src = compose(psi, phi);
  counit.dst = identity_functor(phi.src);
  counit.component.assign(E.n_obj, -1);
  for (ObjId e = 0; e < E.n_obj; ++e) {
    ObjId d = phi.ob(e);
    MorId found = -1;
    for (MorId k : E.hom(psi_ob[d], e)) {
      if (pSrc.mo(k) != B.id(pSrc.ob(e))) continue;
      if (F.compose(phi.mo(k), eta[d]) == F.id(d)) {
        if (found >= 0) return std::nullopt;
        found = k;
      }
    }
    if (found < 0) return std::nullopt;
    counit.component[e] = found;
  }
  if (!counit.well_formed()) return std::nullopt;

  Adjunction adj{psi, phi, unit, counit};
  if (!check_adjunction(adj)) return std::nullopt;
  return FiberedAdjunction{pDst.dst, adj, pDst, pSrc};
}

std::optional<FiberedAdjunction> find_fibered_right_adjoint(const Functor& phi,
                                                            const Functor& pSrc,
                                                            const Functor& pDst) {
  require_over(phi, pSrc, pDst);
  auto found = find_fibered_left_adjoint(opposite_functor(phi), opposite_functor(pSrc),
                                         opposite_functor(pDst));
  if (!found) return std::nullopt;
  Adjunction adj;
  adj.left = phi;
  adj.right.src = phi.dst;
  adj.right.dst = phi.src;
  adj.right.on_obj = found->adj.left.on_obj;
  adj.right.on_mor = found->adj.left.on_mor;
  adj.unit.src = identity_functor(phi.src);
  adj.unit.dst = compose(adj.right, adj.left);
  adj.unit.component = found->adj.counit.component;
  adj.counit.src = compose(adj.left, adj.right);
  adj.counit.dst = identity_functor(phi.dst);
  adj.counit.component = found->adj.unit.component;
  if (!check_adjunction(adj)) return std::nullopt;
  return FiberedAdjunction{pDst.dst, adj, pSrc, pDst};
}

bool is_fibered_lari(const FiberedAdjunction& fa) {
  const FinCat& c = *fa.adj.unit.src.dst;
  for (MorId m : fa.adj.unit.component)
    if (!c.is_iso(m)) return false;
  return true;
}

// ---- criteria agreement for a candidate pair ----

namespace {

// does some (eta, eps) make L ⊣ R an adjunction for this fixed pair?
bool adjunction_data_exists(const Functor& l, const Functor& r, long cap = 100000) {
  if (!same_cat(l.src, r.dst) || !same_cat(l.dst, r.src)) return false;
  auto units = enumerate_nats(identity_functor(l.src), compose(r, l), cap);
  const FinCat& C = *l.src;
  const FinCat& D = *l.dst;
  for (const NatTrans& eta : units) {
    // counit components constrained by the R-triangle, searched with
    // naturality pruning
    std::vector<MorId> eps(D.n_obj, -1);
    std::function<bool(ObjId)> rec = [&](ObjId d) -> bool {
      if (d == D.n_obj) {
        NatTrans counit;
        counit.src = compose(l, r);
        counit.dst = identity_functor(l.dst);
        counit.component = eps;
        Adjunction adj{l, r, eta, counit};
        return check_adjunction(adj);
      }
      for (MorId g : D.hom(l.ob(r.ob(d)), d)) {
        if (C.compose(r.mo(g), eta.component[r.ob(d)]) != C.id(r.ob(d))) continue;
        eps[d] = g;
        bool ok = true;
        for (MorId u = 0; u < D.n_mor() && ok; ++u) {
          ObjId s = D.src(u), t = D.dst(u);
          if (eps[s] < 0 || eps[t] < 0) continue;
          if (D.compose(u, eps[s]) != D.compose(eps[t], l.mo(r.mo(u)))) ok = false;
        }
        if (ok && rec(d + 1)) return true;
      }
      eps[d] = -1;
      return false;
    };
    if (rec(0)) return true;
  }
  return false;
}

bool exists_fibered_equivalence(const Functor& projC, const Functor& projD, long cap = 200000) {
  if (projC.src->n_obj != projD.src->n_obj || projC.src->n_mor() != projD.src->n_mor())
    return false;
  auto cands = enumerate_lifts(projD, projC, cap);
  for (const Functor& t : cands)
    if (is_fibered_equivalence(t, projC, projD, cap)) return true;
  return false;
}

// restriction of phi : E -> F to the fibers over b
Functor fiber_restriction(const Functor& phi, const SubCat& eb, const SubCat& fb) {
  Functor r;
  r.src = eb.cat;
  r.dst = fb.cat;
  r.on_obj.resize(eb.cat->n_obj);
  r.on_mor.resize(eb.cat->n_mor());
  for (ObjId i = 0; i < eb.cat->n_obj; ++i) r.on_obj[i] = fb.obj_index[phi.ob(eb.objs[i])];
  for (MorId m = 0; m < eb.cat->n_mor(); ++m) r.on_mor[m] = fb.mor_index[phi.mo(eb.morsel[m])];
  return r;
}

// the strict fiber over b, as a SubCat (objects over b, morphisms over id_b)
SubCat fiber_subcat(const Functor& p, ObjId b) {
  std::vector<ObjId> objs;
  for (ObjId e = 0; e < p.src->n_obj; ++e)
    if (p.ob(e) == b) objs.push_back(e);
  CatBuilder bld(p.src->name + "_" + p.dst->obj_name(b));
  std::vector<ObjId> oi(p.src->n_obj, -1);
  for (ObjId e : objs) oi[e] = bld.add_object(p.src->obj_name(e));
  std::vector<MorId> mi(p.src->n_mor(), -1);
  std::vector<MorId> morsel;
  for (ObjId e : objs) {
    mi[p.src->id(e)] = static_cast<MorId>(morsel.size());
    morsel.push_back(p.src->id(e));
  }
  for (MorId m = 0; m < p.src->n_mor(); ++m) {
    if (p.src->is_id(m)) continue;
    if (oi[p.src->src(m)] < 0 || oi[p.src->dst(m)] < 0) continue;
    if (p.mo(m) != p.dst->id(b)) continue;
    mi[m] = bld.add_mor(oi[p.src->src(m)], oi[p.src->dst(m)], p.src->mor_name(m));
    morsel.push_back(m);
  }
  for (MorId a : morsel)
    for (MorId c : morsel) {
      if (!p.src->composable(c, a)) continue;
      bld.set_comp(mi[c], mi[a], mi[p.src->compose(c, a)]);
    }
  SubCat out;
  out.cat = bld.build(false);
  out.objs = objs;
  out.morsel = morsel;
  out.obj_index = oi;
  out.mor_index = mi;
  out.incl.src = out.cat;
  out.incl.dst = p.src;
  out.incl.on_obj = objs;
  out.incl.on_mor = morsel;
  return out;
}

}  // namespace

CheckReport fibered_adjunction_criteria_agree(const Functor& phi, const Functor& psi,
                                              const Functor& pSrc, const Functor& pDst) {
  require_over(phi, pSrc, pDst);
  if (!equal_functor(compose(pSrc, psi), pDst))
    fail(ErrorCode::NotOverBase, "candidate adjoint does not commute with the projections");
  CheckReport rep;
  rep.name = "fibered-adjunction";
  const FinCat& E = *phi.src;
  const FinCat& F = *phi.dst;
  const FinCat& B = *pDst.dst;
  const long cap = 500000;

  // (ii): some vertical natural unit with bijective transpositions
  bool ii = false;
  {
    auto units = enumerate_nats(identity_functor(phi.dst), compose(phi, psi), cap, &pDst);
    for (const NatTrans& eta : units) {
      bool ok = true;
      for (ObjId d = 0; d < F.n_obj && ok; ++d)
        if (!transposes_bijectively(phi, pSrc, pDst, d, psi.ob(d), eta.component[d])) ok = false;
      if (ok) {
        ii = true;
        break;
      }
    }
  }
  rep.add("vertical-unit-transposition", ii);

  // (iii): fiberwise adjunctions plus the sliced-comma fibered equivalence
  bool iii = true;
  for (ObjId b = 0; b < B.n_obj && iii; ++b) {
    SubCat eb = fiber_subcat(pSrc, b);
    SubCat fb = fiber_subcat(pDst, b);
    Functor phib = fiber_restriction(phi, eb, fb);
    Functor psib = fiber_restriction(psi, fb, eb);
    if (!adjunction_data_exists(psib, phib)) iii = false;
  }
  if (iii) {
    // psi ↓_B E vs F ↓_B phi, both fibered over F ×_B E; the sliced comma is
    // the full subcategory of the ordinary comma on vertical-arrow objects
    CommaCat k1 = comma(psi, identity_functor(phi.src));   // objects (c:F, d:E, m: psi c -> d)
    CommaCat k2 = comma(identity_functor(phi.dst), phi);   // objects (c:F, d:E, m: c -> phi d)
    std::vector<ObjId> v1, v2;
    for (size_t o = 0; o < k1.objs.size(); ++o)
      if (pSrc.mo(k1.objs[o].m) == B.id(pSrc.ob(k1.objs[o].d))) v1.push_back(static_cast<ObjId>(o));
    for (size_t o = 0; o < k2.objs.size(); ++o)
      if (pDst.mo(k2.objs[o].m) == B.id(pDst.ob(k2.objs[o].c))) v2.push_back(static_cast<ObjId>(o));
    SubCat s1 = full_subcategory(k1.cat, v1);
    SubCat s2 = full_subcategory(k2.cat, v2);
    PullbackCat fxe = pullback(pDst, pSrc);
    auto proj_into = [&](const SubCat& s, const CommaCat& k) {
      Functor pr;
      pr.src = s.cat;
      pr.dst = fxe.cat;
      pr.on_obj.resize(s.cat->n_obj);
      pr.on_mor.resize(s.cat->n_mor());
      for (ObjId i = 0; i < s.cat->n_obj; ++i) {
        const CommaObj& co = k.objs[s.objs[i]];
        pr.on_obj[i] = *fxe.obj_index(co.c, co.d);
      }
      for (MorId m = 0; m < s.cat->n_mor(); ++m) {
        auto pq = k.mor_pair[s.morsel[m]];
        pr.on_mor[m] = *fxe.mor_index(pq.first, pq.second);
      }
      return pr;
    };
    Functor p1 = proj_into(s1, k1);
    Functor p2 = proj_into(s2, k2);
    iii = exists_fibered_equivalence(p1, p2, cap);
  }
  rep.add("fiberwise-adjoint-and-comma", iii);

  // (iv): bi-diagrammatic vertical data
  bool iv = false;
  {
    auto units = enumerate_nats(identity_functor(phi.dst), compose(phi, psi), cap, &pDst);
    for (const NatTrans& eta : units) {
      // eps : psi∘phi ⇒ id_E vertical natural with phi(eps_e)∘eta_{phi e} = id
      std::vector<MorId> eps(E.n_obj, -1);
      std::function<bool(ObjId)> rec_eps = [&](ObjId e) -> bool {
        if (e == E.n_obj) return true;
        for (MorId k : E.hom(psi.ob(phi.ob(e)), e)) {
          if (pSrc.mo(k) != B.id(pSrc.ob(e))) continue;
          if (F.compose(phi.mo(k), eta.component[phi.ob(e)]) != F.id(phi.ob(e))) continue;
          eps[e] = k;
          bool ok = true;
          for (MorId u = 0; u < E.n_mor() && ok; ++u) {
            ObjId s = E.src(u), t = E.dst(u);
            if (eps[s] < 0 || eps[t] < 0) continue;
            if (E.compose(u, eps[s]) != E.compose(eps[t], psi.mo(phi.mo(u)))) ok = false;
          }
          if (ok && rec_eps(e + 1)) return true;
        }
        eps[e] = -1;
        return false;
      };
      if (!rec_eps(0)) continue;
      // eps' : psi∘phi ⇒ id_E vertical natural with eps'_{psi d}∘psi(eta_d) = id
      std::vector<MorId> eps2(E.n_obj, -1);
      std::function<bool(ObjId)> rec_eps2 = [&](ObjId e) -> bool {
        if (e == E.n_obj) {
          for (ObjId d = 0; d < F.n_obj; ++d)
            if (E.compose(eps2[psi.ob(d)], psi.mo(eta.component[d])) != E.id(psi.ob(d)))
              return false;
          return true;
        }
        for (MorId k : E.hom(psi.ob(phi.ob(e)), e)) {
          if (pSrc.mo(k) != B.id(pSrc.ob(e))) continue;
          eps2[e] = k;
          bool ok = true;
          for (MorId u = 0; u < E.n_mor() && ok; ++u) {
            ObjId s = E.src(u), t = E.dst(u);
            if (eps2[s] < 0 || eps2[t] < 0) continue;
            if (E.compose(u, eps2[s]) != E.compose(eps2[t], psi.mo(phi.mo(u)))) ok = false;
          }
          if (ok && rec_eps2(e + 1)) return true;
        }
        eps2[e] = -1;
        return false;
      };
      if (rec_eps2(0)) {
        iv = true;
        break;
      }
    }
  }
  rep.add("bi-diagrammatic", iv);
  return rep;
}

// ---- mates ----

NatTrans compute_mate(const Functor& k, const Functor& m, const NatTrans& alpha,
                      const Adjunction& adjL, const Adjunction& adjR) {
  const Functor& L = adjL.left;
  const Functor& R = adjL.right;
  const Functor& L2 = adjR.left;
  const Functor& R2 = adjR.right;
  if (!equal_functor(alpha.src, compose(L2, k)) || !equal_functor(alpha.dst, compose(m, L)))
    fail(ErrorCode::BoundaryMismatch, "compute_mate: alpha must be L'∘k ⇒ m∘L");
  NatTrans step1 = whisker_right(adjR.unit, compose(k, R));         // kR ⇒ R'L'kR
  NatTrans step2 = whisker_left(R2, whisker_right(alpha, R));       // R'L'kR ⇒ R'mLR
  NatTrans step3 = whisker_left(compose(R2, m), adjL.counit);       // R'mLR ⇒ R'm
  return nat_vcompose(step3, nat_vcompose(step2, step1));
}

NatTrans mate_of_right_square(const Functor& k, const Functor& m, const NatTrans& gamma,
                              const Adjunction& adjL, const Adjunction& adjR) {
  const Functor& L = adjL.left;
  const Functor& R = adjL.right;
  const Functor& L2 = adjR.left;
  const Functor& R2 = adjR.right;
  if (!equal_functor(gamma.src, compose(k, R)) || !equal_functor(gamma.dst, compose(R2, m)))
    fail(ErrorCode::BoundaryMismatch, "mate_of_right_square: gamma must be k∘R ⇒ R'∘m");
  NatTrans step1 = whisker_left(compose(L2, k), adjL.unit);         // L'k ⇒ L'kRL
  NatTrans step2 = whisker_left(L2, whisker_right(gamma, L));       // L'kRL ⇒ L'R'mL
  NatTrans step3 = whisker_right(adjR.counit, compose(m, L));       // L'R'mL ⇒ mL
  return nat_vcompose(step3, nat_vcompose(step2, step1));
}

}  // namespace fibcheck
