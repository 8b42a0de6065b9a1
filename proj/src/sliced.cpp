#include "fibcheck/sliced.hpp"

#include <functional>

namespace fibcheck {

void SlicedMap::check() const {
  if (!same_cat(pr_src.dst, base) || !same_cat(pr_dst.dst, base))
    fail(ErrorCode::NotOverBase, "sliced map: projections do not land in the base");
  if (!equal_functor(compose(pr_dst, map), pr_src))
    fail(ErrorCode::NotOverBase, "sliced map: square over the base does not commute");
}

SlicedMap identity_sliced(const Functor& pi) {
  return SlicedMap{pi.dst, pi, pi, identity_functor(pi.src)};
}

// ---- vertical arrows ----

std::optional<MorId> VertCat::mor_at(ObjId srcO, ObjId dstO, MorId a, MorId b) const {
  auto it = mor_at_.find({srcO, dstO, a, b});
  if (it == mor_at_.end()) return std::nullopt;
  return it->second;
}

VertCat vertical_arrows(const Functor& pi) {
  VertCat v;
  const FinCat& E = *pi.src;
  const FinCat& B = *pi.dst;
  CatBuilder b("Vert(" + pi.src->name + ")");
  v.arrow_obj.assign(E.n_mor(), -1);
  for (MorId f = 0; f < E.n_mor(); ++f) {
    if (pi.mo(f) != B.id(pi.ob(E.src(f)))) continue;
    ObjId o = b.add_object(E.mor_name(f));
    v.obj_arrow.push_back(f);
    v.arrow_obj[f] = o;
  }
  for (size_t o = 0; o < v.obj_arrow.size(); ++o) {
    MorId f = v.obj_arrow[o];
    auto key = std::array<int, 4>{(int)o, (int)o, E.id(E.src(f)), E.id(E.dst(f))};
    v.mor_at_[key] = static_cast<MorId>(o);
    v.square.push_back({E.id(E.src(f)), E.id(E.dst(f))});
  }
  for (size_t o1 = 0; o1 < v.obj_arrow.size(); ++o1)
    for (size_t o2 = 0; o2 < v.obj_arrow.size(); ++o2) {
      MorId f = v.obj_arrow[o1], g = v.obj_arrow[o2];
      for (MorId a : E.hom(E.src(f), E.src(g)))
        for (MorId bb : E.hom(E.dst(f), E.dst(g))) {
          if (E.is_id(a) && E.is_id(bb)) continue;
          if (E.compose(g, a) != E.compose(bb, f)) continue;
          MorId m = b.add_mor(static_cast<ObjId>(o1), static_cast<ObjId>(o2),
                              "(" + E.mor_name(a) + "," + E.mor_name(bb) + ")");
          v.square.push_back({a, bb});
          v.mor_at_[{(int)o1, (int)o2, a, bb}] = m;
        }
    }
  for (MorId m1 = 0; m1 < b.n_mor(); ++m1)
    for (MorId m2 = 0; m2 < b.n_mor(); ++m2) {
      if (b.peek().dst(m1) != b.peek().src(m2)) continue;
      auto [a1, b1] = v.square[m1];
      auto [a2, b2] = v.square[m2];
      b.set_comp(m2, m1,
                 v.mor_at_.at({b.peek().src(m1), b.peek().dst(m2), E.compose(a2, a1),
                               E.compose(b2, b1)}));
    }
  v.cat = b.build(false);
  v.proj.src = v.cat;
  v.proj.dst = pi.dst;
  v.proj.on_obj.resize(v.cat->n_obj);
  for (ObjId o = 0; o < v.cat->n_obj; ++o) v.proj.on_obj[o] = pi.ob(E.src(v.obj_arrow[o]));
  v.proj.on_mor.resize(v.cat->n_mor());
  for (MorId m = 0; m < v.cat->n_mor(); ++m) v.proj.on_mor[m] = pi.mo(v.square[m].first);
  return v;
}

// ---- sliced product ----

std::optional<ObjId> SlicedProd::obj_index(const std::vector<ObjId>& t) const {
  auto it = oid_.find(t);
  if (it == oid_.end()) return std::nullopt;
  return it->second;
}
std::optional<MorId> SlicedProd::mor_index(const std::vector<MorId>& t) const {
  auto it = mid_.find(t);
  if (it == mid_.end()) return std::nullopt;
  return it->second;
}

SlicedProd sliced_product(const std::vector<Functor>& pis) {
  if (pis.empty()) fail(ErrorCode::BaseMismatch, "sliced_product needs at least one factor");
  CatPtr base = pis[0].dst;
  for (const Functor& p : pis)
    if (!same_cat(p.dst, base)) fail(ErrorCode::BaseMismatch, "sliced_product base mismatch");
  const size_t k = pis.size();
  CatBuilder b("×_B");
  SlicedProd sp;
  // tuples with a common base object, lexicographic
  std::vector<ObjId> tup(k, 0);
  std::function<void(size_t, ObjId)> rec_obj = [&](size_t i, ObjId bobj) {
    if (i == k) {
      sp.oid_[tup] = b.add_object("");
      sp.objs.push_back(tup);
      return;
    }
    for (ObjId e = 0; e < pis[i].src->n_obj; ++e) {
      if (i == 0) {
        tup[0] = e;
        rec_obj(1, pis[0].ob(e));
      } else if (pis[i].ob(e) == bobj) {
        tup[i] = e;
        rec_obj(i + 1, bobj);
      }
    }
  };
  rec_obj(0, 0);
  // identities
  sp.mors.resize(sp.objs.size());
  for (size_t o = 0; o < sp.objs.size(); ++o) {
    std::vector<MorId> t(k);
    for (size_t i = 0; i < k; ++i) t[i] = pis[i].src->id(sp.objs[o][i]);
    sp.mors[o] = t;
    sp.mid_[t] = static_cast<MorId>(o);
  }
  std::vector<MorId> mt(k, 0);
  std::function<void(size_t, MorId, bool)> rec_mor = [&](size_t i, MorId bmor, bool all_id) {
    if (i == k) {
      if (all_id) return;
      ObjId so = sp.oid_.at([&] {
        std::vector<ObjId> t(k);
        for (size_t j = 0; j < k; ++j) t[j] = pis[j].src->src(mt[j]);
        return t;
      }());
      ObjId dobj = sp.oid_.at([&] {
        std::vector<ObjId> t(k);
        for (size_t j = 0; j < k; ++j) t[j] = pis[j].src->dst(mt[j]);
        return t;
      }());
      MorId m = b.add_mor(so, dobj, "");
      sp.mors.push_back(mt);
      sp.mid_[mt] = m;
      return;
    }
    for (MorId f = 0; f < pis[i].src->n_mor(); ++f) {
      if (i == 0) {
        mt[0] = f;
        rec_mor(1, pis[0].mo(f), pis[0].src->is_id(f));
      } else if (pis[i].mo(f) == bmor) {
        mt[i] = f;
        rec_mor(i + 1, bmor, all_id && pis[i].src->is_id(f));
      }
    }
  };
  rec_mor(0, 0, true);
  for (MorId m1 = 0; m1 < b.n_mor(); ++m1)
    for (MorId m2 = 0; m2 < b.n_mor(); ++m2) {
      if (b.peek().dst(m1) != b.peek().src(m2)) continue;
      std::vector<MorId> t(k);
      for (size_t i = 0; i < k; ++i) t[i] = pis[i].src->compose(sp.mors[m2][i], sp.mors[m1][i]);
      b.set_comp(m2, m1, sp.mid_.at(t));
    }
  sp.cat = b.build(false);
  sp.proj.src = sp.cat;
  sp.proj.dst = base;
  sp.proj.on_obj.resize(sp.cat->n_obj);
  sp.proj.on_mor.resize(sp.cat->n_mor());
  for (ObjId o = 0; o < sp.cat->n_obj; ++o) sp.proj.on_obj[o] = pis[0].ob(sp.objs[o][0]);
  for (MorId m = 0; m < sp.cat->n_mor(); ++m) sp.proj.on_mor[m] = pis[0].mo(sp.mors[m][0]);
  for (size_t i = 0; i < k; ++i) {
    Functor f;
    f.src = sp.cat;
    f.dst = pis[i].src;
    f.on_obj.resize(sp.cat->n_obj);
    f.on_mor.resize(sp.cat->n_mor());
    for (ObjId o = 0; o < sp.cat->n_obj; ++o) f.on_obj[o] = sp.objs[o][i];
    for (MorId m = 0; m < sp.cat->n_mor(); ++m) f.on_mor[m] = sp.mors[m][i];
    sp.factors.push_back(std::move(f));
  }
  return sp;
}

// ---- sliced comma ----

std::optional<ObjId> SlicedComma::obj_index(ObjId x, ObjId y, MorId m) const {
  auto it = oid_.find({x, y, m});
  if (it == oid_.end()) return std::nullopt;
  return it->second;
}
std::optional<MorId> SlicedComma::mor_at(ObjId srcO, ObjId dstO, MorId f, MorId g) const {
  auto it = mid_.find({srcO, dstO, f, g});
  if (it == mid_.end()) return std::nullopt;
  return it->second;
}

SlicedComma sliced_comma(const Functor& alpha, const Functor& beta, const Functor& proj_g) {
  if (!same_cat(alpha.dst, beta.dst) || !same_cat(proj_g.src, alpha.dst))
    fail(ErrorCode::BaseMismatch, "sliced_comma cospan mismatch");
  SlicedComma sc;
  const FinCat& X = *alpha.src;
  const FinCat& Y = *beta.src;
  const FinCat& G = *alpha.dst;
  const FinCat& B = *proj_g.dst;
  CatBuilder b(alpha.name + "↓_B" + beta.name);
  for (ObjId x = 0; x < X.n_obj; ++x)
    for (ObjId y = 0; y < Y.n_obj; ++y)
      for (MorId m : G.hom(alpha.ob(x), beta.ob(y))) {
        if (proj_g.mo(m) != B.id(proj_g.ob(alpha.ob(x)))) continue;
        ObjId o = b.add_object("(" + X.obj_name(x) + "," + Y.obj_name(y) + ")");
        sc.objs.push_back({x, y, m});
        sc.oid_[{x, y, m}] = o;
      }
  sc.mor_pair.resize(sc.objs.size());
  for (size_t o = 0; o < sc.objs.size(); ++o) {
    sc.mor_pair[o] = {X.id(sc.objs[o].c), Y.id(sc.objs[o].d)};
    sc.mid_[{(int)o, (int)o, sc.mor_pair[o].first, sc.mor_pair[o].second}] =
        static_cast<MorId>(o);
  }
  for (size_t o1 = 0; o1 < sc.objs.size(); ++o1)
    for (size_t o2 = 0; o2 < sc.objs.size(); ++o2) {
      const CommaObj& p = sc.objs[o1];
      const CommaObj& q = sc.objs[o2];
      for (MorId u : X.hom(p.c, q.c))
        for (MorId v : Y.hom(p.d, q.d)) {
          if (X.is_id(u) && Y.is_id(v)) continue;
          if (G.compose(q.m, alpha.mo(u)) != G.compose(beta.mo(v), p.m)) continue;
          MorId m = b.add_mor(static_cast<ObjId>(o1), static_cast<ObjId>(o2),
                              "(" + X.mor_name(u) + "," + Y.mor_name(v) + ")");
          sc.mor_pair.push_back({u, v});
          sc.mid_[{(int)o1, (int)o2, u, v}] = m;
        }
    }
  const FinCat& K = b.peek();
  for (MorId m1 = 0; m1 < K.n_mor(); ++m1)
    for (MorId m2 = 0; m2 < K.n_mor(); ++m2) {
      if (K.dst(m1) != K.src(m2)) continue;
      MorId u = X.compose(sc.mor_pair[m2].first, sc.mor_pair[m1].first);
      MorId v = Y.compose(sc.mor_pair[m2].second, sc.mor_pair[m1].second);
      b.set_comp(m2, m1, sc.mid_.at({K.src(m1), K.dst(m2), u, v}));
    }
  sc.cat = b.build(false);
  sc.pX.src = sc.cat;
  sc.pX.dst = alpha.src;
  sc.pY.src = sc.cat;
  sc.pY.dst = beta.src;
  sc.pX.on_obj.resize(sc.cat->n_obj);
  sc.pY.on_obj.resize(sc.cat->n_obj);
  for (size_t o = 0; o < sc.objs.size(); ++o) {
    sc.pX.on_obj[o] = sc.objs[o].c;
    sc.pY.on_obj[o] = sc.objs[o].d;
  }
  sc.pX.on_mor.resize(sc.cat->n_mor());
  sc.pY.on_mor.resize(sc.cat->n_mor());
  for (MorId m = 0; m < sc.cat->n_mor(); ++m) {
    sc.pX.on_mor[m] = sc.mor_pair[m].first;
    sc.pY.on_mor[m] = sc.mor_pair[m].second;
  }
  sc.proj = compose(proj_g, compose(alpha, sc.pX));
  return sc;
}

// ---- sliced cocartesian families ----

bool is_sliced_cocartesian(const SlicedMap& phi) {
  phi.check();
  const FinCat& E = *phi.pr_dst.src;
  const FinCat& F = *phi.map.src;
  const FinCat& B = *phi.base;
  for (MorId f = 0; f < E.n_mor(); ++f) {
    if (phi.pr_dst.mo(f) != B.id(phi.pr_dst.ob(E.src(f)))) continue;  // π-vertical only
    for (ObjId x = 0; x < F.n_obj; ++x) {
      if (phi.map.ob(x) != E.src(f)) continue;
      bool found = false;
      for (MorId k : F.from(x)) {
        if (phi.map.mo(k) != f) continue;
        if (is_cocartesian_arrow(phi.map, k)) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

SlicedLariData sliced_lari_data(const SlicedMap& phi) {
  phi.check();
  SlicedLariData d;
  d.vert_f = vertical_arrows(phi.pr_src);
  d.phi_down_e = sliced_comma(phi.map, identity_functor(phi.pr_dst.src), phi.pr_dst);
  const FinCat& F = *phi.map.src;
  const FinCat& E = *phi.pr_dst.src;
  // i0 ⋔_B φ : Vert_ξ(F) -> φ↓_B E, k ↦ (src k, φ(dst k), φ(k))
  Functor& lz = d.leibniz;
  lz.src = d.vert_f.cat;
  lz.dst = d.phi_down_e.cat;
  lz.on_obj.resize(lz.src->n_obj);
  for (ObjId o = 0; o < lz.src->n_obj; ++o) {
    MorId k = d.vert_f.obj_arrow[o];
    lz.on_obj[o] = *d.phi_down_e.obj_index(F.src(k), phi.map.ob(F.dst(k)), phi.map.mo(k));
  }
  lz.on_mor.resize(lz.src->n_mor());
  for (MorId m = 0; m < lz.src->n_mor(); ++m) {
    auto [a, bb] = d.vert_f.square[m];
    lz.on_mor[m] = *d.phi_down_e.mor_at(lz.on_obj[lz.src->src(m)], lz.on_obj[lz.src->dst(m)], a,
                                        phi.map.mo(bb));
  }
  // ι_φ : F -> φ↓_B E
  Functor& io = d.iota;
  io.src = phi.map.src;
  io.dst = d.phi_down_e.cat;
  io.on_obj.resize(F.n_obj);
  for (ObjId x = 0; x < F.n_obj; ++x)
    io.on_obj[x] = *d.phi_down_e.obj_index(x, phi.map.ob(x), E.id(phi.map.ob(x)));
  io.on_mor.resize(F.n_mor());
  for (MorId m = 0; m < F.n_mor(); ++m)
    io.on_mor[m] =
        *d.phi_down_e.mor_at(io.on_obj[F.src(m)], io.on_obj[F.dst(m)], m, phi.map.mo(m));
  d.comma_to_e = d.phi_down_e.pY;
  d.chi = find_fibered_left_adjoint(d.leibniz, d.vert_f.proj, d.phi_down_e.proj);
  d.tau = find_fibered_left_adjoint(d.iota, phi.map, d.comma_to_e);
  return d;
}

CheckReport sliced_cocart_criteria_agree(const SlicedMap& phi) {
  CheckReport rep;
  rep.name = "sliced-cocartesian";
  rep.add("elementary", is_sliced_cocartesian(phi));
  SlicedLariData d = sliced_lari_data(phi);
  rep.add("fibered-lari", d.chi.has_value() && is_fibered_lari(*d.chi));
  rep.add("fibered-left-adjoint", d.tau.has_value());
  return rep;
}

CheckReport sliced_vs_absolute_check(const SlicedMap& phi) {
  phi.check();
  if (!is_cocartesian_fibration(phi.pr_src) || !is_cocartesian_fibration(phi.pr_dst))
    fail(ErrorCode::PreconditionFailed, "sliced_vs_absolute needs cocartesian fibrations");
  if (!is_cocartesian_functor(phi.map, identity_functor(phi.base), phi.pr_src, phi.pr_dst))
    fail(ErrorCode::PreconditionFailed, "sliced_vs_absolute needs a cocartesian functor");
  CheckReport rep;
  rep.name = "sliced-vs-absolute";
  rep.add("sliced", is_sliced_cocartesian(phi));
  rep.add("absolute", is_cocartesian_fibration(phi.map));
  return rep;
}

bool sliced_comma_codomain_check(const SlicedMap& psi, const SlicedMap& phi) {
  psi.check();
  phi.check();
  if (!same_cat(psi.pr_dst.src, phi.pr_dst.src) || !same_cat(psi.base, phi.base))
    fail(ErrorCode::BaseMismatch, "sliced_comma_codomain_check cospan mismatch");
  // φ ↓_B ψ with objects (e, f, m : φe -> ψf); codomain projection lands in F
  SlicedComma k = sliced_comma(phi.map, psi.map, phi.pr_dst);
  const Functor& d1 = k.pY;
  if (!is_cocartesian_fibration(d1)) return false;
  // tautological lifts: over a ψ-vertical arrow g the identity-extension
  // square (id, g) must itself be cocartesian
  const FinCat& F = *psi.map.src;
  const FinCat& G = *psi.map.dst;
  const FinCat& B = *psi.base;
  for (size_t o = 0; o < k.objs.size(); ++o) {
    const CommaObj& w = k.objs[o];
    for (MorId g : F.from(w.d)) {
      if (psi.pr_src.mo(g) != B.id(psi.pr_src.ob(F.src(g)))) continue;
      MorId m2 = G.compose(psi.map.mo(g), w.m);
      auto target = k.obj_index(w.c, F.dst(g), m2);
      if (!target) return false;
      auto lift = k.mor_at(static_cast<ObjId>(o), *target, phi.map.src->id(w.c), g);
      if (!lift) return false;
      if (!is_cocartesian_arrow(d1, *lift)) return false;
    }
  }
  return true;
}

// ---- cocartesian fibrations in cartesian fibrations ----

bool is_cocart_in_cart(const SlicedMap& phi) {
  phi.check();
  return is_cartesian_fibration(phi.pr_src) && is_cartesian_fibration(phi.pr_dst) &&
         is_cartesian_functor(phi.map, identity_functor(phi.base), phi.pr_src, phi.pr_dst) &&
         is_sliced_cocartesian(phi);
}

CheckReport cocart_in_cart_criteria_agree(const SlicedMap& phi) {
  phi.check();
  if (!is_cocart_in_cart(phi))
    fail(ErrorCode::PreconditionFailed,
         "cocart_in_cart_criteria_agree needs a cocartesian fibration in cartesian fibrations");
  const FinCat& E = *phi.pr_dst.src;
  const FinCat& F = *phi.map.src;
  const FinCat& B = *phi.base;
  CheckReport rep;
  rep.name = "cocart-in-cart";

  SlicedLariData d = sliced_lari_data(phi);
  // (i) the lifting functor χ_B : φ↓_B E -> Vert_ξ(F) is a cartesian functor
  bool ci = d.chi.has_value() && is_fibered_lari(*d.chi) &&
            is_cartesian_functor(d.chi->adj.left, identity_functor(phi.base), d.phi_down_e.proj,
                                 d.vert_f.proj);
  rep.add("lifting-functor-cartesian", ci);
  // (ii) the transport functor τ_B : φ↓_B E -> F is a cartesian functor
  bool cii = d.tau.has_value() &&
             is_cartesian_functor(d.tau->adj.left, identity_functor(phi.base), d.phi_down_e.proj,
                                  phi.pr_src);
  rep.add("transport-functor-cartesian", cii);

  // (iii)/(iv): filler conditions on the abbreviation ledger
  bool ciii = true, civ = true;
  for (MorId f = 0; f < E.n_mor() && (ciii || civ); ++f) {
    if (phi.pr_dst.mo(f) != B.id(phi.pr_dst.ob(E.src(f)))) continue;  // vertical f : e' -> e
    ObjId e1 = E.src(f), e = E.dst(f);
    ObjId bb = phi.pr_dst.ob(e);
    for (MorId v : B.to(bb)) {
      for (ObjId x = 0; x < F.n_obj; ++x) {
        if (phi.map.ob(x) != e1) continue;
        // m : x -> f_! x, the φ-cocartesian lift of f
        auto m = cocart_lift_over(phi.map, f, x);
        if (!m) {
          ciii = civ = false;
          break;
        }
        ObjId fx = F.dst(*m);
        // k := ξ-cartesian lift of v at x; g := φ(k) is π-cartesian
        auto k = cart_lift_over(phi.pr_src, v, x);
        auto k2 = cart_lift_over(phi.pr_src, v, fx);
        if (!k || !k2) {
          ciii = civ = false;
          break;
        }
        MorId g = phi.map.mo(*k);
        MorId f1 = phi.map.mo(*k2);
        // g' : v* e' -> v* e vertical with f1 ∘ g' = f ∘ g
        auto g1 = cart_fill(phi.pr_dst, f1, E.compose(f, g), B.id(B.src(v)));
        if (!g1) {
          ciii = civ = false;
          break;
        }
        auto m2 = cocart_lift_over(phi.map, *g1, F.src(*k));
        if (!m2) {
          ciii = civ = false;
          break;
        }
        MorId mk = F.compose(*m, *k);
        auto k1 = cocart_fill(phi.map, *m2, mk, f1);
        auto m3 = cart_fill(phi.map, *k2, mk, *g1);
        if (!k1 || !m3) {
          ciii = civ = false;
          break;
        }
        // (iii): r vertical with k2 ∘ r = k1, and r invertible
        auto r = cart_fill(phi.map, *k2, *k1, E.id(E.src(f1)));
        if (!r || !F.is_iso(*r)) ciii = false;
        // (iv): r' vertical with r' ∘ m2 = m3, and r' invertible
        auto r2 = cocart_fill(phi.map, *m2, *m3, E.id(E.src(f1)));
        if (!r2 || !F.is_iso(*r2)) civ = false;
      }
    }
  }
  rep.add("cartesian-filler-iso", ciii);
  rep.add("cocartesian-filler-iso", civ);
  return rep;
}

// ---- products commute with sliced commas ----

bool prod_comma_commutation_check(const std::vector<SlicedCospan>& data) {
  // left side: product of the sliced commas; right side: sliced comma of the
  // product cospan over the product base
  if (data.empty()) return true;  // both sides are the empty product
  for (const SlicedCospan& c : data) {
    c.psi.check();
    c.phi.check();
    if (!same_cat(c.psi.pr_dst.src, c.phi.pr_dst.src))
      fail(ErrorCode::BaseMismatch, "cospan legs land in different categories");
  }
  std::vector<CatPtr> fs, es, gs;
  std::vector<Functor> gprojs, psis, phis;
  for (const SlicedCospan& c : data) {
    fs.push_back(c.psi.map.src);
    es.push_back(c.phi.map.src);
    gs.push_back(c.psi.map.dst);
    gprojs.push_back(c.psi.pr_dst);
    psis.push_back(c.psi.map);
    phis.push_back(c.phi.map);
  }
  // right side: sliced comma of the products over the product base
  CatPtr accF = fs[0], accE = es[0], accG = gs[0];
  Functor psiP = psis[0], phiP = phis[0], gproj = gprojs[0];
  for (size_t i = 1; i < data.size(); ++i) {
    ProductCat pf = product(accF, fs[i]);
    ProductCat pe = product(accE, es[i]);
    ProductCat pg = product(accG, gs[i]);
    ProductCat pb = product(gproj.dst, gprojs[i].dst);
    psiP = pg.pairing(compose(psiP, pf.proj1), compose(psis[i], pf.proj2));
    phiP = pg.pairing(compose(phiP, pe.proj1), compose(phis[i], pe.proj2));
    gproj = pb.pairing(compose(gproj, pg.proj1), compose(gprojs[i], pg.proj2));
    accF = pf.cat;
    accE = pe.cat;
    accG = pg.cat;
  }
  SlicedComma rhs = sliced_comma(psiP, phiP, gproj);
  // left side: product of the per-index sliced commas
  CatPtr lhs;
  Functor lhs_proj;
  {
    SlicedComma k0 = sliced_comma(psis[0], phis[0], gprojs[0]);
    lhs = k0.cat;
    lhs_proj = k0.proj;
    for (size_t i = 1; i < data.size(); ++i) {
      SlicedComma ki = sliced_comma(psis[i], phis[i], gprojs[i]);
      ProductCat p = product(lhs, ki.cat);
      ProductCat pb = product(lhs_proj.dst, gprojs[i].dst);
      lhs_proj = pb.pairing(compose(lhs_proj, p.proj1), compose(ki.proj, p.proj2));
      lhs = p.cat;
    }
  }
  auto iso = find_isomorphism_over(lhs_proj, rhs.proj);
  return iso.has_value();
}

}  // namespace fibcheck
