#include "fibcheck/yoneda.hpp"

#include "fibcheck/catalog.hpp"

namespace fibcheck {

std::vector<Functor> enumerate_sections(const TwoSidedInstance& inst, long cap) {
  return enumerate_lifts(inst.phi, identity_functor(inst.ab.cat), cap);
}

bool is_ts_cartesian_section(const TwoSidedInstance& inst, const Functor& s) {
  Functor xi = inst.xi(), pi = inst.pi();
  const FinCat& A = *inst.a;
  const FinCat& B = *inst.b;
  for (MorId u = 0; u < A.n_mor(); ++u)
    for (ObjId b = 0; b < B.n_obj; ++b)
      if (!is_cocartesian_arrow(xi, s.mo(inst.ab.pair_mor(u, B.id(b))))) return false;
  for (ObjId a = 0; a < A.n_obj; ++a)
    for (MorId v = 0; v < B.n_mor(); ++v)
      if (!is_cartesian_arrow(pi, s.mo(inst.ab.pair_mor(A.id(a), v)))) return false;
  return true;
}

namespace {

MorId unique_from(const FinCat& c, ObjId x, ObjId y) {
  const auto& h = c.hom(x, y);
  if (h.size() != 1) fail(ErrorCode::PreconditionFailed, "expected a unique arrow");
  return h[0];
}

}  // namespace

Functor yon(const TwoSidedInstance& inst, ObjId a, ObjId b, ObjId d) {
  const FinCat& A = *inst.a;
  const FinCat& B = *inst.b;
  const FinCat& E = *inst.total;
  Functor xi = inst.xi(), pi = inst.pi();
  for (ObjId x = 0; x < A.n_obj; ++x)
    if (A.hom(a, x).size() != 1) fail(ErrorCode::NoInitial, "yon: a is not initial");
  for (ObjId y = 0; y < B.n_obj; ++y)
    if (B.hom(y, b).size() != 1) fail(ErrorCode::NoTerminal, "yon: b is not terminal");
  if (xi.ob(d) != a || pi.ob(d) != b) fail(ErrorCode::UnknownObject, "yon: d not in the bifiber");

  // cartesian transports along (id_a, !_y), then cocartesian transports
  // along (∅_x, id_y); all anchored over exact arrows of A×B
  std::vector<MorId> t(B.n_obj);      // t[y] : d_y -> d over (id_a, !_y)
  std::vector<ObjId> dy(B.n_obj);
  for (ObjId y = 0; y < B.n_obj; ++y) {
    auto w = cart_lift_over(inst.phi, inst.ab.pair_mor(A.id(a), unique_from(B, y, b)), d);
    if (!w) fail(ErrorCode::MissingLift, "yon: cartesian transport missing");
    t[y] = *w;
    dy[y] = E.src(*w);
  }
  Functor s;
  s.src = inst.ab.cat;
  s.dst = inst.total;
  s.on_obj.assign(inst.ab.cat->n_obj, -1);
  std::vector<MorId> c(static_cast<size_t>(A.n_obj) * B.n_obj);  // cocart arrows d_y -> s(x,y)
  for (ObjId x = 0; x < A.n_obj; ++x)
    for (ObjId y = 0; y < B.n_obj; ++y) {
      auto w = cocart_lift_over(inst.phi, inst.ab.pair_mor(unique_from(A, a, x), B.id(y)), dy[y]);
      if (!w) fail(ErrorCode::MissingLift, "yon: cocartesian transport missing");
      c[static_cast<size_t>(x) * B.n_obj + y] = *w;
      s.on_obj[inst.ab.pair_obj(x, y)] = E.dst(*w);
    }
  s.on_mor.assign(inst.ab.cat->n_mor(), -1);
  for (MorId mm = 0; mm < inst.ab.cat->n_mor(); ++mm) {
    auto [m, n] = inst.ab.unpair_mor(mm);
    ObjId x = A.src(m), x2 = A.dst(m);
    ObjId y = B.src(n), y2 = B.dst(n);
    auto delta = cart_fill(inst.phi, t[y2], t[y], inst.ab.pair_mor(A.id(a), n));
    if (!delta) fail(ErrorCode::MissingLift, "yon: transport comparison missing");
    MorId h = E.compose(c[static_cast<size_t>(x2) * B.n_obj + y2], *delta);
    auto g = cocart_fill(inst.phi, c[static_cast<size_t>(x) * B.n_obj + y], h,
                         inst.ab.pair_mor(m, n));
    if (!g) fail(ErrorCode::MissingLift, "yon: functorial action missing");
    s.on_mor[mm] = *g;
  }
  s.check();
  if (!equal_functor(compose(inst.phi, s), identity_functor(inst.ab.cat)))
    fail(ErrorCode::MissingLift, "yon: result is not a section");
  return s;
}

ObjId ev(const TwoSidedInstance& inst, const Functor& s, ObjId a, ObjId b) {
  return s.ob(inst.ab.pair_obj(a, b));
}

namespace {

struct YonedaAtReps {
  bool yon_cartesian = true;
  bool ev_yon_identity = true;
  bool yon_ev_iso = true;
  bool coherence = true;
};

YonedaAtReps yoneda_at(const TwoSidedInstance& inst, ObjId a, ObjId b) {
  YonedaAtReps r;
  const FinCat& A = *inst.a;
  const FinCat& B = *inst.b;
  const FinCat& E = *inst.total;
  Functor xi = inst.xi(), pi = inst.pi();
  FiberCat bf = bifiber(inst, a, b);
  // (1), (2)
  std::vector<Functor> yons;
  for (ObjId i = 0; i < bf.cat->n_obj; ++i) {
    ObjId d = bf.objs[i];
    Functor s = yon(inst, a, b, d);
    yons.push_back(s);
    if (!is_ts_cartesian_section(inst, s)) r.yon_cartesian = false;
    if (ev(inst, s, a, b) != d) r.ev_yon_identity = false;
  }
  // (3), (4) over all two-sided cartesian sections
  std::vector<Functor> sections = enumerate_sections(inst);
  for (const Functor& s : sections) {
    if (!is_ts_cartesian_section(inst, s)) continue;
    ObjId d = ev(inst, s, a, b);
    Functor ys = yon(inst, a, b, d);
    // coherence comparisons q_y : (!_y)* s(a,b) -> s(a,y)
    std::vector<MorId> q(B.n_obj);
    for (ObjId y = 0; y < B.n_obj; ++y) {
      MorId bang = B.hom(y, b)[0];
      MorId h = s.mo(inst.ab.pair_mor(A.id(a), bang));
      auto f = cart_lift_over(inst.phi, inst.ab.pair_mor(A.id(a), bang), d);
      if (!f) {
        r.coherence = false;
        continue;
      }
      auto qq = cart_fill(inst.phi, h, *f, inst.ab.pair_mor(A.id(a), B.id(y)));
      if (!qq || !E.is_iso(*qq)) {
        r.coherence = false;
        continue;
      }
      q[y] = *qq;
    }
    for (ObjId x = 0; x < A.n_obj; ++x) {
      MorId empt = A.hom(a, x)[0];
      MorId hh = s.mo(inst.ab.pair_mor(empt, B.id(b)));
      auto f = cocart_lift_over(inst.phi, inst.ab.pair_mor(empt, B.id(b)), d);
      if (!f) {
        r.coherence = false;
        continue;
      }
      auto pp = cocart_fill(inst.phi, *f, hh, inst.ab.pair_mor(A.id(x), B.id(b)));
      if (!pp || !E.is_iso(*pp)) r.coherence = false;
    }
    if (!r.coherence) continue;
    // vertical natural iso gamma : yon(ev s) ⇒ s from the proof's fillers
    NatTrans gamma;
    gamma.src = ys;
    gamma.dst = s;
    gamma.component.assign(inst.ab.cat->n_obj, -1);
    bool ok = true;
    for (ObjId x = 0; x < A.n_obj && ok; ++x)
      for (ObjId y = 0; y < B.n_obj && ok; ++y) {
        MorId bang = B.hom(y, b)[0];
        MorId empt = A.hom(a, x)[0];
        auto ty = cart_lift_over(inst.phi, inst.ab.pair_mor(A.id(a), bang), d);
        auto cxy = cocart_lift_over(inst.phi, inst.ab.pair_mor(empt, B.id(y)), E.src(*ty));
        MorId target = E.compose(s.mo(inst.ab.pair_mor(empt, B.id(y))), q[y]);
        auto comp = cocart_fill(inst.phi, *cxy, target, inst.ab.pair_mor(A.id(x), B.id(y)));
        if (!comp || !E.is_iso(*comp)) {
          ok = false;
          break;
        }
        gamma.component[inst.ab.pair_obj(x, y)] = *comp;
      }
    if (!ok || !gamma.well_formed()) r.yon_ev_iso = false;
  }
  return r;
}

}  // namespace

CheckReport yoneda_check(const TwoSidedInstance& inst) {
  Extremals ea = extremal_objects(inst.a);
  Extremals eb = extremal_objects(inst.b);
  if (ea.initials.empty()) fail(ErrorCode::NoInitial, "yoneda_check: A has no initial object");
  if (eb.terminals.empty()) fail(ErrorCode::NoTerminal, "yoneda_check: B has no terminal object");
  YonedaAtReps acc;
  for (ObjId a : ea.initials)
    for (ObjId b : eb.terminals) {
      YonedaAtReps r = yoneda_at(inst, a, b);
      acc.yon_cartesian &= r.yon_cartesian;
      acc.ev_yon_identity &= r.ev_yon_identity;
      acc.yon_ev_iso &= r.yon_ev_iso;
      acc.coherence &= r.coherence;
    }
  CheckReport rep;
  rep.name = "yoneda";
  rep.add("yon-two-sided-cartesian", acc.yon_cartesian);
  rep.add("ev-yon-identity", acc.ev_yon_identity);
  rep.add("yon-ev-vertical-iso", acc.yon_ev_iso);
  rep.add("transport-coherence", acc.coherence);
  return rep;
}

CheckReport dependent_yoneda_check(const TwoSidedInstance& inst, ObjId a, ObjId b) {
  if (a < 0 || a >= inst.a->n_obj || b < 0 || b >= inst.b->n_obj)
    fail(ErrorCode::UnknownObject, "dependent_yoneda_check: no such objects");
  CommaCat ca = comma(pick(inst.a, a), identity_functor(inst.a));  // a ↓ A
  CommaCat cb = comma(identity_functor(inst.b), pick(inst.b, b));  // B ↓ b
  // id_a must be initial in a↓A and id_b terminal in B↓b
  ObjId ida = *ca.obj_index(0, a, inst.a->id(a));
  ObjId idb = *cb.obj_index(b, 0, inst.b->id(b));
  Extremals ea = extremal_objects(ca.cat);
  Extremals eb = extremal_objects(cb.cat);
  bool located = false, located2 = false;
  for (ObjId i : ea.initials) located |= (i == ida);
  for (ObjId i : eb.terminals) located2 |= (i == idb);
  TwoSidedInstance pulled = pullback_two_sided(inst, ca.pG, cb.pF).inst;
  CheckReport rep = yoneda_check(pulled);
  rep.name = "dependent-yoneda";
  rep.add("identity-extremal-located", located && located2);
  return rep;
}

}  // namespace fibcheck
