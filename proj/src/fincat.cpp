#include "fibcheck/fincat.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace fibcheck {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::MissingComposite: return "MissingComposite";
    case ErrorCode::NonAssociative: return "NonAssociative";
    case ErrorCode::UnitLawViolation: return "UnitLawViolation";
    case ErrorCode::DanglingId: return "DanglingId";
    case ErrorCode::BaseMismatch: return "BaseMismatch";
    case ErrorCode::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::UnknownObject: return "UnknownObject";
    case ErrorCode::UnknownMorphism: return "UnknownMorphism";
    case ErrorCode::NotOverBase: return "NotOverBase";
    case ErrorCode::NotOverSource: return "NotOverSource";
    case ErrorCode::SquareMismatch: return "SquareMismatch";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::NoInitial: return "NoInitial";
    case ErrorCode::NoTerminal: return "NoTerminal";
    case ErrorCode::MissingLift: return "MissingLift";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Error";
}

// hard guard against runaway intermediate constructions
static constexpr long kHardMorCap = 4000;

static void guard_size(long n_obj, long n_mor, const std::string& what) {
  if (n_mor > kHardMorCap || n_obj > kHardMorCap)
    fail(ErrorCode::SizeCapExceeded,
         what + ": " + std::to_string(n_obj) + " objects / " + std::to_string(n_mor) +
             " morphisms exceeds hard cap " + std::to_string(kHardMorCap));
}

MorId FinCat::compose(MorId g, MorId f) const {
  MorId r = comp[static_cast<size_t>(g) * mors.size() + f];
  if (r < 0)
    fail(ErrorCode::MissingComposite,
         name + ": compose(" + mor_name(g) + ", " + mor_name(f) + ") undefined");
  return r;
}

std::string FinCat::obj_name(ObjId x) const {
  if (x < static_cast<int>(obj_names.size()) && !obj_names[x].empty()) return obj_names[x];
  return "o" + std::to_string(x);
}

std::string FinCat::mor_name(MorId f) const {
  if (f < static_cast<int>(mor_names.size()) && !mor_names[f].empty()) return mor_names[f];
  if (is_id(f)) return "id_" + obj_name(f);
  return "m" + std::to_string(f);
}

void FinCat::check_laws() const {
  const int m = n_mor();
  for (MorId f = 0; f < m; ++f) {
    for (MorId g = 0; g < m; ++g) {
      MorId r = comp[static_cast<size_t>(g) * m + f];
      if (composable(g, f)) {
        if (r < 0)
          fail(ErrorCode::MissingComposite,
               name + ": no composite for (" + mor_name(g) + " ∘ " + mor_name(f) + ")");
        if (src(r) != src(f) || dst(r) != dst(g))
          fail(ErrorCode::MissingComposite,
               name + ": composite " + mor_name(g) + " ∘ " + mor_name(f) + " has wrong boundary");
      } else if (r >= 0) {
        fail(ErrorCode::MissingComposite,
             name + ": composite declared for non-composable pair (" + mor_name(g) + ", " +
                 mor_name(f) + ")");
      }
    }
  }
  for (MorId f = 0; f < m; ++f) {
    if (comp[static_cast<size_t>(id(dst(f))) * m + f] != f ||
        comp[static_cast<size_t>(f) * m + id(src(f))] != f)
      fail(ErrorCode::UnitLawViolation, name + ": unit law fails at " + mor_name(f));
  }
  for (MorId f = 0; f < m; ++f)
    for (MorId g : from(dst(f)))
      for (MorId h : from(dst(g))) {
        MorId gf = comp[static_cast<size_t>(g) * m + f];
        MorId hg = comp[static_cast<size_t>(h) * m + g];
        if (comp[static_cast<size_t>(h) * m + gf] != comp[static_cast<size_t>(hg) * m + f])
          fail(ErrorCode::NonAssociative,
               name + ": associativity fails on (" + mor_name(h) + ", " + mor_name(g) + ", " +
                   mor_name(f) + ")");
      }
}

void FinCat::seal() {
  const int m = n_mor();
  hom_.assign(static_cast<size_t>(n_obj) * n_obj, {});
  from_.assign(n_obj, {});
  to_.assign(n_obj, {});
  for (MorId f = 0; f < m; ++f) {
    hom_[static_cast<size_t>(src(f)) * n_obj + dst(f)].push_back(f);
    from_[src(f)].push_back(f);
    to_[dst(f)].push_back(f);
  }
  inverse_.assign(m, -1);
  for (MorId f = 0; f < m; ++f) {
    if (inverse_[f] >= 0) continue;
    for (MorId g : hom(dst(f), src(f))) {
      if (comp[static_cast<size_t>(g) * m + f] == id(src(f)) &&
          comp[static_cast<size_t>(f) * m + g] == id(dst(f))) {
        inverse_[f] = g;
        inverse_[g] = f;
        break;
      }
    }
  }
}

bool same_cat(const FinCat& a, const FinCat& b) {
  if (&a == &b) return true;
  return a.n_obj == b.n_obj && a.mors.size() == b.mors.size() &&
         std::equal(a.mors.begin(), a.mors.end(), b.mors.begin(),
                    [](const Mor& x, const Mor& y) { return x.src == y.src && x.dst == y.dst; }) &&
         a.comp == b.comp;
}

CatBuilder::CatBuilder(std::string name) { cat_.name = std::move(name); }

ObjId CatBuilder::add_object(const std::string& name) {
  if (cat_.n_mor() != cat_.n_obj)
    fail(ErrorCode::PreconditionFailed, "add all objects before morphisms");
  ObjId x = cat_.n_obj++;
  cat_.mors.push_back({x, x});
  cat_.obj_names.push_back(name);
  cat_.mor_names.push_back(name.empty() ? "" : "id_" + name);
  comp_rows_.emplace_back();
  return x;
}

MorId CatBuilder::add_mor(ObjId src, ObjId dst, const std::string& name) {
  if (src >= cat_.n_obj || dst >= cat_.n_obj || src < 0 || dst < 0)
    fail(ErrorCode::UnknownObject, "morphism endpoint out of range");
  MorId f = cat_.n_mor();
  cat_.mors.push_back({src, dst});
  cat_.mor_names.push_back(name);
  comp_rows_.emplace_back();
  guard_size(cat_.n_obj, cat_.n_mor(), cat_.name.empty() ? "category" : cat_.name);
  return f;
}

void CatBuilder::set_comp(MorId g, MorId f, MorId gf) {
  auto [it, fresh] = comp_rows_[g].emplace(f, gf);
  if (!fresh && it->second != gf)
    fail(ErrorCode::NonAssociative,
         cat_.name + ": conflicting composites declared for (" + cat_.mor_name(g) + " ∘ " +
             cat_.mor_name(f) + ")");
}

std::optional<MorId> CatBuilder::comp_of(MorId g, MorId f) const {
  auto it = comp_rows_[g].find(f);
  if (it == comp_rows_[g].end()) return std::nullopt;
  return it->second;
}

CatPtr CatBuilder::build(bool validate) {
  guard_size(cat_.n_obj, cat_.n_mor(), cat_.name.empty() ? "category" : cat_.name);
  const int m = cat_.n_mor();
  cat_.comp.assign(static_cast<size_t>(m) * m, -1);
  for (MorId g = 0; g < m; ++g)
    for (auto [f, gf] : comp_rows_[g]) cat_.comp[static_cast<size_t>(g) * m + f] = gf;
  for (MorId f = 0; f < m; ++f) {
    MorId lid = cat_.id(cat_.dst(f)), rid = cat_.id(cat_.src(f));
    int32_t& l = cat_.comp[static_cast<size_t>(lid) * m + f];
    int32_t& r = cat_.comp[static_cast<size_t>(f) * m + rid];
    if (l >= 0 && l != f)
      fail(ErrorCode::UnitLawViolation,
           cat_.name + ": declared id ∘ " + cat_.mor_name(f) + " ≠ " + cat_.mor_name(f));
    if (r >= 0 && r != f)
      fail(ErrorCode::UnitLawViolation,
           cat_.name + ": declared " + cat_.mor_name(f) + " ∘ id ≠ " + cat_.mor_name(f));
    l = f;
    r = f;
  }
  auto out = std::make_shared<FinCat>(std::move(cat_));
  out->seal();
  if (validate) out->check_laws();
  return out;
}

void Functor::check() const {
  if (static_cast<int>(on_obj.size()) != src->n_obj ||
      static_cast<int>(on_mor.size()) != src->n_mor())
    fail(ErrorCode::BoundaryMismatch, "functor tables have wrong size");
  for (ObjId x = 0; x < src->n_obj; ++x)
    if (on_obj[x] < 0 || on_obj[x] >= dst->n_obj)
      fail(ErrorCode::UnknownObject, "functor object image out of range");
  for (MorId f = 0; f < src->n_mor(); ++f) {
    if (dst->src(on_mor[f]) != on_obj[src->src(f)] || dst->dst(on_mor[f]) != on_obj[src->dst(f)])
      fail(ErrorCode::BoundaryMismatch,
           "functor does not preserve boundaries at " + src->mor_name(f));
  }
  for (ObjId x = 0; x < src->n_obj; ++x)
    if (on_mor[src->id(x)] != dst->id(on_obj[x]))
      fail(ErrorCode::BoundaryMismatch, "functor does not preserve identities");
  for (MorId f = 0; f < src->n_mor(); ++f)
    for (MorId g : src->from(src->dst(f)))
      if (on_mor[src->compose(g, f)] != dst->compose(on_mor[g], on_mor[f]))
        fail(ErrorCode::BoundaryMismatch, "functor does not preserve composition at (" +
                                              src->mor_name(g) + ", " + src->mor_name(f) + ")");
}

Functor identity_functor(CatPtr c) {
  Functor f;
  f.src = c;
  f.dst = c;
  f.on_obj.resize(c->n_obj);
  std::iota(f.on_obj.begin(), f.on_obj.end(), 0);
  f.on_mor.resize(c->n_mor());
  std::iota(f.on_mor.begin(), f.on_mor.end(), 0);
  f.name = "id";
  return f;
}

Functor compose(const Functor& g, const Functor& f) {
  if (!same_cat(f.dst, g.src)) fail(ErrorCode::BoundaryMismatch, "functor composition mismatch");
  Functor h;
  h.src = f.src;
  h.dst = g.dst;
  h.on_obj.resize(f.on_obj.size());
  h.on_mor.resize(f.on_mor.size());
  for (size_t i = 0; i < f.on_obj.size(); ++i) h.on_obj[i] = g.on_obj[f.on_obj[i]];
  for (size_t i = 0; i < f.on_mor.size(); ++i) h.on_mor[i] = g.on_mor[f.on_mor[i]];
  return h;
}

bool equal_functor(const Functor& f, const Functor& g) {
  return same_cat(f.src, g.src) && same_cat(f.dst, g.dst) && f.on_obj == g.on_obj &&
         f.on_mor == g.on_mor;
}

bool NatTrans::well_formed() const {
  if (!same_cat(src.src, dst.src) || !same_cat(src.dst, dst.dst)) return false;
  const FinCat& c = *src.src;
  const FinCat& d = *src.dst;
  if (static_cast<int>(component.size()) != c.n_obj) return false;
  for (ObjId x = 0; x < c.n_obj; ++x) {
    MorId a = component[x];
    if (a < 0 || a >= d.n_mor()) return false;
    if (d.src(a) != src.ob(x) || d.dst(a) != dst.ob(x)) return false;
  }
  for (MorId f = 0; f < c.n_mor(); ++f) {
    ObjId x = c.src(f), y = c.dst(f);
    if (d.compose(dst.mo(f), component[x]) != d.compose(component[y], src.mo(f))) return false;
  }
  return true;
}

void NatTrans::check() const {
  if (!well_formed()) fail(ErrorCode::BoundaryMismatch, "ill-formed natural transformation");
}

NatTrans identity_nat(const Functor& f) {
  NatTrans a;
  a.src = f;
  a.dst = f;
  a.component.resize(f.src->n_obj);
  for (ObjId x = 0; x < f.src->n_obj; ++x) a.component[x] = f.dst->id(f.ob(x));
  return a;
}

NatTrans nat_vcompose(const NatTrans& b, const NatTrans& a) {
  if (!equal_functor(a.dst, b.src)) fail(ErrorCode::BoundaryMismatch, "vcompose boundary mismatch");
  NatTrans r;
  r.src = a.src;
  r.dst = b.dst;
  r.component.resize(a.component.size());
  for (size_t x = 0; x < a.component.size(); ++x)
    r.component[x] = a.src.dst->compose(b.component[x], a.component[x]);
  return r;
}

NatTrans whisker_left(const Functor& f, const NatTrans& a) {
  if (!same_cat(a.src.dst, f.src)) fail(ErrorCode::BoundaryMismatch, "whisker_left mismatch");
  NatTrans r;
  r.src = compose(f, a.src);
  r.dst = compose(f, a.dst);
  r.component.resize(a.component.size());
  for (size_t x = 0; x < a.component.size(); ++x) r.component[x] = f.mo(a.component[x]);
  return r;
}

NatTrans whisker_right(const NatTrans& a, const Functor& f) {
  if (!same_cat(f.dst, a.src.src)) fail(ErrorCode::BoundaryMismatch, "whisker_right mismatch");
  NatTrans r;
  r.src = compose(a.src, f);
  r.dst = compose(a.dst, f);
  r.component.resize(f.src->n_obj);
  for (ObjId x = 0; x < f.src->n_obj; ++x) r.component[x] = a.component[f.ob(x)];
  return r;
}

bool is_natural_iso(const NatTrans& a) {
  if (!a.well_formed()) return false;
  for (MorId m : a.component)
    if (!a.src.dst->is_iso(m)) return false;
  return true;
}

// ---- product ----

ObjId ProductCat::pair_obj(ObjId c, ObjId d) const { return c * nd + d; }
std::pair<ObjId, ObjId> ProductCat::unpair_obj(ObjId o) const { return {o / nd, o % nd}; }
MorId ProductCat::pair_mor(MorId f, MorId g) const { return mor_index_[f][g]; }

Functor ProductCat::pairing(const Functor& f, const Functor& g) const {
  if (!same_cat(f.src, g.src)) fail(ErrorCode::BoundaryMismatch, "pairing domain mismatch");
  Functor h;
  h.src = f.src;
  h.dst = cat;
  h.on_obj.resize(f.src->n_obj);
  h.on_mor.resize(f.src->n_mor());
  for (ObjId x = 0; x < f.src->n_obj; ++x) h.on_obj[x] = pair_obj(f.ob(x), g.ob(x));
  for (MorId m = 0; m < f.src->n_mor(); ++m) h.on_mor[m] = pair_mor(f.mo(m), g.mo(m));
  return h;
}

ProductCat product(CatPtr c, CatPtr d) {
  ProductCat p;
  p.nd = d->n_obj;
  guard_size(static_cast<long>(c->n_obj) * d->n_obj, static_cast<long>(c->n_mor()) * d->n_mor(),
             "product");
  CatBuilder b(c->name + "×" + d->name);
  for (ObjId x = 0; x < c->n_obj; ++x)
    for (ObjId y = 0; y < d->n_obj; ++y)
      b.add_object("(" + c->obj_name(x) + "," + d->obj_name(y) + ")");
  p.mor_index_.assign(c->n_mor(), std::vector<MorId>(d->n_mor(), -1));
  p.mor_code_.resize(static_cast<size_t>(c->n_obj) * d->n_obj);
  for (ObjId x = 0; x < c->n_obj; ++x)
    for (ObjId y = 0; y < d->n_obj; ++y) {
      p.mor_index_[c->id(x)][d->id(y)] = p.pair_obj(x, y);
      p.mor_code_[p.pair_obj(x, y)] = {c->id(x), d->id(y)};
    }
  for (MorId f = 0; f < c->n_mor(); ++f)
    for (MorId g = 0; g < d->n_mor(); ++g) {
      if (c->is_id(f) && d->is_id(g)) continue;
      MorId m = b.add_mor(p.pair_obj(c->src(f), d->src(g)), p.pair_obj(c->dst(f), d->dst(g)),
                          "(" + c->mor_name(f) + "," + d->mor_name(g) + ")");
      p.mor_index_[f][g] = m;
      p.mor_code_.push_back({f, g});
    }
  for (MorId f = 0; f < c->n_mor(); ++f)
    for (MorId g = 0; g < d->n_mor(); ++g)
      for (MorId f2 : c->from(c->dst(f)))
        for (MorId g2 : d->from(d->dst(g))) {
          MorId a = p.mor_index_[f2][g2], bb = p.mor_index_[f][g];
          MorId r = p.mor_index_[c->compose(f2, f)][d->compose(g2, g)];
          b.set_comp(a, bb, r);
        }
  p.cat = b.build(false);
  p.proj1.src = p.cat;
  p.proj1.dst = c;
  p.proj2.src = p.cat;
  p.proj2.dst = d;
  p.proj1.on_obj.resize(p.cat->n_obj);
  p.proj2.on_obj.resize(p.cat->n_obj);
  for (ObjId o = 0; o < p.cat->n_obj; ++o) {
    auto [x, y] = p.unpair_obj(o);
    p.proj1.on_obj[o] = x;
    p.proj2.on_obj[o] = y;
  }
  p.proj1.on_mor.resize(p.cat->n_mor());
  p.proj2.on_mor.resize(p.cat->n_mor());
  for (MorId m = 0; m < p.cat->n_mor(); ++m) {
    p.proj1.on_mor[m] = p.mor_code_[m].first;
    p.proj2.on_mor[m] = p.mor_code_[m].second;
  }
  p.proj1.name = "p";
  p.proj2.name = "q";
  return p;
}

CatPtr opposite(CatPtr c) {
  FinCat o;
  o.name = c->name + "^op";
  o.n_obj = c->n_obj;
  o.obj_names = c->obj_names;
  o.mor_names = c->mor_names;
  o.mors.resize(c->n_mor());
  const int m = c->n_mor();
  for (MorId f = 0; f < m; ++f) o.mors[f] = {c->dst(f), c->src(f)};
  o.comp.assign(static_cast<size_t>(m) * m, -1);
  for (MorId f = 0; f < m; ++f)
    for (MorId g = 0; g < m; ++g)
      o.comp[static_cast<size_t>(g) * m + f] = c->comp[static_cast<size_t>(f) * m + g];
  auto out = std::make_shared<FinCat>(std::move(o));
  out->seal();
  return out;
}

Functor opposite_functor(const Functor& f) {
  Functor g = f;
  g.src = opposite(f.src);
  g.dst = opposite(f.dst);
  return g;
}

NatTrans opposite_nat(const NatTrans& a) {
  NatTrans r;
  r.src = opposite_functor(a.dst);
  r.dst = opposite_functor(a.src);
  r.component = a.component;
  return r;
}

// ---- arrow category ----

std::optional<MorId> ArrowCat::mor_at(ObjId srcO, ObjId dstO, MorId a, MorId b) const {
  auto it = mor_at_.find({srcO, dstO, a, b});
  if (it == mor_at_.end()) return std::nullopt;
  return it->second;
}

std::optional<MorId> ArrowCat::square_mor(MorId a, MorId b) const {
  // (a,b) plus the endpoints determine the square; endpoints of a square
  // between arrow-objects are not determined by (a,b) alone, so this lookup
  // is only valid together with a src object; kept for convenience where the
  // caller knows the pair is unambiguous.
  auto it = square_index_.find({a, b});
  if (it == square_index_.end()) return std::nullopt;
  return it->second;
}

ArrowCat arrow_category(CatPtr c) {
  ArrowCat a;
  CatBuilder b(c->name + "^Δ¹");
  a.obj_arrow.resize(c->n_mor());
  a.arrow_obj.resize(c->n_mor());
  for (MorId f = 0; f < c->n_mor(); ++f) {
    ObjId o = b.add_object(c->mor_name(f));
    a.obj_arrow[o] = f;
    a.arrow_obj[f] = o;
  }
  std::map<std::array<int, 4>, MorId> sq;  // (srcObj, dstObj, u, v) -> morphism
  for (MorId f = 0; f < c->n_mor(); ++f) {
    auto u = c->id(c->src(f));
    auto v = c->id(c->dst(f));
    a.square.push_back({u, v});
    sq[{a.arrow_obj[f], a.arrow_obj[f], u, v}] = a.arrow_obj[f];
    a.square_index_[{u, v}] = a.arrow_obj[f];
  }
  for (MorId f = 0; f < c->n_mor(); ++f)
    for (MorId g = 0; g < c->n_mor(); ++g)
      for (MorId u : c->hom(c->src(f), c->src(g)))
        for (MorId v : c->hom(c->dst(f), c->dst(g))) {
          if (c->is_id(u) && c->is_id(v)) continue;  // only the identity square fits here
          if (c->compose(g, u) != c->compose(v, f)) continue;
          MorId m = b.add_mor(a.arrow_obj[f], a.arrow_obj[g],
                              "(" + c->mor_name(u) + "," + c->mor_name(v) + ")");
          a.square.push_back({u, v});
          sq[{a.arrow_obj[f], a.arrow_obj[g], u, v}] = m;
          a.square_index_.emplace(std::make_pair(u, v), m);
        }
  for (MorId m1 = 0; m1 < b.n_mor(); ++m1)
    for (MorId m2 = 0; m2 < b.n_mor(); ++m2) {
      if (b.peek().dst(m1) != b.peek().src(m2)) continue;
      auto [u1, v1] = a.square[m1];
      auto [u2, v2] = a.square[m2];
      b.set_comp(m2, m1,
                 sq.at({b.peek().src(m1), b.peek().dst(m2), c->compose(u2, u1), c->compose(v2, v1)}));
    }
  a.mor_at_ = sq;
  a.cat = b.build(false);
  a.dom.src = a.cat;
  a.dom.dst = c;
  a.cod.src = a.cat;
  a.cod.dst = c;
  a.dom.on_obj.resize(a.cat->n_obj);
  a.cod.on_obj.resize(a.cat->n_obj);
  for (ObjId o = 0; o < a.cat->n_obj; ++o) {
    a.dom.on_obj[o] = c->src(a.obj_arrow[o]);
    a.cod.on_obj[o] = c->dst(a.obj_arrow[o]);
  }
  a.dom.on_mor.resize(a.cat->n_mor());
  a.cod.on_mor.resize(a.cat->n_mor());
  for (MorId m = 0; m < a.cat->n_mor(); ++m) {
    a.dom.on_mor[m] = a.square[m].first;
    a.cod.on_mor[m] = a.square[m].second;
  }
  a.dom.name = "dom";
  a.cod.name = "cod";
  return a;
}

// ---- functor enumeration ----

namespace {

struct FunctorEnum {
  const FinCat& x;
  const FinCat& c;
  long cap;
  long count = 0;
  const std::vector<std::vector<ObjId>>* allowed_obj = nullptr;  // per object, or null = all
  const std::vector<std::vector<MorId>>* allowed_mor = nullptr;  // per morphism, or null = hom
  std::function<void(const std::vector<ObjId>&, const std::vector<MorId>&)> sink;

  std::vector<ObjId> ob;
  std::vector<MorId> mo;

  void run() {
    ob.assign(x.n_obj, -1);
    mo.assign(x.n_mor(), -1);
    rec_obj(0);
  }

  void rec_obj(ObjId i) {
    if (i == x.n_obj) {
      for (ObjId o = 0; o < x.n_obj; ++o) mo[x.id(o)] = c.id(ob[o]);
      rec_mor(x.n_obj);
      return;
    }
    if (allowed_obj) {
      for (ObjId v : (*allowed_obj)[i]) {
        ob[i] = v;
        if (obj_ok(i)) rec_obj(i + 1);
      }
    } else {
      for (ObjId v = 0; v < c.n_obj; ++v) {
        ob[i] = v;
        if (obj_ok(i)) rec_obj(i + 1);
      }
    }
    ob[i] = -1;
  }

  bool obj_ok(ObjId i) {
    for (ObjId j = 0; j <= i; ++j) {
      if (!x.hom(i, j).empty() && c.hom(ob[i], ob[j]).empty()) return false;
      if (!x.hom(j, i).empty() && c.hom(ob[j], ob[i]).empty()) return false;
    }
    return true;
  }

  void rec_mor(MorId f) {
    if (f == x.n_mor()) {
      if (++count > cap) fail(ErrorCode::SizeCapExceeded, "functor enumeration cap exceeded");
      sink(ob, mo);
      return;
    }
    if (allowed_mor) {
      for (MorId v : (*allowed_mor)[f]) {
        if (c.src(v) != ob[x.src(f)] || c.dst(v) != ob[x.dst(f)]) continue;
        mo[f] = v;
        if (mor_ok(f)) rec_mor(f + 1);
      }
    } else {
      for (MorId v : c.hom(ob[x.src(f)], ob[x.dst(f)])) {
        mo[f] = v;
        if (mor_ok(f)) rec_mor(f + 1);
      }
    }
    mo[f] = -1;
  }

  // all composition triples whose three members are assigned and involve k
  bool mor_ok(MorId k) {
    for (MorId g = 0; g <= k; ++g) {
      if (x.composable(g, k)) {
        MorId gk = x.comp[static_cast<size_t>(g) * x.n_mor() + k];
        if (gk <= k && c.compose(mo[g], mo[k]) != mo[gk]) return false;
      }
      if (x.composable(k, g)) {
        MorId kg = x.comp[static_cast<size_t>(k) * x.n_mor() + g];
        if (kg <= k && c.compose(mo[k], mo[g]) != mo[kg]) return false;
      }
    }
    // k as the composite of two earlier factors
    for (MorId g = 0; g < k; ++g)
      for (MorId f = 0; f < k; ++f) {
        if (!x.composable(g, f)) continue;
        if (x.comp[static_cast<size_t>(g) * x.n_mor() + f] != k) continue;
        if (c.compose(mo[g], mo[f]) != mo[k]) return false;
      }
    return true;
  }
};

}  // namespace

std::vector<Functor> enumerate_functors(CatPtr x, CatPtr c, long cap) {
  std::vector<Functor> out;
  if (x->n_obj > 0 && c->n_obj == 0) return out;
  FunctorEnum e{*x, *c, cap};
  e.sink = [&](const std::vector<ObjId>& ob, const std::vector<MorId>& mo) {
    Functor f;
    f.src = x;
    f.dst = c;
    f.on_obj = ob;
    f.on_mor = mo;
    out.push_back(std::move(f));
  };
  e.run();
  return out;
}

std::vector<Functor> enumerate_lifts(const Functor& p, const Functor& r, long cap) {
  if (!same_cat(p.dst, r.dst)) fail(ErrorCode::BaseMismatch, "enumerate_lifts base mismatch");
  CatPtr x = r.src, e = p.src;
  std::vector<std::vector<ObjId>> aobj(x->n_obj);
  for (ObjId o = 0; o < x->n_obj; ++o)
    for (ObjId eo = 0; eo < e->n_obj; ++eo)
      if (p.ob(eo) == r.ob(o)) aobj[o].push_back(eo);
  std::vector<std::vector<MorId>> amor(x->n_mor());
  for (MorId f = 0; f < x->n_mor(); ++f)
    for (MorId m = 0; m < e->n_mor(); ++m)
      if (p.mo(m) == r.mo(f)) amor[f].push_back(m);
  std::vector<Functor> out;
  FunctorEnum en{*x, *e, cap};
  en.allowed_obj = &aobj;
  en.allowed_mor = &amor;
  en.sink = [&](const std::vector<ObjId>& ob, const std::vector<MorId>& mo) {
    Functor f;
    f.src = x;
    f.dst = e;
    f.on_obj = ob;
    f.on_mor = mo;
    out.push_back(std::move(f));
  };
  en.run();
  return out;
}

// ---- exponential ----

CatPtr exponential(CatPtr x, CatPtr c, long cap) {
  std::vector<Functor> fs = enumerate_functors(x, c, cap);
  CatBuilder b(c->name + "^" + x->name);
  for (size_t i = 0; i < fs.size(); ++i) b.add_object("F" + std::to_string(i));

  auto enumerate_nats = [&](const Functor& f, const Functor& g) {
    std::vector<std::vector<MorId>> found;
    std::vector<MorId> comp(x->n_obj, -1);
    std::function<void(ObjId)> rec = [&](ObjId i) {
      if (i == x->n_obj) {
        found.push_back(comp);
        return;
      }
      for (MorId m : c->hom(f.ob(i), g.ob(i))) {
        comp[i] = m;
        bool ok = true;
        for (MorId u = 0; u < x->n_mor() && ok; ++u) {
          ObjId s = x->src(u), d = x->dst(u);
          if (comp[s] < 0 || comp[d] < 0) continue;
          if (c->compose(g.mo(u), comp[s]) != c->compose(comp[d], f.mo(u))) ok = false;
        }
        if (ok) rec(i + 1);
      }
      comp[i] = -1;
    };
    rec(0);
    return found;
  };

  struct Entry {
    int fi, gi;
    std::vector<MorId> comp;
  };
  std::vector<Entry> nonid;
  std::map<std::pair<std::pair<int, int>, std::vector<MorId>>, MorId> midx;
  long total = static_cast<long>(fs.size());
  for (size_t i = 0; i < fs.size(); ++i)
    for (size_t j = 0; j < fs.size(); ++j) {
      auto nats = enumerate_nats(fs[i], fs[j]);
      for (auto& nt : nats) {
        bool is_identity = (i == j);
        if (is_identity)
          for (ObjId o = 0; o < x->n_obj; ++o)
            if (nt[o] != c->id(fs[i].ob(o))) {
              is_identity = false;
              break;
            }
        if (is_identity) {
          midx[{{(int)i, (int)j}, nt}] = static_cast<MorId>(i);
          continue;
        }
        if (++total > cap) fail(ErrorCode::SizeCapExceeded, "exponential cap exceeded");
        MorId m = b.add_mor(static_cast<ObjId>(i), static_cast<ObjId>(j), "");
        nonid.push_back({(int)i, (int)j, nt});
        midx[{{(int)i, (int)j}, nt}] = m;
      }
    }
  auto entry_of = [&](MorId m) -> Entry {
    if (m < static_cast<MorId>(fs.size())) {
      Entry e;
      e.fi = e.gi = m;
      e.comp.resize(x->n_obj);
      for (ObjId o = 0; o < x->n_obj; ++o) e.comp[o] = c->id(fs[m].ob(o));
      return e;
    }
    return nonid[m - fs.size()];
  };
  for (MorId m1 = 0; m1 < b.n_mor(); ++m1)
    for (MorId m2 = 0; m2 < b.n_mor(); ++m2) {
      if (b.peek().dst(m1) != b.peek().src(m2)) continue;
      Entry a = entry_of(m1), bb = entry_of(m2);
      std::vector<MorId> v(x->n_obj);
      for (ObjId o = 0; o < x->n_obj; ++o) v[o] = c->compose(bb.comp[o], a.comp[o]);
      b.set_comp(m2, m1, midx.at({{a.fi, bb.gi}, v}));
    }
  return b.build(false);
}

// ---- comma ----

std::optional<ObjId> CommaCat::obj_index(ObjId c, ObjId d, MorId m) const {
  auto it = obj_index_.find({c, d, m});
  if (it == obj_index_.end()) return std::nullopt;
  return it->second;
}
std::optional<MorId> CommaCat::mor_index(MorId f, MorId g) const {
  auto it = mor_index__.find({f, g});
  if (it == mor_index__.end()) return std::nullopt;
  return it->second;
}
std::optional<MorId> CommaCat::mor_at(ObjId srcO, ObjId dstO, MorId f, MorId g) const {
  auto it = mor_at_.find({srcO, dstO, f, g});
  if (it == mor_at_.end()) return std::nullopt;
  return it->second;
}

CommaCat comma(const Functor& f, const Functor& g) {
  if (!same_cat(f.dst, g.dst)) fail(ErrorCode::BaseMismatch, "comma codomain mismatch");
  CommaCat k;
  const FinCat& C = *f.src;
  const FinCat& D = *g.src;
  const FinCat& A = *f.dst;
  CatBuilder b(f.name + "↓" + g.name);
  for (ObjId c = 0; c < C.n_obj; ++c)
    for (ObjId d = 0; d < D.n_obj; ++d)
      for (MorId m : A.hom(f.ob(c), g.ob(d))) {
        ObjId o =
            b.add_object("(" + C.obj_name(c) + "," + D.obj_name(d) + "," + A.mor_name(m) + ")");
        k.objs.push_back({c, d, m});
        k.obj_index_[{c, d, m}] = o;
      }
  k.mor_pair.resize(k.objs.size());
  for (size_t o = 0; o < k.objs.size(); ++o)
    k.mor_pair[o] = {C.id(k.objs[o].c), D.id(k.objs[o].d)};
  std::map<std::array<int, 4>, MorId> by_ends;  // (srcObj, dstObj, u, v)
  for (size_t o = 0; o < k.objs.size(); ++o)
    by_ends[{(int)o, (int)o, k.mor_pair[o].first, k.mor_pair[o].second}] = static_cast<MorId>(o);
  for (size_t o1 = 0; o1 < k.objs.size(); ++o1)
    for (size_t o2 = 0; o2 < k.objs.size(); ++o2) {
      const CommaObj& p = k.objs[o1];
      const CommaObj& q = k.objs[o2];
      for (MorId u : C.hom(p.c, q.c))
        for (MorId v : D.hom(p.d, q.d)) {
          if (C.is_id(u) && D.is_id(v)) continue;
          if (A.compose(q.m, f.mo(u)) != A.compose(g.mo(v), p.m)) continue;
          MorId m = b.add_mor(static_cast<ObjId>(o1), static_cast<ObjId>(o2),
                              "(" + C.mor_name(u) + "," + D.mor_name(v) + ")");
          k.mor_pair.push_back({u, v});
          by_ends[{(int)o1, (int)o2, u, v}] = m;
        }
    }
  const FinCat& K = b.peek();
  for (MorId m1 = 0; m1 < K.n_mor(); ++m1)
    for (MorId m2 = 0; m2 < K.n_mor(); ++m2) {
      if (K.dst(m1) != K.src(m2)) continue;
      MorId u = C.compose(k.mor_pair[m2].first, k.mor_pair[m1].first);
      MorId v = D.compose(k.mor_pair[m2].second, k.mor_pair[m1].second);
      b.set_comp(m2, m1, by_ends.at({K.src(m1), K.dst(m2), u, v}));
    }
  k.mor_at_ = by_ends;
  k.cat = b.build(false);
  for (MorId m = 0; m < k.cat->n_mor(); ++m)
    k.mor_index__.emplace(std::make_pair(k.mor_pair[m].first, k.mor_pair[m].second), m);
  k.pF.src = k.cat;
  k.pF.dst = f.src;
  k.pG.src = k.cat;
  k.pG.dst = g.src;
  k.pF.on_obj.resize(k.cat->n_obj);
  k.pG.on_obj.resize(k.cat->n_obj);
  for (size_t o = 0; o < k.objs.size(); ++o) {
    k.pF.on_obj[o] = k.objs[o].c;
    k.pG.on_obj[o] = k.objs[o].d;
  }
  k.pF.on_mor.resize(k.cat->n_mor());
  k.pG.on_mor.resize(k.cat->n_mor());
  for (MorId m = 0; m < k.cat->n_mor(); ++m) {
    k.pF.on_mor[m] = k.mor_pair[m].first;
    k.pG.on_mor[m] = k.mor_pair[m].second;
  }
  k.pF.name = "p" + (f.name.empty() ? std::string("F") : f.name);
  k.pG.name = "p" + (g.name.empty() ? std::string("G") : g.name);
  k.alpha.src = compose(f, k.pF);
  k.alpha.dst = compose(g, k.pG);
  k.alpha.component.resize(k.cat->n_obj);
  for (size_t o = 0; o < k.objs.size(); ++o) k.alpha.component[o] = k.objs[o].m;
  return k;
}

// ---- pullback ----

std::optional<ObjId> PullbackCat::obj_index(ObjId c, ObjId d) const {
  auto it = obj_index_.find({c, d});
  if (it == obj_index_.end()) return std::nullopt;
  return it->second;
}
std::optional<MorId> PullbackCat::mor_index(MorId f, MorId g) const {
  auto it = mor_index__.find({f, g});
  if (it == mor_index__.end()) return std::nullopt;
  return it->second;
}

PullbackCat pullback(const Functor& f, const Functor& g) {
  if (!same_cat(f.dst, g.dst)) fail(ErrorCode::BaseMismatch, "pullback codomain mismatch");
  PullbackCat p;
  const FinCat& C = *f.src;
  const FinCat& D = *g.src;
  CatBuilder b(C.name + "×_" + f.dst->name + " " + D.name);
  for (ObjId c = 0; c < C.n_obj; ++c)
    for (ObjId d = 0; d < D.n_obj; ++d)
      if (f.ob(c) == g.ob(d)) {
        ObjId o = b.add_object("(" + C.obj_name(c) + "," + D.obj_name(d) + ")");
        p.objs.push_back({c, d});
        p.obj_index_[{c, d}] = o;
      }
  p.mor_pair.resize(p.objs.size());
  for (size_t o = 0; o < p.objs.size(); ++o) {
    p.mor_pair[o] = {C.id(p.objs[o].first), D.id(p.objs[o].second)};
    p.mor_index__[{p.mor_pair[o].first, p.mor_pair[o].second}] = static_cast<MorId>(o);
  }
  for (size_t o1 = 0; o1 < p.objs.size(); ++o1)
    for (size_t o2 = 0; o2 < p.objs.size(); ++o2)
      for (MorId u : C.hom(p.objs[o1].first, p.objs[o2].first))
        for (MorId v : D.hom(p.objs[o1].second, p.objs[o2].second)) {
          if (C.is_id(u) && D.is_id(v)) continue;
          if (f.mo(u) != g.mo(v)) continue;
          MorId m = b.add_mor(static_cast<ObjId>(o1), static_cast<ObjId>(o2),
                              "(" + C.mor_name(u) + "," + D.mor_name(v) + ")");
          p.mor_pair.push_back({u, v});
          p.mor_index__.insert({{u, v}, m});
        }
  const FinCat& K = b.peek();
  // (u,v) determines endpoints here, so the plain pair index is sound
  for (MorId m1 = 0; m1 < K.n_mor(); ++m1)
    for (MorId m2 = 0; m2 < K.n_mor(); ++m2) {
      if (K.dst(m1) != K.src(m2)) continue;
      MorId u = C.compose(p.mor_pair[m2].first, p.mor_pair[m1].first);
      MorId v = D.compose(p.mor_pair[m2].second, p.mor_pair[m1].second);
      b.set_comp(m2, m1, p.mor_index__.at({u, v}));
    }
  p.cat = b.build(false);
  p.p1.src = p.cat;
  p.p1.dst = f.src;
  p.p2.src = p.cat;
  p.p2.dst = g.src;
  p.p1.on_obj.resize(p.cat->n_obj);
  p.p2.on_obj.resize(p.cat->n_obj);
  for (size_t o = 0; o < p.objs.size(); ++o) {
    p.p1.on_obj[o] = p.objs[o].first;
    p.p2.on_obj[o] = p.objs[o].second;
  }
  p.p1.on_mor.resize(p.cat->n_mor());
  p.p2.on_mor.resize(p.cat->n_mor());
  for (MorId m = 0; m < p.cat->n_mor(); ++m) {
    p.p1.on_mor[m] = p.mor_pair[m].first;
    p.p2.on_mor[m] = p.mor_pair[m].second;
  }
  return p;
}

Functor PullbackCat::mediate(const Functor& u, const Functor& v) const {
  if (!same_cat(u.src, v.src)) fail(ErrorCode::BoundaryMismatch, "mediate domain mismatch");
  Functor h;
  h.src = u.src;
  h.dst = cat;
  h.on_obj.resize(u.src->n_obj);
  h.on_mor.resize(u.src->n_mor());
  for (ObjId x = 0; x < u.src->n_obj; ++x) {
    auto o = obj_index(u.ob(x), v.ob(x));
    if (!o) fail(ErrorCode::SquareMismatch, "cone does not commute on objects");
    h.on_obj[x] = *o;
  }
  for (MorId m = 0; m < u.src->n_mor(); ++m) {
    auto i = mor_index(u.mo(m), v.mo(m));
    if (!i) fail(ErrorCode::SquareMismatch, "cone does not commute on morphisms");
    h.on_mor[m] = *i;
  }
  return h;
}

// ---- fiber ----

FiberCat fiber(const Functor& pi, ObjId b) {
  if (b < 0 || b >= pi.dst->n_obj) fail(ErrorCode::UnknownObject, "fiber: no such base object");
  FiberCat fc;
  const FinCat& E = *pi.src;
  CatBuilder bl(pi.src->name + "|" + pi.dst->obj_name(b));
  std::vector<ObjId> oidx(E.n_obj, -1);
  for (ObjId e = 0; e < E.n_obj; ++e)
    if (pi.ob(e) == b) {
      oidx[e] = bl.add_object(E.obj_name(e));
      fc.objs.push_back(e);
    }
  std::vector<MorId> midx(E.n_mor(), -1);
  fc.morsel.resize(fc.objs.size());
  for (size_t i = 0; i < fc.objs.size(); ++i) {
    midx[E.id(fc.objs[i])] = static_cast<MorId>(i);
    fc.morsel[i] = E.id(fc.objs[i]);
  }
  for (MorId m = 0; m < E.n_mor(); ++m) {
    if (E.is_id(m)) continue;
    if (pi.mo(m) != pi.dst->id(b)) continue;
    MorId r = bl.add_mor(oidx[E.src(m)], oidx[E.dst(m)], E.mor_name(m));
    midx[m] = r;
    fc.morsel.push_back(m);
  }
  for (size_t i = 0; i < fc.morsel.size(); ++i)
    for (size_t j = 0; j < fc.morsel.size(); ++j) {
      MorId f = fc.morsel[i], g = fc.morsel[j];
      if (!E.composable(g, f)) continue;
      bl.set_comp(midx[g], midx[f], midx[E.compose(g, f)]);
    }
  fc.cat = bl.build(false);
  fc.incl.src = fc.cat;
  fc.incl.dst = pi.src;
  fc.incl.on_obj = fc.objs;
  fc.incl.on_mor = fc.morsel;
  return fc;
}

// ---- natural transformation enumeration ----

std::vector<NatTrans> enumerate_nats(const Functor& from, const Functor& to, long cap,
                                     const Functor* vertical_over) {
  if (!same_cat(from.src, to.src) || !same_cat(from.dst, to.dst))
    fail(ErrorCode::BoundaryMismatch, "enumerate_nats: functors not parallel");
  const FinCat& x = *from.src;
  const FinCat& d = *from.dst;
  std::vector<NatTrans> out;
  std::vector<MorId> comp(x.n_obj, -1);
  long count = 0;
  std::function<void(ObjId)> rec = [&](ObjId i) {
    if (i == x.n_obj) {
      if (++count > cap) fail(ErrorCode::SizeCapExceeded, "enumerate_nats cap exceeded");
      NatTrans t;
      t.src = from;
      t.dst = to;
      t.component = comp;
      out.push_back(std::move(t));
      return;
    }
    for (MorId m : d.hom(from.ob(i), to.ob(i))) {
      if (vertical_over &&
          vertical_over->mo(m) != vertical_over->dst->id(vertical_over->ob(from.ob(i))))
        continue;
      comp[i] = m;
      bool ok = true;
      for (MorId u = 0; u < x.n_mor() && ok; ++u) {
        ObjId s = x.src(u), t2 = x.dst(u);
        if (comp[s] < 0 || comp[t2] < 0) continue;
        if (d.compose(to.mo(u), comp[s]) != d.compose(comp[t2], from.mo(u))) ok = false;
      }
      if (ok) rec(i + 1);
    }
    comp[i] = -1;
  };
  rec(0);
  return out;
}

// ---- full subcategory ----

SubCat full_subcategory(CatPtr c, const std::vector<ObjId>& objects) {
  SubCat s;
  CatBuilder b(c->name + "|sub");
  s.obj_index.assign(c->n_obj, -1);
  s.mor_index.assign(c->n_mor(), -1);
  for (ObjId x : objects) {
    if (x < 0 || x >= c->n_obj) fail(ErrorCode::UnknownObject, "full_subcategory object");
    s.obj_index[x] = b.add_object(c->obj_name(x));
    s.objs.push_back(x);
  }
  s.morsel.resize(s.objs.size());
  for (size_t i = 0; i < s.objs.size(); ++i) {
    s.morsel[i] = c->id(s.objs[i]);
    s.mor_index[c->id(s.objs[i])] = static_cast<MorId>(i);
  }
  for (MorId m = 0; m < c->n_mor(); ++m) {
    if (c->is_id(m)) continue;
    if (s.obj_index[c->src(m)] < 0 || s.obj_index[c->dst(m)] < 0) continue;
    MorId r = b.add_mor(s.obj_index[c->src(m)], s.obj_index[c->dst(m)], c->mor_name(m));
    s.mor_index[m] = r;
    s.morsel.push_back(m);
  }
  for (size_t i = 0; i < s.morsel.size(); ++i)
    for (size_t j = 0; j < s.morsel.size(); ++j) {
      MorId f = s.morsel[i], g = s.morsel[j];
      if (!c->composable(g, f)) continue;
      b.set_comp(s.mor_index[g], s.mor_index[f], s.mor_index[c->compose(g, f)]);
    }
  s.cat = b.build(false);
  s.incl.src = s.cat;
  s.incl.dst = c;
  s.incl.on_obj = s.objs;
  s.incl.on_mor = s.morsel;
  return s;
}

// ---- extremal objects ----

Extremals extremal_objects(CatPtr c) {
  Extremals e;
  for (ObjId x = 0; x < c->n_obj; ++x) {
    bool init = true, term = true;
    for (ObjId y = 0; y < c->n_obj; ++y) {
      if (c->hom(x, y).size() != 1) init = false;
      if (c->hom(y, x).size() != 1) term = false;
    }
    if (init) e.initials.push_back(x);
    if (term) e.terminals.push_back(x);
  }
  return e;
}

// ---- equivalences / isofibrations ----

bool is_fully_faithful(const Functor& f) {
  const FinCat& C = *f.src;
  const FinCat& D = *f.dst;
  for (ObjId x = 0; x < C.n_obj; ++x)
    for (ObjId y = 0; y < C.n_obj; ++y) {
      const auto& hs = C.hom(x, y);
      const auto& ht = D.hom(f.ob(x), f.ob(y));
      if (hs.size() != ht.size()) return false;
      std::vector<bool> hit(D.n_mor(), false);
      for (MorId m : hs) {
        if (hit[f.mo(m)]) return false;
        hit[f.mo(m)] = true;
      }
    }
  return true;
}

bool is_essentially_surjective(const Functor& f) {
  const FinCat& D = *f.dst;
  std::vector<bool> covered(D.n_obj, false);
  for (ObjId x = 0; x < f.src->n_obj; ++x) covered[f.ob(x)] = true;
  for (ObjId d = 0; d < D.n_obj; ++d) {
    if (covered[d]) continue;
    bool ok = false;
    for (ObjId d2 = 0; d2 < D.n_obj && !ok; ++d2)
      if (covered[d2])
        for (MorId m : D.hom(d2, d))
          if (D.is_iso(m)) {
            ok = true;
            break;
          }
    if (!ok) return false;
  }
  return true;
}

bool is_equivalence(const Functor& f) {
  return is_fully_faithful(f) && is_essentially_surjective(f);
}

bool is_isofibration(const Functor& f) {
  const FinCat& E = *f.src;
  const FinCat& B = *f.dst;
  for (MorId m = 0; m < B.n_mor(); ++m) {
    if (!B.is_iso(m) || B.is_id(m)) continue;
    for (ObjId e = 0; e < E.n_obj; ++e) {
      if (f.ob(e) != B.src(m)) continue;
      bool ok = false;
      for (MorId l : E.from(e))
        if (f.mo(l) == m && E.is_iso(l)) {
          ok = true;
          break;
        }
      if (!ok) return false;
    }
  }
  return true;
}

bool is_fibered_equivalence(const Functor& phi, const Functor& pSrc, const Functor& pDst,
                            long cap) {
  if (!equal_functor(compose(pDst, phi), pSrc))
    fail(ErrorCode::NotOverBase, "map does not commute with projections");
  if (!is_equivalence(phi)) return false;
  const FinCat& E = *phi.src;
  const FinCat& F = *phi.dst;

  // search for a vertical natural iso between two parallel functors
  auto vert_iso_exists = [](const FinCat& c, const Functor& proj, const Functor& from,
                            const Functor& to) -> bool {
    std::vector<MorId> comp(c.n_obj, -1);
    std::function<bool(ObjId)> rec = [&](ObjId i) -> bool {
      if (i == c.n_obj) return true;
      for (MorId m : c.hom(from.ob(i), to.ob(i))) {
        if (!c.is_iso(m)) continue;
        if (proj.mo(m) != proj.dst->id(proj.ob(from.ob(i)))) continue;
        comp[i] = m;
        bool ok = true;
        for (MorId u = 0; u < c.n_mor() && ok; ++u) {
          ObjId s = c.src(u), d = c.dst(u);
          if (comp[s] < 0 || comp[d] < 0) continue;
          if (c.compose(to.mo(u), comp[s]) != c.compose(comp[d], from.mo(u))) ok = false;
        }
        if (ok && rec(i + 1)) return true;
      }
      comp[i] = -1;
      return false;
    };
    return rec(0);
  };

  std::vector<Functor> cands = enumerate_lifts(pSrc, pDst, cap);
  for (const Functor& psi : cands) {
    if (vert_iso_exists(E, pSrc, identity_functor(phi.src), compose(psi, phi)) &&
        vert_iso_exists(F, pDst, compose(phi, psi), identity_functor(phi.dst)))
      return true;
  }
  return false;
}

// ---- isomorphism search ----

namespace {

std::vector<std::vector<long>> object_profile(const FinCat& c) {
  std::vector<std::vector<long>> prof(c.n_obj);
  for (ObjId x = 0; x < c.n_obj; ++x) {
    std::vector<long> outs, ins;
    for (ObjId y = 0; y < c.n_obj; ++y) {
      outs.push_back(static_cast<long>(c.hom(x, y).size()));
      ins.push_back(static_cast<long>(c.hom(y, x).size()));
    }
    std::sort(outs.begin(), outs.end());
    std::sort(ins.begin(), ins.end());
    prof[x] = outs;
    prof[x].push_back(-1);
    prof[x].insert(prof[x].end(), ins.begin(), ins.end());
    prof[x].push_back(static_cast<long>(c.hom(x, x).size()));
  }
  return prof;
}

struct IsoSearch {
  const FinCat& c;
  const FinCat& d;
  const Functor* projC = nullptr;
  const Functor* projD = nullptr;
  std::vector<ObjId> omap;
  std::vector<MorId> mmap;
  std::vector<bool> oused;
  std::vector<bool> mused;

  bool run() {
    if (c.n_obj != d.n_obj || c.n_mor() != d.n_mor()) return false;
    omap.assign(c.n_obj, -1);
    mmap.assign(c.n_mor(), -1);
    oused.assign(d.n_obj, false);
    mused.assign(d.n_mor(), false);
    auto pc = object_profile(c);
    auto pd = object_profile(d);
    return rec_obj(0, pc, pd);
  }

  bool rec_obj(ObjId i, const std::vector<std::vector<long>>& pc,
               const std::vector<std::vector<long>>& pd) {
    if (i == c.n_obj) {
      for (ObjId x = 0; x < c.n_obj; ++x) {
        mmap[c.id(x)] = d.id(omap[x]);
        mused[d.id(omap[x])] = true;
      }
      return rec_mor(c.n_obj);
    }
    for (ObjId y = 0; y < d.n_obj; ++y) {
      if (oused[y] || pc[i] != pd[y]) continue;
      if (projC && projD && projD->ob(y) != projC->ob(i)) continue;
      bool ok = true;
      for (ObjId j = 0; j < i && ok; ++j) {
        if (c.hom(i, j).size() != d.hom(y, omap[j]).size()) ok = false;
        if (c.hom(j, i).size() != d.hom(omap[j], y).size()) ok = false;
      }
      if (!ok) continue;
      omap[i] = y;
      oused[y] = true;
      if (rec_obj(i + 1, pc, pd)) return true;
      omap[i] = -1;
      oused[y] = false;
    }
    return false;
  }

  bool rec_mor(MorId f) {
    if (f == c.n_mor()) return true;
    for (MorId g : d.hom(omap[c.src(f)], omap[c.dst(f)])) {
      if (mused[g]) continue;
      if (projC && projD && projD->mo(g) != projC->mo(f)) continue;
      mmap[f] = g;
      mused[g] = true;
      if (check_partial(f) && rec_mor(f + 1)) return true;
      mmap[f] = -1;
      mused[g] = false;
    }
    return false;
  }

  bool check_partial(MorId k) {
    for (MorId g = 0; g <= k; ++g) {
      if (mmap[g] < 0) continue;
      if (c.composable(g, k)) {
        MorId gk = c.comp[static_cast<size_t>(g) * c.n_mor() + k];
        MorId t = d.comp[static_cast<size_t>(mmap[g]) * d.n_mor() + mmap[k]];
        if (gk <= k && mmap[gk] >= 0 && mmap[gk] != t) return false;
      }
      if (c.composable(k, g)) {
        MorId kg = c.comp[static_cast<size_t>(k) * c.n_mor() + g];
        MorId t = d.comp[static_cast<size_t>(mmap[k]) * d.n_mor() + mmap[g]];
        if (kg <= k && mmap[kg] >= 0 && mmap[kg] != t) return false;
      }
    }
    for (MorId g = 0; g < k; ++g) {
      if (mmap[g] < 0) continue;
      for (MorId f2 = 0; f2 < k; ++f2) {
        if (mmap[f2] < 0 || !c.composable(g, f2)) continue;
        if (c.comp[static_cast<size_t>(g) * c.n_mor() + f2] != k) continue;
        if (d.comp[static_cast<size_t>(mmap[g]) * d.n_mor() + mmap[f2]] != mmap[k]) return false;
      }
    }
    return true;
  }
};

}  // namespace

std::optional<Functor> find_isomorphism(CatPtr c, CatPtr d) {
  IsoSearch s{*c, *d};
  if (!s.run()) return std::nullopt;
  Functor f;
  f.src = c;
  f.dst = d;
  f.on_obj = s.omap;
  f.on_mor = s.mmap;
  return f;
}

bool isomorphic(CatPtr c, CatPtr d) { return find_isomorphism(c, d).has_value(); }

std::optional<Functor> find_isomorphism_over(const Functor& projC, const Functor& projD) {
  if (!same_cat(projC.dst, projD.dst)) fail(ErrorCode::BaseMismatch, "iso-over base mismatch");
  IsoSearch s{*projC.src, *projD.src};
  s.projC = &projC;
  s.projD = &projD;
  if (!s.run()) return std::nullopt;
  Functor f;
  f.src = projC.src;
  f.dst = projD.src;
  f.on_obj = s.omap;
  f.on_mor = s.mmap;
  return f;
}

// ---- small categories ----

CatPtr terminal_cat() {
  static CatPtr one = [] {
    CatBuilder b("1");
    b.add_object("*");
    return b.build(false);
  }();
  return one;
}

CatPtr empty_cat() {
  static CatPtr zero = [] { return CatBuilder("0").build(false); }();
  return zero;
}

Functor bang(CatPtr c) {
  Functor f;
  f.src = c;
  f.dst = terminal_cat();
  f.on_obj.assign(c->n_obj, 0);
  f.on_mor.assign(c->n_mor(), 0);
  f.name = "!";
  return f;
}

Functor pick(CatPtr c, ObjId x) {
  if (x < 0 || x >= c->n_obj) fail(ErrorCode::UnknownObject, "pick: no such object");
  Functor f;
  f.src = terminal_cat();
  f.dst = c;
  f.on_obj = {x};
  f.on_mor = {c->id(x)};
  f.name = "pick_" + c->obj_name(x);
  return f;
}

CatPtr chain_poset(int n) {
  CatBuilder b("[" + std::to_string(n) + "]");
  for (int i = 0; i <= n; ++i) b.add_object(std::to_string(i));
  std::vector<std::vector<MorId>> arr(n + 1, std::vector<MorId>(n + 1, -1));
  for (int i = 0; i <= n; ++i) arr[i][i] = i;
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      arr[i][j] = b.add_mor(i, j, std::to_string(i) + "to" + std::to_string(j));
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k) b.set_comp(arr[j][k], arr[i][j], arr[i][k]);
  return b.build(false);
}

// ---- validator ----

CatPtr validate_category(const RawCategory& raw) {
  CatBuilder b(raw.name);
  std::map<std::string, ObjId> oid;
  for (const std::string& o : raw.objects) {
    if (oid.count(o)) fail(ErrorCode::DanglingId, "duplicate object name '" + o + "'");
    oid[o] = b.add_object(o);
  }
  std::map<std::string, MorId> mid;
  for (const auto& [o, i] : oid) mid["id_" + o] = i;
  for (const RawMor& m : raw.morphisms) {
    if (!oid.count(m.src))
      fail(ErrorCode::DanglingId, "morphism '" + m.id + "' has unknown src '" + m.src + "'");
    if (!oid.count(m.dst))
      fail(ErrorCode::DanglingId, "morphism '" + m.id + "' has unknown dst '" + m.dst + "'");
    if (mid.count(m.id)) fail(ErrorCode::DanglingId, "duplicate morphism name '" + m.id + "'");
    mid[m.id] = b.add_mor(oid[m.src], oid[m.dst], m.id);
  }
  for (const auto& t : raw.compose) {
    auto need = [&](const std::string& n) -> MorId {
      auto it = mid.find(n);
      if (it == mid.end())
        fail(ErrorCode::DanglingId, "compose entry names unknown morphism '" + n + "'");
      return it->second;
    };
    MorId g = need(t[0]), f = need(t[1]), gf = need(t[2]);
    const FinCat& c = b.peek();
    if (!c.composable(g, f))
      fail(ErrorCode::MissingComposite,
           "compose entry (" + t[0] + "," + t[1] + ") is not a composable pair");
    if (c.src(gf) != c.src(f) || c.dst(gf) != c.dst(g))
      fail(ErrorCode::MissingComposite,
           "compose entry (" + t[0] + "," + t[1] + "," + t[2] + ") has mismatched boundaries");
    b.set_comp(g, f, gf);
  }
  return b.build(true);
}

}  // namespace fibcheck
