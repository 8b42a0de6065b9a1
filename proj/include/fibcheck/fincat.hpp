#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fibcheck/error.hpp"

namespace fibcheck {

using ObjId = int;
using MorId = int;

struct Mor {
  ObjId src;
  ObjId dst;
};

// Finite category with a total composition table.
//
// Conventions, relied on everywhere:
//  - objects are 0..n_obj-1
//  - morphism ids 0..n_obj-1 are the identities, id(x) == x
//  - compose(g, f) means g after f and is defined exactly when dst(f) == src(g)
class FinCat {
 public:
  std::string name;
  int n_obj = 0;
  std::vector<Mor> mors;               // includes identities
  std::vector<int32_t> comp;           // m*m table, -1 where not composable
  std::vector<std::string> obj_names;  // optional, for I/O
  std::vector<std::string> mor_names;

  int n_mor() const { return static_cast<int>(mors.size()); }
  MorId id(ObjId x) const { return x; }
  bool is_id(MorId f) const { return f < n_obj; }
  ObjId src(MorId f) const { return mors[f].src; }
  ObjId dst(MorId f) const { return mors[f].dst; }
  bool composable(MorId g, MorId f) const { return mors[f].dst == mors[g].src; }
  MorId compose(MorId g, MorId f) const;  // g∘f

  const std::vector<MorId>& hom(ObjId x, ObjId y) const { return hom_[x * n_obj + y]; }
  const std::vector<MorId>& from(ObjId x) const { return from_[x]; }
  const std::vector<MorId>& to(ObjId y) const { return to_[y]; }
  bool is_iso(MorId f) const { return inverse_[f] >= 0; }
  std::optional<MorId> inverse(MorId f) const {
    return inverse_[f] >= 0 ? std::optional<MorId>(inverse_[f]) : std::nullopt;
  }

  // Full unit/associativity/totality audit; throws the validator error codes.
  void check_laws() const;

  // Builds hom/iso caches. Must be called once after the tables are filled;
  // the category is immutable afterwards.
  void seal();

  std::string obj_name(ObjId x) const;
  std::string mor_name(MorId f) const;

 private:
  std::vector<std::vector<MorId>> hom_;
  std::vector<std::vector<MorId>> from_, to_;
  std::vector<MorId> inverse_;
};

using CatPtr = std::shared_ptr<const FinCat>;

// Table-level equality (names ignored).
bool same_cat(const FinCat& a, const FinCat& b);
inline bool same_cat(const CatPtr& a, const CatPtr& b) { return same_cat(*a, *b); }

// Incremental builder. Identities are created automatically; unit-law
// composites are filled in; the caller provides the rest.
class CatBuilder {
 public:
  explicit CatBuilder(std::string name = "");
  ObjId add_object(const std::string& name = "");
  MorId add_mor(ObjId src, ObjId dst, const std::string& name = "");
  void set_comp(MorId g, MorId f, MorId gf);
  std::optional<MorId> comp_of(MorId g, MorId f) const;
  int n_obj() const { return cat_.n_obj; }
  int n_mor() const { return cat_.n_mor(); }
  const FinCat& peek() const { return cat_; }
  // validate=true runs check_laws (use for untrusted input).
  CatPtr build(bool validate);

 private:
  FinCat cat_;
  std::vector<std::map<MorId, MorId>> comp_rows_;  // per g: f -> gf
};

struct Functor {
  CatPtr src, dst;
  std::vector<ObjId> on_obj;
  std::vector<MorId> on_mor;
  std::string name;

  ObjId ob(ObjId x) const { return on_obj[x]; }
  MorId mo(MorId f) const { return on_mor[f]; }
  void check() const;  // functoriality by exhaustion; throws BoundaryMismatch
};

Functor identity_functor(CatPtr c);
Functor compose(const Functor& g, const Functor& f);
bool equal_functor(const Functor& f, const Functor& g);

struct NatTrans {
  Functor src, dst;                 // parallel functors
  std::vector<MorId> component;     // per object of src.src, a morphism of src.dst
  bool well_formed() const;         // boundaries + naturality (non-throwing)
  void check() const;               // throws BoundaryMismatch
};

NatTrans identity_nat(const Functor& f);
NatTrans nat_vcompose(const NatTrans& b, const NatTrans& a);
// whisker_left(F, a) = F∘a : F∘G ⇒ F∘H for a : G ⇒ H with G.dst == F.src
NatTrans whisker_left(const Functor& f, const NatTrans& a);
// whisker_right(a, F) = a∘F : G∘F ⇒ H∘F with F.dst == G.src
NatTrans whisker_right(const NatTrans& a, const Functor& f);
bool is_natural_iso(const NatTrans& a);

// ---- basic constructions ----

struct ProductCat {
  CatPtr cat;
  Functor proj1, proj2;
  ObjId pair_obj(ObjId c, ObjId d) const;
  MorId pair_mor(MorId f, MorId g) const;
  std::pair<MorId, MorId> unpair_mor(MorId m) const { return mor_code_[m]; }
  std::pair<ObjId, ObjId> unpair_obj(ObjId o) const;
  Functor pairing(const Functor& f, const Functor& g) const;  // <f,g> : T -> C×D

  int nd = 0;  // |obj D|
  std::vector<std::pair<MorId, MorId>> mor_code_;
  std::vector<std::vector<MorId>> mor_index_;  // [f][g] -> id
};

ProductCat product(CatPtr c, CatPtr d);

CatPtr opposite(CatPtr c);
Functor opposite_functor(const Functor& f);      // same tables, between opposites
NatTrans opposite_nat(const NatTrans& a);        // G^op ⇒ F^op, same components

struct ArrowCat {
  CatPtr cat;
  Functor dom, cod;                 // dom = ∂0 (cartesian leg), cod = ∂1 (cocartesian leg)
  std::vector<MorId> obj_arrow;     // object of cat -> morphism of base
  std::vector<ObjId> arrow_obj;     // morphism of base -> object of cat
  // morphism of cat -> the commuting square (a = dom component, b = cod component)
  std::vector<std::pair<MorId, MorId>> square;
  ObjId obj_of(MorId f) const { return arrow_obj[f]; }
  std::optional<MorId> square_mor(MorId a, MorId b) const;
  // morphism with the given endpoints and square components
  std::optional<MorId> mor_at(ObjId srcO, ObjId dstO, MorId a, MorId b) const;

  std::map<std::pair<MorId, MorId>, MorId> square_index_;
  std::map<std::array<int, 4>, MorId> mor_at_;
};

ArrowCat arrow_category(CatPtr c);

// Objects = functors X -> C, morphisms = natural transformations.
CatPtr exponential(CatPtr x, CatPtr c, long cap);

struct CommaObj {
  ObjId c, d;
  MorId m;  // F c -> G d
};

struct CommaCat {
  CatPtr cat;
  Functor pF, pG;  // to F.src and G.src
  NatTrans alpha;  // F∘pF ⇒ G∘pG, component at (c,d,m) is m
  std::vector<CommaObj> objs;
  std::vector<std::pair<MorId, MorId>> mor_pair;  // (f in F.src, g in G.src)
  std::optional<ObjId> obj_index(ObjId c, ObjId d, MorId m) const;
  std::optional<MorId> mor_index(MorId f, MorId g) const;
  std::optional<MorId> mor_at(ObjId srcO, ObjId dstO, MorId f, MorId g) const;

  std::map<std::array<int, 3>, ObjId> obj_index_;
  std::map<std::pair<MorId, MorId>, MorId> mor_index__;
  std::map<std::array<int, 4>, MorId> mor_at_;
};

CommaCat comma(const Functor& f, const Functor& g);

struct PullbackCat {
  CatPtr cat;
  Functor p1, p2;
  std::vector<std::pair<ObjId, ObjId>> objs;
  std::vector<std::pair<MorId, MorId>> mor_pair;
  std::optional<ObjId> obj_index(ObjId c, ObjId d) const;
  std::optional<MorId> mor_index(MorId f, MorId g) const;
  // mediating functor for a cone (u, v) with F∘u = G∘v
  Functor mediate(const Functor& u, const Functor& v) const;

  std::map<std::pair<ObjId, ObjId>, ObjId> obj_index_;
  std::map<std::pair<MorId, MorId>, MorId> mor_index__;
};

PullbackCat pullback(const Functor& f, const Functor& g);

struct FiberCat {
  CatPtr cat;
  Functor incl;
  std::vector<ObjId> objs;  // objects of the total category
  std::vector<MorId> morsel;
};

FiberCat fiber(const Functor& pi, ObjId b);

// Complete duplicate-free enumeration; throws SizeCapExceeded past cap.
std::vector<Functor> enumerate_functors(CatPtr x, CatPtr c, long cap);

// Functors s : X -> E with p∘s = r (so r : X -> B, p : E -> B).
std::vector<Functor> enumerate_lifts(const Functor& p, const Functor& r, long cap);

// All natural transformations from -> to; when vertical_over is given, every
// component must project to an identity under it.
std::vector<NatTrans> enumerate_nats(const Functor& from, const Functor& to, long cap,
                                     const Functor* vertical_over = nullptr);

struct SubCat {
  CatPtr cat;
  Functor incl;
  std::vector<ObjId> objs;    // ambient object per subcategory object
  std::vector<MorId> morsel;  // ambient morphism per subcategory morphism
  std::vector<ObjId> obj_index;  // ambient object -> sub object (-1 outside)
  std::vector<MorId> mor_index;  // ambient morphism -> sub morphism (-1 outside)
};

// Full subcategory on the listed objects (ascending, duplicate-free).
SubCat full_subcategory(CatPtr c, const std::vector<ObjId>& objects);

struct Extremals {
  std::vector<ObjId> initials, terminals;
};
Extremals extremal_objects(CatPtr c);

bool is_fully_faithful(const Functor& f);
bool is_essentially_surjective(const Functor& f);
bool is_equivalence(const Functor& f);
bool is_isofibration(const Functor& f);
// phi : E -> F with pDst∘phi = pSrc over the common base; quasi-inverse and
// unit/counit isos must exist with vertical components.
bool is_fibered_equivalence(const Functor& phi, const Functor& pSrc, const Functor& pDst,
                            long cap = 200000);

std::optional<Functor> find_isomorphism(CatPtr c, CatPtr d);
bool isomorphic(CatPtr c, CatPtr d);
// isomorphism commuting strictly with the given projections
std::optional<Functor> find_isomorphism_over(const Functor& projC, const Functor& projD);

// point categories & friends
CatPtr terminal_cat();
CatPtr empty_cat();
Functor bang(CatPtr c);              // C -> 1
Functor pick(CatPtr c, ObjId x);     // 1 -> C
CatPtr chain_poset(int n);           // [n]: n+1 objects

// raw input for the validator
struct RawMor {
  std::string id, src, dst;
};
struct RawCategory {
  std::string name;
  std::vector<std::string> objects;
  std::vector<RawMor> morphisms;  // identities implicit as "id_<obj>"
  std::vector<std::array<std::string, 3>> compose;  // (g, f, gf)
};

CatPtr validate_category(const RawCategory& raw);

}  // namespace fibcheck
