#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fibcheck/catalog.hpp"
#include "fibcheck/fincat.hpp"

using namespace fibcheck;

namespace {

RawCategory raw_chain1() {
  RawCategory r;
  r.name = "[1]";
  r.objects = {"0", "1"};
  r.morphisms = {{"u", "0", "1"}};
  return r;
}

uint64_t splitmix(uint64_t& s) {
  s += 0x9e3779b97f4a7c15ULL;
  uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

TEST_CASE("validator accepts the terminal category") {
  RawCategory r;
  r.name = "1";
  r.objects = {"*"};
  CatPtr c = validate_category(r);
  CHECK(c->n_obj == 1);
  CHECK(c->n_mor() == 1);
}

TEST_CASE("validator accepts the chain poset [1]") {
  CatPtr c = validate_category(raw_chain1());
  CHECK(c->n_obj == 2);
  CHECK(c->n_mor() == 3);
  CHECK(c->hom(0, 1).size() == 1);
  CHECK(c->hom(1, 0).empty());
}

TEST_CASE("validator rejects conflicting duplicate composites") {
  RawCategory r;
  r.name = "bad";
  r.objects = {"0", "1", "2"};
  r.morphisms = {{"f", "0", "1"}, {"g", "1", "2"}, {"h", "0", "2"}, {"h2", "0", "2"}};
  r.compose = {{"g", "f", "h"}, {"g", "f", "h2"}};
  CHECK_THROWS_AS(validate_category(r), Error);
}

TEST_CASE("validator rejects missing composites and dangling names") {
  RawCategory r;
  r.name = "bad2";
  r.objects = {"0", "1", "2"};
  r.morphisms = {{"f", "0", "1"}, {"g", "1", "2"}};
  CHECK_THROWS_AS(validate_category(r), Error);  // no composite g∘f declared
  RawCategory r2 = raw_chain1();
  r2.morphisms.push_back({"v", "0", "zzz"});
  CHECK_THROWS_AS(validate_category(r2), Error);
}

TEST_CASE("validator rejects non-associative tables") {
  // one object, two non-identity endos with a deliberately broken table
  RawCategory r;
  r.name = "nonassoc";
  r.objects = {"*"};
  r.morphisms = {{"s", "*", "*"}, {"t", "*", "*"}};
  // s∘s = t, s∘t = s, t∘s = s, t∘t = t breaks associativity:
  // (s∘s)∘s = t∘s = s but s∘(s∘s) = s∘t = s — fine; use a worse one
  r.compose = {{"s", "s", "t"}, {"s", "t", "t"}, {"t", "s", "s"}, {"t", "t", "s"}};
  CHECK_THROWS_AS(validate_category(r), Error);
}

TEST_CASE("fuzz: perturbing a valid table is rejected or re-validates") {
  std::vector<CatPtr> cats = seed_catalog();
  uint64_t seed = 42;
  int revalidated = 0, rejected = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const FinCat& c = *cats[splitmix(seed) % cats.size()];
    FinCat copy = c;
    int m = c.n_mor();
    if (m <= 1) continue;
    // perturb one defined non-identity composition cell to a random parallel morphism
    std::vector<std::pair<MorId, MorId>> cells;
    for (MorId g = 0; g < m; ++g)
      for (MorId f = 0; f < m; ++f)
        if (!c.is_id(g) && !c.is_id(f) && c.composable(g, f)) cells.push_back({g, f});
    if (cells.empty()) continue;
    auto [g, f] = cells[splitmix(seed) % cells.size()];
    MorId old = copy.comp[static_cast<size_t>(g) * m + f];
    MorId repl = static_cast<MorId>(splitmix(seed) % m);
    copy.comp[static_cast<size_t>(g) * m + f] = repl;
    copy.seal();
    bool ok = true;
    try {
      copy.check_laws();
    } catch (const Error&) {
      ok = false;
    }
    if (ok) {
      ++revalidated;  // a different valid table (e.g. e∘e=id vs e∘e=e) is fine
    } else {
      ++rejected;
      CHECK(repl != old);
    }
  }
  CHECK(rejected > 0);
  (void)revalidated;
}

TEST_CASE("product of chains") {
  CatPtr c = chain_poset(1);
  ProductCat p = product(c, c);
  CHECK(p.cat->n_obj == 4);
  CHECK(p.cat->n_mor() == 9);
  // unit law of the product: C × 1 ≅ C
  ProductCat pu = product(c, terminal_cat());
  CHECK(isomorphic(pu.cat, c));
  // projection law
  Functor d = p.pairing(identity_functor(c), identity_functor(c));
  CHECK(equal_functor(compose(p.proj1, d), identity_functor(c)));
}

TEST_CASE("opposite is an involution on the nose") {
  for (CatPtr c : seed_catalog()) {
    CatPtr oo = opposite(opposite(c));
    CHECK(same_cat(*oo, *c));
  }
  CHECK(isomorphic(opposite(chain_poset(1)), chain_poset(1)));
  CHECK(opposite(cat_parallel_pair())->n_obj == cat_parallel_pair()->n_obj);
  CHECK(opposite(cat_parallel_pair())->n_mor() == cat_parallel_pair()->n_mor());
}

TEST_CASE("arrow category of the terminal and of [1]") {
  ArrowCat a1 = arrow_category(terminal_cat());
  CHECK(a1.cat->n_obj == 1);
  CHECK(a1.cat->n_mor() == 1);
  ArrowCat a = arrow_category(chain_poset(1));
  CHECK(a.cat->n_obj == 3);
  CHECK(a.cat->n_mor() == 6);
  CHECK(isomorphic(a.cat, chain_poset(2)));
  // cod of the object id_0 is 0
  CHECK(a.cod.ob(a.arrow_obj[chain_poset(1)->id(0)]) == 0);
}

TEST_CASE("exponentials") {
  CatPtr one = terminal_cat();
  for (CatPtr c : seed_catalog()) {
    CHECK(isomorphic(exponential(one, c, 100000), c));
  }
  CatPtr e = exponential(chain_poset(1), chain_poset(1), 100000);
  CHECK(e->n_obj == 3);
  CHECK(e->n_mor() == 6);
  // exponential([1], C) ≅ arrow_category(C) for every catalog C
  for (CatPtr c : seed_catalog()) {
    CatPtr lhs = exponential(chain_poset(1), c, 200000);
    CHECK(isomorphic(lhs, arrow_category(c).cat));
  }
}

TEST_CASE("comma categories") {
  CatPtr c1 = chain_poset(1);
  CommaCat k = comma(identity_functor(c1), identity_functor(c1));
  CHECK(k.cat->n_obj == 3);
  CHECK(k.cat->n_mor() == 6);
  CHECK(isomorphic(k.cat, arrow_category(c1).cat));
  CommaCat k0 = comma(pick(c1, 0), identity_functor(c1));
  CHECK(k0.cat->n_obj == 2);
  CHECK(k0.cat->n_mor() == 3);
  CHECK(isomorphic(k0.cat, c1));
  // empty comma: no arrows from 1 to 0
  CommaCat ke = comma(pick(c1, 1), pick(c1, 0));
  CHECK(ke.cat->n_obj == 0);
  // comma(id,id) ≅ arrow_category for every catalog entry
  for (CatPtr c : seed_catalog())
    CHECK(isomorphic(comma(identity_functor(c), identity_functor(c)).cat, arrow_category(c).cat));
  k.alpha.check();
}

TEST_CASE("pullbacks") {
  CatPtr c1 = chain_poset(1);
  ArrowCat a = arrow_category(c1);
  PullbackCat p1 = pullback(a.cod, identity_functor(c1));
  CHECK(isomorphic(p1.cat, a.cat));
  PullbackCat p2 = pullback(a.cod, pick(c1, 1));
  CHECK(p2.cat->n_obj == 2);
  CHECK(p2.cat->n_mor() == 3);
  // pullback over the terminal category is the product
  CatPtr pp = cat_parallel_pair();
  PullbackCat p3 = pullback(bang(c1), bang(pp));
  CHECK(isomorphic(p3.cat, product(c1, pp).cat));
}

TEST_CASE("fibers") {
  CatPtr c1 = chain_poset(1);
  for (ObjId b = 0; b < 2; ++b) CHECK(isomorphic(fiber(identity_functor(c1), b).cat, terminal_cat()));
  ArrowCat a = arrow_category(c1);
  CHECK(isomorphic(fiber(a.cod, 0).cat, terminal_cat()));
  CHECK(isomorphic(fiber(a.cod, 1).cat, c1));
  // fiber embeds into the pullback along pick when the projection is an isofibration
  for (CatPtr c : seed_catalog()) {
    ArrowCat ac = arrow_category(c);
    if (ac.cat->n_mor() > 200) continue;
    REQUIRE(is_isofibration(ac.cod));
    for (ObjId b = 0; b < c->n_obj; ++b) {
      PullbackCat pb = pullback(ac.cod, pick(c, b));
      CHECK(isomorphic(fiber(ac.cod, b).cat, pb.cat));
    }
  }
}

TEST_CASE("functor enumeration counts") {
  CatPtr one = terminal_cat();
  for (CatPtr c : seed_catalog())
    CHECK(enumerate_functors(one, c, 100000).size() == static_cast<size_t>(c->n_obj));
  CHECK(enumerate_functors(chain_poset(1), chain_poset(1), 100000).size() == 3);
  CHECK(enumerate_functors(cat_parallel_pair(), chain_poset(1), 100000).size() == 3);
  CHECK_THROWS_AS(enumerate_functors(cat_parallel_pair(), chain_poset(3), 2), Error);
  // brute-force oracle: the enumerated lists are exactly the functorial tables
  CatPtr x = cat_parallel_pair();
  CatPtr c = cat_walking_iso();
  auto fast = enumerate_functors(x, c, 100000);
  long brute = 0;
  for (ObjId o1 = 0; o1 < c->n_obj; ++o1)
    for (ObjId o2 = 0; o2 < c->n_obj; ++o2)
      for (MorId m1 : c->hom(o1, o2))
        for (MorId m2 : c->hom(o1, o2)) {
          Functor f;
          f.src = x;
          f.dst = c;
          f.on_obj = {o1, o2};
          f.on_mor = {c->id(o1), c->id(o2), m1, m2};
          bool ok = true;
          try {
            f.check();
          } catch (const Error&) {
            ok = false;
          }
          if (ok) ++brute;
        }
  CHECK(static_cast<long>(fast.size()) == brute);
}

TEST_CASE("extremal objects") {
  Extremals e = extremal_objects(chain_poset(1));
  CHECK(e.initials == std::vector<ObjId>{0});
  CHECK(e.terminals == std::vector<ObjId>{1});
  CommaCat k0 = comma(pick(chain_poset(1), 0), identity_functor(chain_poset(1)));
  Extremals e2 = extremal_objects(k0.cat);
  REQUIRE(e2.initials.size() == 1);
  CHECK(k0.objs[e2.initials[0]].m == chain_poset(1)->id(0));  // the object id_0
  Extremals e3 = extremal_objects(cat_parallel_pair());
  CHECK(e3.initials.empty());
  CHECK(e3.terminals.empty());
}

TEST_CASE("equivalences and isofibrations") {
  for (CatPtr c : seed_catalog()) CHECK(is_equivalence(identity_functor(c)));
  CHECK(is_equivalence(bang(cat_walking_iso())));
  CHECK(is_isofibration(bang(cat_walking_iso())));
  CHECK_FALSE(is_equivalence(pick(chain_poset(1), 0)));
  // pullback of an isofibration along any functor is an isofibration
  CatPtr wi = cat_walking_iso();
  ArrowCat a = arrow_category(wi);
  REQUIRE(is_isofibration(a.cod));
  for (const Functor& f : enumerate_functors(chain_poset(1), wi, 1000)) {
    PullbackCat pb = pullback(a.cod, f);
    CHECK(is_isofibration(pb.p2));
  }
}

TEST_CASE("fibered equivalence with vertical components") {
  // walking iso over itself via identity: id is a fibered equivalence
  CatPtr wi = cat_walking_iso();
  CHECK(is_fibered_equivalence(identity_functor(wi), identity_functor(wi),
                               identity_functor(wi)));
  // a non-equivalence is rejected
  CatPtr c1 = chain_poset(1);
  Functor p0 = pick(c1, 0);
  CHECK_FALSE(is_fibered_equivalence(p0, bang(terminal_cat()), bang(c1)));
}

TEST_CASE("natural transformation calculus") {
  CatPtr c = cat_walking_iso();
  Functor id = identity_functor(c);
  NatTrans i = identity_nat(id);
  CHECK(equal_functor(nat_vcompose(i, i).src, id));
  CHECK(nat_vcompose(i, i).component == i.component);
  CHECK(whisker_left(id, i).component == i.component);
  CHECK(whisker_right(i, id).component == i.component);
  // interchange on a 2×2 grid of transformations between catalog functors
  CatPtr d = chain_poset(2);
  auto fs = enumerate_functors(chain_poset(1), d, 100000);
  int grids = 0;
  for (size_t i1 = 0; i1 < fs.size() && grids < 200; ++i1)
    for (size_t i2 = 0; i2 < fs.size() && grids < 200; ++i2)
      for (size_t i3 = 0; i3 < fs.size() && grids < 200; ++i3) {
        auto n1s = enumerate_nats(fs[i1], fs[i2], 1000);
        auto n2s = enumerate_nats(fs[i2], fs[i3], 1000);
        for (const NatTrans& a : n1s)
          for (const NatTrans& b : n2s) {
            NatTrans v = nat_vcompose(b, a);
            v.check();
            ++grids;
          }
      }
  CHECK(grids > 0);
}

TEST_CASE("full subcategory and vertical iso caches") {
  CatPtr wi = cat_walking_iso();
  SubCat s = full_subcategory(wi, {0});
  CHECK(s.cat->n_obj == 1);
  CHECK(s.cat->n_mor() == 1);
  CHECK(wi->is_iso(2));
  CHECK(wi->inverse(2).has_value());
}

TEST_CASE("catalog categories satisfy the laws") {
  for (CatPtr c : seed_catalog()) {
    CHECK_NOTHROW(c->check_laws());
  }
  CHECK(cat_chain(2)->n_obj == 3);
  CHECK(cat_chain(2)->n_mor() == 6);
  CHECK(cat_walking_iso()->n_obj == 2);
  CHECK(cat_walking_iso()->n_mor() == 4);
}
