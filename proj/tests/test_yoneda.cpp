#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fibcheck/catalog.hpp"
#include "fibcheck/yoneda.hpp"

using namespace fibcheck;

TEST_CASE("section enumeration") {
  CatPtr c1 = chain_poset(1);
  TwoSidedInstance id = identity_instance(c1, c1);
  auto s = enumerate_sections(id);
  REQUIRE(s.size() == 1);
  CHECK(equal_functor(s[0], identity_functor(id.ab.cat)));
  // hom-span of [1]: a section picks an arrow b -> a for every (a,b); the
  // only candidate assigns id_0, id_1 on the diagonal and u at (1,0) — but
  // there is nothing over (0,1), so no section exists
  TwoSidedInstance h = hom_span_instance(c1);
  CHECK(enumerate_sections(h).empty());
  // hom-span of the walking iso has sections
  TwoSidedInstance hw = hom_span_instance(cat_walking_iso());
  CHECK(!enumerate_sections(hw).empty());
  // empty total, nonempty base: no sections
  Functor exa{empty_cat(), c1, {}, {}};
  TwoSidedInstance fe = free_two_sided(exa, exa);
  CHECK(enumerate_sections(fe).empty());
}

TEST_CASE("two-sided cartesian sections") {
  TwoSidedInstance id = identity_instance(chain_poset(1), chain_poset(1));
  auto s = enumerate_sections(id);
  REQUIRE(s.size() == 1);
  CHECK(is_ts_cartesian_section(id, s[0]));
  TwoSidedInstance hw = hom_span_instance(cat_walking_iso());
  int cartesian = 0;
  for (const Functor& sec : enumerate_sections(hw))
    if (is_ts_cartesian_section(hw, sec)) ++cartesian;
  CHECK(cartesian > 0);
}

TEST_CASE("yon on the identity instance returns the identity section") {
  CatPtr c1 = chain_poset(1);
  TwoSidedInstance id = identity_instance(c1, c1);
  // initial of A is 0, terminal of B is 1; the bifiber object is (0,1)
  Functor s = yon(id, 0, 1, id.ab.pair_obj(0, 1));
  CHECK(equal_functor(s, identity_functor(id.ab.cat)));
  CHECK(is_ts_cartesian_section(id, s));
}

TEST_CASE("yon on the walking-iso hom-span") {
  CatPtr wi = cat_walking_iso();
  TwoSidedInstance h = hom_span_instance(wi);
  Extremals ea = extremal_objects(wi);
  REQUIRE(!ea.initials.empty());
  ObjId a = ea.initials[0], b = extremal_objects(wi).terminals[0];
  FiberCat bf = bifiber(h, a, b);
  REQUIRE(bf.cat->n_obj >= 1);
  for (ObjId i = 0; i < bf.cat->n_obj; ++i) {
    Functor s = yon(h, a, b, bf.objs[i]);
    CHECK(is_ts_cartesian_section(h, s));
    CHECK(ev(h, s, a, b) == bf.objs[i]);
  }
}

TEST_CASE("yon error paths") {
  CatPtr c1 = chain_poset(1);
  TwoSidedInstance h = hom_span_instance(c1);
  CHECK_THROWS_AS(yon(h, 1, 1, 0), Error);  // 1 is not initial in [1]
}

TEST_CASE("yoneda_check on identity and walking-iso instances") {
  {
    CheckReport rep = yoneda_check(identity_instance(chain_poset(1), chain_poset(1)));
    INFO(rep.summary());
    CHECK(rep.all_true());
  }
  {
    CheckReport rep = yoneda_check(hom_span_instance(cat_walking_iso()));
    INFO(rep.summary());
    CHECK(rep.all_true());
  }
  {
    // hom-span of [1]: A = [1] has initial 0, B = [1] has terminal 1, the
    // bifiber at (0,1) is empty and there are no sections: vacuous pass
    CheckReport rep = yoneda_check(hom_span_instance(chain_poset(1)));
    INFO(rep.summary());
    CHECK(rep.all_true());
  }
  CHECK_THROWS_AS(yoneda_check(hom_span_instance(cat_parallel_pair())), Error);
}

TEST_CASE("dependent yoneda") {
  CatPtr c1 = chain_poset(1);
  {
    CheckReport rep = dependent_yoneda_check(identity_instance(c1, c1), 0, 1);
    INFO(rep.summary());
    CHECK(rep.all_true());
  }
  for (ObjId a = 0; a < 2; ++a)
    for (ObjId b = 0; b < 2; ++b) {
      CheckReport rep = dependent_yoneda_check(hom_span_instance(c1), a, b);
      INFO(rep.summary());
      CHECK(rep.all_true());
    }
  {
    CheckReport rep = dependent_yoneda_check(two_simplex_instance(c1), 1, 0);
    INFO(rep.summary());
    CHECK(rep.all_true());
  }
}
