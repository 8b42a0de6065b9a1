#include "fibcheck/sample.hpp"

#include "fibcheck/catalog.hpp"

namespace fibcheck {

void enforce_caps(const FinCat& c, const SuiteConfig& cfg) {
  if (c.n_obj > cfg.max_objects || c.n_mor() > cfg.max_morphisms)
    fail(ErrorCode::SizeCapExceeded,
         "sampled category exceeds caps (" + std::to_string(c.n_obj) + " objects, " +
             std::to_string(c.n_mor()) + " morphisms)");
}

// ---- builders ----

CatPtr build_cat_recipe(const Json& r) {
  if (r.contains("cat")) return catalog_by_name(r.at("cat").get<std::string>());
  if (r.contains("objects")) return validate_category(raw_from_json(r));  // inline category
  std::string op = r.at("op").get<std::string>();
  if (op == "product") return product(build_cat_recipe(r.at("a")), build_cat_recipe(r.at("b"))).cat;
  if (op == "opposite") return opposite(build_cat_recipe(r.at("c")));
  if (op == "arrow") return arrow_category(build_cat_recipe(r.at("c"))).cat;
  if (op == "comma") {
    Functor f = build_fib_recipe(r.at("f"));
    Functor g = build_fib_recipe(r.at("g"));
    return comma(f, g).cat;
  }
  if (op == "pullback") {
    Functor f = build_fib_recipe(r.at("f"));
    Functor g = build_fib_recipe(r.at("g"));
    return pullback(f, g).cat;
  }
  fail(ErrorCode::ParseError, "unknown category recipe op '" + op + "'");
}

Functor build_fib_recipe(const Json& r) {
  std::string fn = r.at("fun").get<std::string>();
  if (fn == "id") return identity_functor(build_cat_recipe(r.at("c")));
  if (fn == "bang") return bang(build_cat_recipe(r.at("c")));
  if (fn == "pick") return pick(build_cat_recipe(r.at("c")), r.at("i").get<int>());
  if (fn == "cod") return arrow_category(build_cat_recipe(r.at("c"))).cod;
  if (fn == "dom") return arrow_category(build_cat_recipe(r.at("c"))).dom;
  if (fn == "proj1") {
    return product(build_cat_recipe(r.at("a")), build_cat_recipe(r.at("b"))).proj1;
  }
  if (fn == "proj2") {
    return product(build_cat_recipe(r.at("a")), build_cat_recipe(r.at("b"))).proj2;
  }
  if (fn == "comma_f" || fn == "comma_g") {
    CommaCat k = comma(build_fib_recipe(r.at("f")), build_fib_recipe(r.at("g")));
    return fn == "comma_f" ? k.pF : k.pG;
  }
  if (fn == "pullback1" || fn == "pullback2") {
    PullbackCat p = pullback(build_fib_recipe(r.at("f")), build_fib_recipe(r.at("g")));
    return fn == "pullback1" ? p.p1 : p.p2;
  }
  if (fn == "compose")
    return compose(build_fib_recipe(r.at("g")), build_fib_recipe(r.at("f")));
  if (fn == "op") return opposite_functor(build_fib_recipe(r.at("f")));
  if (fn == "prod") {
    Functor f = build_fib_recipe(r.at("f"));
    Functor g = build_fib_recipe(r.at("g"));
    ProductCat ps = product(f.src, g.src);
    ProductCat pd = product(f.dst, g.dst);
    return pd.pairing(compose(f, ps.proj1), compose(g, ps.proj2));
  }
  if (fn == "enum") {
    CatPtr x = build_cat_recipe(r.at("x"));
    CatPtr c = build_cat_recipe(r.at("c"));
    auto fs = enumerate_functors(x, c, 20000);
    if (fs.empty()) fail(ErrorCode::SizeCapExceeded, "enum recipe found no functors");
    return fs[r.at("i").get<int>() % fs.size()];
  }
  if (fn == "ts_xi") return build_twosided_recipe(r.at("p")).xi();
  if (fn == "ts_pi") return build_twosided_recipe(r.at("p")).pi();
  fail(ErrorCode::ParseError, "unknown functor recipe '" + fn + "'");
}

TwoSidedInstance build_twosided_recipe(const Json& r) {
  std::string ts = r.at("ts").get<std::string>();
  if (ts == "identity")
    return identity_instance(build_cat_recipe(r.at("a")), build_cat_recipe(r.at("b")));
  if (ts == "hom") return hom_span_instance(build_cat_recipe(r.at("c")));
  if (ts == "comma")
    return comma_span_instance(build_fib_recipe(r.at("f")), build_fib_recipe(r.at("g")));
  if (ts == "two_simplex") return two_simplex_instance(build_cat_recipe(r.at("c")));
  if (ts == "free") {
    SpanOut s = build_span_recipe(r.at("span"));
    return free_two_sided(s.xi, s.pi);
  }
  if (ts == "compose")
    return span_compose(build_twosided_recipe(r.at("p")), build_twosided_recipe(r.at("q")));
  if (ts == "pullback")
    return pullback_two_sided(build_twosided_recipe(r.at("p")), build_fib_recipe(r.at("k")),
                              build_fib_recipe(r.at("m")))
        .inst;
  if (ts == "whisker")
    return whisker_two_sided(build_twosided_recipe(r.at("p")), build_fib_recipe(r.at("k")),
                             build_fib_recipe(r.at("m")));
  if (ts == "product") {
    std::vector<TwoSidedInstance> ps;
    for (const Json& pr : r.at("ps")) ps.push_back(build_twosided_recipe(pr));
    return two_sided_product(ps).inst;
  }
  if (ts == "sliced_product") {
    std::vector<TwoSidedInstance> ps;
    for (const Json& pr : r.at("ps")) ps.push_back(build_twosided_recipe(pr));
    return two_sided_sliced_product(ps).inst;
  }
  if (ts == "cotensor")
    return two_sided_cotensor(build_cat_recipe(r.at("x")), build_twosided_recipe(r.at("p"))).inst;
  if (ts == "noncomm") return noncomm_instance();
  if (ts == "swap") return swap_legs(build_twosided_recipe(r.at("p")));
  if (ts == "span") {
    SpanOut s = build_span_recipe(r.at("span"));
    return make_instance(s.xi.dst, s.pi.dst, s.xi, s.pi);
  }
  fail(ErrorCode::ParseError, "unknown two-sided recipe '" + ts + "'");
}

SlicedMap build_sliced_recipe(const Json& r) {
  std::string sl = r.at("sl").get<std::string>();
  if (sl == "identity") {
    Functor pi = build_fib_recipe(r.at("pi"));
    return identity_sliced(pi);
  }
  if (sl == "over_b") {
    TwoSidedInstance p = build_twosided_recipe(r.at("p"));
    return SlicedMap{p.b, p.pi(), p.ab.proj2, p.phi};
  }
  if (sl == "over_a") {
    // the transposed map, sliced over A
    TwoSidedInstance p = build_twosided_recipe(r.at("p"));
    ProductCat ba = product(p.b, p.a);
    Functor swapped = ba.pairing(p.pi(), p.xi());
    return SlicedMap{p.a, p.xi(), ba.proj2, swapped};
  }
  if (sl == "compose_vert") {
    // φ = the comma codomain projection, sliced over its own base
    TwoSidedInstance p = build_twosided_recipe(r.at("p"));
    VertCat v = vertical_arrows(p.pi());
    Functor dom_of;
    dom_of.src = v.cat;
    dom_of.dst = p.total;
    dom_of.on_obj.resize(v.cat->n_obj);
    for (ObjId o = 0; o < v.cat->n_obj; ++o) dom_of.on_obj[o] = p.total->src(v.obj_arrow[o]);
    dom_of.on_mor.resize(v.cat->n_mor());
    for (MorId m = 0; m < v.cat->n_mor(); ++m) dom_of.on_mor[m] = v.square[m].first;
    return SlicedMap{p.b, compose(p.pi(), dom_of), p.pi(), dom_of};
  }
  fail(ErrorCode::ParseError, "unknown sliced recipe '" + sl + "'");
}

SpanOut build_span_recipe(const Json& r) {
  Functor xi = build_fib_recipe(r.at("xi"));
  Functor pi = build_fib_recipe(r.at("pi"));
  if (!same_cat(xi.src, pi.src)) fail(ErrorCode::BaseMismatch, "span recipe legs disagree");
  return SpanOut{xi, pi};
}

SlicedCospan build_cospan_recipe(const Json& r) {
  SlicedMap psi = build_sliced_recipe(r.at("psi"));
  SlicedMap phi = build_sliced_recipe(r.at("phi"));
  if (!same_cat(psi.pr_dst.src, phi.pr_dst.src) || !same_cat(psi.base, phi.base))
    fail(ErrorCode::BaseMismatch, "cospan recipe mismatch");
  return SlicedCospan{psi, phi};
}

// ---- samplers ----

namespace {

const char* kSmallCats[] = {"1",          "[1]",          "[2]",
                            "parallel_pair", "walking_iso", "walking_span",
                            "walking_cospan", "idempotent_monoid"};

Json leaf_cat(Rng& rng) {
  return Json{{"cat", kSmallCats[rng.below(static_cast<int>(std::size(kSmallCats)))]}};
}

}  // namespace

Json sample_cat_recipe(Rng& rng, const SuiteConfig& cfg, int depth) {
  int roll = rng.below(100);
  if (depth >= 2 || roll < 55) return leaf_cat(rng);
  if (roll < 70) return Json{{"op", "product"}, {"a", leaf_cat(rng)}, {"b", leaf_cat(rng)}};
  if (roll < 82) return Json{{"op", "opposite"}, {"c", sample_cat_recipe(rng, cfg, depth + 1)}};
  return Json{{"op", "arrow"}, {"c", leaf_cat(rng)}};
}

Json sample_fib_recipe(Rng& rng, const SuiteConfig& cfg) {
  int roll = rng.below(100);
  if (roll < 18) return Json{{"fun", "cod"}, {"c", sample_cat_recipe(rng, cfg, 1)}};
  if (roll < 30) return Json{{"fun", "dom"}, {"c", sample_cat_recipe(rng, cfg, 1)}};
  if (roll < 40) return Json{{"fun", "id"}, {"c", sample_cat_recipe(rng, cfg)}};
  if (roll < 50) return Json{{"fun", "bang"}, {"c", sample_cat_recipe(rng, cfg)}};
  if (roll < 58) {
    Json c = leaf_cat(rng);
    CatPtr cc = build_cat_recipe(c);
    return Json{{"fun", "pick"}, {"c", c}, {"i", rng.below(cc->n_obj)}};
  }
  if (roll < 68)
    return Json{{"fun", "proj1"}, {"a", leaf_cat(rng)}, {"b", leaf_cat(rng)}};
  if (roll < 76) {
    // comma projections over small cospans
    Json f = Json{{"fun", "pick"}, {"c", Json{{"cat", "[1]"}}}, {"i", rng.below(2)}};
    Json g = Json{{"fun", "id"}, {"c", Json{{"cat", "[1]"}}}};
    return Json{{"fun", rng.coin(50) ? "comma_f" : "comma_g"}, {"f", f}, {"g", g}};
  }
  if (roll < 84) {
    Json inner = Json{{"fun", rng.coin(50) ? "cod" : "dom"}, {"c", leaf_cat(rng)}};
    return Json{{"fun", "op"}, {"f", inner}};
  }
  if (roll < 92) {
    Json f = Json{{"fun", rng.coin(50) ? "cod" : "dom"}, {"c", leaf_cat(rng)}};
    Json g = Json{{"fun", "pick"}, {"c", leaf_cat(rng)}, {"i", 0}};
    // pullback of a leg along a point when the bases agree; retry otherwise
    Functor bf = build_fib_recipe(f);
    Json g2 = Json{{"fun", "pick"}, {"c", cat_to_json(*bf.dst)}, {"i", rng.below(bf.dst->n_obj)}};
    (void)g;
    return Json{{"fun", "pullback2"}, {"f", f}, {"g", g2}};
  }
  // a sampled plain functor between small categories
  Json x = leaf_cat(rng), c = leaf_cat(rng);
  return Json{{"fun", "enum"}, {"x", x}, {"c", c}, {"i", rng.below(50)}};
}

Json sample_twosided_recipe(Rng& rng, const SuiteConfig& cfg, bool closed_only) {
  int roll = rng.below(100);
  if (!closed_only) {
    if (roll < 4) return Json{{"ts", "noncomm"}};
    if (roll < 6) {
      // the fixture pushed through a two-sidedness-preserving construction
      int pick_op = rng.below(3);
      Json nc = Json{{"ts", "noncomm"}};
      if (pick_op == 0)
        return Json{{"ts", "cotensor"}, {"x", Json{{"cat", "[1]"}}}, {"p", nc}};
      if (pick_op == 1)
        return Json{{"ts", "sliced_product"},
                    {"ps", Json::array({nc, Json{{"ts", "identity"},
                                                 {"a", Json{{"cat", "[1]"}}},
                                                 {"b", Json{{"cat", "[1]"}}}}})}};
      return Json{{"ts", "swap"}, {"p", nc}};
    }
    if (roll < 12)
      return Json{{"ts", "swap"}, {"p", Json{{"ts", "hom"}, {"c", leaf_cat(rng)}}}};
    if (roll < 17) {
      // free instance over an arbitrary sampled span: two-sided, used as a
      // positive with nontrivial bifibers
      Json span =
          Json{{"xi", Json{{"fun", "cod"}, {"c", Json{{"cat", "[1]"}}}}},
               {"pi", Json{{"fun", "dom"}, {"c", Json{{"cat", "[1]"}}}}}};
      return Json{{"ts", "free"}, {"span", span}};
    }
    roll = 17 + rng.below(83);
  }
  if (roll < 35) return Json{{"ts", "hom"}, {"c", sample_cat_recipe(rng, cfg, 1)}};
  if (roll < 45)
    return Json{{"ts", "identity"}, {"a", leaf_cat(rng)}, {"b", leaf_cat(rng)}};
  if (roll < 55) {
    Json f = Json{{"fun", "pick"}, {"c", Json{{"cat", "[1]"}}}, {"i", rng.below(2)}};
    Json g = Json{{"fun", "id"}, {"c", Json{{"cat", "[1]"}}}};
    if (rng.coin(40)) {
      f = Json{{"fun", "id"}, {"c", leaf_cat(rng)}};
      g = f;
    }
    return Json{{"ts", "comma"}, {"f", f}, {"g", g}};
  }
  if (roll < 63) {
    // compose two hom-span style instances sharing a middle
    Json c = leaf_cat(rng);
    return Json{{"ts", "compose"}, {"p", Json{{"ts", "hom"}, {"c", c}}},
                {"q", Json{{"ts", "hom"}, {"c", c}}}};
  }
  if (roll < 72) {
    Json p = Json{{"ts", "hom"}, {"c", Json{{"cat", kSmallCats[rng.below(5)]}}}};
    TwoSidedInstance inst = build_twosided_recipe(p);
    Json k = Json{{"fun", "pick"}, {"c", cat_to_json(*inst.a)}, {"i", rng.below(inst.a->n_obj)}};
    Json m = Json{{"fun", "id"}, {"c", cat_to_json(*inst.b)}};
    if (rng.coin(50)) {
      k = Json{{"fun", "id"}, {"c", cat_to_json(*inst.a)}};
      m = Json{{"fun", "pick"}, {"c", cat_to_json(*inst.b)}, {"i", rng.below(inst.b->n_obj)}};
    }
    return Json{{"ts", "pullback"}, {"p", p}, {"k", k}, {"m", m}};
  }
  if (roll < 80) {
    Json p = Json{{"ts", "hom"}, {"c", Json{{"cat", "[1]"}}}};
    return Json{{"ts", "sliced_product"}, {"ps", Json::array({p, p})}};
  }
  if (roll < 88) {
    Json p = Json{{"ts", "identity"}, {"a", Json{{"cat", "[1]"}}}, {"b", leaf_cat(rng)}};
    Json q = Json{{"ts", "hom"}, {"c", Json{{"cat", kSmallCats[1 + rng.below(2)]}}}};
    return Json{{"ts", "product"}, {"ps", Json::array({p, rng.coin(50) ? q : p})}};
  }
  if (roll < 90) {
    Json c = leaf_cat(rng);
    Json span = Json{{"xi", Json{{"fun", "cod"}, {"c", c}}}, {"pi", Json{{"fun", "dom"}, {"c", c}}}};
    return Json{{"ts", "free"}, {"span", span}};
  }
  if (roll < 94) {
    // whiskering along a cod/dom pair on a small base
    Json c = Json{{"cat", "[1]"}};
    Json p = Json{{"ts", "hom"}, {"c", Json{{"op", "arrow"}, {"c", c}}}};
    return Json{{"ts", "whisker"}, {"p", p}, {"k", Json{{"fun", "cod"}, {"c", c}}},
                {"m", Json{{"fun", "dom"}, {"c", c}}}};
  }
  return Json{{"ts", "cotensor"}, {"x", Json{{"cat", rng.coin(50) ? "1" : "[1]"}}},
              {"p", Json{{"ts", "hom"}, {"c", Json{{"cat", "[1]"}}}}}};
}

Json sample_sliced_recipe(Rng& rng, const SuiteConfig& cfg) {
  int roll = rng.below(100);
  if (roll < 30)
    return Json{{"sl", "over_b"}, {"p", sample_twosided_recipe(rng, cfg, false)}};
  if (roll < 45) return Json{{"sl", "identity"}, {"pi", sample_fib_recipe(rng, cfg)}};
  if (roll < 70)
    return Json{{"sl", "over_a"}, {"p", sample_twosided_recipe(rng, cfg, false)}};
  return Json{{"sl", "compose_vert"}, {"p", Json{{"ts", "hom"}, {"c", leaf_cat(rng)}}}};
}

Json sample_cospan_recipe(Rng& rng, const SuiteConfig& cfg) {
  // cospans into a common G over a common base; built from one fibration
  Json pi = sample_fib_recipe(rng, cfg);
  Json psi = Json{{"sl", "identity"}, {"pi", pi}};
  if (rng.coin(50)) return Json{{"psi", psi}, {"phi", psi}};
  Json phi = Json{{"sl", "identity"}, {"pi", pi}};
  return Json{{"psi", psi}, {"phi", phi}};
}

Json sample_span_recipe(Rng& rng, const SuiteConfig& cfg) {
  (void)cfg;
  Json c = leaf_cat(rng);
  int roll = rng.below(100);
  if (roll < 40)
    return Json{{"xi", Json{{"fun", "cod"}, {"c", c}}}, {"pi", Json{{"fun", "dom"}, {"c", c}}}};
  if (roll < 60)
    return Json{{"xi", Json{{"fun", "id"}, {"c", c}}}, {"pi", Json{{"fun", "id"}, {"c", c}}}};
  if (roll < 80) {
    CatPtr cc = build_cat_recipe(c);
    return Json{{"xi", Json{{"fun", "pick"}, {"c", c}, {"i", rng.below(cc->n_obj)}}},
                {"pi", Json{{"fun", "pick"}, {"c", c}, {"i", rng.below(cc->n_obj)}}}};
  }
  return Json{{"xi", Json{{"fun", "bang"}, {"c", c}}}, {"pi", Json{{"fun", "id"}, {"c", c}}}};
}

}  // namespace fibcheck
