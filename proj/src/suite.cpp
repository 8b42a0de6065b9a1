#include "fibcheck/suite.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <sstream>
#include <thread>

#include "fibcheck/catalog.hpp"
#include "fibcheck/yoneda.hpp"

namespace fibcheck {

namespace {

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

// deterministic parallel map: recipes are drawn sequentially up front, the
// verdicts land in a pre-sized vector, merged in index order
template <typename F>
std::vector<std::pair<int, std::string>> parallel_eval(int n, int threads, F&& f) {
  std::vector<std::pair<int, std::string>> out(n);  // verdict: 1 ok, 0 fail, -1 skipped
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= n) return;
      out[i] = f(i);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

int thread_count(const SuiteConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(hw == 0 ? 2 : (hw > 4 ? 4 : hw));
}

struct CheckOutcome {
  bool ok = false;        // criteria agree / property verified
  bool positive = false;  // the underlying predicate held on this instance
  std::string detail;
};

struct Battery {
  std::string name;
  std::function<std::vector<Json>(const SuiteConfig&)> instances;
  std::function<CheckOutcome(const Json&, const SuiteConfig&)> check;
};

// ---- recipe helpers ----

Json cat_leaf(const std::string& name) { return Json{{"cat", name}}; }

std::vector<Json> catalog_fibrations() {
  std::vector<Json> out;
  for (const char* c : {"1", "[1]", "[2]", "parallel_pair", "walking_iso", "walking_span",
                        "idempotent_monoid"}) {
    out.push_back(Json{{"fun", "id"}, {"c", cat_leaf(c)}});
    out.push_back(Json{{"fun", "bang"}, {"c", cat_leaf(c)}});
    out.push_back(Json{{"fun", "cod"}, {"c", cat_leaf(c)}});
    out.push_back(Json{{"fun", "dom"}, {"c", cat_leaf(c)}});
  }
  out.push_back(Json{{"fun", "pick"}, {"c", cat_leaf("[1]")}, {"i", 0}});
  out.push_back(Json{{"fun", "pick"}, {"c", cat_leaf("[1]")}, {"i", 1}});
  out.push_back(Json{{"fun", "comma_g"},
                     {"f", Json{{"fun", "pick"}, {"c", cat_leaf("[1]")}, {"i", 0}}},
                     {"g", Json{{"fun", "id"}, {"c", cat_leaf("[1]")}}}});
  out.push_back(Json{{"fun", "ts_xi"}, {"p", Json{{"ts", "noncomm"}}}});
  out.push_back(Json{{"fun", "ts_pi"}, {"p", Json{{"ts", "noncomm"}}}});
  return out;
}

std::vector<Json> catalog_twosided() {
  std::vector<Json> out;
  for (const char* c : {"1", "[1]", "[2]", "parallel_pair", "walking_iso", "walking_span",
                        "idempotent_monoid"})
    out.push_back(Json{{"ts", "hom"}, {"c", cat_leaf(c)}});
  out.push_back(Json{{"ts", "identity"}, {"a", cat_leaf("[1]")}, {"b", cat_leaf("walking_iso")}});
  out.push_back(Json{{"ts", "comma"},
                     {"f", Json{{"fun", "pick"}, {"c", cat_leaf("[1]")}, {"i", 0}}},
                     {"g", Json{{"fun", "id"}, {"c", cat_leaf("[1]")}}}});
  out.push_back(Json{{"ts", "noncomm"}});
  out.push_back(Json{{"ts", "swap"}, {"p", Json{{"ts", "hom"}, {"c", cat_leaf("parallel_pair")}}}});
  out.push_back(Json{{"ts", "two_simplex"}, {"c", cat_leaf("[1]")}});
  // the separating fixture fed through the closure constructions
  out.push_back(Json{{"ts", "swap"}, {"p", Json{{"ts", "noncomm"}}}});
  out.push_back(Json{{"ts", "pullback"},
                     {"p", Json{{"ts", "noncomm"}}},
                     {"k", Json{{"fun", "pick"}, {"c", cat_leaf("[1]")}, {"i", 1}}},
                     {"m", Json{{"fun", "id"}, {"c", cat_leaf("[1]")}}}});
  out.push_back(Json{{"ts", "cotensor"}, {"x", cat_leaf("[1]")}, {"p", Json{{"ts", "noncomm"}}}});
  out.push_back(Json{{"ts", "sliced_product"},
                     {"ps", Json::array({Json{{"ts", "noncomm"}},
                                         Json{{"ts", "identity"},
                                              {"a", cat_leaf("[1]")},
                                              {"b", cat_leaf("[1]")}}})}});
  out.push_back(Json{{"ts", "compose"},
                     {"p", Json{{"ts", "noncomm"}}},
                     {"q", Json{{"ts", "identity"}, {"a", cat_leaf("[1]")}, {"b", cat_leaf("[1]")}}}});
  return out;
}

std::vector<Json> catalog_sliced() {
  std::vector<Json> out;
  for (const char* c : {"[1]", "walking_iso", "parallel_pair"}) {
    out.push_back(Json{{"sl", "over_b"}, {"p", Json{{"ts", "hom"}, {"c", cat_leaf(c)}}}});
    out.push_back(Json{{"sl", "identity"}, {"pi", Json{{"fun", "bang"}, {"c", cat_leaf(c)}}}});
  }
  out.push_back(Json{{"sl", "over_b"}, {"p", Json{{"ts", "noncomm"}}}});
  out.push_back(Json{{"sl", "over_b"},
                     {"p", Json{{"ts", "swap"}, {"p", Json{{"ts", "hom"}, {"c", cat_leaf("parallel_pair")}}}}}});
  out.push_back(Json{{"sl", "compose_vert"}, {"p", Json{{"ts", "hom"}, {"c", cat_leaf("[1]")}}}});
  return out;
}

void enforce_fib_caps(const Functor& f, const SuiteConfig& cfg) {
  enforce_caps(*f.src, cfg);
  enforce_caps(*f.dst, cfg);
}

// ---- batteries ----

CheckOutcome check_chevalley(const Json& r, const SuiteConfig& cfg) {
  Functor pi = build_fib_recipe(r);
  enforce_fib_caps(pi, cfg);
  bool elementary = is_cocartesian_fibration(pi);
  bool chev = chevalley_lari_check(pi);
  bool transport = transport_adjoint_check(pi);
  std::ostringstream d;
  d << "elementary=" << elementary << " chevalley=" << chev << " transport=" << transport;
  return {elementary == chev && chev == transport, elementary, d.str()};
}

CheckOutcome check_sliced(const Json& r, const SuiteConfig& cfg) {
  SlicedMap m = build_sliced_recipe(r);
  enforce_caps(*m.map.src, cfg);
  enforce_caps(*m.pr_dst.src, cfg);
  CheckReport rep = sliced_cocart_criteria_agree(m);
  return {rep.agree(), rep.all_true(), rep.summary()};
}

CheckOutcome check_cocart_left(const Json& r, const SuiteConfig& cfg) {
  TwoSidedInstance inst = build_twosided_recipe(r);
  enforce_caps(*inst.total, cfg);
  CheckReport rep = cocart_on_left_criteria_agree(inst);
  if (!rep.agree()) return {false, rep.all_true(), rep.summary()};
  CheckReport dual = cart_on_right_criteria_agree(inst);
  return {dual.agree(), rep.all_true(), rep.summary() + " | " + dual.summary()};
}

CheckOutcome check_two_sided_char(const Json& r, const SuiteConfig& cfg) {
  TwoSidedInstance inst = build_twosided_recipe(r);
  enforce_caps(*inst.total, cfg);
  CheckReport rep = two_sided_criteria_agree(inst);
  return {rep.agree(), rep.all_true(), rep.summary()};
}

CheckOutcome check_examples(const Json& r, const SuiteConfig& cfg) {
  (void)cfg;
  std::string which = r.at("example").get<std::string>();
  if (which == "hom") {
    CatPtr c = build_cat_recipe(r.at("c"));
    TwoSidedInstance h = hom_span_instance(c);
    bool ok = is_two_sided(h) && is_two_sided_discrete(h);
    return {ok, ok, "hom-span two-sided and discrete on " + c->name};
  }
  if (which == "comma") {
    TwoSidedInstance k = build_twosided_recipe(r.at("p"));
    bool ok = is_two_sided_discrete(k);
    return {ok, ok, "comma span discrete"};
  }
  if (which == "two-simplex") {
    CatPtr c1 = chain_poset(1);
    TwoSidedInstance comp = two_simplex_instance(c1);
    bool total_ok = isomorphic(comp.total, exponential(chain_poset(2), c1, 100000));
    FiberCat bf = bifiber(comp, 1, 0);
    bool size_ok = bf.cat->n_obj == 2;
    bool group = true;
    for (MorId m = 0; m < bf.cat->n_mor(); ++m) group &= bf.cat->is_iso(m);
    bool ok = total_ok && size_ok && !group && is_two_sided(comp);
    return {ok, ok, "A^Δ² span: total iso and bifiber of size 2, not discrete"};
  }
  return {false, false, "unknown example"};
}

CheckOutcome check_free(const Json& r, const SuiteConfig& cfg) {
  SpanOut s = build_span_recipe(r);
  enforce_fib_caps(s.xi, cfg);
  TwoSidedInstance fr = free_two_sided(s.xi, s.pi);
  enforce_caps(*fr.total, cfg);
  if (!is_two_sided(fr)) return {false, false, "free instance is not two-sided"};
  for (ObjId a = 0; a < s.xi.dst->n_obj; ++a)
    for (ObjId b = 0; b < s.pi.dst->n_obj; ++b) {
      CatPtr formula = free_bifiber_formula(s.xi, s.pi, a, b);
      if (!isomorphic(bifiber(fr, a, b).cat, formula))
        return {false, true, "bifiber formula mismatch at (" + std::to_string(a) + "," +
                                 std::to_string(b) + ")"};
    }
  return {true, true, "free fibration two-sided with matching bifibers"};
}

CheckOutcome check_closure(const Json& r, const SuiteConfig& cfg) {
  std::string op = r.at("closure").get<std::string>();
  if (op == "compose") {
    CatPtr c = build_cat_recipe(r.at("c"));
    enforce_caps(*c, cfg);
    TwoSidedInstance h = hom_span_instance(c);
    TwoSidedInstance comp = span_compose(h, h);
    enforce_caps(*comp.total, cfg);
    bool ok = is_two_sided(comp) && span_compose_lift_formula_check(h, h);
    return {ok, ok, "span composition preserves two-sidedness"};
  }
  TwoSidedInstance p = build_twosided_recipe(r.at("p"));
  enforce_caps(*p.total, cfg);
  if (!is_two_sided(p)) return {true, false, "input not two-sided; closure vacuous"};
  if (op == "pullback") {
    Functor k = build_fib_recipe(r.at("k"));
    Functor m = build_fib_recipe(r.at("m"));
    PulledBackInstance pb = pullback_two_sided(p, k, m);
    bool ok = is_two_sided(pb.inst) && is_two_sided_functor(pb.inst, p, pb.cmp);
    return {ok, ok, "pullback preserves two-sidedness and the cone is a two-sided functor"};
  }
  if (op == "whisker") {
    Functor k = build_fib_recipe(r.at("k"));
    Functor m = build_fib_recipe(r.at("m"));
    TwoSidedInstance w = whisker_two_sided(p, k, m);
    enforce_caps(*w.total, cfg);
    bool ok = is_two_sided(w);
    return {ok, ok, "whiskering preserves two-sidedness"};
  }
  if (op == "product") {
    ProductInstance pr = two_sided_product({p, p});
    enforce_caps(*pr.inst.total, cfg);
    bool ok = is_two_sided(pr.inst);
    for (const TwoSidedMap& cone : pr.cones) ok = ok && is_two_sided_functor(pr.inst, p, cone);
    return {ok, ok, "binary product two-sided with two-sided cones"};
  }
  if (op == "sliced_product") {
    ProductInstance pr = two_sided_sliced_product({p, p});
    enforce_caps(*pr.inst.total, cfg);
    bool ok = is_two_sided(pr.inst);
    for (const TwoSidedMap& cone : pr.cones) ok = ok && is_two_sided_functor(pr.inst, p, cone);
    // terminal universal property against the diagonal cone
    TwoSidedMap diag{identity_functor(p.total), identity_functor(p.a), identity_functor(p.b)};
    ok = ok && product_cone_universal_check(pr, {p, p}, p, {diag, diag});
    return {ok, ok, "sliced product two-sided with terminal cone"};
  }
  if (op == "cotensor") {
    CatPtr x = build_cat_recipe(r.at("x"));
    CotensorInstance ct = two_sided_cotensor(x, p, cfg.max_functor_candidates);
    enforce_caps(*ct.inst.total, cfg);
    bool ok = is_two_sided(ct.inst);
    if (x->n_obj == 1 && x->n_mor() == 1) ok = ok && isomorphic(ct.inst.total, p.total);
    return {ok, ok, "cotensor preserves two-sidedness"};
  }
  if (op == "leibniz") {
    Functor j = pick(chain_poset(1), r.at("end").get<int>());
    bool ok = leibniz_cotensor_functor_check(j, p, p, identity_functor(p.total),
                                             cfg.max_functor_candidates);
    return {ok, ok, "Leibniz cotensor square is a two-sided functor"};
  }
  if (op == "functor_pullback") {
    ProductInstance pr = two_sided_sliced_product({p, p});
    Functor k = pick(p.a, 0);
    Functor m = identity_functor(p.b);
    bool ok = two_sided_functor_pullback_stability_check(pr.inst, p, pr.cones[0].t, k, m);
    return {ok, ok, "pullback of a two-sided functor is two-sided"};
  }
  return {false, false, "unknown closure op"};
}

CheckOutcome check_yoneda(const Json& r, const SuiteConfig& cfg) {
  TwoSidedInstance inst = build_twosided_recipe(r.at("p"));
  enforce_caps(*inst.total, cfg);
  if (!is_two_sided(inst)) return {true, false, "not two-sided; yoneda vacuous"};
  Extremals ea = extremal_objects(inst.a);
  Extremals eb = extremal_objects(inst.b);
  if (ea.initials.empty() || eb.terminals.empty())
    return {true, false, "no extremal objects; yoneda vacuous"};
  CheckReport rep = yoneda_check(inst);
  if (!rep.all_true()) return {false, true, rep.summary()};
  if (r.value("dependent", false)) {
    for (ObjId a = 0; a < inst.a->n_obj; ++a)
      for (ObjId b = 0; b < inst.b->n_obj; ++b) {
        CheckReport dep = dependent_yoneda_check(inst, a, b);
        if (!dep.all_true())
          return {false, true,
                  dep.summary() + " at (" + std::to_string(a) + "," + std::to_string(b) + ")"};
      }
  }
  return {true, true, rep.summary()};
}

CheckOutcome check_discrete(const Json& r, const SuiteConfig& cfg) {
  TwoSidedInstance inst = build_twosided_recipe(r);
  enforce_caps(*inst.total, cfg);
  CheckReport rep = discrete_criteria_agree(inst);
  bool ok = rep.agree();
  // discrete implies two-sided is part of the report when applicable
  for (const auto& c : rep.criteria)
    if (c.label == "discrete-implies-two-sided") ok = ok && c.verdict;
  return {ok, rep.criteria.front().verdict, rep.summary()};
}

CheckOutcome check_appendix(const Json& r, const SuiteConfig& cfg) {
  std::string which = r.at("appendix").get<std::string>();
  if (which == "fibered-adjunction") {
    Functor pi = build_fib_recipe(r.at("pi"));
    enforce_fib_caps(pi, cfg);
    ChevalleyAux aux = chevalley_aux(pi);
    auto fa = find_fibered_left_adjoint(aux.iota, pi, aux.comma_to_base);
    if (fa) {
      CheckReport rep =
          fibered_adjunction_criteria_agree(aux.iota, fa->adj.left, pi, aux.comma_to_base);
      return {rep.agree() && rep.all_true(), true, rep.summary()};
    }
    // no adjoint: any fibered functor candidate must fail all three criteria
    auto cands = enumerate_lifts(pi, aux.comma_to_base, 2000);
    for (size_t i = 0; i < cands.size() && i < 3; ++i) {
      CheckReport rep = fibered_adjunction_criteria_agree(aux.iota, cands[i], pi,
                                                          aux.comma_to_base);
      if (!rep.agree() || rep.all_true()) return {false, false, rep.summary()};
    }
    return {true, false, "no fibered adjoint; candidates uniformly rejected"};
  }
  if (which == "right-properness") {
    // pull back an equivalence isofibration along every functor from a small shape
    CatPtr wi = cat_walking_iso();
    Functor k = bang(wi);  // equivalence and isofibration
    CatPtr shape = build_cat_recipe(r.at("c"));
    enforce_caps(*shape, cfg);
    for (const Functor& j : enumerate_functors(shape, terminal_cat(), 1000)) {
      PullbackCat pb = pullback(j, k);
      if (!is_equivalence(pb.p1)) return {false, true, "pullback of an equivalence is not one"};
    }
    // and a second equivalence: the identity on the shape
    PullbackCat pb2 = pullback(identity_functor(shape), identity_functor(shape));
    if (!is_equivalence(pb2.p1)) return {false, true, "identity pullback failed"};
    return {true, true, "pullbacks of weak equivalences are weak equivalences"};
  }
  if (which == "homotopy-invariance") {
    // map of cospans with equivalence verticals: 1 <- wi -> 1 over itself
    CatPtr wi = cat_walking_iso();
    CatPtr one = terminal_cat();
    Functor e = bang(wi);
    // top cospan: wi -> wi <- wi (identities); bottom: 1 -> 1 <- 1
    PullbackCat top = pullback(identity_functor(wi), identity_functor(wi));
    PullbackCat bottom = pullback(identity_functor(one), identity_functor(one));
    Functor induced = bottom.mediate(compose(e, top.p1), compose(e, top.p2));
    bool ok = is_equivalence(induced);
    return {ok, ok, "homotopy invariance of pullbacks"};
  }
  if (which == "prod-comma") {
    std::vector<SlicedCospan> data;
    for (const Json& cr : r.at("cospans")) data.push_back(build_cospan_recipe(cr));
    bool ok = prod_comma_commutation_check(data);
    return {ok, ok, "products commute with sliced commas, |I|=" + std::to_string(data.size())};
  }
  if (which == "fib-equiv-sliced-prod") {
    // a fibered equivalence over B, closed under binary sliced product
    CatPtr b = build_cat_recipe(r.at("c"));
    enforce_caps(*b, cfg);
    Functor idb = identity_functor(b);
    if (!is_fibered_equivalence(idb, idb, idb))
      return {false, true, "identity not fibered equiv"};
    SlicedProd sp = sliced_product({idb, idb});
    Functor diag = sp.factors[0];
    bool ok = is_fibered_equivalence(diag, sp.proj, idb);
    return {ok, ok, "sliced product of fibered equivalences"};
  }
  return {false, false, "unknown appendix check"};
}

// ---- instance streams ----

// the ambient setting works with isoinner fibrations, so iso-lifting is
// given; the strict elementary reading is only faithful for isofibrations
void require_isofibration(const Functor& f) {
  if (!is_isofibration(f))
    fail(ErrorCode::PreconditionFailed, "sampled functor is not an isofibration; resampled");
}

std::vector<Json> instances_chevalley(const SuiteConfig& cfg) {
  std::vector<Json> out = catalog_fibrations();
  Rng rng(cfg.seed ^ fnv1a("chevalley"));
  for (int i = 0; i < cfg.samples; ++i) {
    Json r;
    sample_with_retry(
        rng, cfg, [](Rng& g, const SuiteConfig& c) { return sample_fib_recipe(g, c); },
        [&](const Json& rec) {
          Functor f = build_fib_recipe(rec);
          enforce_fib_caps(f, cfg);
          require_isofibration(f);
          return f;
        },
        &r);
    out.push_back(r);
  }
  return out;
}

std::vector<Json> instances_sliced(const SuiteConfig& cfg) {
  std::vector<Json> out = catalog_sliced();
  Rng rng(cfg.seed ^ fnv1a("sliced"));
  int n = cfg.samples * 3 / 5;
  for (int i = 0; i < n; ++i) {
    Json r;
    sample_with_retry(
        rng, cfg, [](Rng& g, const SuiteConfig& c) { return sample_sliced_recipe(g, c); },
        [&](const Json& rec) {
          SlicedMap m = build_sliced_recipe(rec);
          enforce_caps(*m.map.src, cfg);
          enforce_caps(*m.pr_dst.src, cfg);
          return m;
        },
        &r);
    out.push_back(r);
  }
  return out;
}

std::vector<Json> instances_twosided(const SuiteConfig& cfg, const char* salt, int n,
                                     bool closed_only) {
  std::vector<Json> out = catalog_twosided();
  Rng rng(cfg.seed ^ fnv1a(salt));
  for (int i = 0; i < n; ++i) {
    Json r;
    sample_with_retry(
        rng, cfg,
        [&](Rng& g, const SuiteConfig& c) { return sample_twosided_recipe(g, c, closed_only); },
        [&](const Json& rec) {
          TwoSidedInstance inst = build_twosided_recipe(rec);
          enforce_caps(*inst.total, cfg);
          return inst.total;  // built fine
        },
        &r);
    out.push_back(r);
  }
  return out;
}

std::vector<Json> instances_examples(const SuiteConfig& cfg) {
  (void)cfg;
  std::vector<Json> out;
  for (CatPtr c : seed_catalog())
    out.push_back(Json{{"example", "hom"}, {"c", cat_to_json(*c)}});
  out.push_back(Json{{"example", "comma"},
                     {"p", Json{{"ts", "comma"},
                                {"f", Json{{"fun", "pick"}, {"c", cat_leaf("[1]")}, {"i", 0}}},
                                {"g", Json{{"fun", "id"}, {"c", cat_leaf("[1]")}}}}}});
  out.push_back(Json{{"example", "comma"},
                     {"p", Json{{"ts", "comma"},
                                {"f", Json{{"fun", "id"}, {"c", cat_leaf("walking_iso")}}},
                                {"g", Json{{"fun", "id"}, {"c", cat_leaf("walking_iso")}}}}}});
  out.push_back(Json{{"example", "two-simplex"}});
  return out;
}

std::vector<Json> instances_free(const SuiteConfig& cfg) {
  std::vector<Json> out;
  for (const char* c : {"1", "[1]", "walking_iso", "parallel_pair"}) {
    out.push_back(Json{{"xi", Json{{"fun", "cod"}, {"c", cat_leaf(c)}}},
                       {"pi", Json{{"fun", "dom"}, {"c", cat_leaf(c)}}}});
    out.push_back(Json{{"xi", Json{{"fun", "id"}, {"c", cat_leaf(c)}}},
                       {"pi", Json{{"fun", "id"}, {"c", cat_leaf(c)}}}});
  }
  out.push_back(Json{{"xi", Json{{"fun", "pick"}, {"c", cat_leaf("[1]")}, {"i", 1}}},
                     {"pi", Json{{"fun", "pick"}, {"c", cat_leaf("[1]")}, {"i", 0}}}});
  Rng rng(cfg.seed ^ fnv1a("free"));
  int n = cfg.samples / 5;
  for (int i = 0; i < n; ++i) {
    Json r;
    sample_with_retry(
        rng, cfg, [](Rng& g, const SuiteConfig& c) { return sample_span_recipe(g, c); },
        [&](const Json& rec) {
          SpanOut s = build_span_recipe(rec);
          enforce_fib_caps(s.xi, cfg);
          TwoSidedInstance fr = free_two_sided(s.xi, s.pi);
          enforce_caps(*fr.total, cfg);
          return s.xi;
        },
        &r);
    out.push_back(r);
  }
  return out;
}

std::vector<Json> instances_closure(const SuiteConfig& cfg) {
  std::vector<Json> out;
  Json hom1 = Json{{"ts", "hom"}, {"c", cat_leaf("[1]")}};
  Json homw = Json{{"ts", "hom"}, {"c", cat_leaf("walking_iso")}};
  Json id1 = Json{{"ts", "identity"}, {"a", cat_leaf("[1]")}, {"b", cat_leaf("[1]")}};
  for (const char* c : {"1", "[1]", "[2]", "walking_iso", "idempotent_monoid"})
    out.push_back(Json{{"closure", "compose"}, {"c", cat_leaf(c)}});
  for (const Json& p : {hom1, homw, id1}) {
    out.push_back(Json{{"closure", "pullback"},
                       {"p", p},
                       {"k", Json{{"fun", "pick"},
                                  {"c", p == id1 ? cat_leaf("[1]") : (p == hom1 ? cat_leaf("[1]") : cat_leaf("walking_iso"))},
                                  {"i", 0}}},
                       {"m", Json{{"fun", "id"},
                                  {"c", p == id1 ? cat_leaf("[1]") : (p == hom1 ? cat_leaf("[1]") : cat_leaf("walking_iso"))}}}});
    out.push_back(Json{{"closure", "product"}, {"p", p}});
    out.push_back(Json{{"closure", "sliced_product"}, {"p", p}});
    out.push_back(Json{{"closure", "cotensor"}, {"p", p}, {"x", cat_leaf("1")}});
  }
  out.push_back(Json{{"closure", "cotensor"}, {"p", hom1}, {"x", cat_leaf("[1]")}});
  out.push_back(Json{{"closure", "whisker"},
                     {"p", Json{{"ts", "hom"}, {"c", Json{{"op", "arrow"}, {"c", cat_leaf("[1]")}}}}},
                     {"k", Json{{"fun", "cod"}, {"c", cat_leaf("[1]")}}},
                     {"m", Json{{"fun", "dom"}, {"c", cat_leaf("[1]")}}}});
  out.push_back(Json{{"closure", "leibniz"}, {"p", hom1}, {"end", 0}});
  out.push_back(Json{{"closure", "leibniz"}, {"p", hom1}, {"end", 1}});
  out.push_back(Json{{"closure", "functor_pullback"}, {"p", hom1}});
  out.push_back(Json{{"closure", "functor_pullback"}, {"p", homw}});
  Rng rng(cfg.seed ^ fnv1a("closure"));
  int n = cfg.samples / 5;
  const char* ops[] = {"product", "sliced_product", "cotensor", "pullback"};
  for (int i = 0; i < n; ++i) {
    Json p;
    sample_with_retry(
        rng, cfg, [&](Rng& g, const SuiteConfig& c) { return sample_twosided_recipe(g, c, true); },
        [&](const Json& rec) {
          TwoSidedInstance inst = build_twosided_recipe(rec);
          enforce_caps(*inst.total, cfg);
          if (inst.total->n_mor() > cfg.max_morphisms / 2)
            fail(ErrorCode::SizeCapExceeded, "closure input too large");
          return inst.total;
        },
        &p);
    const char* op = ops[rng.below(4)];
    Json r{{"closure", op}, {"p", p}};
    if (std::string(op) == "cotensor") r["x"] = cat_leaf("1");
    if (std::string(op) == "pullback") {
      TwoSidedInstance inst = build_twosided_recipe(p);
      r["k"] = Json{{"fun", "pick"}, {"c", cat_to_json(*inst.a)}, {"i", rng.below(inst.a->n_obj)}};
      r["m"] = Json{{"fun", "id"}, {"c", cat_to_json(*inst.b)}};
    }
    out.push_back(r);
  }
  return out;
}

std::vector<Json> instances_yoneda(const SuiteConfig& cfg) {
  std::vector<Json> out;
  out.push_back(Json{{"p", Json{{"ts", "identity"}, {"a", cat_leaf("[1]")}, {"b", cat_leaf("[1]")}}},
                     {"dependent", true}});
  out.push_back(Json{{"p", Json{{"ts", "hom"}, {"c", cat_leaf("[1]")}}}, {"dependent", true}});
  out.push_back(Json{{"p", Json{{"ts", "hom"}, {"c", cat_leaf("walking_iso")}}}, {"dependent", false}});
  out.push_back(Json{{"p", Json{{"ts", "hom"}, {"c", cat_leaf("[2]")}}}, {"dependent", true}});
  out.push_back(Json{{"p", Json{{"ts", "two_simplex"}, {"c", cat_leaf("[1]")}}}, {"dependent", true}});
  out.push_back(Json{{"p", Json{{"ts", "free"},
                                {"span", Json{{"xi", Json{{"fun", "id"}, {"c", cat_leaf("[1]")}}},
                                              {"pi", Json{{"fun", "id"}, {"c", cat_leaf("[1]")}}}}}}},
                     {"dependent", false}});
  Rng rng(cfg.seed ^ fnv1a("yoneda"));
  int n = cfg.samples / 5;
  for (int i = 0; i < n; ++i) {
    Json p;
    sample_with_retry(
        rng, cfg, [&](Rng& g, const SuiteConfig& c) { return sample_twosided_recipe(g, c, true); },
        [&](const Json& rec) {
          TwoSidedInstance inst = build_twosided_recipe(rec);
          enforce_caps(*inst.total, cfg);
          return inst.total;
        },
        &p);
    out.push_back(Json{{"p", p}, {"dependent", rng.coin(30)}});
  }
  return out;
}

std::vector<Json> instances_appendix(const SuiteConfig& cfg) {
  std::vector<Json> out;
  for (const char* c : {"1", "[1]", "walking_iso"}) {
    out.push_back(Json{{"appendix", "fibered-adjunction"},
                       {"pi", Json{{"fun", "cod"}, {"c", cat_leaf(c)}}}});
    out.push_back(Json{{"appendix", "right-properness"}, {"c", cat_leaf(c)}});
    out.push_back(Json{{"appendix", "fib-equiv-sliced-prod"}, {"c", cat_leaf(c)}});
  }
  out.push_back(Json{{"appendix", "fibered-adjunction"},
                     {"pi", Json{{"fun", "dom"}, {"c", cat_leaf("parallel_pair")}}}});
  out.push_back(Json{{"appendix", "homotopy-invariance"}});
  // |I| = 0..3 for the product/comma commutation
  Json base_cospan =
      Json{{"psi", Json{{"sl", "identity"}, {"pi", Json{{"fun", "bang"}, {"c", cat_leaf("[1]")}}}}},
           {"phi", Json{{"sl", "identity"}, {"pi", Json{{"fun", "bang"}, {"c", cat_leaf("[1]")}}}}}};
  Json second =
      Json{{"psi", Json{{"sl", "identity"}, {"pi", Json{{"fun", "id"}, {"c", cat_leaf("walking_iso")}}}}},
           {"phi", Json{{"sl", "identity"}, {"pi", Json{{"fun", "id"}, {"c", cat_leaf("walking_iso")}}}}}};
  out.push_back(Json{{"appendix", "prod-comma"}, {"cospans", Json::array()}});
  out.push_back(Json{{"appendix", "prod-comma"}, {"cospans", Json::array({base_cospan})}});
  out.push_back(Json{{"appendix", "prod-comma"}, {"cospans", Json::array({base_cospan, second})}});
  out.push_back(
      Json{{"appendix", "prod-comma"}, {"cospans", Json::array({base_cospan, second, base_cospan})}});
  Rng rng(cfg.seed ^ fnv1a("appendix"));
  int n = cfg.samples / 5;
  for (int i = 0; i < n; ++i) {
    Json r;
    sample_with_retry(
        rng, cfg, [](Rng& g, const SuiteConfig& c) { return sample_fib_recipe(g, c); },
        [&](const Json& rec) {
          Functor f = build_fib_recipe(rec);
          enforce_fib_caps(f, cfg);
          require_isofibration(f);
          if (f.src->n_mor() > cfg.max_morphisms / 2)
            fail(ErrorCode::SizeCapExceeded, "appendix sample too large");
          return f;
        },
        &r);
    out.push_back(Json{{"appendix", "fibered-adjunction"}, {"pi", r}});
  }
  return out;
}

std::vector<Battery> all_batteries() {
  return {
      {"chevalley", instances_chevalley, check_chevalley},
      {"sliced-characterization", instances_sliced, check_sliced},
      {"cocart-on-left", [](const SuiteConfig& c) { return instances_twosided(c, "cocart-left", c.samples * 3 / 5, false); },
       check_cocart_left},
      {"two-sided-characterization",
       [](const SuiteConfig& c) { return instances_twosided(c, "two-sided", c.samples * 2 / 5, false); },
       check_two_sided_char},
      {"worked-examples", instances_examples, check_examples},
      {"free-fibration", instances_free, check_free},
      {"closure", instances_closure, check_closure},
      {"yoneda", instances_yoneda, check_yoneda},
      {"discrete", [](const SuiteConfig& c) { return instances_twosided(c, "discrete", c.samples * 3 / 5, false); },
       check_discrete},
      {"appendix", instances_appendix, check_appendix},
  };
}

const Battery* battery_by_name(const std::string& name) {
  static std::vector<Battery> bats = all_batteries();
  for (const Battery& b : bats)
    if (b.name == name) return &b;
  return nullptr;
}

// construction-tree pruning: replace the failing recipe by sub-recipes of the
// same kind while the failure persists
Json shrink_recipe(const Json& recipe, const SuiteConfig& cfg,
                   const std::function<bool(const Json&)>& still_fails) {
  auto kind_key = [](const Json& j) -> std::string {
    for (const char* k : {"ts", "fun", "sl", "op", "cat"})
      if (j.is_object() && j.contains(k)) return k;
    return "";
  };
  std::string key = kind_key(recipe);
  if (key.empty()) return recipe;
  Json current = recipe;
  bool progressed = true;
  int guard = 0;
  while (progressed && guard++ < 24) {
    progressed = false;
    std::vector<Json> candidates;
    for (auto& [k, v] : current.items()) {
      (void)k;
      if (kind_key(v) == key) candidates.push_back(v);
      if (v.is_array())
        for (const Json& e : v)
          if (kind_key(e) == key) candidates.push_back(e);
    }
    for (const Json& cand : candidates) {
      try {
        if (still_fails(cand)) {
          current = cand;
          progressed = true;
          break;
        }
      } catch (const Error&) {
      }
    }
  }
  (void)cfg;
  return current;
}

}  // namespace

std::vector<std::string> suite_theorem_names() {
  std::vector<std::string> out;
  for (const Battery& b : all_batteries()) out.push_back(b.name);
  return out;
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  SuiteReport report;
  report.config = cfg;
  std::vector<Battery> bats = all_batteries();
  for (const Battery& b : bats) {
    if (!cfg.theorems.empty()) {
      bool wanted = false;
      for (const std::string& t : cfg.theorems) wanted |= (t == b.name);
      if (!wanted) continue;
    }
    auto t0 = std::chrono::steady_clock::now();
    TheoremResult res;
    res.name = b.name;
    std::vector<Json> recipes = b.instances(cfg);
    auto verdicts = parallel_eval(
        static_cast<int>(recipes.size()), thread_count(cfg),
        [&](int i) -> std::pair<int, std::string> {
          try {
            CheckOutcome oc = b.check(recipes[i], cfg);
            return {oc.ok ? (oc.positive ? 2 : 1) : 0, oc.detail};
          } catch (const Error& e) {
            if (e.code == ErrorCode::SizeCapExceeded) return {-1, e.what()};
            return {0, std::string("error: ") + e.what()};
          }
        });
    for (size_t i = 0; i < verdicts.size(); ++i) {
      if (verdicts[i].first < 0) continue;  // skipped by caps
      ++res.instances;
      if (verdicts[i].first == 2) ++res.positives;
      if (verdicts[i].first >= 1) {
        ++res.agreements;
      } else {
        ++res.disagreements;
        Json shrunk = shrink_recipe(recipes[i], cfg, [&](const Json& r2) {
          try {
            return !b.check(r2, cfg).ok;
          } catch (const Error&) {
            return false;
          }
        });
        Json ce;
        ce["theorem"] = b.name;
        ce["recipe"] = recipes[i];
        ce["shrunk"] = shrunk;
        ce["detail"] = verdicts[i].second;
        res.counterexamples.push_back(ce);
      }
    }
    res.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
    report.theorems.push_back(std::move(res));
  }
  return report;
}

bool replay_counterexample(const Json& ce) {
  const Battery* b = battery_by_name(ce.at("theorem").get<std::string>());
  if (!b) fail(ErrorCode::ParseError, "unknown theorem in counterexample");
  SuiteConfig cfg;
  try {
    return !b->check(ce.at("recipe"), cfg).ok;
  } catch (const Error&) {
    return true;  // errors reproduce the red verdict
  }
}

Json SuiteReport::to_json(bool with_timing) const {
  Json j;
  j["config"] = {{"seed", config.seed},
                 {"samples", config.samples},
                 {"max_objects", config.max_objects},
                 {"max_morphisms", config.max_morphisms},
                 {"max_functor_candidates", config.max_functor_candidates}};
  Json ts = Json::array();
  for (const TheoremResult& t : theorems) {
    Json e;
    e["theorem"] = t.name;
    e["instances"] = t.instances;
    e["agreements"] = t.agreements;
    e["disagreements"] = t.disagreements;
    e["positives"] = t.positives;
    e["counterexamples"] = t.counterexamples;
    if (with_timing) e["wall_ms"] = t.wall_ms;
    ts.push_back(e);
  }
  j["theorems"] = ts;
  j["ok"] = ok();
  return j;
}

std::string SuiteReport::to_text() const {
  std::ostringstream out;
  out << "suite seed=" << config.seed << " samples=" << config.samples << "\n";
  for (const TheoremResult& t : theorems) {
    out << (t.disagreements == 0 ? "  PASS " : "  FAIL ") << t.name << ": " << t.instances
        << " instances (" << t.positives << " positive), " << t.agreements << " agree, "
        << t.disagreements << " disagree (" << static_cast<long>(t.wall_ms) << " ms)\n";
    for (const Json& ce : t.counterexamples)
      out << "    counterexample: " << ce.at("shrunk").dump() << " — "
          << ce.at("detail").get<std::string>() << "\n";
  }
  out << (ok() ? "ALL GREEN" : "DISAGREEMENTS FOUND") << "\n";
  return out.str();
}

// ---- mutation corpus ----

std::vector<Mutant> mutation_corpus() {
  std::vector<Mutant> out;
  auto add = [&](const std::string& cat, MorId g, MorId f, MorId val, const std::string& note) {
    Json edit;
    edit["cat"] = cat;
    edit["cell"] = {g, f};
    edit["value"] = val;
    out.push_back({cat + ":" + std::to_string(g) + "," + std::to_string(f) + "->" +
                       std::to_string(val) + " (" + note + ")",
                   edit});
  };
  // [2]: morphisms 0,1,2 = ids; 3 = 0->1, 4 = 0->2, 5 = 1->2; compose(5,3)=4
  add("[2]", 5, 3, 3, "wrong boundary composite");
  add("[2]", 5, 3, 5, "wrong boundary composite");
  add("[2]", 5, 3, 0, "composite forced to an identity");
  add("[2]", 5, 3, 2, "composite forced to the far identity");
  // [3]: ids 0..3; arrows 4=01,5=02,6=03,7=12,8=13,9=23
  add("[3]", 7, 4, 4, "assoc breaker");
  add("[3]", 7, 4, 6, "assoc breaker");
  add("[3]", 9, 7, 5, "assoc breaker");
  add("[3]", 9, 5, 4, "assoc breaker");
  add("[3]", 8, 4, 5, "assoc breaker");
  // walking_iso: ids 0,1; i=2: 0->1, j=3: 1->0; compose(j,i)=0, compose(i,j)=1
  add("walking_iso", 3, 2, 2, "boundary breaker");
  add("walking_iso", 3, 2, 3, "boundary breaker");
  add("walking_iso", 2, 3, 0, "boundary breaker");
  // idempotent monoid: id 0, e = 1 with e∘e = e; point e∘e at a boundary-broken slot
  add("idempotent_monoid", 1, 1, 2, "composite out of range");
  // commutative_square = [1]×[1]: 4 ids 0..3; arrows 4..8, diagonal = 8
  add("commutative_square", 8, 4, 4, "diagonal breaker");
  add("commutative_square", 8, 4, 6, "diagonal breaker");
  add("commutative_square", 7, 4, 5, "path collapse");
  add("commutative_square", 8, 5, 6, "path collapse");
  // parallel_pair has no non-identity composites; retarget a morphism instead
  {
    Json edit;
    edit["cat"] = "parallel_pair";
    edit["retarget"] = {2, 0};  // f becomes an endo of x
    out.push_back({"parallel_pair:retarget f to x", edit});
  }
  {
    Json edit;
    edit["cat"] = "walking_span";
    edit["retarget"] = {3, 2};  // l lands on c instead of a
    out.push_back({"walking_span:retarget l", edit});
  }
  {
    Json edit;
    edit["cat"] = "[1]";
    edit["retarget"] = {2, 0};  // u becomes an endo, table now under-defined
    out.push_back({"[1]:retarget u", edit});
  }
  add("[2]", 5, 4, 4, "non-composable cell filled");
  add("walking_iso", 2, 2, 1, "non-composable cell filled");
  return out;
}

CatPtr build_mutant_cat(const Json& edit) {
  CatPtr base = catalog_by_name(edit.at("cat").get<std::string>());
  FinCat copy = *base;
  if (edit.contains("cell")) {
    int g = edit.at("cell")[0].get<int>();
    int f = edit.at("cell")[1].get<int>();
    copy.comp[static_cast<size_t>(g) * copy.n_mor() + f] = edit.at("value").get<int>();
  }
  if (edit.contains("retarget")) {
    int m = edit.at("retarget")[0].get<int>();
    copy.mors[m].dst = edit.at("retarget")[1].get<int>();
  }
  auto out = std::make_shared<FinCat>(std::move(copy));
  out->seal();
  return out;
}

std::vector<MutationOutcome> run_mutation_suite() {
  std::vector<MutationOutcome> results;
  for (const Mutant& m : mutation_corpus()) {
    MutationOutcome oc;
    oc.mutant = m.name;
    CatPtr cat = build_mutant_cat(m.edit);
    // the validator is the first suite in line
    try {
      cat->check_laws();
    } catch (const Error& e) {
      oc.killed = true;
      oc.killed_by = "validate";
      oc.counterexample = Json{{"mutant", m.edit}, {"error", e.what()}};
    }
    // feed the raw table to the decision procedures regardless: a broken
    // table must also derail the oracle equivalences, not only the validator
    std::string battery_kill;
    Json battery_ce;
    try {
      Functor id = identity_functor(cat);
      ArrowCat a = arrow_category(cat);
      for (const Functor& pi : {a.cod, a.dom, id, bang(cat)}) {
        bool elementary = is_cocartesian_fibration(pi);
        if (elementary != chevalley_lari_check(pi) || elementary != transport_adjoint_check(pi)) {
          battery_kill = "chevalley";
          battery_ce = Json{{"mutant", m.edit}, {"pi", pi.name}};
          break;
        }
      }
      if (battery_kill.empty()) {
        TwoSidedInstance h = hom_span_instance(cat);
        CheckReport rep = two_sided_criteria_agree(h);
        if (!rep.agree()) {
          battery_kill = "two-sided-characterization";
          battery_ce = Json{{"mutant", m.edit}, {"detail", rep.summary()}};
        } else {
          CheckReport dr = discrete_criteria_agree(h);
          if (!dr.agree()) {
            battery_kill = "discrete";
            battery_ce = Json{{"mutant", m.edit}, {"detail", dr.summary()}};
          }
        }
      }
    } catch (const std::exception& e) {
      // invalid tables may also crash the constructions themselves
      battery_kill = "construction";
      battery_ce = Json{{"mutant", m.edit}, {"error", e.what()}};
    }
    if (!battery_kill.empty()) {
      if (!oc.killed) {
        oc.killed = true;
        oc.killed_by = battery_kill;
        oc.counterexample = battery_ce;
      } else {
        oc.killed_by += "+" + battery_kill;
      }
    }
    results.push_back(oc);
  }
  return results;
}

}  // namespace fibcheck
