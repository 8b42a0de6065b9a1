#include "fibcheck/catalog.hpp"

namespace fibcheck {

CatPtr cat_terminal() { return terminal_cat(); }

CatPtr cat_chain(int n) { return chain_poset(n); }

CatPtr cat_parallel_pair() {
  static CatPtr c = [] {
    CatBuilder b("parallel_pair");
    ObjId x = b.add_object("x"), y = b.add_object("y");
    b.add_mor(x, y, "f");
    b.add_mor(x, y, "g");
    return b.build(true);
  }();
  return c;
}

CatPtr cat_walking_iso() {
  static CatPtr c = [] {
    CatBuilder b("walking_iso");
    ObjId x = b.add_object("0"), y = b.add_object("1");
    MorId i = b.add_mor(x, y, "i");
    MorId j = b.add_mor(y, x, "j");
    b.set_comp(j, i, b.peek().id(x));
    b.set_comp(i, j, b.peek().id(y));
    return b.build(true);
  }();
  return c;
}

CatPtr cat_commutative_square() {
  static CatPtr c = [] {
    auto p = product(chain_poset(1), chain_poset(1));
    FinCat copy = *p.cat;
    copy.name = "commutative_square";
    auto out = std::make_shared<FinCat>(std::move(copy));
    out->seal();
    return CatPtr(out);
  }();
  return c;
}

CatPtr cat_walking_span() {
  static CatPtr c = [] {
    CatBuilder b("walking_span");
    ObjId a = b.add_object("a"), x = b.add_object("b"), s = b.add_object("c");
    b.add_mor(s, a, "l");
    b.add_mor(s, x, "r");
    return b.build(true);
  }();
  return c;
}

CatPtr cat_walking_cospan() {
  static CatPtr c = [] {
    CatBuilder b("walking_cospan");
    ObjId a = b.add_object("a"), x = b.add_object("b"), s = b.add_object("c");
    b.add_mor(a, s, "l");
    b.add_mor(x, s, "r");
    return b.build(true);
  }();
  return c;
}

CatPtr cat_idempotent_monoid() {
  static CatPtr c = [] {
    CatBuilder b("idempotent_monoid");
    ObjId s = b.add_object("*");
    MorId e = b.add_mor(s, s, "e");
    b.set_comp(e, e, e);
    return b.build(true);
  }();
  return c;
}

CatPtr cat_noncomm_total();

TwoSidedInstance noncomm_instance() {
  // objects: x over (0,0), y over (0,1), c0,c1 over (1,0), z over (1,1);
  // generators: w : c0->c1 vertical, alpha : x->c0 and beta : y->z over u,
  // gamma : x->y and delta : c1->z over v; one arrow x->z.
  CatBuilder b("noncomm");
  ObjId x = b.add_object("x"), y = b.add_object("y"), c0 = b.add_object("c0"),
        c1 = b.add_object("c1"), z = b.add_object("z");
  MorId w = b.add_mor(c0, c1, "w");
  MorId alpha = b.add_mor(x, c0, "alpha");
  MorId beta = b.add_mor(y, z, "beta");
  MorId gamma = b.add_mor(x, y, "gamma");
  MorId delta = b.add_mor(c1, z, "delta");
  MorId walpha = b.add_mor(x, c1, "w_alpha");
  MorId deltaw = b.add_mor(c0, z, "delta_w");
  MorId tau = b.add_mor(x, z, "tau");
  b.set_comp(w, alpha, walpha);
  b.set_comp(delta, w, deltaw);
  b.set_comp(delta, walpha, tau);
  b.set_comp(deltaw, alpha, tau);
  b.set_comp(beta, gamma, tau);
  CatPtr total = b.build(true);
  CatPtr ab = chain_poset(1);
  Functor xi, pi;
  xi.src = total;
  xi.dst = ab;
  pi.src = total;
  pi.dst = ab;
  xi.on_obj = {0, 0, 1, 1, 1};
  pi.on_obj = {0, 1, 0, 0, 1};
  MorId u01 = 2;  // the non-identity arrow of [1]
  auto idm = [&](ObjId o) { return ab->id(o); };
  xi.on_mor.resize(total->n_mor());
  pi.on_mor.resize(total->n_mor());
  for (ObjId o = 0; o < total->n_obj; ++o) {
    xi.on_mor[o] = idm(xi.on_obj[o]);
    pi.on_mor[o] = idm(pi.on_obj[o]);
  }
  xi.on_mor[w] = idm(1);
  pi.on_mor[w] = idm(0);
  xi.on_mor[alpha] = u01;
  pi.on_mor[alpha] = idm(0);
  xi.on_mor[beta] = u01;
  pi.on_mor[beta] = idm(1);
  xi.on_mor[gamma] = idm(0);
  pi.on_mor[gamma] = u01;
  xi.on_mor[delta] = idm(1);
  pi.on_mor[delta] = u01;
  xi.on_mor[walpha] = u01;
  pi.on_mor[walpha] = idm(0);
  xi.on_mor[deltaw] = idm(1);
  pi.on_mor[deltaw] = u01;
  xi.on_mor[tau] = u01;
  pi.on_mor[tau] = u01;
  xi.check();
  pi.check();
  return make_instance(ab, ab, xi, pi);
}

CatPtr cat_noncomm_total() {
  static CatPtr c = [] {
    FinCat copy = *noncomm_instance().total;
    auto out = std::make_shared<FinCat>(std::move(copy));
    out->seal();
    return CatPtr(out);
  }();
  return c;
}

std::vector<CatPtr> seed_catalog() {
  return {cat_terminal(),
          cat_chain(1),
          cat_chain(2),
          cat_chain(3),
          cat_parallel_pair(),
          cat_walking_iso(),
          cat_commutative_square(),
          cat_walking_span(),
          cat_walking_cospan(),
          cat_idempotent_monoid(),
          cat_noncomm_total()};
}

CatPtr catalog_by_name(const std::string& name) {
  for (const CatPtr& c : seed_catalog())
    if (c->name == name) return c;
  if (name == "[0]" || name == "1" || name == "terminal") return cat_terminal();
  if (name == "0" || name == "empty") return empty_cat();
  fail(ErrorCode::UnknownObject, "no catalog category named '" + name + "'");
}

}  // namespace fibcheck
