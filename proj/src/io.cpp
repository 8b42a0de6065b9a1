#include "fibcheck/io.hpp"

#include <fstream>
#include <set>

#include "fibcheck/catalog.hpp"

namespace fibcheck {

namespace {

// names must be unique for the file format; fall back to generated ones
std::vector<std::string> unique_obj_names(const FinCat& c) {
  std::vector<std::string> names(c.n_obj);
  std::set<std::string> seen;
  bool clash = false;
  for (ObjId x = 0; x < c.n_obj; ++x) {
    names[x] = c.obj_name(x);
    if (!seen.insert(names[x]).second) clash = true;
  }
  if (clash)
    for (ObjId x = 0; x < c.n_obj; ++x) names[x] = "o" + std::to_string(x);
  return names;
}

}  // namespace

Json cat_to_json(const FinCat& c) {
  Json j;
  j["name"] = c.name;
  std::vector<std::string> onames = unique_obj_names(c);
  std::vector<std::string> mnames(c.n_mor());
  std::set<std::string> seen;
  bool clash = false;
  for (MorId f = 0; f < c.n_mor(); ++f) {
    mnames[f] = c.is_id(f) ? "id_" + onames[f] : c.mor_name(f);
    if (!seen.insert(mnames[f]).second) clash = true;
  }
  if (clash)
    for (MorId f = 0; f < c.n_mor(); ++f)
      mnames[f] = c.is_id(f) ? "id_" + onames[f] : "m" + std::to_string(f);
  j["objects"] = onames;
  Json mors = Json::array();
  for (MorId f = 0; f < c.n_mor(); ++f) {
    if (c.is_id(f)) continue;
    mors.push_back({{"id", mnames[f]}, {"src", onames[c.src(f)]}, {"dst", onames[c.dst(f)]}});
  }
  j["morphisms"] = mors;
  Json comp = Json::array();
  for (MorId g = 0; g < c.n_mor(); ++g)
    for (MorId f = 0; f < c.n_mor(); ++f) {
      if (c.is_id(g) || c.is_id(f)) continue;
      if (!c.composable(g, f)) continue;
      comp.push_back({mnames[g], mnames[f], mnames[c.compose(g, f)]});
    }
  j["compose"] = comp;
  return j;
}

RawCategory raw_from_json(const Json& j) {
  RawCategory r;
  try {
    r.name = j.value("name", "");
    for (const auto& o : j.at("objects")) r.objects.push_back(o.get<std::string>());
    if (j.contains("morphisms"))
      for (const auto& m : j.at("morphisms"))
        r.morphisms.push_back({m.at("id").get<std::string>(), m.at("src").get<std::string>(),
                               m.at("dst").get<std::string>()});
    if (j.contains("compose"))
      for (const auto& t : j.at("compose")) {
        if (!t.is_array() || t.size() != 3)
          fail(ErrorCode::ParseError, "compose entries must be [g, f, gf] triples");
        r.compose.push_back({t[0].get<std::string>(), t[1].get<std::string>(),
                             t[2].get<std::string>()});
      }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("bad category file: ") + e.what());
  }
  return r;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("invalid JSON in '") + path + "': " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

CatPtr cat_ref(const Json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    try {
      return catalog_by_name(s);
    } catch (const Error&) {
      return validate_category(raw_from_json(load_json_file(s)));
    }
  }
  return validate_category(raw_from_json(j));
}

namespace {

ObjId obj_by_name(const FinCat& c, const std::string& n) {
  for (ObjId x = 0; x < c.n_obj; ++x)
    if (c.obj_name(x) == n) return x;
  fail(ErrorCode::DanglingId, "no object named '" + n + "'");
}

MorId mor_by_name(const FinCat& c, const std::string& n) {
  for (MorId f = 0; f < c.n_mor(); ++f)
    if (c.mor_name(f) == n) return f;
  // identities may be referenced as id_<obj>
  if (n.rfind("id_", 0) == 0) return c.id(obj_by_name(c, n.substr(3)));
  fail(ErrorCode::DanglingId, "no morphism named '" + n + "'");
}

}  // namespace

Json functor_to_json(const Functor& f) {
  Json j;
  j["src"] = cat_to_json(*f.src);
  j["dst"] = cat_to_json(*f.dst);
  for (ObjId x = 0; x < f.src->n_obj; ++x)
    j["on_objects"][f.src->obj_name(x)] = f.dst->obj_name(f.ob(x));
  Json mm = Json::object();
  for (MorId m = 0; m < f.src->n_mor(); ++m) {
    if (f.src->is_id(m)) continue;
    mm[f.src->mor_name(m)] = f.dst->mor_name(f.mo(m));
  }
  j["on_morphisms"] = mm;
  return j;
}

Functor functor_from_json(const Json& j) {
  Functor f;
  try {
    f.src = cat_ref(j.at("src"));
    f.dst = cat_ref(j.at("dst"));
    f.on_obj.assign(f.src->n_obj, -1);
    for (auto& [k, v] : j.at("on_objects").items())
      f.on_obj[obj_by_name(*f.src, k)] = obj_by_name(*f.dst, v.get<std::string>());
    for (ObjId x = 0; x < f.src->n_obj; ++x)
      if (f.on_obj[x] < 0) fail(ErrorCode::ParseError, "functor misses object " + f.src->obj_name(x));
    f.on_mor.assign(f.src->n_mor(), -1);
    for (ObjId x = 0; x < f.src->n_obj; ++x) f.on_mor[f.src->id(x)] = f.dst->id(f.on_obj[x]);
    if (j.contains("on_morphisms"))
      for (auto& [k, v] : j.at("on_morphisms").items())
        f.on_mor[mor_by_name(*f.src, k)] = mor_by_name(*f.dst, v.get<std::string>());
    for (MorId m = 0; m < f.src->n_mor(); ++m)
      if (f.on_mor[m] < 0)
        fail(ErrorCode::ParseError, "functor misses morphism " + f.src->mor_name(m));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("bad functor file: ") + e.what());
  }
  f.check();
  return f;
}

Json fibration_to_json(const Functor& pi) {
  Json j;
  j["kind"] = "fibration";
  j["components"] = {{"pi", functor_to_json(pi)}};
  return j;
}

Json sliced_to_json(const SlicedMap& m) {
  Json j;
  j["kind"] = "sliced";
  j["components"] = {{"phi", functor_to_json(m.map)},
                     {"xi", functor_to_json(m.pr_src)},
                     {"pi", functor_to_json(m.pr_dst)}};
  return j;
}

Json twosided_to_json(const TwoSidedInstance& inst) {
  Json j;
  j["kind"] = "two-sided";
  j["components"] = {{"xi", functor_to_json(inst.xi())}, {"pi", functor_to_json(inst.pi())}};
  return j;
}

InstanceFile instance_from_json(const Json& j) {
  InstanceFile out;
  try {
    out.kind = j.at("kind").get<std::string>();
    const Json& c = j.at("components");
    if (out.kind == "fibration") {
      out.pi = functor_from_json(c.at("pi"));
    } else if (out.kind == "sliced") {
      Functor phi = functor_from_json(c.at("phi"));
      Functor xi = functor_from_json(c.at("xi"));
      Functor pi = functor_from_json(c.at("pi"));
      SlicedMap m{xi.dst, xi, pi, phi};
      m.check();
      out.sliced = m;
    } else if (out.kind == "two-sided") {
      Functor xi = functor_from_json(c.at("xi"));
      Functor pi = functor_from_json(c.at("pi"));
      out.twosided = make_instance(xi.dst, pi.dst, xi, pi);
    } else {
      fail(ErrorCode::ParseError, "unknown instance kind '" + out.kind + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("bad instance file: ") + e.what());
  }
  return out;
}

}  // namespace fibcheck
