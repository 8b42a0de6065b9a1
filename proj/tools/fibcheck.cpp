#include <CLI11.hpp>
#include <iostream>

#include "fibcheck/catalog.hpp"
#include "fibcheck/io.hpp"
#include "fibcheck/suite.hpp"
#include "fibcheck/yoneda.hpp"

using namespace fibcheck;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;

int exit_code_for(const Error& e) {
  switch (e.code) {
    case ErrorCode::SizeCapExceeded: return kExitCap;
    default: return kExitInput;
  }
}

InstanceFile load_instance(const std::string& path) {
  return instance_from_json(load_json_file(path));
}

int print_report(const CheckReport& rep) {
  for (const auto& c : rep.criteria)
    std::cout << "  " << c.label << ": " << (c.verdict ? "true" : "false")
              << (c.witness.empty() ? "" : "  [" + c.witness + "]") << "\n";
  if (!rep.agree()) {
    std::cout << "DISAGREEMENT between equivalent criteria\n";
    return kExitNegative;
  }
  std::cout << (rep.all_true() ? "PASS" : "NEGATIVE (criteria agree)") << "\n";
  return rep.all_true() ? kExitOk : kExitNegative;
}

int run_validate(const std::string& file) {
  CatPtr c = validate_category(raw_from_json(load_json_file(file)));
  std::cout << "valid category '" << c->name << "': " << c->n_obj << " objects, " << c->n_mor()
            << " morphisms\n";
  return kExitOk;
}

int run_check(const std::string& kind, const std::string& method, const std::string& file) {
  InstanceFile inst = load_instance(file);
  if (kind == "cocart" || kind == "cart" || kind == "discrete") {
    if (!inst.pi) fail(ErrorCode::ParseError, "this kind needs a fibration instance");
    Functor pi = *inst.pi;
    if (kind == "discrete") {
      bool op = is_discrete_opfibration(pi);
      bool fib = is_discrete_fibration(pi);
      std::cout << "  discrete-opfibration: " << op << "\n  discrete-fibration: " << fib << "\n";
      return op ? kExitOk : kExitNegative;
    }
    if (kind == "cart") pi = opposite_functor(pi);
    CheckReport rep;
    rep.name = kind;
    if (method == "elementary" || method == "all")
      rep.add("elementary", is_cocartesian_fibration(pi));
    if (method == "chevalley" || method == "all") rep.add("chevalley-lari", chevalley_lari_check(pi));
    if (method == "adjoint" || method == "all")
      rep.add("transport-adjoint", transport_adjoint_check(pi));
    return print_report(rep);
  }
  if (kind == "sliced-cocart") {
    if (!inst.sliced) fail(ErrorCode::ParseError, "this kind needs a sliced instance");
    if (method == "elementary") {
      CheckReport rep;
      rep.name = kind;
      rep.add("elementary", is_sliced_cocartesian(*inst.sliced));
      return print_report(rep);
    }
    return print_report(sliced_cocart_criteria_agree(*inst.sliced));
  }
  if (!inst.twosided) fail(ErrorCode::ParseError, "this kind needs a two-sided instance");
  const TwoSidedInstance& p = *inst.twosided;
  if (kind == "cocart-on-left") {
    if (method == "elementary") {
      CheckReport rep;
      rep.name = kind;
      rep.add("elementary", is_cocart_on_left(p));
      return print_report(rep);
    }
    return print_report(cocart_on_left_criteria_agree(p));
  }
  if (kind == "two-sided") {
    if (method == "elementary") {
      CheckReport rep;
      rep.name = kind;
      rep.add("elementary", is_two_sided(p));
      return print_report(rep);
    }
    return print_report(two_sided_criteria_agree(p));
  }
  if (kind == "two-sided-discrete") return print_report(discrete_criteria_agree(p));
  fail(ErrorCode::ParseError, "unknown check kind '" + kind + "'");
}

int run_construct(const std::string& op, const std::vector<std::string>& args,
                  const std::string& out) {
  auto fun = [&](size_t i) { return functor_from_json(load_json_file(args.at(i))); };
  auto cat = [&](size_t i) { return cat_ref(Json(args.at(i))); };
  Json result;
  if (op == "arrow") {
    result = cat_to_json(*arrow_category(cat(0)).cat);
  } else if (op == "product") {
    result = cat_to_json(*product(cat(0), cat(1)).cat);
  } else if (op == "exponential") {
    result = cat_to_json(*exponential(cat(0), cat(1), 20000));
  } else if (op == "comma") {
    result = cat_to_json(*comma(fun(0), fun(1)).cat);
  } else if (op == "pullback") {
    result = cat_to_json(*pullback(fun(0), fun(1)).cat);
  } else if (op == "opposite") {
    result = cat_to_json(*opposite(cat(0)));
  } else if (op == "vert") {
    result = cat_to_json(*vertical_arrows(fun(0)).cat);
  } else if (op == "span-compose") {
    InstanceFile p = load_instance(args.at(0));
    InstanceFile q = load_instance(args.at(1));
    if (!p.twosided || !q.twosided) fail(ErrorCode::ParseError, "span-compose needs two-sided instances");
    result = twosided_to_json(span_compose(*p.twosided, *q.twosided));
  } else if (op == "free2s") {
    result = twosided_to_json(free_two_sided(fun(0), fun(1)));
  } else if (op == "cotensor") {
    InstanceFile p = load_instance(args.at(1));
    if (!p.twosided) fail(ErrorCode::ParseError, "cotensor needs a two-sided instance");
    result = twosided_to_json(two_sided_cotensor(cat(0), *p.twosided).inst);
  } else if (op == "sliced-comma") {
    // args: psi phi g-over-base
    Functor psi = fun(0), phi = fun(1), g = fun(2);
    result = cat_to_json(*sliced_comma(psi, phi, g).cat);
  } else if (op == "sliced-product") {
    std::vector<Functor> pis;
    for (size_t i = 0; i < args.size(); ++i) pis.push_back(fun(i));
    result = cat_to_json(*sliced_product(pis).cat);
  } else {
    fail(ErrorCode::ParseError, "unknown construct op '" + op + "'");
  }
  if (out.empty())
    std::cout << result.dump(2) << "\n";
  else
    write_json_file(out, result);
  return kExitOk;
}

int run_yoneda(const std::string& file, const std::string& at) {
  InstanceFile inst = load_instance(file);
  if (!inst.twosided) fail(ErrorCode::ParseError, "yoneda needs a two-sided instance");
  if (!at.empty()) {
    auto comma_pos = at.find(',');
    if (comma_pos == std::string::npos) fail(ErrorCode::ParseError, "--at expects a,b");
    int a = std::stoi(at.substr(0, comma_pos));
    int b = std::stoi(at.substr(comma_pos + 1));
    return print_report(dependent_yoneda_check(*inst.twosided, a, b));
  }
  return print_report(yoneda_check(*inst.twosided));
}

int run_suite_cmd(const SuiteConfig& cfg) {
  SuiteReport rep = run_suite(cfg);
  if (cfg.report_format == "json")
    std::cout << rep.to_json().dump(2) << "\n";
  else
    std::cout << rep.to_text();
  return rep.ok() ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fibcheck — a verification laboratory for two-sided cartesian fibrations of finite categories"};
  app.require_subcommand(1);

  std::string file, kind, method = "all", at, out, op;
  std::vector<std::string> args;
  SuiteConfig cfg;
  std::string theorems;

  auto* validate = app.add_subcommand("validate", "validate a category file");
  validate->add_option("file", file)->required();

  auto* check = app.add_subcommand("check", "run a fibration check on an instance file");
  check->add_option("--kind", kind)
      ->required()
      ->check(CLI::IsMember({"cocart", "cart", "discrete", "sliced-cocart", "cocart-on-left",
                             "two-sided", "two-sided-discrete"}));
  check->add_option("--method", method)->check(CLI::IsMember({"elementary", "chevalley", "adjoint", "all"}));
  check->add_option("instance", file)->required();

  auto* construct = app.add_subcommand("construct", "build a categorical construction");
  construct->add_option("--op", op)
      ->required()
      ->check(CLI::IsMember({"comma", "arrow", "product", "pullback", "exponential", "opposite",
                             "span-compose", "free2s", "cotensor", "sliced-comma",
                             "sliced-product", "vert"}));
  std::string a0, a1, a2;
  construct->add_option("arg0", a0);
  construct->add_option("arg1", a1);
  construct->add_option("arg2", a2);
  construct->add_option("-o,--out", out);

  auto* yon = app.add_subcommand("yoneda", "run the two-sided Yoneda checks");
  yon->add_option("instance", file)->required();
  yon->add_option("--at", at);

  auto* suite = app.add_subcommand("suite", "run the theorem suites");
  suite->add_option("--seed", cfg.seed);
  suite->add_option("--samples", cfg.samples);
  suite->add_option("--max-obj", cfg.max_objects);
  suite->add_option("--max-mor", cfg.max_morphisms);
  suite->add_option("--max-functors", cfg.max_functor_candidates);
  suite->add_option("--theorems", theorems, "comma-separated subset");
  suite->add_option("--report", cfg.report_format)->check(CLI::IsMember({"text", "json"}));
  suite->add_option("--threads", cfg.threads);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return run_validate(file);
    if (check->parsed()) return run_check(kind, method, file);
    if (construct->parsed()) {
      for (const std::string& a : {a0, a1, a2})
        if (!a.empty()) args.push_back(a);
      return run_construct(op, args, out);
    }
    if (yon->parsed()) return run_yoneda(file, at);
    if (suite->parsed()) {
      if (!theorems.empty()) {
        size_t pos = 0;
        while (pos != std::string::npos) {
          size_t next = theorems.find(',', pos);
          cfg.theorems.push_back(theorems.substr(pos, next == std::string::npos ? next : next - pos));
          pos = next == std::string::npos ? next : next + 1;
        }
      }
      return run_suite_cmd(cfg);
    }
  } catch (const Error& e) {
    std::cerr << "fibcheck: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "fibcheck: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
