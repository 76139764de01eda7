#pragma once

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lazyh2/io.hpp"
#include "lazyh2/lazy.hpp"

#ifndef LAZYH2_FIXTURE_DIR
#define LAZYH2_FIXTURE_DIR "fixtures"
#endif

namespace lazyh2::cli {

struct Options {
  std::size_t max_order = 64;
  std::string fixture_dir = LAZYH2_FIXTURE_DIR;
  bool pretty = false;
};

// A group argument is a fixture name or a path to a group JSON file.
inline GroupPtr load_group(const std::string& arg, const Options& opt) {
  if (arg.size() > 5 && arg.substr(arg.size() - 5) == ".json") return group_from_json(read_json_file(arg), opt.max_order);
  return builtin_group(arg, opt.max_order);
}

// A tensor argument is a path, or a fixture name looked up in the fixture directory.
inline std::string resolve_tensor_path(const std::string& arg, const Options& opt) {
  if (std::filesystem::exists(arg)) return arg;
  const auto candidate = std::filesystem::path(opt.fixture_dir) / (arg + ".json");
  if (std::filesystem::exists(candidate)) return candidate.string();
  fail(ErrorKind::InvalidInput, "no tensor file or fixture named '" + arg + "'");
}

inline GTensor load_tensor(const std::string& arg, const GroupPtr& g, const Options& opt) {
  const json j = read_json_file(resolve_tensor_path(arg, opt));
  if (j.contains("group") && j["group"].is_string() && j["group"].get<std::string>() != g->name())
    fail(ErrorKind::InvalidInput, "tensor belongs to group '" + j["group"].get<std::string>() + "', not '" + g->name() + "'");
  return tensor_from_json(j, g);
}

inline json group_info(const GroupPtr& g) {
  json j = group_to_json(*g);
  json sizes = json::array();
  for (const auto& c : conjugacy_classes(*g)) sizes.push_back(c.size());
  j["abelian"] = g->is_abelian();
  j["exponent"] = g->exponent();
  j["class_sizes"] = sizes;
  j["center_order"] = center(g).order();
  return j;
}

inline json autc_info(const GroupPtr& g, const Options& opt) {
  const auto ac = class_preserving_auts(g, opt.max_order);
  return json{{"group", g->name()},
              {"autc_order", ac.auts.size()},
              {"inn_order", ac.inn_order},
              {"int_mod_inn", ac.inn_index}};
}

inline json bg_info(const GroupPtr& g, const Options& opt) {
  const auto bg = bg_enumerate(g, opt.max_order);
  json elems = json::array();
  for (const auto& x : bg) {
    json socle = json::array();
    for (Elem e : x.socle.elements()) socle.push_back(g->label(e));
    elems.push_back(json{{"socle", socle}, {"form", form_to_json(x.form)}, {"order", bg_order(x)}});
  }
  return json{{"group", g->name()}, {"bg_size", bg.size()}, {"elements", elems}};
}

inline json twist_verify(const GTensor& f) {
  return json{{"twist", is_twist(f)}, {"invariant", is_invariant(f)}, {"normalized", is_normalized(f)}};
}

inline json twist_theta(const GTensor& f) {
  const auto tv = theta(f);
  const auto& g = *f.group();
  json socle = json::array();
  for (Elem e : tv.socle.elements()) socle.push_back(g.label(e));
  json gens = json::array();
  for (Elem e : tv.form.dual->generators()) gens.push_back(g.label(e));
  json j{{"socle", socle}, {"socle_order", tv.socle.order()}, {"form", form_to_json(tv.form)}, {"generator_labels", gens}};
  // Values on the dual basis as exact roots of unity.
  json values = json::array();
  const auto& d = *tv.form.dual;
  for (std::size_t i = 0; i < d.rank(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < d.rank(); ++k) row.push_back(to_json(tv.form(d.basis_character(i), d.basis_character(k))));
    values.push_back(row);
  }
  j["values"] = values;
  return j;
}

inline json lie_info(const GroupPtr& g, const Options& opt) {
  const auto r = lie_complex_check(g, opt.max_order);
  return json{{"injective", r.injective}, {"exact", r.exact}, {"kernel_dim", r.kernel_dim}};
}

struct Expectation {
  std::string group;
  std::optional<std::size_t> exact_order;
  std::optional<std::vector<std::int64_t>> structure;
  std::optional<std::size_t> bg_size;
  std::optional<std::size_t> int_mod_inn;
  std::optional<std::pair<std::size_t, std::size_t>> bounds;
  std::optional<H2Status> status;
};

inline std::vector<Expectation> reference_expectations() {
  std::vector<Expectation> ex;
  auto add = [&](Expectation e) { ex.push_back(std::move(e)); };
  add({"A4", 2, std::vector<std::int64_t>{2}, 2, 1, {}, H2Status::Exact});
  add({"D8", 1, std::vector<std::int64_t>{}, 3, {}, {}, H2Status::Exact});
  add({"Q8", 1, std::vector<std::int64_t>{}, {}, {}, {}, H2Status::Exact});
  add({"S3", 1, std::vector<std::int64_t>{}, {}, {}, {}, H2Status::Exact});
  add({"S4", 1, std::vector<std::int64_t>{}, {}, {}, {}, H2Status::Exact});
  add({"Wr_3", 3, std::vector<std::int64_t>{3}, {}, 1, {}, H2Status::Exact});
  add({"C27sd", 9, std::vector<std::int64_t>{3, 3}, 9, {}, {}, H2Status::Exact});
  add({"Wall32", {}, {}, 2, 2, std::pair<std::size_t, std::size_t>{2, 4}, H2Status::Undetermined});
  for (int n = 2; n <= 8; ++n) add({"C" + std::to_string(n), 1, std::vector<std::int64_t>{}, {}, {}, {}, H2Status::Exact});
  add({"V4", 2, std::vector<std::int64_t>{2}, {}, {}, {}, H2Status::Exact});
  return ex;
}

inline std::vector<std::string> check_expectation(const Expectation& e, const H2Report& r) {
  std::vector<std::string> bad;
  if (e.exact_order && r.exact_order != e.exact_order) bad.push_back("exact_order");
  if (e.structure && r.structure != e.structure) bad.push_back("structure");
  if (e.bg_size && r.bg.size() != *e.bg_size) bad.push_back("bg_size");
  if (e.int_mod_inn && r.int_mod_inn != *e.int_mod_inn) bad.push_back("int_mod_inn");
  if (e.bounds && (r.order_lower != e.bounds->first || r.order_upper != e.bounds->second)) bad.push_back("order_bounds");
  if (e.status && r.status != *e.status) bad.push_back("status");
  return bad;
}

inline json reference_suite(const Options& opt, bool& all_pass) {
  H2Options h;
  h.max_order = std::max<std::size_t>(opt.max_order, 81);
  json reports = json::array(), summary = json::array();
  all_pass = true;
  for (const auto& e : reference_expectations()) {
    const auto g = builtin_group(e.group, h.max_order);
    const auto r = h2_compute(g, h);
    const auto bad = check_expectation(e, r);
    all_pass = all_pass && bad.empty();
    reports.push_back(report_to_json(r));
    summary.push_back(json{{"group", e.group}, {"pass", bad.empty()}, {"mismatches", bad}});
  }
  return json{{"reports", reports}, {"summary", summary}, {"pass", all_pass}};
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Invariant twists and the lazy cohomology of finite groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--max-order", opt.max_order, "Order bound for exponential searches")->check(CLI::PositiveNumber);
  app.add_option("--fixture-dir", opt.fixture_dir, "Directory holding fixture tensors");
  app.add_flag("--pretty", opt.pretty, "Indent JSON output");

  std::string group_arg, tensor_arg;
  auto* info = app.add_subcommand("group-info", "Order, classes and generators of a group");
  auto* autc = app.add_subcommand("autc", "Class-preserving automorphisms modulo inner ones");
  auto* bg = app.add_subcommand("bg", "Pairs (A, b) of B(G)");
  auto* h2 = app.add_subcommand("h2", "Certified verdict on the lazy cohomology group");
  auto* lie = app.add_subcommand("liecheck", "Exactness of the linearized complex");
  for (auto* s : {info, autc, bg, h2, lie}) s->add_option("group", group_arg, "Fixture name or group JSON file")->required();
  auto* verify = app.add_subcommand("twist-verify", "Twist, invariance and normalization checks");
  auto* th = app.add_subcommand("twist-theta", "The pair (A, b) attached to an invariant twist");
  for (auto* s : {verify, th}) {
    s->add_option("group", group_arg, "Fixture name or group JSON file")->required();
    s->add_option("tensor", tensor_arg, "Tensor JSON file or fixture name")->required();
  }
  auto* suite = app.add_subcommand("paper-suite", "Full fixture battery with expected values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  auto emit = [&](const json& j) { out << (opt.pretty ? j.dump(2) : j.dump()) << "\n"; };
  try {
    if (*suite) {
      bool pass = false;
      emit(reference_suite(opt, pass));
      return pass ? 0 : 1;
    }
    const GroupPtr g = load_group(group_arg, opt);
    if (*info) emit(group_info(g));
    else if (*autc) emit(autc_info(g, opt));
    else if (*bg) emit(bg_info(g, opt));
    else if (*h2) {
      H2Options h;
      h.max_order = opt.max_order;
      emit(report_to_json(h2_compute(g, h)));
    } else if (*lie) emit(lie_info(g, opt));
    else if (*verify) emit(twist_verify(load_tensor(tensor_arg, g, opt)));
    else if (*th) emit(twist_theta(load_tensor(tensor_arg, g, opt)));
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return (e.kind() == ErrorKind::Internal || e.kind() == ErrorKind::ThetaContractViolated) ? 3 : 2;
  } catch (const json::exception& e) {
    err << "error (InvalidInput): " << e.what() << "\n";
    return 2;
  }
}

}  // namespace lazyh2::cli
