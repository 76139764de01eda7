#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "lazyh2/fixtures.hpp"
#include "lazyh2/hopf.hpp"
#include "lazyh2/lazy.hpp"
#include "lazyh2/pontryagin.hpp"

namespace lazyh2 {

using json = nlohmann::json;

inline std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str() + "/1";
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational rational_from_string(const std::string& s) {
  Rational q;
  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto valid = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t i = (allow_sign && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  if (!valid(num, true) || !valid(den, false)) fail(ErrorKind::InvalidInput, "malformed rational '" + s + "'");
  mpz_class n(num[0] == '+' ? num.substr(1) : num), d(den);
  if (d == 0) fail(ErrorKind::DivisionByZero, "rational with zero denominator");
  q = Rational(n, d);
  q.canonicalize();
  return q;
}

inline json to_json(const CycNum& x) {
  json terms = json::array();
  for (const auto& [e, c] : x.terms()) terms.push_back(json::array({e, rational_to_string(c)}));
  return json{{"n", x.conductor()}, {"terms", terms}};
}

inline CycNum cyc_from_json(const json& j) {
  if (j.is_number_integer()) return CycNum(static_cast<long long>(j.get<std::int64_t>()));
  if (j.is_string()) return CycNum(rational_from_string(j.get<std::string>()));
  if (!j.is_object() || !j.contains("n") || !j.contains("terms") || !j["n"].is_number_integer() ||
      !j["terms"].is_array())
    fail(ErrorKind::InvalidInput, "CycNum JSON needs integer 'n' and array 'terms'");
  const auto n = j["n"].get<std::int64_t>();
  if (n < 1) fail(ErrorKind::InvalidInput, "CycNum conductor must be positive");
  std::vector<std::pair<std::int64_t, Rational>> ts;
  for (const auto& t : j["terms"]) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer())
      fail(ErrorKind::InvalidInput, "CycNum term must be [exponent, coefficient]");
    Rational c = t[1].is_string() ? rational_from_string(t[1].get<std::string>())
                                  : t[1].is_number_integer() ? Rational(static_cast<long>(t[1].get<std::int64_t>()))
                                                             : (fail(ErrorKind::InvalidInput, "bad coefficient"), Rational());
    ts.emplace_back(t[0].get<std::int64_t>(), c);
  }
  return CycNum::from_terms(n, ts);
}

inline json group_to_json(const FiniteGroup& g) {
  json j;
  j["name"] = g.name();
  j["order"] = g.order();
  if (g.is_permutation_group()) {
    json gens = json::array();
    for (Elem x : generating_set(g)) {
      std::vector<int> images = g.permutation(x);
      for (auto& v : images) ++v;
      gens.push_back(images);
    }
    j["perm_generators"] = gens;
  } else {
    j["table"] = g.table_rows();
  }
  return j;
}

inline GroupPtr group_from_json(const json& j, std::size_t bound) {
  if (j.is_string()) return builtin_group(j.get<std::string>(), bound);
  if (!j.is_object()) fail(ErrorKind::InvalidInput, "group must be a fixture name or an object");
  const std::string name = j.value("name", std::string("G"));
  if (j.contains("perm_generators")) {
    const auto& gens = j["perm_generators"];
    if (!gens.is_array() || gens.empty()) fail(ErrorKind::InvalidInput, "perm_generators must be a nonempty array");
    std::vector<std::vector<int>> p;
    for (const auto& gen : gens) {
      if (!gen.is_array()) fail(ErrorKind::InvalidInput, "each generator must be an array of images");
      std::vector<int> v;
      for (const auto& x : gen) {
        if (!x.is_number_integer()) fail(ErrorKind::InvalidInput, "permutation images must be integers");
        v.push_back(x.get<int>());
      }
      p.push_back(std::move(v));
    }
    return FiniteGroup::from_permutations(static_cast<int>(p[0].size()), p, bound, name);
  }
  if (j.contains("table")) {
    const auto& t = j["table"];
    if (!t.is_array()) fail(ErrorKind::InvalidInput, "table must be an array of rows");
    if (t.size() > bound) fail(ErrorKind::OrderLimitExceeded, "table exceeds order bound");
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& r : t) {
      if (!r.is_array()) fail(ErrorKind::InvalidInput, "table rows must be arrays");
      std::vector<std::int64_t> row;
      for (const auto& x : r) {
        if (!x.is_number_integer()) fail(ErrorKind::InvalidInput, "table entries must be integers");
        row.push_back(x.get<std::int64_t>());
      }
      rows.push_back(std::move(row));
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
    return FiniteGroup::from_table(rows, labels, name);
  }
  fail(ErrorKind::InvalidInput, "group JSON needs 'perm_generators' or 'table'");
}

inline json tensor_to_json(const GTensor& x) {
  json terms = json::array();
  for (const auto& [k, c] : x.terms()) terms.push_back(json{{"g", x.tuple(k)}, {"c", to_json(c)}});
  return json{{"group", x.group()->name()}, {"degree", x.degree()}, {"terms", terms}};
}

// Elements in "g" may be indices or labels of the group.
inline GTensor tensor_from_json(const json& j, const GroupPtr& g) {
  if (!j.is_object() || !j.contains("degree") || !j.contains("terms") || !j["degree"].is_number_integer() ||
      !j["terms"].is_array())
    fail(ErrorKind::InvalidInput, "tensor JSON needs 'degree' and 'terms'");
  const int d = j["degree"].get<int>();
  if (d < 1 || d > 3) fail(ErrorKind::InvalidInput, "tensor degree must be 1, 2 or 3");
  GTensor t(g, d);
  for (const auto& term : j["terms"]) {
    if (!term.is_object() || !term.contains("g") || !term.contains("c") || !term["g"].is_array() ||
        term["g"].size() != static_cast<std::size_t>(d))
      fail(ErrorKind::InvalidInput, "tensor term needs 'g' of length degree and 'c'");
    std::vector<Elem> tuple;
    for (const auto& e : term["g"]) {
      if (e.is_number_integer()) {
        const auto v = e.get<std::int64_t>();
        if (v < 0 || static_cast<std::size_t>(v) >= g->order()) fail(ErrorKind::InvalidInput, "element index out of range");
        tuple.push_back(static_cast<Elem>(v));
      } else if (e.is_string()) {
        auto x = g->find_label(e.get<std::string>());
        if (!x) fail(ErrorKind::InvalidInput, "unknown element label '" + e.get<std::string>() + "'");
        tuple.push_back(*x);
      } else {
        fail(ErrorKind::InvalidInput, "tensor element must be an index or a label");
      }
    }
    t.add(tuple, cyc_from_json(term["c"]));
  }
  return t;
}

inline json form_to_json(const AltForm& b) {
  const auto& d = *b.dual;
  return json{{"subgroup", d.subgroup().elements()},
              {"generators", d.generators()},
              {"orders", d.orders()},
              {"matrix", b.matrix}};
}

inline json report_to_json(const H2Report& r) {
  json certs = json::array();
  for (const auto& c : r.certificates) certs.push_back(json{{"rule", c.rule}, {"ref", c.ref}});
  json j{{"group", r.group},
         {"int_mod_inn", r.int_mod_inn},
         {"bg_size", r.bg.size()},
         {"order_bounds", json::array({r.order_lower, r.order_upper})},
         {"status", to_string(r.status)},
         {"certificates", certs}};
  j["exact_order"] = r.exact_order ? json(*r.exact_order) : json(nullptr);
  j["structure"] = r.structure ? json(*r.structure) : json(nullptr);
  return j;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::InvalidInput, "malformed JSON in '" + path + "': " + e.what());
  }
}

}  // namespace lazyh2
