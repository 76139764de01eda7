// Acceptance battery: one PASS/FAIL line per criterion, exact arithmetic throughout.
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

#include "lazyh2/cli.hpp"

using namespace lazyh2;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void check(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

json cli_json(std::vector<std::string> args, Outcome& o) {
  args.insert(args.begin(), "lazyh2_cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  o.check(code == 0, args[1] + " exit " + std::to_string(code) + " " + err.str());
  return code == 0 ? json::parse(out.str()) : json();
}

GTensor fixture(const std::string& name, const GroupPtr& g) {
  return tensor_from_json(read_json_file(std::string(LAZYH2_FIXTURE_DIR) + "/" + name + ".json"), g);
}

bool has_rule(const H2Report& r, const std::string& rule) {
  return std::any_of(r.certificates.begin(), r.certificates.end(), [&](const Certificate& c) { return c.rule == rule; });
}

std::vector<std::vector<int>> abelian_types_upto16() {
  std::vector<std::vector<int>> t;
  for (int n = 1; n <= 16; ++n) t.push_back({n});
  for (auto v : std::vector<std::vector<int>>{{2, 2}, {2, 4}, {2, 2, 2}, {3, 3}, {2, 6}, {2, 8}, {4, 4}, {2, 2, 4}, {2, 2, 2, 2}})
    t.push_back(v);
  return t;
}

// Orbits of simultaneous conjugation on G x G by union-find.
std::size_t brute_orbit_count(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<std::size_t> parent(n * n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem x = 0; x < n; ++x) {
        const Elem xi = g.inv(x);
        const std::size_t p = a * n + b, q = g.mul(g.mul(x, a), xi) * n + g.mul(g.mul(x, b), xi);
        parent[find(p)] = find(q);
      }
  std::size_t c = 0;
  for (std::size_t p = 0; p < n * n; ++p) c += find(p) == p;
  return c;
}

Outcome criterion1() {
  Outcome o;
  const auto v = cli_json({"twist-verify", "A4", "A4_twist"}, o);
  o.check(v == json{{"twist", true}, {"invariant", true}, {"normalized", true}}, "twist-verify " + v.dump());
  const auto t = cli_json({"twist-theta", "A4", "A4_twist"}, o);
  o.check(t.value("socle_order", 0) == 4, "socle order");
  o.check(t["values"][0][1] == to_json(CycNum(-1)) && t["values"][1][0] == to_json(CycNum(-1)), "b(e1,e2) != -1");
  auto a4 = builtin_group("A4");
  for (const auto& s : normal_abelian_subgroups(a4))
    if (s.order() == 4) {
      std::vector<std::string> labels;
      for (Elem e : s.elements()) labels.push_back(a4->label(e));
      o.check(t["socle"] == json(labels), "socle is not V");
    }
  const auto h = cli_json({"h2", "A4"}, o);
  o.check(h["exact_order"] == 2 && h["status"] == "exact", "h2 A4 " + h.dump());
  if (o.ok) o.detail = "twist/invariant/normalized, socle V, b(e1,e2)=-1, exact order 2";
  return o;
}

Outcome criterion2() {
  Outcome o;
  auto w = builtin_group("Wall32");
  const auto a = fixture("Wall_a", w);
  o.check(a * a == GTensor::one(w, 1), "a^2 != 1");
  const Elem u4 = *w->find_label("u^4");
  const Elem s = *w->find_label("s"), t = *w->find_label("t"), u = *w->find_label("u");
  const GTensor A = GTensor::basis(w, {u4});
  o.check(a * GTensor::basis(w, {s}) == A * GTensor::basis(w, {s}) * a, "as != u^4 s a");
  o.check(a * GTensor::basis(w, {t}) == A * GTensor::basis(w, {t}) * a, "at != u^4 t a");
  o.check(a * GTensor::basis(w, {u}) == GTensor::basis(w, {u}) * a, "au != ua");
  const auto ac = class_preserving_auts(w);
  std::vector<Elem> alpha(w->order());
  for (Elem x = 0; x < w->order(); ++x) {
    const auto lbl = w->label(x);
    const int parity = (lbl.find('s') != std::string::npos) + (lbl.find('t') != std::string::npos);
    alpha[x] = parity % 2 ? w->mul(u4, x) : x;
    o.check(a * GTensor::basis(w, {x}) == GTensor::basis(w, {alpha[x]}) * a, "conjugation at " + lbl);
  }
  o.check(std::any_of(ac.auts.begin(), ac.auts.end(), [&](const GroupMap& m) { return m.images == alpha; }),
          "alpha not class-preserving");
  o.check(delta1(a) == fixture("Wall_F", w), "delta1(a) != shipped 8F");
  const auto h = cli_json({"h2", "Wall32"}, o);
  o.check(h["int_mod_inn"] == 2 && h["bg_size"] == 2 && h["order_bounds"] == json::array({2, 4}) &&
              h["status"] == "undetermined",
          "h2 Wall32 " + h.dump());
  if (o.ok) o.detail = "a^2=1, conjugation = alpha on all 32 elements, delta1(a)=F, imi 2, |B|=2, bounds [2,4], undetermined";
  return o;
}

Outcome criterion3() {
  Outcome o;
  auto g = builtin_group("D8");
  const auto r = h2_compute(g);
  o.check(r.bg.size() == 3, "bg size " + std::to_string(r.bg.size()));
  o.check(has_no_multiplicities(g), "multiplicities");
  o.check(r.exact_order == std::optional<std::size_t>(1), "not exact 1");
  if (o.ok) o.detail = "bg 3, no multiplicities, exact order 1";
  return o;
}

Outcome criterion4() {
  Outcome o;
  H2Options opt;
  opt.max_order = 81;
  const auto r = h2_compute(builtin_group("Wr_3", 81), opt);
  o.check(r.structure == std::optional<std::vector<std::int64_t>>(std::vector<std::int64_t>{3}), "structure");
  o.check(has_rule(r, "R3"), "no R3 certificate");
  if (o.ok) o.detail = "structure Z/3 certified by R3";
  return o;
}

Outcome criterion5() {
  Outcome o;
  H2Options opt;
  opt.max_order = 81;
  const auto r = h2_compute(builtin_group("C27sd"), opt);
  o.check(r.bg.size() == 9, "bg size " + std::to_string(r.bg.size()));
  o.check(r.structure == std::optional<std::vector<std::int64_t>>(std::vector<std::int64_t>{3, 3}), "structure");
  if (o.ok) o.detail = "bg 9, structure Z/3 x Z/3";
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::vector<std::string> ones{"Q8", "S3", "S4"};
  for (int n = 2; n <= 8; ++n) ones.push_back("C" + std::to_string(n));
  for (const auto& name : ones) {
    const auto r = h2_compute(builtin_group(name));
    o.check(r.exact_order == std::optional<std::size_t>(1), name);
  }
  const auto v = h2_compute(builtin_group("V4"));
  o.check(v.exact_order == std::optional<std::size_t>(2) && has_rule(v, "R0"), "V4");
  if (o.ok) o.detail = "Q8, S3, S4, C2..C8 exact 1; V4 exact 2 via R0";
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::size_t checks = 0;
  // Twists: fixtures and twists built from B(G) of odd and abelian fixtures.
  std::vector<GTensor> twists;
  auto a4 = builtin_group("A4");
  auto w = builtin_group("Wall32");
  twists.push_back(fixture("A4_twist", a4));
  twists.push_back(fixture("Wall_F", w));
  twists.push_back(GTensor::one(a4, 2));
  for (const char* name : {"C3xC3", "C27sd", "C2xC2", "C2xC4"}) {
    auto g = builtin_group(name);
    for (const auto& x : bg_enumerate(g, 81)) {
      if (x.is_trivial()) continue;
      if (g->order() % 2) {
        twists.push_back(twist_from_cocycle(cocycle_from_form_odd(x.form)));
      } else {
        DualAction act(g, x.form.dual);
        const auto res = invariant_cocycle_search(x.form, act);
        o.check(res.cocycle.has_value(), std::string("no cocycle on ") + name);
        if (res.cocycle) twists.push_back(twist_from_cocycle(*res.cocycle));
      }
    }
  }
  for (std::size_t i = 0; i < twists.size(); ++i) {
    o.check(is_twist(twists[i]), "fixture twist " + std::to_string(i));
    o.check(drinfeld_element(r_matrix(twists[i])) == GTensor::one(twists[i].group(), 1), "Drinfeld element " + std::to_string(i));
    for (std::size_t j = 0; j < twists.size(); ++j)
      if (twists[i].group() == twists[j].group()) {
        o.check(is_twist(twists[i] * twists[j]), "product closure");
        ++checks;
      }
  }
  // Pullback coherence and nondegenerate => symmetric type, abelian groups of order <= 16.
  for (const auto& t : abelian_types_upto16()) {
    auto g = abelian_group(t);
    const auto subs = all_subgroups(g);
    for (const auto& a : subs) {
      auto ad = make_dual(a);
      const auto forms = alternating_forms(ad);
      for (const auto& b : forms) {
        if (is_nondegenerate(b)) o.check(is_symmetric_type(a), "nondegenerate form on non-symmetric type");
        const GTensor r = r_from_form(b);
        for (const auto& c : subs)
          if (a.is_subgroup_of(c)) {
            o.check(r_from_form(pullback_form(b, make_dual(c))) == r, "pullback coherence");
            ++checks;
          }
      }
    }
  }
  // Theta o construction on odd-order fixtures.
  for (const char* name : {"C3", "C5", "C7", "C9", "C3xC3", "C27sd", "Wr_3"}) {
    auto g = builtin_group(name, 81);
    for (const auto& x : bg_enumerate(g, 81)) {
      const auto f = twist_from_cocycle(cocycle_from_form_odd(x.form));
      o.check(make_bg_element(theta(f)) == x, std::string("theta o construction on ") + name);
      ++checks;
    }
  }
  // Linearized complex on fixtures of order <= 12.
  std::vector<std::string> small{"A4", "S3", "D8", "Q8", "V4", "Wr_2"};
  for (int n = 1; n <= 12; ++n) small.push_back("C" + std::to_string(n));
  for (const auto& name : small) {
    auto g = builtin_group(name);
    const auto r = lie_complex_check(g);
    o.check(r.exact && r.kernel_dim == g->order(), "lie check " + name);
    ++checks;
  }
  if (o.ok) o.detail = std::to_string(twists.size()) + " twists, " + std::to_string(checks) + " exact checks";
  return o;
}

Outcome criterion8() {
  Outcome o;
  for (const char* name : {"A4", "S3", "S4", "D8", "Q8", "V4", "C27sd", "Wall32", "Wr_2", "Wr_3", "C2", "C5", "C8"}) {
    auto g = builtin_group(name, 81);
    o.check(invariant_orbit_dimension(g, 81) == brute_orbit_count(*g), std::string("orbit dimension ") + name);
  }
  std::size_t roundtrips = 0;
  std::vector<std::string> abelian{"V4", "C3xC3", "C2xC2xC2", "C4xC4", "C2xC6"};
  for (int n = 2; n <= 8; ++n) abelian.push_back("C" + std::to_string(n));
  for (const auto& name : abelian) {
    auto g = builtin_group(name);
    auto d = make_dual(Subgroup::whole(g));
    DualAction act(g, d);
    for (const auto& b : alternating_forms(d)) {
      const auto res = invariant_cocycle_search(b, act);
      o.check(res.cocycle.has_value(), "no cocycle for a form on " + name);
      if (!res.cocycle) continue;
      const GTensor f = twist_from_cocycle(*res.cocycle);
      const Cocycle back = cocycle_from_twist(d, f);
      o.check(back.values == res.cocycle->values, "cocycle roundtrip on " + name);
      o.check(twist_from_cocycle(back) == f, "twist roundtrip on " + name);
      o.check(form_of_cocycle(back) == b, "form roundtrip on " + name);
      ++roundtrips;
    }
  }
  if (o.ok) o.detail = "orbit dimensions match on 13 fixtures, " + std::to_string(roundtrips) + " roundtrips";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double limit_s;
    Outcome (*fn)();
  };
  const std::vector<Criterion> all{{1, 30, criterion1},   {2, 600, criterion2}, {3, 30, criterion3},
                                   {4, 120, criterion4},  {5, 120, criterion5}, {6, 120, criterion6},
                                   {7, 600, criterion7},  {8, 300, criterion8}};
  bool all_ok = true;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.ok && secs < c.limit_s;
    all_ok = all_ok && pass;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << " (" << secs << " s, limit " << c.limit_s
         << " s) " << o.detail;
    std::cout << line.str() << std::endl;
  }
  return all_ok ? 0 : 1;
}
