#include <gtest/gtest.h>

#include <random>

#include "lazyh2/fixtures.hpp"
#include "lazyh2/hopf.hpp"
#include "lazyh2/io.hpp"

using namespace lazyh2;

namespace {

GTensor fixture(const std::string& name, const GroupPtr& g) {
  return tensor_from_json(read_json_file(std::string(LAZYH2_FIXTURE_DIR) + "/" + name + ".json"), g);
}

GTensor elem(const GroupPtr& g, const std::string& label) { return GTensor::basis(g, {*g->find_label(label)}); }

GTensor elem2(const GroupPtr& g, const std::string& a, const std::string& b) {
  return GTensor::basis(g, {*g->find_label(a), *g->find_label(b)});
}

Subgroup klein_of_a4(const GroupPtr& a4) {
  for (const auto& s : normal_abelian_subgroups(a4))
    if (s.order() == 4) return s;
  return Subgroup::trivial(a4);
}

// R(A,b) expanded literally as sum b(s,t) e_s (x) e_t.
GTensor brute_r(const AltForm& b) {
  const auto& d = b.dual;
  GTensor r(d->group_ptr(), 2);
  for (std::size_t s = 0; s < d->size(); ++s)
    for (std::size_t t = 0; t < d->size(); ++t) r = r + b(s, t) * outer(idempotent(d, s), idempotent(d, t));
  return r;
}

std::size_t character_with_kernel(const DualGroup& d, Elem x) {
  for (std::size_t chi = 1; chi < d.size(); ++chi) {
    bool ok = true;
    for (Elem a : d.subgroup().elements()) ok = ok && ((d.pairing(chi, a) == 0) == (a == 0 || a == x));
    if (ok) return chi;
  }
  return 0;
}

}  // namespace

TEST(Hopf, Multiplication) {
  auto a4 = builtin_group("A4");
  const auto x = elem2(a4, "(1,2)(3,4)", "(1,2,3)") * elem2(a4, "(1,3)(2,4)", "(1,2,3)");
  EXPECT_EQ(x, elem2(a4, "(1,4)(2,3)", "(1,3,2)"));
  const auto f = fixture("A4_twist", a4);
  EXPECT_EQ(GTensor::one(a4, 2) * f, f);
  auto z2 = builtin_group("C2");
  const GTensor e = CycNum(Rational(1, 2)) * (GTensor::one(z2, 1) + elem(z2, "g"));
  EXPECT_EQ(e * e, e);
  EXPECT_THROW(GTensor::one(z2, 1) * GTensor::one(z2, 2), Error);
}

TEST(Hopf, Inversion) {
  auto a4 = builtin_group("A4");
  EXPECT_EQ(tensor_inv(elem2(a4, "(1,2)(3,4)", "(1,2,3)")), elem2(a4, "(1,2)(3,4)", "(1,3,2)"));
  auto w = builtin_group("Wall32");
  const auto a = fixture("Wall_a", w);
  EXPECT_EQ(tensor_inv(a), a);
  auto z2 = builtin_group("C2");
  const GTensor e = CycNum(Rational(1, 2)) * (GTensor::one(z2, 1) + elem(z2, "g"));
  try {
    tensor_inv(e);
    FAIL() << "expected NotInvertible";
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::NotInvertible);
  }
  const auto f = fixture("A4_twist", a4);
  EXPECT_EQ(f * tensor_inv(f), GTensor::one(a4, 2));
  EXPECT_EQ(tensor_inv(f) * f, GTensor::one(a4, 2));
}

TEST(Hopf, HopfAxiomsOnBasis) {
  for (const char* name : {"S3", "Q8", "A4"}) {
    auto g = builtin_group(name);
    for (Elem x = 0; x < g->order(); ++x) {
      const GTensor b = GTensor::basis(g, {x});
      const GTensor dx = coproduct(b);
      EXPECT_EQ(dx, GTensor::basis(g, {x, x}));
      EXPECT_EQ(delta_first(dx), delta_second(dx));
      EXPECT_EQ(counit(b), CycNum(1));
      EXPECT_EQ(antipode(b) * b, GTensor::one(g, 1));
      EXPECT_EQ(antipode(antipode(b)), b);
    }
  }
  auto g = builtin_group("S3");
  const GTensor x = CycNum(2) * elem(g, "(1,2)") - elem(g, "(1,2,3)");
  EXPECT_EQ(counit(x), CycNum(1));
  EXPECT_EQ(antipode(antipode(x)), x);
}

TEST(Hopf, Delta1) {
  auto g = builtin_group("A4");
  const CycNum lam = root_of_unity(3, 1) + CycNum(2);
  EXPECT_EQ(delta1(lam * GTensor::one(g, 1)), lam * GTensor::one(g, 2));
  for (Elem x = 0; x < g->order(); ++x) EXPECT_EQ(delta1(GTensor::basis(g, {x})), GTensor::one(g, 2));
  auto w = builtin_group("Wall32");
  EXPECT_EQ(delta1(fixture("Wall_a", w)), fixture("Wall_F", w));
}

TEST(Hopf, WallDisplayedTableDiffersInTwoCoefficients) {
  auto w = builtin_group("Wall32");
  const auto literal = fixture("Wall_F_display", w);
  const auto f = fixture("Wall_F", w);
  const auto diff = f - literal;
  EXPECT_EQ(diff.size(), 2u);
  EXPECT_EQ(diff.coeff({0, *w->find_label("u^4")}), CycNum(Rational(1, 8)));
  EXPECT_EQ(diff.coeff({*w->find_label("u^4"), 0}), CycNum(Rational(1, 8)));
  EXPECT_EQ(counit(literal), CycNum(Rational(3, 4)));
  EXPECT_FALSE(is_twist(normalize_twist(literal)));
  EXPECT_TRUE(is_twist(f));
}

TEST(Hopf, TwistPredicates) {
  auto a4 = builtin_group("A4");
  const auto one = GTensor::one(a4, 2);
  EXPECT_TRUE(is_twist(one) && is_invariant(one) && is_normalized(one));
  const auto f = fixture("A4_twist", a4);
  EXPECT_TRUE(is_twist(f));
  EXPECT_TRUE(is_invariant(f));
  EXPECT_TRUE(is_normalized(f));
  for (Elem x = 1; x < a4->order(); ++x)
    for (Elem y = 1; y < a4->order(); ++y) EXPECT_FALSE(is_twist(GTensor::basis(a4, {x, y})));
  EXPECT_FALSE(is_twist(GTensor(a4, 2)));
}

TEST(Hopf, Gauge) {
  auto a4 = builtin_group("A4");
  const auto f = fixture("A4_twist", a4);
  for (Elem x = 0; x < a4->order(); ++x) EXPECT_EQ(gauge(GTensor::basis(a4, {x}), f), f);
  const GTensor a = CycNum(3) * GTensor::one(a4, 1) + elem(a4, "(1,2,3)");
  const GTensor b = CycNum(2) * GTensor::one(a4, 1) - elem(a4, "(1,2)(3,4)");
  EXPECT_EQ(gauge(a, GTensor::one(a4, 2)), delta1(a));
  EXPECT_EQ(gauge(a, gauge(b, f)), gauge(a * b, f));
  EXPECT_TRUE(is_twist(gauge(a, f)));
}

TEST(Hopf, GaugeInvarianceAndNormalizer) {
  auto w = builtin_group("Wall32");
  const auto wa = fixture("Wall_a", w);
  const auto wf = fixture("Wall_F", w);
  for (const GTensor& f : {GTensor::one(w, 2), wf}) {
    EXPECT_TRUE(is_invariant(gauge(wa, f)));
    for (Elem x = 0; x < w->order(); x += 5) EXPECT_TRUE(is_invariant(gauge(GTensor::basis(w, {x}), f)));
  }
  auto a4 = builtin_group("A4");
  const auto f = fixture("A4_twist", a4);
  const GTensor outside = CycNum(3) * GTensor::one(a4, 1) + elem(a4, "(1,2,3)");
  const auto moved = gauge(outside, f);
  EXPECT_FALSE(is_invariant(moved));
  const auto wit = invariance_witness(moved);
  ASSERT_TRUE(wit.has_value());
  EXPECT_NE(conjugate_by(moved, *wit), moved);
}

TEST(Hopf, WallElementRealizesAutomorphism) {
  auto w = builtin_group("Wall32");
  const auto a = fixture("Wall_a", w);
  EXPECT_EQ(a * a, GTensor::one(w, 1));
  const Elem u4 = *w->find_label("u^4");
  // a x a^-1 = alpha(x) on every group element, alpha(u^k s^i t^j) = u^{4(i+j)} u^k s^i t^j.
  for (Elem x = 0; x < w->order(); ++x) {
    const auto lbl = w->label(x);
    const int i = lbl.find('s') != std::string::npos, j = lbl.find('t') != std::string::npos;
    const Elem img = (i + j) % 2 ? w->mul(u4, x) : x;
    EXPECT_EQ(a * GTensor::basis(w, {x}) * tensor_inv(a), GTensor::basis(w, {img})) << lbl;
  }
}

TEST(Hopf, RMatrix) {
  auto a4 = builtin_group("A4");
  EXPECT_EQ(r_matrix(GTensor::one(a4, 2)), GTensor::one(a4, 2));
  auto w = builtin_group("Wall32");
  EXPECT_EQ(r_matrix(fixture("Wall_F", w)), GTensor::one(w, 2));
  const auto f = fixture("A4_twist", a4);
  const auto r = r_matrix(f);
  auto d = make_dual(klein_of_a4(a4));
  DualAction act(a4, d);
  const auto forms = invariant_forms(act, true);
  ASSERT_EQ(forms.size(), 1u);
  EXPECT_EQ(r, brute_r(forms[0]));
  EXPECT_EQ(r, r_from_form(forms[0]));
  EXPECT_THROW(r_matrix(elem2(a4, "(1,2,3)", "()")), Error);
}

TEST(Hopf, GaugeCovarianceOfR) {
  auto a4 = builtin_group("A4");
  const auto f = fixture("A4_twist", a4);
  const auto r = r_matrix(f);
  for (Elem x = 0; x < a4->order(); ++x) {
    const auto a = GTensor::basis(a4, {x});
    const auto aa = outer(a, a);
    EXPECT_EQ(r_matrix(gauge(a, f)), aa * r * tensor_inv(aa));
  }
  auto w = builtin_group("Wall32");
  const auto wa = fixture("Wall_a", w);
  const auto aa = outer(wa, wa);
  for (const GTensor& g : {GTensor::one(w, 2), fixture("Wall_F", w)})
    EXPECT_EQ(r_matrix(gauge(wa, g)), aa * r_matrix(g) * tensor_inv(aa));
}

TEST(Hopf, GaugeEquivalentInversesShareR) {
  auto a4 = builtin_group("A4");
  const auto f2 = fixture("A4_twist", a4);
  for (Elem x = 0; x < a4->order(); x += 3) {
    const auto a = GTensor::basis(a4, {x});
    const auto f = tensor_inv(gauge(a, tensor_inv(f2)));
    EXPECT_EQ(r_matrix(f), r_matrix(f2));
  }
  auto w = builtin_group("Wall32");
  const auto wa = fixture("Wall_a", w);
  const auto wf = fixture("Wall_F", w);
  EXPECT_EQ(r_matrix(tensor_inv(gauge(wa, tensor_inv(wf)))), r_matrix(wf));
}

TEST(Hopf, DrinfeldElement) {
  auto a4 = builtin_group("A4");
  EXPECT_EQ(drinfeld_element(GTensor::one(a4, 2)), GTensor::one(a4, 1));
  EXPECT_EQ(drinfeld_element(r_matrix(fixture("A4_twist", a4))), GTensor::one(a4, 1));
  auto w = builtin_group("Wall32");
  EXPECT_EQ(drinfeld_element(r_matrix(fixture("Wall_F", w))), GTensor::one(w, 1));
  for (const auto& t : std::vector<std::vector<int>>{{2, 2}, {3, 3}, {4, 4}, {2, 4}, {2, 2, 2}, {2, 6}}) {
    auto g = abelian_group(t);
    auto d = make_dual(Subgroup::whole(g));
    for (const auto& b : alternating_forms(d)) EXPECT_EQ(drinfeld_element(r_from_form(b)), GTensor::one(g, 1));
  }
}

TEST(Hopf, Socle) {
  auto a4 = builtin_group("A4");
  EXPECT_EQ(socle(GTensor::one(a4, 2)).order(), 1u);
  EXPECT_EQ(socle(r_matrix(fixture("A4_twist", a4))), klein_of_a4(a4));
  for (const auto& t : std::vector<std::vector<int>>{{2, 2}, {3, 3}, {4, 4}, {2, 2, 2, 2}}) {
    auto g = abelian_group(t);
    auto d = make_dual(Subgroup::whole(g));
    for (const auto& b : alternating_forms(d))
      if (is_nondegenerate(b)) {
        EXPECT_EQ(socle(r_from_form(b)).order(), g->order());
      }
  }
}

TEST(Hopf, Theta) {
  auto a4 = builtin_group("A4");
  const auto t1 = theta(GTensor::one(a4, 2));
  EXPECT_EQ(t1.socle.order(), 1u);
  EXPECT_TRUE(t1.form.is_trivial());
  const auto tv = theta(fixture("A4_twist", a4));
  EXPECT_EQ(tv.socle, klein_of_a4(a4));
  const auto& d = *tv.form.dual;
  const std::size_t e1 = character_with_kernel(d, *a4->find_label("(1,2)(3,4)"));
  const std::size_t e2 = character_with_kernel(d, *a4->find_label("(1,3)(2,4)"));
  EXPECT_EQ(tv.form(e1, e2), CycNum(-1));
  EXPECT_EQ(tv.form(e2, e1), CycNum(-1));
  auto w = builtin_group("Wall32");
  const auto tw = theta(delta1(fixture("Wall_a", w)));
  EXPECT_EQ(tw.socle.order(), 1u);
}

TEST(Hopf, Idempotents) {
  auto z2 = builtin_group("C2");
  auto d = make_dual(Subgroup::whole(z2));
  const GTensor half = CycNum(Rational(1, 2)) * GTensor::one(z2, 1);
  EXPECT_EQ(idempotent(d, 0), half + CycNum(Rational(1, 2)) * elem(z2, "g"));
  EXPECT_EQ(idempotent(d, 1), half - CycNum(Rational(1, 2)) * elem(z2, "g"));
  for (const auto& t : std::vector<std::vector<int>>{{5}, {2, 2}, {3, 3}, {4, 2}}) {
    auto g = abelian_group(t);
    auto dd = make_dual(Subgroup::whole(g));
    GTensor sum(g, 1);
    for (std::size_t chi = 0; chi < dd->size(); ++chi) {
      const auto e = idempotent(dd, chi);
      sum = sum + e;
      EXPECT_EQ(e * e, e);
      for (std::size_t psi = chi + 1; psi < dd->size(); ++psi) EXPECT_TRUE((e * idempotent(dd, psi)).is_zero());
    }
    EXPECT_EQ(sum, GTensor::one(g, 1));
  }
}

TEST(Hopf, Fourier) {
  for (const auto& t : std::vector<std::vector<int>>{{2}, {6}, {2, 2}, {3, 3}, {2, 4}}) {
    auto g = abelian_group(t);
    auto d = make_dual(Subgroup::whole(g));
    for (const auto& v : fourier(d, GTensor::one(g, 1))) EXPECT_EQ(v, CycNum(1));
    // e_chi is supported at chi^-1 under the convention chi -> sum lambda_g chi(g^-1).
    for (std::size_t chi = 0; chi < d->size(); ++chi) {
      const auto f = fourier(d, idempotent(d, chi));
      for (std::size_t psi = 0; psi < d->size(); ++psi)
        EXPECT_EQ(f[psi], CycNum(psi == d->inv(chi) ? 1 : 0)) << chi << " " << psi;
    }
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int s = 0; s < 10; ++s) {
      GTensor x(g, 1), y(g, 1);
      for (Elem e = 0; e < g->order(); ++e) {
        x.add({e}, CycNum(c(rng)));
        y.add({e}, CycNum(c(rng)));
      }
      const auto fx = fourier(d, x), fy = fourier(d, y), fxy = fourier(d, x * y);
      for (std::size_t k = 0; k < d->size(); ++k) EXPECT_EQ(fxy[k], fx[k] * fy[k]);
    }
  }
  auto a4 = builtin_group("A4");
  EXPECT_THROW(fourier(make_dual(klein_of_a4(a4)), elem(a4, "(1,2,3)")), Error);
}

TEST(Hopf, TwistFromCocycle) {
  auto g = builtin_group("C3xC3");
  auto d = make_dual(Subgroup::whole(g));
  EXPECT_EQ(twist_from_cocycle(Cocycle::trivial(d)), GTensor::one(g, 2));
  for (const auto& b : alternating_forms(d)) {
    const Cocycle c = cocycle_from_form_odd(b);
    const GTensor f = twist_from_cocycle(c);
    EXPECT_TRUE(is_twist(f));
    const Cocycle back = cocycle_from_twist(d, f);
    EXPECT_EQ(back.values, c.values);
    EXPECT_EQ(twist_from_cocycle(back), f);
  }
  Cocycle bad = Cocycle::trivial(d);
  bad.at(1, 2) = CycNum(-1);
  EXPECT_THROW(twist_from_cocycle(bad), Error);
  auto a4 = builtin_group("A4");
  EXPECT_THROW(cocycle_from_twist(make_dual(klein_of_a4(a4)), elem2(a4, "(1,2,3)", "()")), Error);
}

TEST(Hopf, A4CocycleGivesDisplayedTwist) {
  auto a4 = builtin_group("A4");
  auto d = make_dual(klein_of_a4(a4));
  DualAction act(a4, d);
  const auto forms = invariant_forms(act, true);
  const auto res = invariant_cocycle_search(forms[0], act);
  ASSERT_TRUE(res.cocycle.has_value());
  EXPECT_EQ(twist_from_cocycle(*res.cocycle), fixture("A4_twist", a4));
}

TEST(Hopf, DeltaCoherence) {
  auto w = builtin_group("Wall32");
  const GTensor a = CycNum(3) * GTensor::one(w, 1) + elem(w, "u^4");
  ASSERT_TRUE(center(w).contains(*w->find_label("u^4")));
  EXPECT_TRUE(is_twist(delta1(a)));
  EXPECT_EQ(delta2_left(delta1(a)), delta2_right(delta1(a)));
  auto a4 = builtin_group("A4");
  const auto f = fixture("A4_twist", a4);
  EXPECT_EQ(delta2_left(f), delta2_right(f));
  const auto not_twist = f + elem2(a4, "(1,2,3)", "()");
  EXPECT_NE(delta2_left(not_twist), delta2_right(not_twist));
}

TEST(Hopf, InvariantTwistsClosedUnderProducts) {
  auto a4 = builtin_group("A4");
  const auto f = fixture("A4_twist", a4);
  const std::vector<GTensor> a4_twists{GTensor::one(a4, 2), f, tensor_inv(f), f * f, CycNum(2) * f};
  for (const auto& x : a4_twists)
    for (const auto& y : a4_twists) {
      const auto p = x * y;
      EXPECT_TRUE(is_twist(p));
      EXPECT_TRUE(is_invariant(p));
    }
  auto w = builtin_group("Wall32");
  const auto wf = fixture("Wall_F", w);
  const auto wp = wf * wf;
  EXPECT_TRUE(is_twist(wp) && is_invariant(wp));
  EXPECT_TRUE(is_twist(wf * tensor_inv(wf)));
}

TEST(Hopf, RIsMultiplicativeOnCommutingTwists) {
  auto a4 = builtin_group("A4");
  const auto f = fixture("A4_twist", a4);
  EXPECT_EQ(r_matrix(f * f), r_matrix(f) * r_matrix(f));
  EXPECT_EQ(r_matrix(f * f), GTensor::one(a4, 2));
  for (const auto& t : std::vector<std::vector<int>>{{2, 2}, {4, 4}, {3, 3}, {2, 2, 2}}) {
    auto g = abelian_group(t);
    auto d = make_dual(Subgroup::whole(g));
    DualAction act(g, d);
    std::vector<GTensor> tw;
    for (const auto& b : alternating_forms(d)) {
      auto res = invariant_cocycle_search(b, act);
      ASSERT_TRUE(res.cocycle.has_value());
      tw.push_back(twist_from_cocycle(*res.cocycle));
      if (tw.size() == 4) break;
    }
    for (const auto& x : tw)
      for (const auto& y : tw) EXPECT_EQ(r_matrix(x * y), r_matrix(x) * r_matrix(y));
  }
}

TEST(Hopf, ReadFormRejectsNonRMatrices) {
  auto a4 = builtin_group("A4");
  EXPECT_THROW(read_form(CycNum(2) * GTensor::one(a4, 2)), Error);
  EXPECT_THROW(read_form(elem2(a4, "(1,2,3)", "(1,2,3)")), Error);
}

TEST(Hopf, CharacterInverseAgreesWithDenseSolve) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> c(-2, 2);
  for (const char* name : {"C6", "C2xC4", "D8", "Wall32"}) {
    auto g = builtin_group(name);
    for (int s = 0; s < 6; ++s) {
      GTensor x = CycNum(5) * GTensor::one(g, 2);
      const Elem a = static_cast<Elem>((3 * s + 1) % g->order()), b = static_cast<Elem>((5 * s + 2) % g->order());
      x.add({a, b}, CycNum(c(rng)) * root_of_unity(4, s));
      x.add({b, a}, CycNum(c(rng)));
      const auto fast = hopf_detail::abelian_inverse(x);
      if (!fast) continue;
      EXPECT_EQ(*fast, hopf_detail::dense_inverse(x)) << name;
      EXPECT_EQ(*fast * x, GTensor::one(g, 2)) << name;
    }
  }
  auto s3 = builtin_group("S3");
  const GTensor y = CycNum(3) * GTensor::one(s3, 1) + elem(s3, "(1,2)") + elem(s3, "(1,2,3)");
  EXPECT_FALSE(hopf_detail::abelian_inverse(y).has_value());
  EXPECT_EQ(tensor_inv(y) * y, GTensor::one(s3, 1));
}
