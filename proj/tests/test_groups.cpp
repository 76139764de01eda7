#include <gtest/gtest.h>

#include <set>

#include "lazyh2/fixtures.hpp"
#include "lazyh2/groups.hpp"

using namespace lazyh2;

namespace {

// All normal abelian subgroups by brute force over subsets (|G| <= 16).
std::vector<std::vector<Elem>> brute_normal_abelian(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<std::vector<Elem>> out;
  for (std::uint32_t mask = 1; mask < (1u << n); mask += 2) {
    std::vector<Elem> s;
    for (Elem x = 0; x < n; ++x)
      if ((mask >> x) & 1) s.push_back(x);
    bool ok = true;
    for (Elem a : s)
      for (Elem b : s) {
        if (!((mask >> g.mul(a, b)) & 1) || g.mul(a, b) != g.mul(b, a)) ok = false;
      }
    for (Elem x = 0; x < n && ok; ++x)
      for (Elem a : s)
        if (!((mask >> g.conj(x, a)) & 1)) ok = false;
    if (ok) out.push_back(s);
  }
  return out;
}

std::multiset<std::size_t> class_sizes(const FiniteGroup& g) {
  std::multiset<std::size_t> s;
  for (const auto& c : conjugacy_classes(g)) s.insert(c.size());
  return s;
}

}  // namespace

TEST(Groups, FromTableSmall) {
  auto t = FiniteGroup::from_table({{0}});
  EXPECT_EQ(t->order(), 1u);
  auto z2 = FiniteGroup::from_table({{0, 1}, {1, 0}});
  EXPECT_EQ(z2->order(), 2u);
  EXPECT_EQ(z2->element_order(1), 2);
}

TEST(Groups, FromTableRelocatesIdentity) {
  // Z/3 with the identity stored at index 2.
  auto g = FiniteGroup::from_table({{1, 2, 0}, {2, 0, 1}, {0, 1, 2}}, {"a", "b", "e"});
  EXPECT_EQ(g->label(0), "e");
  EXPECT_EQ(g->order(), 3u);
  EXPECT_TRUE(g->is_abelian());
}

TEST(Groups, FromTableRejectsNonAssociative) {
  const std::vector<std::vector<std::int64_t>> t{{0, 1, 2}, {1, 0, 0}, {2, 0, 0}};
  try {
    FiniteGroup::from_table(t);
    FAIL() << "expected NotAGroup";
  } catch (const NotAGroupError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAGroup);
    const auto a = e.a(), b = e.b(), c = e.c();
    EXPECT_NE(t[a][static_cast<std::size_t>(t[b][c])], t[static_cast<std::size_t>(t[a][b])][c]);
  }
  EXPECT_THROW(FiniteGroup::from_table({{1, 0}, {0, 0}}), Error);
  EXPECT_THROW(FiniteGroup::from_table({{0, 1}, {1, 1}}), Error);
}

TEST(Groups, FromPermutations) {
  auto a4 = FiniteGroup::from_permutations(4, {{2, 1, 4, 3}, {2, 3, 1, 4}});
  EXPECT_EQ(a4->order(), 12u);
  auto s3 = FiniteGroup::from_permutations(3, {{2, 1, 3}, {2, 3, 1}});
  EXPECT_EQ(s3->order(), 6u);
  auto triv = FiniteGroup::from_permutations(2, {});
  EXPECT_EQ(triv->order(), 1u);
  EXPECT_THROW(FiniteGroup::from_permutations(5, {{2, 1, 3, 4, 5}, {2, 3, 4, 5, 1}}, 100), Error);
  EXPECT_THROW(FiniteGroup::from_permutations(3, {{1, 1, 2}}), Error);
  // Passes table validation when rebuilt from its own table.
  auto again = FiniteGroup::from_table(a4->table_rows());
  EXPECT_EQ(again->order(), 12u);
  EXPECT_TRUE(a4->find_label("(1,2)(3,4)").has_value());
  EXPECT_EQ(a4->label(0), "()");
}

TEST(Groups, ConjugacyClasses) {
  EXPECT_EQ(class_sizes(*builtin_group("A4")), (std::multiset<std::size_t>{1, 3, 4, 4}));
  EXPECT_EQ(class_sizes(*builtin_group("S3")), (std::multiset<std::size_t>{1, 2, 3}));
  EXPECT_EQ(class_sizes(*builtin_group("C6")).size(), 6u);
  // Oracle: partition by the relation x ~ gxg^-1.
  for (const char* name : {"A4", "S4", "D8", "Q8", "Wall32", "C27sd"}) {
    auto g = builtin_group(name);
    const auto idx = class_index(*g);
    for (Elem x = 0; x < g->order(); ++x)
      for (Elem y = 0; y < g->order(); ++y) {
        bool conj = false;
        for (Elem h = 0; h < g->order() && !conj; ++h) conj = g->conj(h, x) == y;
        EXPECT_EQ(conj, idx[x] == idx[y]) << name;
      }
  }
}

TEST(Groups, Center) {
  EXPECT_EQ(center(builtin_group("A4")).order(), 1u);
  auto w = builtin_group("Wall32");
  auto z = center(w);
  EXPECT_EQ(z.order(), 2u);
  EXPECT_TRUE(z.contains(*w->find_label("u^4")));
  auto c = builtin_group("C2xC4");
  EXPECT_EQ(center(c).order(), 8u);
}

TEST(Groups, NormalAbelianSubgroupsExamples) {
  auto a4 = builtin_group("A4");
  auto na = normal_abelian_subgroups(a4);
  ASSERT_EQ(na.size(), 2u);
  EXPECT_EQ(na[0].order(), 1u);
  EXPECT_EQ(na[1].order(), 4u);

  auto d8 = builtin_group("D8");
  auto nd = normal_abelian_subgroups(d8);
  ASSERT_EQ(nd.size(), 5u);
  int klein = 0, cyclic4 = 0;
  for (const auto& s : nd)
    if (s.order() == 4) {
      bool has4 = false;
      for (Elem x : s.elements()) has4 = has4 || d8->element_order(x) == 4;
      has4 ? ++cyclic4 : ++klein;
    }
  EXPECT_EQ(klein, 2);
  EXPECT_EQ(cyclic4, 1);

  auto c27 = builtin_group("C27sd");
  int square = 0;
  for (const auto& s : normal_abelian_subgroups(c27)) square += s.order() == 9;
  EXPECT_EQ(square, 4);
}

TEST(Groups, NormalAbelianSubgroupsOracle) {
  for (const char* name : {"A4", "D8", "Q8", "S3", "C2xC2xC2", "C4xC4", "C2xC4", "C6", "C3xC3"}) {
    auto g = builtin_group(name);
    std::set<std::vector<Elem>> mine, brute;
    for (const auto& s : normal_abelian_subgroups(g)) {
      mine.insert(s.elements());
      EXPECT_TRUE(s.is_normal() && s.is_abelian());
    }
    for (auto& s : brute_normal_abelian(*g)) brute.insert(s);
    EXPECT_EQ(mine, brute) << name;
  }
}

TEST(Groups, NormalSubgroupsAreConjugationStable) {
  for (const char* name : {"Wall32", "C27sd", "S4"}) {
    auto g = builtin_group(name);
    for (const auto& s : normal_abelian_subgroups(g))
      for (Elem x = 0; x < g->order(); ++x)
        for (Elem a : s.elements()) EXPECT_TRUE(s.contains(g->conj(x, a)));
  }
}

TEST(Groups, ClassPreservingAutomorphisms) {
  EXPECT_EQ(class_preserving_auts(builtin_group("A4")).inn_index, 1u);
  EXPECT_EQ(class_preserving_auts(builtin_group("C7")).inn_index, 1u);
  EXPECT_EQ(class_preserving_auts(builtin_group("C7")).auts.size(), 1u);

  auto w = builtin_group("Wall32");
  auto ac = class_preserving_auts(w);
  EXPECT_EQ(ac.inn_index, 2u);
  // alpha(s) = u^4 s, alpha(t) = u^4 t, alpha(u) = u.
  const Elem u = *w->find_label("u"), s = *w->find_label("s"), t = *w->find_label("t"), u4 = *w->find_label("u^4");
  std::vector<Elem> map;
  ASSERT_TRUE(groups_detail::extend_hom(*w, {u, s, t}, {u, w->mul(u4, s), w->mul(u4, t)}, 3, map));
  GroupMap alpha{w, w, map};
  bool in_autc = false;
  for (const auto& a : ac.auts) in_autc = in_autc || a == alpha;
  EXPECT_TRUE(in_autc);
  bool inner = false;
  for (const auto& i : inner_automorphisms(w)) inner = inner || i == alpha;
  EXPECT_FALSE(inner);
}

TEST(Groups, AutcIsAGroup) {
  for (const char* name : {"Wall32", "D8", "A4", "Q8", "C27sd"}) {
    auto g = builtin_group(name);
    auto ac = class_preserving_auts(g);
    std::set<std::vector<Elem>> set;
    for (const auto& a : ac.auts) set.insert(a.images);
    const auto idx = class_index(*g);
    for (const auto& a : ac.auts) {
      EXPECT_TRUE(a.is_homomorphism());
      EXPECT_TRUE(set.count(a.inverse().images));
      for (Elem x = 0; x < g->order(); ++x) EXPECT_EQ(idx[a(x)], idx[x]);
      for (const auto& b : ac.auts) EXPECT_TRUE(set.count(a.after(b).images));
    }
    for (const auto& i : inner_automorphisms(g)) EXPECT_TRUE(set.count(i.images)) << name;
  }
}

TEST(Groups, FullAutomorphismCounts) {
  EXPECT_EQ(automorphisms(builtin_group("S3"), false, 64).size(), 6u);
  EXPECT_EQ(automorphisms(builtin_group("A4"), false, 64).size(), 24u);
  EXPECT_EQ(automorphisms(builtin_group("D8"), false, 64).size(), 8u);
  EXPECT_EQ(automorphisms(builtin_group("Q8"), false, 64).size(), 24u);
  EXPECT_EQ(automorphisms(builtin_group("C2xC2"), false, 64).size(), 6u);
  EXPECT_EQ(automorphisms(builtin_group("C8"), false, 64).size(), 4u);
  EXPECT_THROW(automorphisms(builtin_group("Wall32"), false, 16), Error);
}

TEST(Groups, AbelianStructure) {
  auto v = builtin_group("V4");
  EXPECT_EQ(abelian_structure(Subgroup::whole(v)).orders, (std::vector<int>{2, 2}));
  EXPECT_EQ(abelian_structure(Subgroup::whole(builtin_group("C6"))).orders, (std::vector<int>{6}));
  EXPECT_EQ(abelian_structure(Subgroup::whole(builtin_group("C2xC4"))).orders, (std::vector<int>{2, 4}));
  EXPECT_EQ(abelian_structure(Subgroup::whole(builtin_group("C6xC4"))).orders, (std::vector<int>{2, 12}));
  EXPECT_THROW(abelian_structure(Subgroup::whole(builtin_group("S3"))), Error);
}

TEST(Groups, AbelianStructureIsBijective) {
  for (const char* name : {"C2xC4", "C2xC2xC2", "C4xC4", "C3xC3", "C6xC4", "C2xC6"}) {
    auto g = builtin_group(name);
    const auto st = abelian_structure(Subgroup::whole(g));
    std::set<Elem> hit;
    std::size_t count = 1;
    for (int d : st.orders) count *= static_cast<std::size_t>(d);
    std::vector<int> c(st.orders.size(), 0);
    for (std::size_t t = 0; t < count; ++t) {
      Elem x = 0;
      std::size_t rest = t;
      for (std::size_t i = 0; i < st.orders.size(); ++i) {
        c[i] = static_cast<int>(rest % static_cast<std::size_t>(st.orders[i]));
        rest /= static_cast<std::size_t>(st.orders[i]);
        x = g->mul(x, g->pow(st.generators[i], c[i]));
      }
      hit.insert(x);
    }
    EXPECT_EQ(hit.size(), g->order()) << name;
    EXPECT_EQ(count, g->order()) << name;
  }
}

TEST(Groups, InvariantFactors) {
  EXPECT_EQ(invariant_factors_of_product({2, 3}), (std::vector<std::int64_t>{6}));
  EXPECT_EQ(invariant_factors_of_product({2, 4, 6}), (std::vector<std::int64_t>{2, 2, 12}));
  EXPECT_EQ(invariant_factors_of_product({1, 1}), (std::vector<std::int64_t>{}));
  // Element orders of a product, computed by brute force, recover the factors.
  for (const auto& orders : std::vector<std::vector<int>>{{2, 4}, {3, 3}, {2, 2, 2}, {4, 4}, {2, 6}, {3, 9}, {5}}) {
    auto g = abelian_group(orders);
    std::vector<std::int64_t> elt;
    for (Elem x = 0; x < g->order(); ++x) elt.push_back(g->element_order(x));
    std::vector<std::int64_t> o(orders.begin(), orders.end());
    EXPECT_EQ(invariant_factors_from_element_orders(elt), invariant_factors_of_product(o));
  }
}

TEST(Groups, Fixtures) {
  EXPECT_EQ(builtin_group("Wall32")->order(), 32u);
  EXPECT_EQ(builtin_group("C27sd")->order(), 27u);
  EXPECT_EQ(builtin_group("C27sd")->exponent(), 3);
  EXPECT_EQ(builtin_group("D8")->order(), 8u);
  EXPECT_EQ(builtin_group("Q8")->order(), 8u);
  EXPECT_EQ(builtin_group("Wr_2")->order(), 8u);
  EXPECT_EQ(builtin_group("Wr_3")->order(), 81u);
  EXPECT_EQ(builtin_group("S4")->order(), 24u);
  EXPECT_THROW(builtin_group("Wr_5", 256), Error);
  EXPECT_THROW(builtin_group("nonsense"), Error);
  EXPECT_THROW(builtin_group("C0"), Error);
  // Wall relations: s u s^-1 = u^3, t u t^-1 = u^5.
  auto w = builtin_group("Wall32");
  const Elem u = *w->find_label("u"), s = *w->find_label("s"), t = *w->find_label("t");
  EXPECT_EQ(w->conj(s, u), w->pow(u, 3));
  EXPECT_EQ(w->conj(t, u), w->pow(u, 5));
  EXPECT_EQ(w->mul(s, t), w->mul(t, s));
  EXPECT_FALSE(w->is_abelian());
}
