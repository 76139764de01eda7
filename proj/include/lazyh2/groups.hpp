#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lazyh2/core.hpp"
#include "lazyh2/cyclo.hpp"

namespace lazyh2 {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
 public:
  static GroupPtr from_table(const std::vector<std::vector<std::int64_t>>& table,
                             std::vector<std::string> labels = {}, std::string name = "") {
    const std::size_t n = table.size();
    if (n == 0) fail(ErrorKind::NotAGroup, "empty table");
    for (const auto& row : table) {
      if (row.size() != n) fail(ErrorKind::NotAGroup, "table is not square");
      for (auto v : row)
        if (v < 0 || static_cast<std::size_t>(v) >= n)
          fail(ErrorKind::NotAGroup, "table entry out of range");
    }
    if (!labels.empty() && labels.size() != n) fail(ErrorKind::InvalidInput, "label count mismatch");

    std::optional<std::size_t> id;
    for (std::size_t e = 0; e < n && !id; ++e) {
      bool ok = true;
      for (std::size_t x = 0; x < n && ok; ++x)
        ok = table[e][x] == static_cast<std::int64_t>(x) && table[x][e] == static_cast<std::int64_t>(x);
      if (ok) id = e;
    }
    if (!id) throw NotAGroupError("no two-sided identity", 0, 0, 0);

    // Swap the identity into position 0.
    std::vector<Elem> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[0], perm[*id]);
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->n_ = n;
    g->name_ = std::move(name);
    g->table_.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        g->table_[perm[a] * n + perm[b]] = perm[static_cast<std::size_t>(table[a][b])];
    if (!labels.empty()) {
      g->labels_.resize(n);
      for (std::size_t a = 0; a < n; ++a) g->labels_[perm[a]] = labels[a];
    }
    g->validate();
    g->finish();
    return g;
  }

  // Generators are 1-based image lists of length `degree`. The product is
  // composition: (p*q)(i) = p(q(i)).
  static GroupPtr from_permutations(int degree, const std::vector<std::vector<int>>& gens,
                                    std::size_t bound = 256, std::string name = "") {
    if (degree < 0) fail(ErrorKind::InvalidInput, "negative degree");
    const std::size_t d = static_cast<std::size_t>(degree);
    std::vector<std::vector<int>> g0;
    for (const auto& gen : gens) {
      if (gen.size() != d) fail(ErrorKind::InvalidInput, "generator length does not match degree");
      std::vector<int> p(d);
      std::vector<char> seen(d, 0);
      for (std::size_t i = 0; i < d; ++i) {
        const int v = gen[i] - 1;
        if (v < 0 || static_cast<std::size_t>(v) >= d || seen[v])
          fail(ErrorKind::InvalidInput, "generator is not a bijection");
        seen[v] = 1;
        p[i] = v;
      }
      g0.push_back(std::move(p));
    }
    std::vector<int> idp(d);
    std::iota(idp.begin(), idp.end(), 0);
    std::vector<std::vector<int>> elems{idp};
    std::map<std::vector<int>, Elem> index{{idp, 0}};
    auto compose = [&](const std::vector<int>& p, const std::vector<int>& q) {
      std::vector<int> r(d);
      for (std::size_t i = 0; i < d; ++i) r[i] = p[q[i]];
      return r;
    };
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (const auto& gen : g0) {
        auto y = compose(elems[i], gen);
        if (index.count(y)) continue;
        if (elems.size() >= bound)
          fail(ErrorKind::OrderLimitExceeded,
               "permutation group exceeds order bound " + std::to_string(bound));
        index.emplace(y, static_cast<Elem>(elems.size()));
        elems.push_back(std::move(y));
      }
    }
    const std::size_t n = elems.size();
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->n_ = n;
    g->name_ = std::move(name);
    g->table_.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) g->table_[a * n + b] = index.at(compose(elems[a], elems[b]));
    g->labels_.reserve(n);
    for (const auto& p : elems) g->labels_.push_back(cycle_label(p));
    g->perms_ = std::move(elems);
    g->degree_ = degree;
    g->finish_inverses();
    g->finish();
    return g;
  }

  // Group given by an explicit product on labelled elements 0..n-1; validated.
  template <class Mul>
  static GroupPtr from_product(std::size_t n, Mul mul, std::vector<std::string> labels, std::string name) {
    std::vector<std::vector<std::int64_t>> t(n, std::vector<std::int64_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<std::int64_t>(mul(a, b));
    return from_table(t, std::move(labels), std::move(name));
  }

  std::size_t order() const { return n_; }
  Elem mul(Elem a, Elem b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv_[g]); }

  Elem pow(Elem a, std::int64_t k) const {
    const std::int64_t o = order_[a];
    k %= o;
    if (k < 0) k += o;
    Elem r = 0;
    for (std::int64_t i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  int element_order(Elem a) const { return order_[a]; }
  const std::string& name() const { return name_; }
  bool has_labels() const { return !labels_.empty(); }

  std::string label(Elem a) const { return labels_.empty() ? std::to_string(a) : labels_[a]; }

  std::optional<Elem> find_label(std::string_view s) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == s) return static_cast<Elem>(i);
    return std::nullopt;
  }

  bool is_abelian() const { return abelian_; }

  int exponent() const {
    int e = 1;
    for (int o : order_) e = std::lcm(e, o);
    return e;
  }

  bool is_permutation_group() const { return !perms_.empty(); }
  int degree() const { return degree_; }
  // 0-based images of element a, for permutation groups.
  const std::vector<int>& permutation(Elem a) const { return perms_.at(a); }

  // Raw table rows, for serialization and validation round trips.
  std::vector<std::vector<std::int64_t>> table_rows() const {
    std::vector<std::vector<std::int64_t>> t(n_, std::vector<std::int64_t>(n_));
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) t[a][b] = table_[a * n_ + b];
    return t;
  }

  static std::string cycle_label(const std::vector<int>& p) {
    std::string s;
    std::vector<char> seen(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (seen[i] || p[i] == static_cast<int>(i)) continue;
      s += "(";
      std::size_t j = i;
      bool first = true;
      while (!seen[j]) {
        seen[j] = 1;
        if (!first) s += ",";
        first = false;
        s += std::to_string(j + 1);
        j = static_cast<std::size_t>(p[j]);
      }
      s += ")";
    }
    return s.empty() ? "()" : s;
  }

 private:
  FiniteGroup() = default;

  std::size_t n_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> inv_;
  std::vector<int> order_;
  std::vector<std::string> labels_;
  std::string name_;
  bool abelian_ = false;
  std::vector<std::vector<int>> perms_;
  int degree_ = 0;

  void validate() {
    const std::size_t n = n_;
    inv_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      std::optional<Elem> b;
      for (std::size_t x = 0; x < n && !b; ++x)
        if (table_[a * n + x] == 0) b = static_cast<Elem>(x);
      if (!b || table_[*b * n + a] != 0)
        throw NotAGroupError("element without two-sided inverse", static_cast<Elem>(a), 0, 0);
      inv_[a] = *b;
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const Elem ab = table_[a * n + b];
        for (std::size_t c = 0; c < n; ++c) {
          if (table_[ab * n + c] != table_[a * n + table_[b * n + c]])
            throw NotAGroupError("associativity fails", static_cast<Elem>(a), static_cast<Elem>(b),
                                 static_cast<Elem>(c));
        }
      }
  }

  void finish_inverses() {
    inv_.assign(n_, 0);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t x = 0; x < n_; ++x)
        if (table_[a * n_ + x] == 0) {
          inv_[a] = static_cast<Elem>(x);
          break;
        }
  }

  void finish() {
    order_.assign(n_, 1);
    for (std::size_t a = 0; a < n_; ++a) {
      Elem x = static_cast<Elem>(a);
      int k = 1;
      while (x != 0) {
        x = mul(x, static_cast<Elem>(a));
        ++k;
      }
      order_[a] = k;
    }
    abelian_ = true;
    for (std::size_t a = 0; a < n_ && abelian_; ++a)
      for (std::size_t b = a + 1; b < n_ && abelian_; ++b)
        abelian_ = table_[a * n_ + b] == table_[b * n_ + a];
  }
};

class Subgroup {
 public:
  Subgroup() = default;

  // `elems` must already be a subgroup; use generated_subgroup otherwise.
  Subgroup(GroupPtr g, std::vector<Elem> elems) : g_(std::move(g)), elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    member_.assign(g_->order(), 0);
    for (Elem e : elems_) member_.at(e) = 1;
  }

  static Subgroup trivial(const GroupPtr& g) { return Subgroup(g, {0}); }
  static Subgroup whole(const GroupPtr& g) {
    std::vector<Elem> all(g->order());
    std::iota(all.begin(), all.end(), 0);
    return Subgroup(g, std::move(all));
  }

  const GroupPtr& parent() const { return g_; }
  const std::vector<Elem>& elements() const { return elems_; }
  std::size_t order() const { return elems_.size(); }
  bool contains(Elem x) const { return x < member_.size() && member_[x]; }

  bool is_abelian() const {
    for (Elem a : elems_)
      for (Elem b : elems_)
        if (g_->mul(a, b) != g_->mul(b, a)) return false;
    return true;
  }

  bool is_normal() const {
    for (Elem g = 0; g < g_->order(); ++g)
      for (Elem a : elems_)
        if (!contains(g_->conj(g, a))) return false;
    return true;
  }

  bool is_subgroup_of(const Subgroup& o) const {
    for (Elem a : elems_)
      if (!o.contains(a)) return false;
    return true;
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.g_ == b.g_ && a.elems_ == b.elems_;
  }
  friend bool operator!=(const Subgroup& a, const Subgroup& b) { return !(a == b); }

 private:
  GroupPtr g_;
  std::vector<Elem> elems_;
  std::vector<char> member_;
};

struct GroupMap {
  GroupPtr source;
  GroupPtr target;
  std::vector<Elem> images;

  Elem operator()(Elem x) const { return images[x]; }

  // (this o other)(x) = this(other(x))
  GroupMap after(const GroupMap& other) const {
    GroupMap r{other.source, target, std::vector<Elem>(other.images.size())};
    for (std::size_t i = 0; i < other.images.size(); ++i) r.images[i] = images[other.images[i]];
    return r;
  }

  GroupMap inverse() const {
    GroupMap r{target, source, std::vector<Elem>(images.size())};
    for (std::size_t i = 0; i < images.size(); ++i) r.images[images[i]] = static_cast<Elem>(i);
    return r;
  }

  bool is_homomorphism() const {
    for (Elem a = 0; a < source->order(); ++a)
      for (Elem b = 0; b < source->order(); ++b)
        if (images[source->mul(a, b)] != target->mul(images[a], images[b])) return false;
    return true;
  }

  friend bool operator==(const GroupMap& a, const GroupMap& b) { return a.images == b.images; }
  friend bool operator<(const GroupMap& a, const GroupMap& b) { return a.images < b.images; }
};

inline std::vector<Elem> subgroup_closure(const FiniteGroup& g, const std::vector<Elem>& gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<Elem> out{0};
  in[0] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (Elem s : gens) {
      const Elem y = g.mul(out[i], s);
      if (!in[y]) {
        in[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline Subgroup generated_subgroup(const GroupPtr& g, const std::vector<Elem>& gens) {
  return Subgroup(g, subgroup_closure(*g, gens));
}

inline std::vector<std::vector<Elem>> conjugacy_classes(const FiniteGroup& g) {
  std::vector<char> seen(g.order(), 0);
  std::vector<std::vector<Elem>> out;
  for (Elem x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    std::set<Elem> cls;
    for (Elem h = 0; h < g.order(); ++h) cls.insert(g.conj(h, x));
    for (Elem y : cls) seen[y] = 1;
    out.emplace_back(cls.begin(), cls.end());
  }
  return out;
}

inline std::vector<int> class_index(const FiniteGroup& g) {
  std::vector<int> idx(g.order(), -1);
  const auto cls = conjugacy_classes(g);
  for (std::size_t i = 0; i < cls.size(); ++i)
    for (Elem x : cls[i]) idx[x] = static_cast<int>(i);
  return idx;
}

inline Subgroup center(const GroupPtr& g) {
  std::vector<Elem> z;
  for (Elem x = 0; x < g->order(); ++x) {
    bool central = true;
    for (Elem y = 0; y < g->order() && central; ++y) central = g->mul(x, y) == g->mul(y, x);
    if (central) z.push_back(x);
  }
  return Subgroup(g, std::move(z));
}

inline bool subgroup_less(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.elements() < b.elements();
}

// All abelian normal subgroups, grown one conjugacy class at a time from the
// trivial subgroup; each one is the closure of the classes it contains.
inline std::vector<Subgroup> normal_abelian_subgroups(const GroupPtr& g) {
  const auto classes = conjugacy_classes(*g);
  std::vector<int> usable;
  for (std::size_t i = 1; i < classes.size(); ++i) {
    bool ok = true;
    for (Elem a : classes[i])
      for (Elem b : classes[i])
        if (g->mul(a, b) != g->mul(b, a)) ok = false;
    if (ok) usable.push_back(static_cast<int>(i));
  }
  std::set<std::vector<Elem>> seen;
  std::vector<std::vector<Elem>> queue{{0}};
  seen.insert({0});
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const auto cur = queue[qi];
    std::vector<char> in(g->order(), 0);
    for (Elem x : cur) in[x] = 1;
    for (int ci : usable) {
      const auto& cls = classes[static_cast<std::size_t>(ci)];
      if (in[cls[0]]) continue;
      bool commutes = true;
      for (Elem a : cls)
        for (Elem x : cur)
          if (g->mul(a, x) != g->mul(x, a)) {
            commutes = false;
            break;
          }
      if (!commutes) continue;
      std::vector<Elem> gens = cur;
      gens.insert(gens.end(), cls.begin(), cls.end());
      auto next = subgroup_closure(*g, gens);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  std::vector<Subgroup> out;
  for (auto& s : queue) out.emplace_back(g, s);
  std::sort(out.begin(), out.end(), subgroup_less);
  return out;
}

// Every subgroup, as joins of cyclic subgroups. Intended for small groups.
inline std::vector<Subgroup> all_subgroups(const GroupPtr& g) {
  std::set<std::vector<Elem>> cyclic;
  for (Elem x = 0; x < g->order(); ++x) cyclic.insert(subgroup_closure(*g, {x}));
  std::set<std::vector<Elem>> seen{{0}};
  std::vector<std::vector<Elem>> queue{{0}};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const auto cur = queue[qi];
    std::vector<char> in(g->order(), 0);
    for (Elem x : cur) in[x] = 1;
    for (const auto& c : cyclic) {
      if (in[c.size() > 1 ? c[1] : 0] && std::all_of(c.begin(), c.end(), [&](Elem e) { return in[e]; }))
        continue;
      std::vector<Elem> gens = cur;
      gens.insert(gens.end(), c.begin(), c.end());
      auto next = subgroup_closure(*g, gens);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  std::vector<Subgroup> out;
  for (auto& s : queue) out.emplace_back(g, s);
  std::sort(out.begin(), out.end(), subgroup_less);
  return out;
}

// Greedy small generating set, pruned of redundant members.
inline std::vector<Elem> generating_set(const FiniteGroup& g) {
  std::vector<Elem> gens;
  std::vector<Elem> cur{0};
  while (cur.size() < g.order()) {
    Elem best = 0;
    std::size_t best_size = 0;
    std::vector<char> in(g.order(), 0);
    for (Elem x : cur) in[x] = 1;
    for (Elem x = 1; x < g.order(); ++x) {
      if (in[x]) continue;
      auto trial = gens;
      trial.push_back(x);
      const std::size_t s = subgroup_closure(g, trial).size();
      if (s > best_size) {
        best_size = s;
        best = x;
      }
    }
    gens.push_back(best);
    cur = subgroup_closure(g, gens);
  }
  for (std::size_t i = gens.size(); i-- > 0;) {
    auto trial = gens;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (subgroup_closure(g, trial).size() == g.order()) gens = trial;
  }
  return gens;
}

namespace groups_detail {

// Extends images of gens[0..m) to a homomorphism on the generated subgroup.
inline bool extend_hom(const FiniteGroup& g, const std::vector<Elem>& gens, const std::vector<Elem>& imgs,
                       std::size_t m, std::vector<Elem>& map) {
  constexpr Elem unset = static_cast<Elem>(-1);
  map.assign(g.order(), unset);
  std::vector<char> used(g.order(), 0);
  map[0] = 0;
  used[0] = 1;
  std::vector<Elem> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Elem w = queue[i];
    for (std::size_t j = 0; j < m; ++j) {
      const Elem x = g.mul(w, gens[j]);
      const Elem y = g.mul(map[w], imgs[j]);
      if (map[x] == unset) {
        if (used[y]) return false;
        used[y] = 1;
        map[x] = y;
        queue.push_back(x);
      } else if (map[x] != y) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace groups_detail

// Automorphisms of g by backtracking over images of a generating set.
// With class_preserving, candidate images stay inside the generator's class.
inline std::vector<GroupMap> automorphisms(const GroupPtr& g, bool class_preserving, std::size_t bound) {
  if (g->order() > bound)
    fail(ErrorKind::OrderLimitExceeded,
         "automorphism search needs |G| <= " + std::to_string(bound) + ", got " + std::to_string(g->order()));
  const auto gens = generating_set(*g);
  const auto cidx = class_index(*g);
  std::vector<std::size_t> csize(g->order());
  {
    std::vector<std::size_t> counts(g->order(), 0);
    for (Elem x = 0; x < g->order(); ++x) ++counts[static_cast<std::size_t>(cidx[x])];
    for (Elem x = 0; x < g->order(); ++x) csize[x] = counts[static_cast<std::size_t>(cidx[x])];
  }
  std::vector<std::vector<Elem>> cands(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Elem y = 0; y < g->order(); ++y) {
      const Elem x = gens[i];
      const bool ok = class_preserving
                          ? cidx[y] == cidx[x]
                          : g->element_order(y) == g->element_order(x) && csize[y] == csize[x];
      if (ok) cands[i].push_back(y);
    }
  std::vector<GroupMap> out;
  std::vector<Elem> imgs(gens.size());
  std::vector<Elem> map;
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == gens.size()) {
      if (!groups_detail::extend_hom(*g, gens, imgs, gens.size(), map)) return;
      if (class_preserving)
        for (Elem x = 0; x < g->order(); ++x)
          if (cidx[map[x]] != cidx[x]) return;
      out.push_back(GroupMap{g, g, map});
      return;
    }
    for (Elem y : cands[j]) {
      imgs[j] = y;
      if (groups_detail::extend_hom(*g, gens, imgs, j + 1, map)) self(self, j + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<GroupMap> inner_automorphisms(const GroupPtr& g) {
  std::set<std::vector<Elem>> maps;
  for (Elem h = 0; h < g->order(); ++h) {
    std::vector<Elem> im(g->order());
    for (Elem x = 0; x < g->order(); ++x) im[x] = g->conj(h, x);
    maps.insert(std::move(im));
  }
  std::vector<GroupMap> out;
  for (const auto& m : maps) out.push_back(GroupMap{g, g, m});
  return out;
}

struct ClassPreservingAuts {
  std::vector<GroupMap> auts;
  std::size_t inn_order = 1;
  std::size_t inn_index = 1;
  std::vector<GroupMap> outer_reps;  // one per coset of Inn, identity first
};

inline ClassPreservingAuts class_preserving_auts(const GroupPtr& g, std::size_t bound = 64) {
  ClassPreservingAuts r;
  r.auts = automorphisms(g, true, bound);
  const auto inn = inner_automorphisms(g);
  r.inn_order = inn.size();
  if (r.auts.size() % inn.size() != 0) fail(ErrorKind::Internal, "Inn is not a subgroup of Aut_c");
  r.inn_index = r.auts.size() / inn.size();
  std::set<std::vector<Elem>> covered;
  for (const auto& a : r.auts) {
    if (covered.count(a.images)) continue;
    r.outer_reps.push_back(a);
    for (const auto& i : inn) covered.insert(a.after(i).images);
  }
  return r;
}

// Invariant factors d1 | d2 | ... (all > 1) of a finite abelian group, given
// the multiset of its element orders.
inline std::vector<std::int64_t> invariant_factors_from_element_orders(const std::vector<std::int64_t>& orders) {
  const std::int64_t n = static_cast<std::int64_t>(orders.size());
  std::vector<std::vector<int>> parts;  // per prime, descending exponents
  std::vector<int> primes;
  for (auto [p, k] : cyclo_detail::factorize(n)) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(k) + 1, 0);
    for (std::size_t j = 0; j <= static_cast<std::size_t>(k); ++j) {
      std::int64_t pj = 1;
      for (std::size_t t = 0; t < j; ++t) pj *= p;
      for (auto o : orders)
        if (pj % o == 0) ++c[j];
    }
    // c[j] = p^(sum_i min(lambda_i, j)); #parts >= j = log_p(c[j]/c[j-1]).
    std::vector<int> ge(static_cast<std::size_t>(k) + 1, 0);
    for (std::size_t j = 1; j <= static_cast<std::size_t>(k); ++j) {
      std::int64_t ratio = c[j] / c[j - 1];
      int l = 0;
      while (ratio > 1) {
        ratio /= p;
        ++l;
      }
      ge[j] = l;
    }
    std::vector<int> lam;
    for (int i = 0; i < ge[1]; ++i) {
      int len = 0;
      for (std::size_t j = 1; j <= static_cast<std::size_t>(k); ++j)
        if (ge[j] > i) len = static_cast<int>(j);
      lam.push_back(len);
    }
    primes.push_back(p);
    parts.push_back(lam);
  }
  std::size_t len = 0;
  for (const auto& l : parts) len = std::max(len, l.size());
  std::vector<std::int64_t> out(len, 1);
  for (std::size_t pi = 0; pi < primes.size(); ++pi)
    for (std::size_t t = 0; t < parts[pi].size(); ++t)
      for (int e = 0; e < parts[pi][t]; ++e) out[len - 1 - t] *= primes[pi];
  return out;
}

// Invariant factors of a direct product of cyclic groups of the given orders.
inline std::vector<std::int64_t> invariant_factors_of_product(const std::vector<std::int64_t>& cyclic) {
  std::map<int, std::vector<int>> per;
  for (auto m : cyclic)
    for (auto [p, k] : cyclo_detail::factorize(m)) per[p].push_back(k);
  std::size_t len = 0;
  for (auto& [p, v] : per) {
    std::sort(v.rbegin(), v.rend());
    len = std::max(len, v.size());
  }
  std::vector<std::int64_t> out(len, 1);
  for (const auto& [p, v] : per)
    for (std::size_t t = 0; t < v.size(); ++t)
      for (int e = 0; e < v[t]; ++e) out[len - 1 - t] *= p;
  return out;
}

struct AbelianStructure {
  std::vector<Elem> generators;
  std::vector<int> orders;  // d1 | d2 | ..., all > 1
};

inline AbelianStructure abelian_structure(const Subgroup& a) {
  if (!a.is_abelian()) fail(ErrorKind::NotAbelian, "subgroup is not abelian");
  const auto& g = *a.parent();
  std::vector<std::int64_t> ords;
  for (Elem x : a.elements()) ords.push_back(g.element_order(x));
  const auto inv = invariant_factors_from_element_orders(ords);
  AbelianStructure s;
  const std::size_t r = inv.size();
  std::vector<Elem> chosen(r);
  // Choose generators for the largest factors first; the chosen ones must
  // generate a subgroup of order equal to the product of their orders.
  auto rec = [&](auto&& self, std::size_t t, std::size_t prod) -> bool {
    if (t == r) return prod == a.order();
    const std::size_t slot = r - 1 - t;
    const int want = static_cast<int>(inv[slot]);
    for (Elem x : a.elements()) {
      if (g.element_order(x) != want) continue;
      std::vector<Elem> gens(chosen.begin() + static_cast<std::ptrdiff_t>(slot + 1), chosen.end());
      gens.push_back(x);
      if (subgroup_closure(g, gens).size() != prod * static_cast<std::size_t>(want)) continue;
      chosen[slot] = x;
      if (self(self, t + 1, prod * static_cast<std::size_t>(want))) return true;
    }
    return false;
  };
  if (!rec(rec, 0, 1)) fail(ErrorKind::Internal, "abelian_structure: no basis found");
  s.generators = chosen;
  for (auto d : inv) s.orders.push_back(static_cast<int>(d));
  return s;
}

}  // namespace lazyh2
