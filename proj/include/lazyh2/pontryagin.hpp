#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lazyh2/cyclo.hpp"
#include "lazyh2/groups.hpp"

namespace lazyh2 {

// Dual of an abelian subgroup A with a fixed basis. Characters are indexed
// 0..|A|-1 in lexicographic order of their exponent tuples; index 0 is trivial.
class DualGroup {
 public:
  explicit DualGroup(Subgroup a) : a_(std::move(a)) {
    auto s = abelian_structure(a_);
    gens_ = s.generators;
    orders_ = s.orders;
    exponent_ = 1;
    for (int d : orders_) exponent_ = std::lcm(exponent_, d);
    const std::size_t n = a_.order();
    coord_of_.assign(a_.parent()->order(), {});
    elem_of_.resize(n);
    for (std::size_t idx = 0; idx < n; ++idx) {
      auto c = decode(idx);
      Elem x = 0;
      for (std::size_t i = 0; i < c.size(); ++i) x = group().mul(x, group().pow(gens_[i], c[i]));
      elem_of_[idx] = x;
      coord_of_[x] = c;
    }
    pos_.assign(a_.parent()->order(), -1);
    for (std::size_t i = 0; i < a_.elements().size(); ++i) pos_[a_.elements()[i]] = static_cast<int>(i);
  }

  const Subgroup& subgroup() const { return a_; }
  const FiniteGroup& group() const { return *a_.parent(); }
  const GroupPtr& group_ptr() const { return a_.parent(); }
  std::size_t size() const { return a_.order(); }
  std::size_t rank() const { return orders_.size(); }
  const std::vector<int>& orders() const { return orders_; }
  const std::vector<Elem>& generators() const { return gens_; }
  int exponent() const { return exponent_; }

  const std::vector<int>& coords(Elem a) const {
    if (!a_.contains(a)) fail(ErrorKind::NotInSubgroup, "element " + std::to_string(a) + " not in subgroup");
    return coord_of_[a];
  }

  Elem element(const std::vector<int>& c) const { return elem_of_[encode(c)]; }

  // Position of a within the sorted element list of A.
  std::size_t position(Elem a) const {
    if (!a_.contains(a)) fail(ErrorKind::NotInSubgroup, "element not in subgroup");
    return static_cast<std::size_t>(pos_[a]);
  }

  std::vector<int> exps(std::size_t chi) const { return decode(chi); }
  std::size_t index(const std::vector<int>& e) const { return encode(e); }

  std::size_t basis_character(std::size_t i) const {
    std::vector<int> e(rank(), 0);
    e[i] = 1;
    return encode(e);
  }

  // chi(a) = zeta_exponent^pairing(chi, a)
  int pairing(std::size_t chi, Elem a) const {
    const auto& c = coords(a);
    const auto e = decode(chi);
    long long v = 0;
    for (std::size_t i = 0; i < e.size(); ++i) v += static_cast<long long>(e[i]) * c[i] * (exponent_ / orders_[i]);
    return static_cast<int>(v % exponent_);
  }

  CycNum value(std::size_t chi, Elem a) const { return root_of_unity(exponent_, pairing(chi, a)); }

  std::size_t mul(std::size_t x, std::size_t y) const {
    auto a = decode(x), b = decode(y);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = (a[i] + b[i]) % orders_[i];
    return encode(a);
  }

  std::size_t inv(std::size_t x) const {
    auto a = decode(x);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = (orders_[i] - a[i]) % orders_[i];
    return encode(a);
  }

  std::size_t pow(std::size_t x, long long k) const {
    auto a = decode(x);
    for (std::size_t i = 0; i < a.size(); ++i) {
      long long v = (static_cast<long long>(a[i]) * k) % orders_[i];
      if (v < 0) v += orders_[i];
      a[i] = static_cast<int>(v);
    }
    return encode(a);
  }

  // Exponent of chi restricted to the subgroup B, expressed in B's dual basis.
  std::size_t restrict_to(std::size_t chi, const DualGroup& b) const {
    std::vector<int> e(b.rank());
    for (std::size_t j = 0; j < b.rank(); ++j) {
      const int v = pairing(chi, b.generators()[j]);
      const int scale = exponent_ / b.orders()[j];
      if (v % scale != 0) fail(ErrorKind::Internal, "restriction: character value outside expected roots");
      e[j] = v / scale;
    }
    return b.index(e);
  }

 private:
  Subgroup a_;
  std::vector<Elem> gens_;
  std::vector<int> orders_;
  int exponent_ = 1;
  std::vector<std::vector<int>> coord_of_;
  std::vector<Elem> elem_of_;
  std::vector<int> pos_;

  std::vector<int> decode(std::size_t x) const {
    std::vector<int> c(orders_.size());
    for (std::size_t i = orders_.size(); i-- > 0;) {
      c[i] = static_cast<int>(x % static_cast<std::size_t>(orders_[i]));
      x /= static_cast<std::size_t>(orders_[i]);
    }
    return c;
  }

  std::size_t encode(const std::vector<int>& c) const {
    std::size_t x = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i)
      x = x * static_cast<std::size_t>(orders_[i]) +
          static_cast<std::size_t>(((c[i] % orders_[i]) + orders_[i]) % orders_[i]);
    return x;
  }
};

using DualPtr = std::shared_ptr<const DualGroup>;

inline DualPtr make_dual(const Subgroup& a) { return std::make_shared<const DualGroup>(a); }

struct Character {
  DualPtr dual;
  std::size_t index = 0;

  std::vector<int> exponents() const { return dual->exps(index); }
  CycNum operator()(Elem a) const { return dual->value(index, a); }
};

inline std::vector<Character> characters(const DualPtr& dual) {
  std::vector<Character> out;
  for (std::size_t i = 0; i < dual->size(); ++i) out.push_back(Character{dual, i});
  return out;
}

inline CycNum eval_character(const Character& chi, Elem a) { return chi(a); }

// Alternating bilinear form on the dual: b(chi_i, chi_j) = zeta_{m_ij}^{e_ij}
// on basis characters, m_ij = gcd(d_i, d_j).
struct AltForm {
  DualPtr dual;
  std::vector<std::vector<int>> matrix;

  int modulus(std::size_t i, std::size_t j) const { return std::gcd(dual->orders()[i], dual->orders()[j]); }

  static AltForm trivial(const DualPtr& d) {
    return AltForm{d, std::vector<std::vector<int>>(d->rank(), std::vector<int>(d->rank(), 0))};
  }

  // Builds the skew matrix from upper-triangular entries (row-major i < j).
  static AltForm from_upper(const DualPtr& d, const std::vector<int>& upper) {
    AltForm f = trivial(d);
    std::size_t t = 0;
    for (std::size_t i = 0; i < d->rank(); ++i)
      for (std::size_t j = i + 1; j < d->rank(); ++j) {
        const int m = f.modulus(i, j);
        const int v = ((upper.at(t++) % m) + m) % m;
        f.matrix[i][j] = v;
        f.matrix[j][i] = (m - v) % m;
      }
    return f;
  }

  // Exponent k with b(rho, sigma) = zeta_e^k, e = exponent of A.
  int value(std::size_t rho, std::size_t sigma) const {
    const auto r = dual->exps(rho), s = dual->exps(sigma);
    const int e = dual->exponent();
    long long v = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (matrix[i][j] == 0) continue;
        v += static_cast<long long>(matrix[i][j]) * r[i] * s[j] * (e / modulus(i, j));
      }
    return static_cast<int>(v % e);
  }

  CycNum operator()(std::size_t rho, std::size_t sigma) const {
    return root_of_unity(dual->exponent(), value(rho, sigma));
  }

  AltForm operator*(const AltForm& o) const {
    AltForm r = *this;
    for (std::size_t i = 0; i < matrix.size(); ++i)
      for (std::size_t j = 0; j < matrix.size(); ++j)
        if (i != j) r.matrix[i][j] = (matrix[i][j] + o.matrix[i][j]) % modulus(i, j);
    return r;
  }

  AltForm inverse() const {
    AltForm r = *this;
    for (std::size_t i = 0; i < matrix.size(); ++i)
      for (std::size_t j = 0; j < matrix.size(); ++j)
        if (i != j) r.matrix[i][j] = (modulus(i, j) - matrix[i][j]) % modulus(i, j);
    return r;
  }

  bool is_trivial() const {
    for (const auto& row : matrix)
      for (int v : row)
        if (v != 0) return false;
    return true;
  }

  friend bool operator==(const AltForm& a, const AltForm& b) {
    return a.dual->subgroup() == b.dual->subgroup() && a.dual->generators() == b.dual->generators() &&
           a.matrix == b.matrix;
  }
};

inline std::vector<AltForm> alternating_forms(const DualPtr& d, std::size_t bound = 1u << 16) {
  const std::size_t r = d->rank();
  std::vector<int> mods;
  std::size_t count = 1;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      mods.push_back(std::gcd(d->orders()[i], d->orders()[j]));
      count *= static_cast<std::size_t>(mods.back());
      if (count > bound) fail(ErrorKind::OrderLimitExceeded, "too many alternating forms to enumerate");
    }
  std::vector<AltForm> out;
  std::vector<int> upper(mods.size(), 0);
  for (std::size_t t = 0; t < count; ++t) {
    std::size_t x = t;
    for (std::size_t i = mods.size(); i-- > 0;) {
      upper[i] = static_cast<int>(x % static_cast<std::size_t>(mods[i]));
      x /= static_cast<std::size_t>(mods[i]);
    }
    out.push_back(AltForm::from_upper(d, upper));
  }
  return out;
}

inline bool is_nondegenerate(const AltForm& b) {
  const auto& d = *b.dual;
  std::vector<std::size_t> basis;
  for (std::size_t j = 0; j < d.rank(); ++j) basis.push_back(d.basis_character(j));
  for (std::size_t rho = 1; rho < d.size(); ++rho) {
    bool pairs = false;
    for (std::size_t s : basis)
      if (b.value(rho, s) != 0) {
        pairs = true;
        break;
      }
    if (!pairs) return false;
  }
  return true;
}

inline bool is_symmetric_type_orders(const std::vector<int>& orders) {
  std::map<int, int> cnt;
  for (int d : orders) ++cnt[d];
  for (const auto& [d, c] : cnt)
    if (c % 2 != 0) return false;
  return true;
}

inline bool is_symmetric_type(const Subgroup& a) { return is_symmetric_type_orders(abelian_structure(a).orders); }

// Action of G on the dual of a normal abelian subgroup: (g.chi)(a) = chi(g^-1 a g).
class DualAction {
 public:
  DualAction(GroupPtr g, DualPtr dual) : g_(std::move(g)), dual_(std::move(dual)) {
    if (!dual_->subgroup().is_normal()) fail(ErrorKind::InvalidInput, "dual action needs a normal subgroup");
    const std::size_t n = dual_->size();
    table_.assign(g_->order(), std::vector<std::size_t>(n));
    const int e = dual_->exponent();
    for (Elem h = 0; h < g_->order(); ++h) {
      const Elem hi = g_->inv(h);
      for (std::size_t chi = 0; chi < n; ++chi) {
        std::vector<int> ex(dual_->rank());
        for (std::size_t j = 0; j < dual_->rank(); ++j) {
          const Elem x = g_->conj(hi, dual_->generators()[j]);
          ex[j] = dual_->pairing(chi, x) / (e / dual_->orders()[j]);
        }
        table_[h][chi] = dual_->index(ex);
      }
    }
    gens_ = generating_set(*g_);
  }

  const GroupPtr& group() const { return g_; }
  const DualPtr& dual() const { return dual_; }
  std::size_t act(Elem h, std::size_t chi) const { return table_[h][chi]; }
  const std::vector<Elem>& generators() const { return gens_; }

 private:
  GroupPtr g_;
  DualPtr dual_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<Elem> gens_;
};

inline bool is_invariant_form(const AltForm& b, const DualAction& act) {
  const auto& d = *b.dual;
  for (Elem g : act.generators())
    for (std::size_t i = 0; i < d.rank(); ++i)
      for (std::size_t j = i + 1; j < d.rank(); ++j) {
        const std::size_t ci = d.basis_character(i), cj = d.basis_character(j);
        if (b.value(act.act(g, ci), act.act(g, cj)) != b.value(ci, cj)) return false;
      }
  return true;
}

inline std::vector<AltForm> invariant_forms(const DualAction& act, bool only_nondegenerate) {
  std::vector<AltForm> out;
  for (auto& b : alternating_forms(act.dual()))
    if (is_invariant_form(b, act) && (!only_nondegenerate || is_nondegenerate(b))) out.push_back(std::move(b));
  return out;
}

// Dense |A^|x|A^| table of values.
struct Cocycle {
  DualPtr dual;
  std::vector<CycNum> values;

  const CycNum& operator()(std::size_t r, std::size_t s) const { return values[r * dual->size() + s]; }
  CycNum& at(std::size_t r, std::size_t s) { return values[r * dual->size() + s]; }

  static Cocycle trivial(const DualPtr& d) { return Cocycle{d, std::vector<CycNum>(d->size() * d->size(), CycNum(1))}; }
};

inline bool is_normalized_cocycle(const Cocycle& c) {
  const auto& d = *c.dual;
  const std::size_t n = d.size();
  for (std::size_t r = 0; r < n; ++r)
    if (!c(0, r).is_one() || !c(r, 0).is_one()) return false;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t)
        if (c(r, s) * c(d.mul(r, s), t) != c(s, t) * c(r, d.mul(s, t))) return false;
  return true;
}

inline bool is_invariant_cocycle(const Cocycle& c, const DualAction& act) {
  const std::size_t n = c.dual->size();
  for (Elem g : act.generators())
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s)
        if (c(act.act(g, r), act.act(g, s)) != c(r, s)) return false;
  return true;
}

// b(rho, sigma) = c(sigma, rho) / c(rho, sigma), read on basis characters.
inline AltForm form_of_cocycle(const Cocycle& c) {
  const auto& d = *c.dual;
  AltForm b = AltForm::trivial(c.dual);
  for (std::size_t i = 0; i < d.rank(); ++i)
    for (std::size_t j = 0; j < d.rank(); ++j) {
      const std::size_t ci = d.basis_character(i), cj = d.basis_character(j);
      const CycNum v = c(cj, ci) / c(ci, cj);
      const int m = b.modulus(i, j);
      bool found = false;
      for (int k = 0; k < m && !found; ++k)
        if (root_of_unity(m, k) == v) {
          b.matrix[i][j] = k;
          found = true;
        }
      if (!found) fail(ErrorKind::NotACocycle, "associated form value is not a root of unity of the expected order");
    }
  return b;
}

// c(rho, sigma) = b(sigma, rho/2), whose associated form is b.
inline Cocycle cocycle_from_form_odd(const AltForm& b) {
  const auto& d = *b.dual;
  if (d.size() % 2 == 0) fail(ErrorKind::EvenOrder, "square-root cocycle needs odd order");
  const int e = d.exponent();
  const long long half = (e + 1) / 2;  // inverse of 2 modulo e
  Cocycle c{b.dual, std::vector<CycNum>(d.size() * d.size())};
  for (std::size_t r = 0; r < d.size(); ++r) {
    const std::size_t rh = d.pow(r, half);
    for (std::size_t s = 0; s < d.size(); ++s) c.at(r, s) = root_of_unity(e, b.value(s, rh));
  }
  return c;
}

struct CocycleSearchResult {
  std::optional<Cocycle> cocycle;
  // "orbit-inconsistency": nonexistence forced by invariance and the
  // transposition rule alone (independent of the value range);
  // "exhaustive-search": answer from backtracking over the restricted range.
  std::string argument;
  int value_modulus = 0;
};

namespace pontryagin_detail {

struct WeightedUnionFind {
  std::vector<std::size_t> parent;
  std::vector<int> offset;  // value(x) = value(parent) + offset (mod m)
  int m;

  WeightedUnionFind(std::size_t n, int mod) : parent(n), offset(n, 0), m(mod) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  std::pair<std::size_t, int> find(std::size_t x) {
    if (parent[x] == x) return {x, 0};
    auto [root, off] = find(parent[x]);
    parent[x] = root;
    offset[x] = (offset[x] + off) % m;
    return {root, offset[x]};
  }

  // Impose value(y) - value(x) = diff. Returns false on contradiction.
  bool relate(std::size_t x, std::size_t y, int diff) {
    auto [rx, ox] = find(x);
    auto [ry, oy] = find(y);
    diff = ((diff % m) + m) % m;
    if (rx == ry) return ((oy - ox - diff) % m + m) % m == 0;
    // value(ry) = value(y) - oy = value(x) + diff - oy = value(rx) + ox + diff - oy
    parent[ry] = rx;
    offset[ry] = ((ox + diff - oy) % m + m) % m;
    return true;
  }
};

}  // namespace pontryagin_detail

// Searches for a normalized, action-invariant cocycle with associated form b.
inline CocycleSearchResult invariant_cocycle_search(const AltForm& b, const DualAction& act) {
  const auto& d = *b.dual;
  const std::size_t n = d.size();
  if (n > 16) fail(ErrorKind::OrderLimitExceeded, "cocycle search needs |A| <= 16");
  const int e = d.exponent();
  CocycleSearchResult result;

  for (int m : {e, 2 * e}) {
    const int scale = m / e;
    pontryagin_detail::WeightedUnionFind uf(n * n, m);
    auto cell = [&](std::size_t r, std::size_t s) { return r * n + s; };
    bool consistent = true;
    for (std::size_t r = 1; r < n && consistent; ++r)
      for (std::size_t s = 1; s < n && consistent; ++s) {
        for (Elem g : act.generators())
          if (!uf.relate(cell(r, s), cell(act.act(g, r), act.act(g, s)), 0)) consistent = false;
        if (consistent && !uf.relate(cell(r, s), cell(s, r), b.value(r, s) * scale)) consistent = false;
      }
    if (!consistent) {
      result.argument = "orbit-inconsistency";
      result.value_modulus = m;
      return result;
    }

    // Variables are union-find roots among cells with both entries nontrivial.
    std::vector<int> var_of(n * n, -1);
    int nvars = 0;
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t s = 1; s < n; ++s) {
        auto [root, off] = uf.find(cell(r, s));
        if (var_of[root] < 0) var_of[root] = nvars++;
      }
    struct Term {
      int var;
      int coef;
    };
    struct Equation {
      std::vector<Term> terms;
      int constant;  // sum coef*var + constant == 0 (mod m)
    };
    std::set<std::pair<std::vector<std::pair<int, int>>, int>> seen;
    std::vector<Equation> eqs;
    bool contradiction = false;
    for (std::size_t r = 1; r < n && !contradiction; ++r)
      for (std::size_t s = 1; s < n && !contradiction; ++s)
        for (std::size_t t = 1; t < n && !contradiction; ++t) {
          std::map<int, int> coef;
          int cst = 0;
          auto add = [&](std::size_t x, std::size_t y, int sign) {
            if (x == 0 || y == 0) return;
            auto [root, off] = uf.find(cell(x, y));
            coef[var_of[root]] += sign;
            cst += sign * off;
          };
          add(r, s, 1);
          add(d.mul(r, s), t, 1);
          add(s, t, -1);
          add(r, d.mul(s, t), -1);
          std::vector<std::pair<int, int>> key;
          for (auto [v, c] : coef) {
            const int cm = ((c % m) + m) % m;
            if (cm != 0) key.emplace_back(v, cm);
          }
          cst = ((cst % m) + m) % m;
          if (key.empty()) {
            if (cst != 0) contradiction = true;
            continue;
          }
          if (!seen.insert({key, cst}).second) continue;
          Equation eq;
          for (auto [v, c] : key) eq.terms.push_back({v, c});
          eq.constant = cst;
          eqs.push_back(std::move(eq));
        }
    if (contradiction) {
      result.argument = "orbit-inconsistency";
      result.value_modulus = m;
      return result;
    }

    std::vector<std::vector<std::size_t>> eqs_of(static_cast<std::size_t>(nvars));
    for (std::size_t i = 0; i < eqs.size(); ++i)
      for (const auto& t : eqs[i].terms) eqs_of[static_cast<std::size_t>(t.var)].push_back(i);
    std::vector<int> val(static_cast<std::size_t>(nvars), -1);
    std::vector<int> trail;

    // Assign and propagate forced unit-coefficient variables; false on conflict.
    std::function<bool(int, int)> assign = [&](int v, int x) -> bool {
      val[static_cast<std::size_t>(v)] = x;
      trail.push_back(v);
      for (std::size_t ei : eqs_of[static_cast<std::size_t>(v)]) {
        const auto& eq = eqs[ei];
        int sum = eq.constant, unknown = -1, unknown_coef = 0, nunknown = 0;
        for (const auto& t : eq.terms) {
          const int tv = val[static_cast<std::size_t>(t.var)];
          if (tv < 0) {
            ++nunknown;
            unknown = t.var;
            unknown_coef = t.coef;
          } else {
            sum = (sum + t.coef * tv) % m;
          }
        }
        if (nunknown == 0) {
          if (sum % m != 0) return false;
        } else if (nunknown == 1 && (unknown_coef == 1 || unknown_coef == m - 1)) {
          int forced = ((-sum) % m + m) % m;
          if (unknown_coef == m - 1) forced = (m - forced) % m;
          if (!assign(unknown, forced)) return false;
        }
      }
      return true;
    };
    auto undo = [&](std::size_t mark) {
      while (trail.size() > mark) {
        val[static_cast<std::size_t>(trail.back())] = -1;
        trail.pop_back();
      }
    };
    std::function<bool()> dfs = [&]() -> bool {
      int v = -1;
      for (int i = 0; i < nvars; ++i)
        if (val[static_cast<std::size_t>(i)] < 0) {
          v = i;
          break;
        }
      if (v < 0) return true;
      for (int x = 0; x < m; ++x) {
        const std::size_t mark = trail.size();
        if (assign(v, x) && dfs()) return true;
        undo(mark);
      }
      return false;
    };
    if (!dfs()) continue;

    Cocycle c = Cocycle::trivial(b.dual);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t s = 1; s < n; ++s) {
        auto [root, off] = uf.find(cell(r, s));
        c.at(r, s) = root_of_unity(m, val[static_cast<std::size_t>(var_of[root])] + off);
      }
    if (!is_normalized_cocycle(c) || !is_invariant_cocycle(c, act) || !(form_of_cocycle(c) == b))
      fail(ErrorKind::Internal, "cocycle search produced an invalid witness");
    result.cocycle = std::move(c);
    result.argument = "exhaustive-search";
    result.value_modulus = m;
    return result;
  }
  result.argument = "exhaustive-search";
  result.value_modulus = 2 * e;
  return result;
}

}  // namespace lazyh2
