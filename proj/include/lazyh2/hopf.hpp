#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "lazyh2/cyclo.hpp"
#include "lazyh2/groups.hpp"
#include "lazyh2/linalg.hpp"
#include "lazyh2/pontryagin.hpp"

namespace lazyh2 {

// Element of k[G]^{(x)d}, d in {1,2,3}, as a sparse map from packed index
// tuples to nonzero coefficients. Keys sort lexicographically by tuple.
class GTensor {
 public:
  using Key = std::uint64_t;

  GTensor(GroupPtr g, int degree) : g_(std::move(g)), degree_(degree) {
    if (degree < 1 || degree > 3) fail(ErrorKind::DegreeMismatch, "tensor degree must be 1, 2 or 3");
  }

  static GTensor one(const GroupPtr& g, int degree) {
    GTensor t(g, degree);
    t.terms_.emplace(0, CycNum(1));
    return t;
  }

  static GTensor basis(const GroupPtr& g, const std::vector<Elem>& tuple, const CycNum& c = CycNum(1)) {
    GTensor t(g, static_cast<int>(tuple.size()));
    t.add(tuple, c);
    return t;
  }

  static GTensor scalar(const GroupPtr& g, int degree, const CycNum& c) {
    GTensor t(g, degree);
    if (!c.is_zero()) t.terms_.emplace(0, c);
    return t;
  }

  const GroupPtr& group() const { return g_; }
  int degree() const { return degree_; }
  const std::map<Key, CycNum>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Key key(const std::vector<Elem>& t) const {
    if (static_cast<int>(t.size()) != degree_) fail(ErrorKind::DegreeMismatch, "tuple length does not match degree");
    Key k = 0;
    for (Elem x : t) {
      if (x >= g_->order()) fail(ErrorKind::InvalidInput, "element index out of range");
      k = k * g_->order() + x;
    }
    return k;
  }

  std::vector<Elem> tuple(Key k) const {
    std::vector<Elem> t(static_cast<std::size_t>(degree_));
    for (int i = degree_; i-- > 0;) {
      t[static_cast<std::size_t>(i)] = static_cast<Elem>(k % g_->order());
      k /= g_->order();
    }
    return t;
  }

  CycNum coeff(const std::vector<Elem>& t) const {
    auto it = terms_.find(key(t));
    return it == terms_.end() ? CycNum() : it->second;
  }

  void add(const std::vector<Elem>& t, const CycNum& c) { add_key(key(t), c); }

  void add_key(Key k, const CycNum& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  GTensor& operator+=(const GTensor& o) {
    check_compatible(o);
    for (const auto& [k, c] : o.terms_) add_key(k, c);
    return *this;
  }

  GTensor& operator-=(const GTensor& o) {
    check_compatible(o);
    for (const auto& [k, c] : o.terms_) add_key(k, -c);
    return *this;
  }

  friend GTensor operator+(GTensor a, const GTensor& b) { return a += b; }
  friend GTensor operator-(GTensor a, const GTensor& b) { return a -= b; }

  friend GTensor operator*(const CycNum& s, const GTensor& x) {
    GTensor r(x.g_, x.degree_);
    if (s.is_zero()) return r;
    for (const auto& [k, c] : x.terms_) r.terms_.emplace(k, s * c);
    return r;
  }

  friend GTensor operator*(const GTensor& x, const GTensor& y) {
    x.check_compatible(y);
    const std::size_t d = static_cast<std::size_t>(x.degree_);
    std::vector<std::vector<Elem>> tx, ty;
    for (const auto& [k, c] : x.terms_) tx.push_back(x.tuple(k));
    for (const auto& [k, c] : y.terms_) ty.push_back(y.tuple(k));
    std::unordered_map<Key, CycNum> acc;
    std::size_t i = 0;
    for (const auto& [kx, cx] : x.terms_) {
      std::size_t j = 0;
      for (const auto& [ky, cy] : y.terms_) {
        Key k = 0;
        for (std::size_t t = 0; t < d; ++t) k = k * x.g_->order() + x.g_->mul(tx[i][t], ty[j][t]);
        auto it = acc.find(k);
        if (it == acc.end())
          acc.emplace(k, cx * cy);
        else
          it->second += cx * cy;
        ++j;
      }
      ++i;
    }
    GTensor r(x.g_, x.degree_);
    for (auto& [k, c] : acc)
      if (!c.is_zero()) r.terms_.emplace(k, std::move(c));
    return r;
  }

  friend bool operator==(const GTensor& a, const GTensor& b) {
    return a.g_ == b.g_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const GTensor& a, const GTensor& b) { return !(a == b); }

  // Applies f to every index tuple (linear extension).
  template <class Fn>
  GTensor map_tuples(int new_degree, Fn f) const {
    GTensor r(g_, new_degree);
    for (const auto& [k, c] : terms_) r.add(f(tuple(k)), c);
    return r;
  }

  std::string to_string() const {
    std::string s;
    for (const auto& [k, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.to_string() + ")";
      for (Elem e : tuple(k)) s += "[" + g_->label(e) + "]";
    }
    return s.empty() ? "0" : s;
  }

 private:
  GroupPtr g_;
  int degree_;
  std::map<Key, CycNum> terms_;

  void check_compatible(const GTensor& o) const {
    if (g_ != o.g_) fail(ErrorKind::InvalidInput, "tensors over different groups");
    if (degree_ != o.degree_) fail(ErrorKind::DegreeMismatch, "tensor degrees differ");
  }
};

inline void require_degree(const GTensor& x, int d, const char* what) {
  if (x.degree() != d) fail(ErrorKind::DegreeMismatch, std::string(what) + " needs degree " + std::to_string(d));
}

inline GTensor tensor_mul(const GTensor& x, const GTensor& y) { return x * y; }

namespace hopf_detail {

// Inverse through characters of A_1 x ... x A_d when every leg of the
// support generates an abelian subgroup A_i. nullopt when not applicable.
inline std::optional<GTensor> abelian_inverse(const GTensor& x, std::size_t limit = 1u << 12) {
  const GroupPtr& gp = x.group();
  const std::size_t d = static_cast<std::size_t>(x.degree());
  std::vector<std::vector<Elem>> supp(d);
  std::vector<std::vector<Elem>> tuples;
  std::vector<CycNum> coeffs;
  for (const auto& [k, c] : x.terms()) {
    tuples.push_back(x.tuple(k));
    coeffs.push_back(c);
    for (std::size_t i = 0; i < d; ++i) supp[i].push_back(tuples.back()[i]);
  }
  std::vector<DualPtr> duals;
  std::size_t n = 1;
  int e = 1;
  for (std::size_t i = 0; i < d; ++i) {
    Subgroup a = generated_subgroup(gp, supp[i]);
    if (!a.is_abelian()) return std::nullopt;
    n *= a.order();
    if (n > limit) return std::nullopt;
    duals.push_back(make_dual(a));
    e = std::lcm(e, duals.back()->exponent());
  }
  // tab[i][chi][p]: exponent of zeta_e for chi on the p-th element of A_i.
  std::vector<std::vector<std::vector<int>>> tab(d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto& dd = *duals[i];
    const auto& els = dd.subgroup().elements();
    tab[i].assign(dd.size(), std::vector<int>(dd.size()));
    for (std::size_t chi = 0; chi < dd.size(); ++chi)
      for (std::size_t p = 0; p < els.size(); ++p) tab[i][chi][p] = dd.pairing(chi, els[p]) * (e / dd.exponent());
  }
  std::vector<std::vector<std::size_t>> split(n, std::vector<std::size_t>(d));
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t v = idx;
    for (std::size_t i = d; i-- > 0;) {
      split[idx][i] = v % duals[i]->size();
      v /= duals[i]->size();
    }
  }
  std::vector<CycNum> roots(static_cast<std::size_t>(e));
  for (int k = 0; k < e; ++k) roots[static_cast<std::size_t>(k)] = root_of_unity(e, k);
  std::vector<std::vector<std::size_t>> tpos(tuples.size(), std::vector<std::size_t>(d));
  for (std::size_t t = 0; t < tuples.size(); ++t)
    for (std::size_t i = 0; i < d; ++i) tpos[t][i] = duals[i]->position(tuples[t][i]);
  std::vector<CycNum> w(n);
  for (std::size_t chi = 0; chi < n; ++chi) {
    CycNum s;
    for (std::size_t t = 0; t < tuples.size(); ++t) {
      long long k = 0;
      for (std::size_t i = 0; i < d; ++i) k += tab[i][split[chi][i]][tpos[t][i]];
      s += coeffs[t] * roots[static_cast<std::size_t>(k % e)];
    }
    if (s.is_zero()) fail(ErrorKind::NotInvertible, "tensor is a zero divisor");
    w[chi] = s.inv();
  }
  const CycNum scale(Rational(1, static_cast<unsigned long>(n)));
  GTensor r(gp, x.degree());
  std::vector<CycNum> bucket(static_cast<std::size_t>(e));
  for (std::size_t g = 0; g < n; ++g) {
    std::fill(bucket.begin(), bucket.end(), CycNum());
    for (std::size_t chi = 0; chi < n; ++chi) {
      long long k = 0;
      for (std::size_t i = 0; i < d; ++i) k += tab[i][split[chi][i]][split[g][i]];
      bucket[static_cast<std::size_t>((e - k % e) % e)] += w[chi];
    }
    CycNum v;
    for (std::size_t k = 0; k < bucket.size(); ++k)
      if (!bucket[k].is_zero()) v += bucket[k] * roots[k];
    if (v.is_zero()) continue;
    std::vector<Elem> tuple(d);
    for (std::size_t i = 0; i < d; ++i) tuple[i] = duals[i]->subgroup().elements()[split[g][i]];
    r.add(tuple, scale * v);
  }
  return r;
}

}  // namespace hopf_detail

// Inverse in k[G^d], solved inside k[H] where H is the subgroup of G^d
// generated by the support (the inverse of an invertible element of a
// finite-dimensional algebra lies in any subalgebra containing it).
namespace hopf_detail {

inline GTensor dense_inverse(const GTensor& x) {
  const auto& g = *x.group();
  const std::size_t d = static_cast<std::size_t>(x.degree());
  std::vector<std::vector<Elem>> gens;
  for (const auto& [k, c] : x.terms()) gens.push_back(x.tuple(k));
  std::vector<std::vector<Elem>> h{std::vector<Elem>(d, 0)};
  std::map<GTensor::Key, std::size_t> pos{{0, 0}};
  for (std::size_t i = 0; i < h.size(); ++i)
    for (const auto& s : gens) {
      std::vector<Elem> y(d);
      for (std::size_t t = 0; t < d; ++t) y[t] = g.mul(h[i][t], s[t]);
      const auto k = x.key(y);
      if (pos.emplace(k, h.size()).second) h.push_back(std::move(y));
    }
  const std::size_t n = h.size();
  std::vector<std::vector<CycNum>> m(n, std::vector<CycNum>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [k, c] : x.terms()) {
      const auto s = x.tuple(k);
      std::vector<Elem> y(d);
      for (std::size_t t = 0; t < d; ++t) y[t] = g.mul(s[t], h[j][t]);
      m[pos.at(x.key(y))][j] += c;
    }
  std::vector<CycNum> rhs(n);
  rhs[0] = CycNum(1);
  auto sol = solve_dense(std::move(m), std::move(rhs));
  if (!sol) fail(ErrorKind::NotInvertible, "tensor is a zero divisor");
  GTensor r(x.group(), x.degree());
  for (std::size_t j = 0; j < n; ++j) r.add(h[j], (*sol)[j]);
  return r;
}

}  // namespace hopf_detail

inline GTensor tensor_inv(const GTensor& x) {
  if (x.is_zero()) fail(ErrorKind::NotInvertible, "zero is not invertible");
  if (auto fast = hopf_detail::abelian_inverse(x)) return std::move(*fast);
  return hopf_detail::dense_inverse(x);
}

inline GTensor coproduct(const GTensor& x) {
  require_degree(x, 1, "coproduct");
  return x.map_tuples(2, [](const std::vector<Elem>& t) { return std::vector<Elem>{t[0], t[0]}; });
}

// (eps (x) ... (x) eps)(x): the sum of all coefficients.
inline CycNum counit(const GTensor& x) {
  CycNum s;
  for (const auto& [k, c] : x.terms()) s += c;
  return s;
}

inline GTensor antipode(const GTensor& x) {
  require_degree(x, 1, "antipode");
  const auto& g = *x.group();
  return x.map_tuples(1, [&](const std::vector<Elem>& t) { return std::vector<Elem>{g.inv(t[0])}; });
}

inline GTensor flip(const GTensor& x) {
  require_degree(x, 2, "flip");
  return x.map_tuples(2, [](const std::vector<Elem>& t) { return std::vector<Elem>{t[1], t[0]}; });
}

// Outer tensor product x (x) y.
inline GTensor outer(const GTensor& x, const GTensor& y) {
  if (x.group() != y.group()) fail(ErrorKind::InvalidInput, "tensors over different groups");
  GTensor r(x.group(), x.degree() + y.degree());
  for (const auto& [kx, cx] : x.terms())
    for (const auto& [ky, cy] : y.terms()) {
      auto t = x.tuple(kx);
      const auto u = y.tuple(ky);
      t.insert(t.end(), u.begin(), u.end());
      r.add(t, cx * cy);
    }
  return r;
}

// (Delta (x) id)(F) and (id (x) Delta)(F).
inline GTensor delta_first(const GTensor& f) {
  require_degree(f, 2, "delta_first");
  return f.map_tuples(3, [](const std::vector<Elem>& t) { return std::vector<Elem>{t[0], t[0], t[1]}; });
}

inline GTensor delta_second(const GTensor& f) {
  require_degree(f, 2, "delta_second");
  return f.map_tuples(3, [](const std::vector<Elem>& t) { return std::vector<Elem>{t[0], t[1], t[1]}; });
}

// Leg embeddings of a degree-2 tensor into degree 3: legs (0,1), (0,2), (1,2).
inline GTensor legs(const GTensor& f, int i, int j) {
  require_degree(f, 2, "legs");
  return f.map_tuples(3, [&](const std::vector<Elem>& t) {
    std::vector<Elem> r(3, 0);
    r[static_cast<std::size_t>(i)] = t[0];
    r[static_cast<std::size_t>(j)] = t[1];
    return r;
  });
}

// (h (x) ... (x) h) x (h^-1 (x) ... (x) h^-1)
inline GTensor conjugate_by(const GTensor& x, Elem h) {
  const auto& g = *x.group();
  return x.map_tuples(x.degree(), [&](std::vector<Elem> t) {
    for (auto& e : t) e = g.conj(h, e);
    return t;
  });
}

inline GTensor apply_map(const GTensor& x, const GroupMap& phi) {
  return x.map_tuples(x.degree(), [&](std::vector<Elem> t) {
    for (auto& e : t) e = phi(e);
    return t;
  });
}

inline GTensor delta2_left(const GTensor& f) { return legs(f, 0, 1) * delta_first(f); }
inline GTensor delta2_right(const GTensor& f) { return legs(f, 1, 2) * delta_second(f); }

inline GTensor delta1(const GTensor& a) {
  require_degree(a, 1, "delta1");
  return outer(a, a) * coproduct(tensor_inv(a));
}

inline bool is_invertible(const GTensor& x) {
  try {
    (void)tensor_inv(x);
    return true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotInvertible) throw;
    return false;
  }
}

inline bool is_twist(const GTensor& f) {
  if (f.degree() != 2) return false;
  if (!is_invertible(f)) return false;
  return delta2_left(f) == delta2_right(f);
}

inline bool is_invariant(const GTensor& f) {
  for (Elem h : generating_set(*f.group()))
    if (conjugate_by(f, h) != f) return false;
  return true;
}

// First generator whose conjugation moves x, if any.
inline std::optional<Elem> invariance_witness(const GTensor& x) {
  for (Elem h : generating_set(*x.group()))
    if (conjugate_by(x, h) != x) return h;
  return std::nullopt;
}

inline bool is_normalized(const GTensor& f) { return counit(f).is_one(); }

inline GTensor normalize_twist(const GTensor& f) {
  const CycNum s = counit(f);
  if (s.is_zero()) fail(ErrorKind::NotATwist, "counit of a twist cannot vanish");
  return s.inv() * f;
}

inline GTensor gauge(const GTensor& a, const GTensor& f) {
  require_degree(a, 1, "gauge");
  require_degree(f, 2, "gauge");
  return outer(a, a) * f * coproduct(tensor_inv(a));
}

inline bool satisfies_r_axioms(const GTensor& r) {
  const GTensor r12 = legs(r, 0, 1), r13 = legs(r, 0, 2), r23 = legs(r, 1, 2);
  return delta_first(r) == r13 * r23 && delta_second(r) == r13 * r12;
}

inline GTensor r_matrix(const GTensor& f) {
  require_degree(f, 2, "r_matrix");
  if (!is_invariant(f)) fail(ErrorKind::NotInvariant, "twist is not invariant");
  if (!is_twist(f)) fail(ErrorKind::NotATwist, "tensor is not a twist");
  GTensor r = flip(f) * tensor_inv(f);
  if (!satisfies_r_axioms(r)) fail(ErrorKind::Internal, "R-matrix axioms fail for an invariant twist");
  return r;
}

// sum over terms c (g (x) h) of c * S(h) g
inline GTensor drinfeld_element(const GTensor& r) {
  require_degree(r, 2, "drinfeld_element");
  const auto& g = *r.group();
  return r.map_tuples(1, [&](const std::vector<Elem>& t) { return std::vector<Elem>{g.mul(g.inv(t[1]), t[0])}; });
}

inline Subgroup socle(const GTensor& r) {
  std::set<Elem> legs_seen;
  for (const auto& [k, c] : r.terms())
    for (Elem e : r.tuple(k)) legs_seen.insert(e);
  return generated_subgroup(r.group(), std::vector<Elem>(legs_seen.begin(), legs_seen.end()));
}

inline GTensor idempotent(const DualPtr& dual, std::size_t chi) {
  GTensor e(dual->group_ptr(), 1);
  const Rational inv_n(1, static_cast<unsigned long>(dual->size()));
  for (Elem a : dual->subgroup().elements()) e.add({a}, CycNum(inv_n) * dual->value(chi, dual->group().inv(a)));
  return e;
}

namespace hopf_detail {

// table[chi][pos(a)] = pairing(chi, a)
inline std::vector<std::vector<int>> pairing_table(const DualGroup& d) {
  std::vector<std::vector<int>> t(d.size(), std::vector<int>(d.size()));
  const auto& el = d.subgroup().elements();
  for (std::size_t chi = 0; chi < d.size(); ++chi)
    for (std::size_t i = 0; i < el.size(); ++i) t[chi][i] = d.pairing(chi, el[i]);
  return t;
}

inline std::vector<CycNum> root_table(int e) {
  std::vector<CycNum> r;
  for (int k = 0; k < e; ++k) r.push_back(root_of_unity(e, k));
  return r;
}

}  // namespace hopf_detail

// R(A,b) = sum b(s,t) e_s (x) e_t, accumulated as exponent histograms.
inline GTensor r_from_form(const AltForm& b) {
  const auto& d = *b.dual;
  const std::size_t n = d.size();
  const int e = d.exponent();
  const auto pt = hopf_detail::pairing_table(d);
  const auto roots = hopf_detail::root_table(e);
  std::vector<std::vector<int>> bv(n, std::vector<int>(n));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) bv[s][t] = b.value(s, t);
  const Rational scale(1, static_cast<unsigned long>(n * n));
  const auto& el = d.subgroup().elements();
  GTensor r(d.group_ptr(), 2);
  std::vector<long long> hist(static_cast<std::size_t>(e));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::fill(hist.begin(), hist.end(), 0);
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) {
          int v = (bv[s][t] - pt[s][i] - pt[t][j]) % e;
          if (v < 0) v += e;
          ++hist[static_cast<std::size_t>(v)];
        }
      CycNum c;
      for (int k = 0; k < e; ++k)
        if (hist[static_cast<std::size_t>(k)] != 0) c += CycNum(static_cast<long>(hist[static_cast<std::size_t>(k)])) * roots[static_cast<std::size_t>(k)];
      if (!c.is_zero()) r.add({el[i], el[j]}, CycNum(scale) * c);
    }
  return r;
}

// F = sum c(r,s) e_r (x) e_s, by two separable character sums.
inline GTensor twist_from_cocycle(const Cocycle& c) {
  if (!is_normalized_cocycle(c)) fail(ErrorKind::NotACocycle, "table is not a normalized two-cocycle");
  const auto& d = *c.dual;
  const std::size_t n = d.size();
  const int e = d.exponent();
  const auto pt = hopf_detail::pairing_table(d);
  const auto roots = hopf_detail::root_table(e);
  auto conj_root = [&](std::size_t chi, std::size_t pos) {
    return roots[static_cast<std::size_t>((e - pt[chi][pos]) % e)];
  };
  // t[r][j] = sum_s c(r,s) s(a_j^-1)
  std::vector<std::vector<CycNum>> t(n, std::vector<CycNum>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t s = 0; s < n; ++s) t[r][j] += c(r, s) * conj_root(s, j);
  const CycNum scale(Rational(1, static_cast<unsigned long>(n * n)));
  const auto& el = d.subgroup().elements();
  GTensor f(d.group_ptr(), 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      CycNum v;
      for (std::size_t r = 0; r < n; ++r) v += conj_root(r, i) * t[r][j];
      if (!v.is_zero()) f.add({el[i], el[j]}, scale * v);
    }
  return f;
}

inline Cocycle cocycle_from_twist(const DualPtr& dual, const GTensor& f) {
  require_degree(f, 2, "cocycle_from_twist");
  const auto& d = *dual;
  const std::size_t n = d.size();
  for (const auto& [k, c] : f.terms())
    for (Elem x : f.tuple(k))
      if (!d.subgroup().contains(x)) fail(ErrorKind::NotSupported, "twist is not supported in k[A] (x) k[A]");
  const int e = d.exponent();
  const auto pt = hopf_detail::pairing_table(d);
  const auto roots = hopf_detail::root_table(e);
  // u[r][j] = sum_i F(a_i, a_j) r(a_i)
  std::vector<std::vector<CycNum>> u(n, std::vector<CycNum>(n));
  for (const auto& [k, c] : f.terms()) {
    const auto tp = f.tuple(k);
    const std::size_t i = d.position(tp[0]), j = d.position(tp[1]);
    for (std::size_t r = 0; r < n; ++r) u[r][j] += c * roots[static_cast<std::size_t>(pt[r][i])];
  }
  Cocycle out{dual, std::vector<CycNum>(n * n)};
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) {
      CycNum v;
      for (std::size_t j = 0; j < n; ++j)
        if (!u[r][j].is_zero()) v += u[r][j] * roots[static_cast<std::size_t>(pt[s][j])];
      out.at(r, s) = v;
    }
  return out;
}

// chi -> sum lambda_g chi(g^-1)
inline std::vector<CycNum> fourier(const DualPtr& dual, const GTensor& x) {
  require_degree(x, 1, "fourier");
  const auto& d = *dual;
  std::vector<CycNum> out(d.size());
  for (const auto& [k, c] : x.terms()) {
    const Elem g = x.tuple(k)[0];
    if (!d.subgroup().contains(g)) fail(ErrorKind::NotSupported, "element outside the subgroup");
    const Elem gi = d.group().inv(g);
    for (std::size_t chi = 0; chi < d.size(); ++chi) out[chi] += c * d.value(chi, gi);
  }
  return out;
}

struct ThetaValue {
  Subgroup socle;
  AltForm form;
};

// Reads (A, b) off an R-matrix of the form R(A,b) and validates every
// condition the pair has to satisfy.
inline ThetaValue read_form(const GTensor& r) {
  require_degree(r, 2, "read_form");
  Subgroup a = socle(r);
  if (!a.is_abelian()) fail(ErrorKind::ThetaContractViolated, "socle is not abelian");
  if (!a.is_normal()) fail(ErrorKind::ThetaContractViolated, "socle is not normal");
  auto dual = make_dual(a);
  const auto& d = *dual;
  AltForm b = AltForm::trivial(dual);
  std::vector<std::size_t> basis;
  for (std::size_t i = 0; i < d.rank(); ++i) basis.push_back(d.basis_character(i));
  for (std::size_t i = 0; i < d.rank(); ++i)
    for (std::size_t j = 0; j < d.rank(); ++j) {
      CycNum v;
      for (const auto& [k, c] : r.terms()) {
        const auto t = r.tuple(k);
        v += c * root_of_unity(d.exponent(), d.pairing(basis[i], t[0]) + d.pairing(basis[j], t[1]));
      }
      const int m = b.modulus(i, j);
      bool found = false;
      for (int k = 0; k < m && !found; ++k)
        if (root_of_unity(m, k) == v) {
          b.matrix[i][j] = k;
          found = true;
        }
      if (!found) fail(ErrorKind::ThetaContractViolated, "form value is not a root of unity of the expected order");
    }
  for (std::size_t i = 0; i < d.rank(); ++i) {
    if (b.matrix[i][i] != 0) fail(ErrorKind::ThetaContractViolated, "form is not alternating");
    for (std::size_t j = 0; j < d.rank(); ++j)
      if ((b.matrix[i][j] + b.matrix[j][i]) % b.modulus(i, j) != 0)
        fail(ErrorKind::ThetaContractViolated, "form is not skew");
  }
  if (!is_nondegenerate(b)) fail(ErrorKind::ThetaContractViolated, "form is degenerate");
  DualAction act(r.group(), dual);
  if (!is_invariant_form(b, act)) fail(ErrorKind::ThetaContractViolated, "form is not G-invariant");
  if (r_from_form(b) != r) fail(ErrorKind::ThetaContractViolated, "R-matrix is not R(A,b) for the read-off pair");
  return ThetaValue{std::move(a), std::move(b)};
}

inline ThetaValue theta(const GTensor& f) { return read_form(r_matrix(f)); }

}  // namespace lazyh2
