#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lazyh2/groups.hpp"
#include "lazyh2/hopf.hpp"
#include "lazyh2/linalg.hpp"
#include "lazyh2/pontryagin.hpp"

namespace lazyh2 {

struct BGElement {
  Subgroup socle;
  AltForm form;
  GTensor canonical_r;

  bool is_trivial() const { return socle.order() == 1; }
  friend bool operator==(const BGElement& a, const BGElement& b) { return a.canonical_r == b.canonical_r; }
};

inline BGElement make_bg_element(ThetaValue tv) {
  GTensor r = r_from_form(tv.form);
  return BGElement{std::move(tv.socle), std::move(tv.form), std::move(r)};
}

inline void require_order_bound(const FiniteGroup& g, std::size_t bound, const char* what) {
  if (g.order() > bound)
    fail(ErrorKind::OrderLimitExceeded, std::string(what) + " needs |G| <= " + std::to_string(bound) + ", got " +
                                            std::to_string(g.order()));
}

inline std::vector<BGElement> bg_enumerate(const GroupPtr& g, std::size_t bound = 64) {
  require_order_bound(*g, bound, "bg_enumerate");
  std::vector<BGElement> out;
  for (const auto& a : normal_abelian_subgroups(g)) {
    auto dual = make_dual(a);
    if (!is_symmetric_type_orders(dual->orders())) continue;
    DualAction act(g, dual);
    for (auto& b : invariant_forms(act, true)) {
      GTensor r = r_from_form(b);
      const bool dup = std::any_of(out.begin(), out.end(), [&](const BGElement& x) { return x.canonical_r == r; });
      if (!dup) out.push_back(BGElement{a, std::move(b), std::move(r)});
    }
  }
  std::sort(out.begin(), out.end(), [](const BGElement& x, const BGElement& y) {
    if (x.socle.order() != y.socle.order()) return x.socle.order() < y.socle.order();
    if (x.socle.elements() != y.socle.elements()) return x.socle.elements() < y.socle.elements();
    return x.form.matrix < y.form.matrix;
  });
  return out;
}

inline std::optional<std::size_t> bg_index(const std::vector<BGElement>& bg, const GTensor& r) {
  for (std::size_t i = 0; i < bg.size(); ++i)
    if (bg[i].canonical_r == r) return i;
  return std::nullopt;
}

// Pullback of a form on B^ along restriction C^ -> B^, for B <= C.
inline AltForm pullback_form(const AltForm& b, const DualPtr& c_dual) {
  const auto& bd = *b.dual;
  const auto& cd = *c_dual;
  if (!bd.subgroup().is_subgroup_of(cd.subgroup()))
    fail(ErrorKind::InvalidInput, "pullback needs the form's subgroup to be contained in the target");
  AltForm out = AltForm::trivial(c_dual);
  for (std::size_t i = 0; i < cd.rank(); ++i)
    for (std::size_t j = 0; j < cd.rank(); ++j) {
      const std::size_t ri = cd.restrict_to(cd.basis_character(i), bd);
      const std::size_t rj = cd.restrict_to(cd.basis_character(j), bd);
      const long long v = b.value(ri, rj);
      const long long m = out.modulus(i, j);
      const long long num = v * m;
      if (num % bd.exponent() != 0) fail(ErrorKind::Internal, "pulled-back value has unexpected order");
      out.matrix[i][j] = static_cast<int>((num / bd.exponent()) % m);
    }
  return out;
}

// [A,b].[B,b'] computed inside a given abelian normal C containing both socles.
inline BGElement bg_product_via(const BGElement& x, const BGElement& y, const Subgroup& c) {
  auto cd = make_dual(c);
  const AltForm prod = pullback_form(x.form, cd) * pullback_form(y.form, cd);
  return make_bg_element(read_form(r_from_form(prod)));
}

inline std::optional<BGElement> bg_product(const BGElement& x, const BGElement& y,
                                           const std::vector<Subgroup>& normal_abelian) {
  for (const auto& c : normal_abelian)
    if (x.socle.is_subgroup_of(c) && y.socle.is_subgroup_of(c)) return bg_product_via(x, y, c);
  return std::nullopt;
}

inline std::optional<BGElement> bg_product(const BGElement& x, const BGElement& y) {
  return bg_product(x, y, normal_abelian_subgroups(x.socle.parent()));
}

// Order of x under the partial product (powers of x stay inside its socle).
inline std::size_t bg_order(const BGElement& x) {
  std::size_t k = 1;
  BGElement acc = x;
  while (!acc.is_trivial()) {
    acc = bg_product_via(acc, x, x.socle);
    ++k;
    if (k > 100000) fail(ErrorKind::Internal, "bg_order does not terminate");
  }
  return k;
}

inline BGElement bg_power(const BGElement& x, std::size_t k) {
  BGElement acc = make_bg_element(read_form(GTensor::one(x.socle.parent(), 2)));
  for (std::size_t i = 0; i < k; ++i) acc = bg_product_via(acc, x, x.socle);
  return acc;
}

// Orbits of G acting on G x G by simultaneous conjugation.
struct PairOrbits {
  std::vector<int> orbit_of;                 // pair index g*n+h -> orbit
  std::vector<std::vector<std::size_t>> orbits;
};

inline PairOrbits pair_orbits(const FiniteGroup& g) {
  const std::size_t n = g.order();
  PairOrbits po;
  po.orbit_of.assign(n * n, -1);
  for (std::size_t p = 0; p < n * n; ++p) {
    if (po.orbit_of[p] >= 0) continue;
    const int id = static_cast<int>(po.orbits.size());
    std::vector<std::size_t> orb;
    const Elem a = static_cast<Elem>(p / n), b = static_cast<Elem>(p % n);
    for (Elem x = 0; x < n; ++x) {
      const std::size_t q = static_cast<std::size_t>(g.conj(x, a)) * n + g.conj(x, b);
      if (po.orbit_of[q] < 0) {
        po.orbit_of[q] = id;
        orb.push_back(q);
      }
    }
    std::sort(orb.begin(), orb.end());
    po.orbits.push_back(std::move(orb));
  }
  return po;
}

inline std::size_t invariant_orbit_dimension(const GroupPtr& g, std::size_t bound = 64) {
  require_order_bound(*g, bound, "invariant_orbit_dimension");
  return pair_orbits(*g).orbits.size();
}

namespace lazy_detail {

// Dense integer product of two orbit sums in Z[G x G].
inline void orbit_product(const FiniteGroup& g, const std::vector<std::size_t>& x, const std::vector<std::size_t>& y,
                          std::vector<long long>& out) {
  const std::size_t n = g.order();
  std::fill(out.begin(), out.end(), 0);
  for (std::size_t p : x) {
    const Elem a = static_cast<Elem>(p / n), b = static_cast<Elem>(p % n);
    for (std::size_t q : y) {
      const Elem c = static_cast<Elem>(q / n), d = static_cast<Elem>(q % n);
      ++out[static_cast<std::size_t>(g.mul(a, c)) * n + g.mul(b, d)];
    }
  }
}

}  // namespace lazy_detail

// True iff (k[G] (x) k[G])^G is commutative, tested on products of orbit sums.
inline bool has_no_multiplicities(const GroupPtr& g, std::size_t bound = 64) {
  require_order_bound(*g, bound, "has_no_multiplicities");
  if (g->is_abelian()) return true;
  const auto po = pair_orbits(*g);
  const std::size_t n = g->order();
  std::vector<long long> xy(n * n), yx(n * n);
  for (std::size_t i = 0; i < po.orbits.size(); ++i)
    for (std::size_t j = i + 1; j < po.orbits.size(); ++j) {
      lazy_detail::orbit_product(*g, po.orbits[i], po.orbits[j], xy);
      lazy_detail::orbit_product(*g, po.orbits[j], po.orbits[i], yx);
      if (xy != yx) return false;
    }
  return true;
}

struct LieCheck {
  bool injective = false;
  bool exact = false;
  std::size_t kernel_dim = 0;
};

// Exactness of k[G] -> k[G]^{(x)2} -> k[G]^{(x)3} for the linearized
// coboundaries. rank(D) <= n^2 - n follows from D o d1 = 0 and injectivity
// of d1; a matching rank modulo a prime is a lower bound for the rank over Q.
inline LieCheck lie_complex_check(const GroupPtr& g, std::size_t bound = 64) {
  require_order_bound(*g, bound, "lie_complex_check");
  const std::size_t n = g->order();
  auto d1 = [&](Elem x) {
    std::map<std::size_t, long long> v;
    v[static_cast<std::size_t>(x) * n] += 1;
    v[x] += 1;
    v[static_cast<std::size_t>(x) * n + x] -= 1;
    return v;
  };
  auto dmap = [&](Elem a, Elem b) {
    std::map<std::size_t, long long> v;
    auto key = [&](Elem p, Elem q, Elem r) { return (static_cast<std::size_t>(p) * n + q) * n + r; };
    v[key(0, a, b)] += 1;
    v[key(a, b, b)] += 1;
    v[key(a, b, 0)] -= 1;
    v[key(a, a, b)] -= 1;
    return v;
  };
  for (Elem x = 0; x < n; ++x) {
    std::map<std::size_t, long long> img;
    for (const auto& [k, c] : d1(x))
      for (const auto& [k2, c2] : dmap(static_cast<Elem>(k / n), static_cast<Elem>(k % n))) img[k2] += c * c2;
    for (const auto& [k, c] : img)
      if (c != 0) fail(ErrorKind::Internal, "linearized complex: composite map is nonzero");
  }
  auto to_fp = [](const std::map<std::size_t, long long>& v) {
    std::map<std::size_t, Fp> out;
    for (const auto& [k, c] : v)
      if (c != 0) out.emplace(k, Fp(c));
    return out;
  };
  std::vector<std::map<std::size_t, Fp>> v1, v2;
  for (Elem x = 0; x < n; ++x) v1.push_back(to_fp(d1(x)));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) v2.push_back(to_fp(dmap(a, b)));
  LieCheck r;
  r.injective = sparse_rank(v1) == n;
  std::size_t rank = sparse_rank(v2);
  if (rank != n * n - n) {
    std::vector<std::map<std::size_t, Rational>> q;
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        std::map<std::size_t, Rational> v;
        for (const auto& [k, c] : dmap(a, b))
          if (c != 0) v.emplace(k, Rational(static_cast<long>(c)));
        q.push_back(std::move(v));
      }
    rank = sparse_rank(q);
  }
  r.kernel_dim = n * n - rank;
  r.exact = r.injective && r.kernel_dim == n;
  return r;
}

// ---------------------------------------------------------------------------
// Invariant twists as a diagonalizable group (groups without multiplicities).

struct TorusResult {
  std::vector<std::int64_t> torsion;  // invariant factors of the component group
  std::size_t variables = 0;
  std::size_t relations = 0;
  std::size_t free_rank = 0;
};

namespace lazy_detail {

using QVec = std::vector<Rational>;

// Commutative algebra with basis b_0..b_{N-1} given by integer structure
// constants; unit is a basis vector.
struct CommAlgebra {
  std::size_t dim = 0;
  std::vector<std::vector<std::vector<std::pair<std::size_t, long long>>>> c;  // c[i][j] = b_i b_j
  std::size_t unit = 0;
  std::vector<long long> eigen_bound;

  QVec mul_basis(std::size_t i, const QVec& v) const {
    QVec w(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      if (sgn(v[j]) == 0) continue;
      for (const auto& [k, x] : c[i][j]) w[k] += v[j] * static_cast<long>(x);
    }
    return w;
  }

  QVec mul(const QVec& u, const QVec& v) const {
    QVec w(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if (sgn(u[i]) == 0) continue;
      const QVec t = mul_basis(i, v);
      for (std::size_t k = 0; k < dim; ++k)
        if (sgn(t[k]) != 0) w[k] += u[i] * t[k];
    }
    return w;
  }
};

// Primitive idempotents, provided every basis element has only integer
// eigenvalues (the algebra is split over Q); nullopt otherwise.
inline std::optional<std::vector<QVec>> split_idempotents(const CommAlgebra& alg) {
  QVec one(alg.dim);
  one[alg.unit] = 1;
  std::vector<QVec> idems{one};
  for (std::size_t i = 0; i < alg.dim && idems.size() < alg.dim; ++i) {
    std::vector<QVec> next;
    for (const auto& e : idems) {
      // Krylov sequence e, b_i e, b_i^2 e, ... until dependent.
      std::vector<QVec> krylov{e};
      std::vector<QVec> reduced;  // echelon copies with their combination coefficients
      std::vector<std::vector<Rational>> combo;
      std::vector<std::size_t> lead;
      std::vector<Rational> minpoly;
      for (;;) {
        QVec v = krylov.back();
        std::vector<Rational> co(krylov.size());
        co.back() = 1;
        for (std::size_t r = 0; r < reduced.size(); ++r) {
          if (sgn(v[lead[r]]) == 0) continue;
          const Rational f = v[lead[r]] / reduced[r][lead[r]];
          for (std::size_t k = 0; k < alg.dim; ++k)
            if (sgn(reduced[r][k]) != 0) v[k] -= f * reduced[r][k];
          for (std::size_t k = 0; k < combo[r].size(); ++k) co[k] -= f * combo[r][k];
        }
        std::size_t l = alg.dim;
        for (std::size_t k = 0; k < alg.dim; ++k)
          if (sgn(v[k]) != 0) {
            l = k;
            break;
          }
        if (l == alg.dim) {
          minpoly = co;  // sum co[k] x^k annihilates e
          break;
        }
        reduced.push_back(v);
        combo.push_back(co);
        lead.push_back(l);
        krylov.push_back(alg.mul_basis(i, krylov.back()));
      }
      const std::size_t deg = minpoly.size() - 1;
      if (deg == 1) {
        next.push_back(e);
        continue;
      }
      std::vector<long long> roots;
      const long long bnd = alg.eigen_bound[i];
      for (long long lam = -bnd; lam <= bnd; ++lam) {
        Rational acc = 0;
        for (std::size_t k = minpoly.size(); k-- > 0;) acc = acc * static_cast<long>(lam) + minpoly[k];
        if (sgn(acc) == 0) roots.push_back(lam);
      }
      if (roots.size() != deg) return std::nullopt;
      for (long long lam : roots) {
        QVec v = e;
        for (long long mu : roots) {
          if (mu == lam) continue;
          QVec w = alg.mul_basis(i, v);
          const Rational denom(static_cast<long>(lam - mu));
          for (std::size_t k = 0; k < alg.dim; ++k) w[k] = (w[k] - v[k] * static_cast<long>(mu)) / denom;
          v = std::move(w);
        }
        next.push_back(std::move(v));
      }
    }
    idems = std::move(next);
  }
  if (idems.size() != alg.dim) return std::nullopt;
  QVec sum(alg.dim);
  for (const auto& e : idems) {
    if (alg.mul(e, e) != e) fail(ErrorKind::Internal, "split: element is not idempotent");
    for (std::size_t k = 0; k < alg.dim; ++k) sum[k] += e[k];
  }
  if (sum != one) fail(ErrorKind::Internal, "split: idempotents do not sum to one");
  return idems;
}

}  // namespace lazy_detail

// Component group of the group of invariant twists, when G has no
// multiplicities and (Q[G] (x) Q[G])^G splits over Q. Each invariant twist is
// sum f_a E_a over primitive idempotents E_a; the twist equation is
// f_a f_b = f_c f_d for every pair of nonzero products
// X_ab = (E_a (x) 1)(Delta (x) id)E_b and Y_cd = (1 (x) E_c)(id (x) Delta)E_d
// with X_ab Y_cd != 0. Nonvanishing is decided by exact traces, which are
// positive on nonzero products of self-adjoint projections.
inline std::optional<TorusResult> invariant_twist_torus(const GroupPtr& gp, std::size_t max_order = 24) {
  const auto& g = *gp;
  const std::size_t n = g.order();
  if (n > max_order) return std::nullopt;
  if (!has_no_multiplicities(gp, max_order)) return std::nullopt;
  using lazy_detail::CommAlgebra;
  using lazy_detail::QVec;

  // Class algebra of Q[G].
  const auto classes = conjugacy_classes(g);
  const auto cidx = class_index(g);
  CommAlgebra zc;
  zc.dim = classes.size();
  zc.unit = 0;
  zc.c.assign(zc.dim, std::vector<std::vector<std::pair<std::size_t, long long>>>(zc.dim));
  for (std::size_t i = 0; i < zc.dim; ++i) {
    zc.eigen_bound.push_back(static_cast<long long>(classes[i].size()));
    for (std::size_t j = 0; j < zc.dim; ++j) {
      std::vector<long long> prod(n, 0);
      for (Elem a : classes[i])
        for (Elem b : classes[j]) ++prod[g.mul(a, b)];
      for (std::size_t k = 0; k < zc.dim; ++k)
        if (prod[classes[k][0]] != 0) zc.c[i][j].emplace_back(k, prod[classes[k][0]]);
    }
  }
  auto central = lazy_detail::split_idempotents(zc);
  if (!central) return std::nullopt;

  // Invariant subalgebra of Q[G x G].
  const auto po = pair_orbits(g);
  CommAlgebra z;
  z.dim = po.orbits.size();
  z.unit = static_cast<std::size_t>(po.orbit_of[0]);
  z.c.assign(z.dim, std::vector<std::vector<std::pair<std::size_t, long long>>>(z.dim));
  std::vector<long long> prod(n * n);
  for (std::size_t i = 0; i < z.dim; ++i) {
    z.eigen_bound.push_back(static_cast<long long>(po.orbits[i].size()));
    for (std::size_t j = 0; j < z.dim; ++j) {
      lazy_detail::orbit_product(g, po.orbits[i], po.orbits[j], prod);
      for (std::size_t k = 0; k < z.dim; ++k) {
        const long long v = prod[po.orbits[k][0]];
        if (v != 0) z.c[i][j].emplace_back(k, v);
      }
    }
  }
  auto idems = lazy_detail::split_idempotents(z);
  if (!idems) return std::nullopt;
  const std::size_t nv = idems->size();

  // Integer numerators over a common denominator.
  mpz_class den = 1;
  for (const auto& e : *idems)
    for (const auto& x : e) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  for (const auto& e : *central)
    for (const auto& x : e) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  if (den > mpz_class(1) << 30) fail(ErrorKind::Internal, "torus: denominators too large");
  auto to_int = [&](const Rational& q) {
    const mpz_class v = q.get_num() * (den / q.get_den());
    if (!v.fits_slong_p()) fail(ErrorKind::Internal, "torus: numerator overflow");
    return static_cast<long long>(v.get_si());
  };
  // E[a][g*n+h], e[r][g]
  std::vector<std::vector<long long>> E(nv, std::vector<long long>(n * n));
  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t p = 0; p < n * n; ++p) E[a][p] = to_int((*idems)[a][static_cast<std::size_t>(po.orbit_of[p])]);
  const std::size_t nc = central->size();
  std::vector<std::vector<long long>> ce(nc, std::vector<long long>(n));
  for (std::size_t r = 0; r < nc; ++r)
    for (Elem x = 0; x < n; ++x) ce[r][x] = to_int((*central)[r][static_cast<std::size_t>(cidx[x])]);

  // Labels (rho, sigma, tau) of each E_a via traces of (e_rho (x) 1)E_a,
  // (1 (x) e_sigma)E_a and Delta(e_tau)E_a.
  auto unique_positive = [&](auto&& trace_of) {
    int found = -1;
    for (std::size_t r = 0; r < nc; ++r) {
      const __int128 t = trace_of(r);
      if (t < 0) fail(ErrorKind::Internal, "torus: negative trace");
      if (t > 0) {
        if (found >= 0) fail(ErrorKind::Internal, "torus: idempotent label is not unique");
        found = static_cast<int>(r);
      }
    }
    if (found < 0) fail(ErrorKind::Internal, "torus: idempotent without label");
    return static_cast<std::size_t>(found);
  };
  std::vector<std::array<std::size_t, 3>> label(nv);
  for (std::size_t a = 0; a < nv; ++a) {
    label[a][0] = unique_positive([&](std::size_t r) {
      __int128 t = 0;
      for (Elem x = 0; x < n; ++x) t += static_cast<__int128>(ce[r][g.inv(x)]) * E[a][static_cast<std::size_t>(x) * n];
      return t;
    });
    label[a][1] = unique_positive([&](std::size_t r) {
      __int128 t = 0;
      for (Elem x = 0; x < n; ++x) t += static_cast<__int128>(ce[r][g.inv(x)]) * E[a][x];
      return t;
    });
    label[a][2] = unique_positive([&](std::size_t r) {
      __int128 t = 0;
      for (Elem x = 0; x < n; ++x) t += static_cast<__int128>(ce[r][g.inv(x)]) * E[a][static_cast<std::size_t>(x) * n + x];
      return t;
    });
  }

  // Nonzero X_ab and Y_cd, grouped by the central block (rho, sigma, pi, omega).
  std::map<std::array<std::size_t, 4>, std::vector<std::pair<std::size_t, std::size_t>>> xs, ys;
  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t b = 0; b < nv; ++b) {
      __int128 tx = 0, ty = 0;
      for (Elem x = 0; x < n; ++x) {
        const Elem xi = g.inv(x);
        tx += static_cast<__int128>(E[a][static_cast<std::size_t>(x) * n + x]) * E[b][static_cast<std::size_t>(xi) * n];
        ty += static_cast<__int128>(E[a][static_cast<std::size_t>(xi) * n + xi]) * E[b][x];
      }
      if (tx < 0 || ty < 0) fail(ErrorKind::Internal, "torus: negative trace");
      if (tx > 0) xs[{label[a][0], label[a][1], label[b][1], label[b][2]}].emplace_back(a, b);
      if (ty > 0) ys[{label[b][0], label[a][0], label[a][1], label[b][2]}].emplace_back(a, b);
    }

  const std::size_t n3 = n * n * n;
  std::vector<std::size_t> inv3(n3);
  for (std::size_t p = 0; p < n3; ++p) {
    const Elem x = static_cast<Elem>(p / (n * n)), y = static_cast<Elem>(p / n % n), w = static_cast<Elem>(p % n);
    inv3[p] = (static_cast<std::size_t>(g.inv(x)) * n + g.inv(y)) * n + g.inv(w);
  }
  auto support = [&](std::size_t a) {
    std::vector<std::pair<std::size_t, long long>> s;
    for (std::size_t p = 0; p < n * n; ++p)
      if (E[a][p] != 0) s.emplace_back(p, E[a][p]);
    return s;
  };
  std::vector<std::vector<std::pair<std::size_t, long long>>> supp(nv);
  for (std::size_t a = 0; a < nv; ++a) supp[a] = support(a);

  IntLattice lattice(nv);
  std::size_t relations = 0;
  for (const auto& [block, xl] : xs) {
    auto yit = ys.find(block);
    if (yit == ys.end()) continue;
    std::vector<std::vector<long long>> xd, yd;
    for (auto [a, b] : xl) {
      std::vector<long long> d(n3, 0);
      for (auto [p, c1] : supp[a]) {
        const Elem g1 = static_cast<Elem>(p / n), h1 = static_cast<Elem>(p % n);
        for (auto [q, c2] : supp[b]) {
          const Elem u = static_cast<Elem>(q / n), v = static_cast<Elem>(q % n);
          d[(static_cast<std::size_t>(g.mul(g1, u)) * n + g.mul(h1, u)) * n + v] += c1 * c2;
        }
      }
      xd.push_back(std::move(d));
    }
    for (auto [c, dd] : yit->second) {
      std::vector<long long> d(n3, 0);
      for (auto [p, c1] : supp[c]) {
        const Elem g1 = static_cast<Elem>(p / n), h1 = static_cast<Elem>(p % n);
        for (auto [q, c2] : supp[dd]) {
          const Elem u = static_cast<Elem>(q / n), v = static_cast<Elem>(q % n);
          d[(static_cast<std::size_t>(u) * n + g.mul(g1, v)) * n + g.mul(h1, v)] += c1 * c2;
        }
      }
      yd.push_back(std::move(d));
    }
    for (std::size_t i = 0; i < xl.size(); ++i)
      for (std::size_t j = 0; j < yit->second.size(); ++j) {
        __int128 t = 0;
        for (std::size_t p = 0; p < n3; ++p)
          if (xd[i][p] != 0) t += static_cast<__int128>(xd[i][p]) * yd[j][inv3[p]];
        if (t < 0) fail(ErrorKind::Internal, "torus: negative trace of a product of projections");
        if (t == 0) continue;
        std::vector<mpz_class> row(nv, 0);
        row[xl[i].first] += 1;
        row[xl[i].second] += 1;
        row[yit->second[j].first] -= 1;
        row[yit->second[j].second] -= 1;
        lattice.insert(std::move(row));
        ++relations;
      }
  }
  const auto basis = lattice.basis();
  const auto diag = smith_diagonal(basis);
  TorusResult res;
  res.variables = nv;
  res.relations = relations;
  res.free_rank = nv - diag.size();
  for (const auto& d : diag)
    if (d > 1) res.torsion.push_back(d.get_si());
  if (res.free_rank != classes.size())
    fail(ErrorKind::Internal, "torus: identity component has unexpected dimension");
  return res;
}

// ---------------------------------------------------------------------------
// Rule engine.

enum class H2Status { Exact, Bounded, Undetermined };

inline std::string to_string(H2Status s) {
  switch (s) {
    case H2Status::Exact: return "exact";
    case H2Status::Bounded: return "bounded";
    case H2Status::Undetermined: return "undetermined";
  }
  return "undetermined";
}

struct Certificate {
  std::string rule;
  std::string ref;
};

struct H2Report {
  std::string group;
  std::size_t int_mod_inn = 1;
  std::vector<BGElement> bg;
  std::size_t order_lower = 1;
  std::size_t order_upper = 1;
  std::optional<std::size_t> exact_order;
  std::optional<std::vector<std::int64_t>> structure;
  H2Status status = H2Status::Undetermined;
  std::vector<Certificate> certificates;
  // Bounds from the coset description alone, kept for consistency checks.
  std::size_t coset_lower = 1;
  std::size_t coset_upper = 1;
  std::size_t witnessed = 0;
};

struct H2Options {
  std::size_t max_order = 64;
  std::size_t torus_max_order = 24;
};

namespace lazy_detail {

inline bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline bool is_prime_power_le2(std::size_t n) {
  if (n == 1 || is_prime(n)) return true;
  for (std::size_t p = 2; p * p <= n; ++p)
    if (p * p == n && is_prime(p)) return true;
  return false;
}

// Structure of Aut_c/Inn when that quotient is abelian.
inline std::optional<std::vector<std::int64_t>> outer_structure(const ClassPreservingAuts& ac, const GroupPtr& g) {
  if (ac.inn_index == 1) return std::vector<std::int64_t>{};
  const auto inn = inner_automorphisms(g);
  std::set<std::vector<Elem>> inn_set;
  for (const auto& i : inn) inn_set.insert(i.images);
  auto is_inner = [&](const GroupMap& m) { return inn_set.count(m.images) > 0; };
  std::vector<std::int64_t> orders;
  for (const auto& r : ac.outer_reps) {
    for (const auto& s : ac.outer_reps) {
      const GroupMap comm = r.after(s).after(r.inverse()).after(s.inverse());
      if (!is_inner(comm)) return std::nullopt;
    }
    std::int64_t k = 1;
    GroupMap p = r;
    while (!is_inner(p)) {
      p = p.after(r);
      ++k;
    }
    orders.push_back(k);
  }
  return invariant_factors_from_element_orders(orders);
}

}  // namespace lazy_detail

inline H2Report h2_compute(const GroupPtr& g, const H2Options& opt = {}) {
  require_order_bound(*g, opt.max_order, "h2_compute");
  H2Report rep;
  rep.group = g->name();
  const auto autc = class_preserving_auts(g, opt.max_order);
  rep.int_mod_inn = autc.inn_index;
  rep.bg = bg_enumerate(g, opt.max_order);
  const std::size_t imi = rep.int_mod_inn;
  const std::size_t nb = rep.bg.size();
  rep.coset_lower = imi;
  rep.coset_upper = imi * nb;
  std::size_t lo = rep.coset_lower, hi = rep.coset_upper;
  const bool odd = g->order() % 2 == 1;
  const auto normal_abelian = normal_abelian_subgroups(g);

  std::optional<std::size_t> exact;
  std::optional<std::vector<std::int64_t>> structure;
  auto record_exact = [&](const std::string& rule, std::size_t value,
                          const std::optional<std::vector<std::int64_t>>& st) {
    if (exact && *exact != value)
      fail(ErrorKind::Internal, "rule " + rule + " contradicts an earlier exact verdict");
    if (value < rep.coset_lower || value > rep.coset_upper)
      fail(ErrorKind::Internal, "rule " + rule + " falls outside the coset bounds");
    exact = value;
    if (st) {
      if (structure && *structure != *st) fail(ErrorKind::Internal, "rule " + rule + " contradicts earlier structure");
      structure = st;
    }
  };
  std::optional<bool> no_mult;
  auto multiplicity_free = [&]() {
    if (!no_mult) no_mult = has_no_multiplicities(g, opt.max_order);
    return *no_mult;
  };
  // Orders of B(G) elements, from powers under the partial product.
  std::vector<std::size_t> bg_orders;
  auto orders = [&]() -> const std::vector<std::size_t>& {
    if (bg_orders.empty())
      for (const auto& x : rep.bg) bg_orders.push_back(bg_order(x));
    return bg_orders;
  };
  auto structure_from_orders = [&](std::size_t order,
                                   const std::vector<std::size_t>& ords) -> std::optional<std::vector<std::int64_t>> {
    if (!lazy_detail::is_prime_power_le2(order) && !multiplicity_free()) return std::nullopt;
    std::vector<std::int64_t> o(ords.begin(), ords.end());
    return invariant_factors_from_element_orders(o);
  };

  // R0
  if (g->is_abelian()) {
    auto d = make_dual(Subgroup::whole(g));
    std::vector<std::int64_t> gcds;
    std::size_t count = 1;
    for (std::size_t i = 0; i < d->rank(); ++i)
      for (std::size_t j = i + 1; j < d->rank(); ++j) {
        gcds.push_back(std::gcd(d->orders()[i], d->orders()[j]));
        count *= static_cast<std::size_t>(gcds.back());
      }
    record_exact("R0", count, invariant_factors_of_product(gcds));
    rep.certificates.push_back({"R0", "abelian group: classes of invariant twists = alternating forms on the dual"});
  }
  // R1
  if (nb == 1) {
    std::optional<std::vector<std::int64_t>> st = lazy_detail::outer_structure(autc, g);
    record_exact("R1", imi, st);
    rep.certificates.push_back({"R1", "B(G) trivial: H2 is isomorphic to Int(G)/Inn(G) = Aut_c(G)/Inn(G)"});
  }
  // R2
  if (odd && imi == 1) {
    record_exact("R2", nb, structure_from_orders(nb, orders()));
    rep.certificates.push_back({"R2", "odd order with Int = Inn: Theta is bijective; element orders match B(G) orders"});
  }
  // R3
  if (odd && imi == 1) {
    std::vector<const Subgroup*> maximal;
    for (const auto& a : normal_abelian) {
      bool is_max = true;
      for (const auto& b : normal_abelian)
        if (b.order() > a.order() && a.is_subgroup_of(b)) is_max = false;
      if (is_max) maximal.push_back(&a);
    }
    if (maximal.size() == 1) {
      auto d = make_dual(*maximal[0]);
      DualAction act(g, d);
      const auto forms = invariant_forms(act, false);
      std::vector<std::int64_t> ords;
      for (const auto& f : forms) {
        std::int64_t k = 1;
        AltForm p = f;
        while (!p.is_trivial()) {
          p = p * f;
          ++k;
        }
        ords.push_back(k);
      }
      record_exact("R3", forms.size(), invariant_factors_from_element_orders(ords));
      rep.certificates.push_back(
          {"R3", "unique maximal abelian normal subgroup M: H2 is the group of G-invariant alternating forms on M^"});
    }
  }
  rep.certificates.push_back({"R4", "fibres of Theta are cosets of Int(G)/Inn(G): int_mod_inn <= |H2| <= int_mod_inn * |B(G)|"});

  // R2w: explicit preimages under Theta for B(G) elements on small socles.
  std::vector<char> witnessed(nb, 0);
  if (!exact) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < nb; ++i) {
      const auto& x = rep.bg[i];
      if (x.is_trivial()) {
        witnessed[i] = 1;
        ++w;
        continue;
      }
      if (x.socle.order() > 16) continue;
      DualAction act(g, x.form.dual);
      auto found = invariant_cocycle_search(x.form, act);
      if (!found.cocycle) continue;
      const GTensor f = twist_from_cocycle(*found.cocycle);
      const ThetaValue tv = theta(f);
      if (r_from_form(tv.form) != x.canonical_r) fail(ErrorKind::Internal, "witness twist maps to a different pair");
      witnessed[i] = 1;
      ++w;
    }
    rep.witnessed = w;
    if (w > 1) {
      lo = std::max(lo, imi * w);
      rep.certificates.push_back(
          {"R2w", "invariant twists built from invariant cocycles on the socle map onto " + std::to_string(w) +
                      " elements of B(G); each fibre is a coset of Int(G)/Inn(G)"});
      if (w == nb) {
        std::optional<std::vector<std::int64_t>> st;
        if (imi == 1) st = structure_from_orders(nb, orders());
        else if (lazy_detail::is_prime(imi * nb)) st = std::vector<std::int64_t>{static_cast<std::int64_t>(imi * nb)};
        record_exact("R2w", imi * nb, st);
      }
    }
  }

  // R5: the image of Theta is a union of Aut(G)-orbits on B(G), closed under
  // the partial product, and its size is divisible by every element order.
  if (!exact && imi == 1 && g->order() <= opt.max_order && multiplicity_free()) {
    const auto auts = automorphisms(g, false, opt.max_order);
    std::vector<int> orbit(nb, -1);
    std::vector<std::vector<std::size_t>> orbits;
    for (std::size_t i = 0; i < nb; ++i) {
      if (orbit[i] >= 0) continue;
      std::set<std::size_t> orb;
      for (const auto& a : auts) {
        auto j = bg_index(rep.bg, apply_map(rep.bg[i].canonical_r, a));
        if (!j) fail(ErrorKind::Internal, "automorphism image outside B(G)");
        orb.insert(*j);
      }
      for (auto j : orb) orbit[j] = static_cast<int>(orbits.size());
      orbits.emplace_back(orb.begin(), orb.end());
    }
    const auto& ords = orders();
    // Products among B(G) elements where defined.
    std::vector<std::vector<int>> prod(nb, std::vector<int>(nb, -1));
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t j = 0; j < nb; ++j) {
        auto p = bg_product(rep.bg[i], rep.bg[j], normal_abelian);
        if (p) prod[i][j] = static_cast<int>(*bg_index(rep.bg, p->canonical_r));
      }
    const std::size_t no = orbits.size();
    if (no <= 20) {
      std::set<std::size_t> sizes;
      std::vector<std::vector<std::size_t>> survivors;
      const int triv = orbit[0];
      for (std::size_t mask = 0; mask < (std::size_t{1} << no); ++mask) {
        if (!((mask >> triv) & 1)) continue;
        std::vector<char> in(nb, 0);
        std::size_t size = 0;
        for (std::size_t i = 0; i < nb; ++i)
          if ((mask >> orbit[i]) & 1) {
            in[i] = 1;
            ++size;
          }
        bool ok = true;
        for (std::size_t i = 0; i < nb && ok; ++i) {
          if (witnessed[i] && !in[i]) ok = false;
          if (in[i] && size % ords[i] != 0) ok = false;
          for (std::size_t j = 0; j < nb && ok; ++j)
            if (in[i] && in[j] && prod[i][j] >= 0 && !in[static_cast<std::size_t>(prod[i][j])]) ok = false;
        }
        if (!ok) continue;
        sizes.insert(size);
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < nb; ++i)
          if (in[i]) members.push_back(i);
        survivors.push_back(std::move(members));
      }
      if (!sizes.empty()) {
        const std::size_t slo = *sizes.begin(), shi = *sizes.rbegin();
        if (slo > lo || shi < hi) {
          lo = std::max(lo, slo);
          hi = std::min(hi, shi);
          rep.certificates.push_back(
              {"R5", "no multiplicities and Int = Inn: the image of Theta is an Aut(G)-stable union of orbits in B(G), "
                     "closed under products, with element orders dividing its size"});
          if (slo == shi) {
            std::optional<std::vector<std::int64_t>> st;
            for (std::size_t s = 0; s < survivors.size(); ++s) {
              std::vector<std::int64_t> o;
              for (auto i : survivors[s]) o.push_back(static_cast<std::int64_t>(ords[i]));
              auto f = invariant_factors_from_element_orders(o);
              if (s == 0)
                st = f;
              else if (st && *st != f)
                st.reset();
            }
            record_exact("R5", slo, st);
          }
        }
      }
    }
  }

  // R6: component group of the invariant-twist torus.
  if (!exact) {
    auto torus = invariant_twist_torus(g, opt.torus_max_order);
    if (torus) {
      std::size_t order = 1;
      for (auto d : torus->torsion) order *= static_cast<std::size_t>(d);
      if (order < lo || order > hi) fail(ErrorKind::Internal, "torus verdict outside certified bounds");
      record_exact("R6", order, torus->torsion);
      rep.certificates.push_back(
          {"R6", "no multiplicities, split invariant algebra: invariant twists form a diagonalizable group whose "
                 "component group is H2"});
    }
  }

  if (exact) {
    rep.exact_order = exact;
    rep.structure = structure;
    if (!structure && lazy_detail::is_prime(*exact)) rep.structure = std::vector<std::int64_t>{static_cast<std::int64_t>(*exact)};
    if (!structure && *exact == 1) rep.structure = std::vector<std::int64_t>{};
    rep.order_lower = rep.order_upper = *exact;
    rep.status = H2Status::Exact;
  } else {
    rep.order_lower = lo;
    rep.order_upper = hi;
    rep.status = (lo == rep.coset_lower && hi == rep.coset_upper) ? H2Status::Undetermined : H2Status::Bounded;
  }
  if (rep.order_lower % rep.int_mod_inn != 0) fail(ErrorKind::Internal, "lower bound not divisible by int_mod_inn");
  return rep;
}

}  // namespace lazyh2
