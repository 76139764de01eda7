#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "lazyh2/cyclo.hpp"

namespace lazyh2 {

// Prime field element for certified rank lower bounds.
struct Fp {
  static constexpr std::uint64_t p = 2305843009213693951ULL;  // 2^61 - 1
  std::uint64_t v = 0;

  Fp() = default;
  explicit Fp(std::int64_t x) {
    const std::int64_t m = static_cast<std::int64_t>(x % static_cast<std::int64_t>(p));
    v = static_cast<std::uint64_t>(m < 0 ? m + static_cast<std::int64_t>(p) : m);
  }

  static Fp raw(std::uint64_t x) {
    Fp f;
    f.v = x;
    return f;
  }
  bool is_zero() const { return v == 0; }
  friend Fp operator+(Fp a, Fp b) { return raw((a.v + b.v) % p); }
  friend Fp operator-(Fp a, Fp b) { return raw((a.v + p - b.v) % p); }
  friend Fp operator*(Fp a, Fp b) {
    return raw(static_cast<std::uint64_t>((static_cast<unsigned __int128>(a.v) * b.v) % p));
  }
  Fp inv() const {
    Fp r = raw(1), b = *this;
    std::uint64_t e = p - 2;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }
};

namespace linalg_detail {
inline bool is_zero(const Fp& x) { return x.is_zero(); }
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const CycNum& x) { return x.is_zero(); }
}  // namespace linalg_detail

// Rank of a family of sparse vectors, by elimination against pivots keyed by
// their leading index.
template <class F>
std::size_t sparse_rank(std::vector<std::map<std::size_t, F>> vecs) {
  std::map<std::size_t, std::map<std::size_t, F>> pivots;
  std::size_t rank = 0;
  for (auto& v : vecs) {
    while (!v.empty()) {
      const std::size_t lead = v.begin()->first;
      auto it = pivots.find(lead);
      if (it == pivots.end()) {
        const F inv = F(1) / v.begin()->second;
        for (auto& [k, x] : v) x = x * inv;
        pivots.emplace(lead, std::move(v));
        ++rank;
        break;
      }
      const F factor = v.begin()->second;
      for (const auto& [k, x] : it->second) {
        auto jt = v.find(k);
        F nv = (jt == v.end() ? F(0) : jt->second) - factor * x;
        if (linalg_detail::is_zero(nv)) {
          if (jt != v.end()) v.erase(jt);
        } else if (jt == v.end()) {
          v.emplace(k, nv);
        } else {
          jt->second = nv;
        }
      }
    }
  }
  return rank;
}

// Solves A x = b over a field; nullopt when A is singular.
template <class F>
std::optional<std::vector<F>> solve_dense(std::vector<std::vector<F>> a, std::vector<F> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    for (std::size_t r = col; r < n; ++r)
      if (!linalg_detail::is_zero(a[r][col])) {
        piv = r;
        break;
      }
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    const F inv = F(1) / a[col][col];
    for (std::size_t c = col; c < n; ++c)
      if (!linalg_detail::is_zero(a[col][c])) a[col][c] = a[col][c] * inv;
    b[col] = b[col] * inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || linalg_detail::is_zero(a[r][col])) continue;
      const F f = a[r][col];
      for (std::size_t c = col; c < n; ++c)
        if (!linalg_detail::is_zero(a[col][c])) a[r][c] = a[r][c] - f * a[col][c];
      if (!linalg_detail::is_zero(b[col])) b[r] = b[r] - f * b[col];
    }
  }
  return b;
}

// Null space basis of a dense rational matrix (rows x cols).
inline std::vector<std::vector<Rational>> null_space(std::vector<std::vector<Rational>> a, std::size_t cols) {
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t piv = a.size();
    for (std::size_t r = row; r < a.size(); ++r)
      if (sgn(a[r][col]) != 0) {
        piv = r;
        break;
      }
    if (piv == a.size()) continue;
    std::swap(a[piv], a[row]);
    const Rational inv = 1 / a[row][col];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || sgn(a[r][col]) == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c = 0; c < cols; ++c)
        if (sgn(a[row][c]) != 0) a[r][c] -= f * a[row][c];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  std::vector<char> is_pivot(cols, 0);
  for (auto c : pivot_cols) is_pivot[c] = 1;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Sublattice of Z^n kept in echelon form under unimodular row operations.
class IntLattice {
 public:
  explicit IntLattice(std::size_t n) : n_(n), rows_(n) {}

  void insert(std::vector<mpz_class> v) {
    for (std::size_t c = 0; c < n_; ++c) {
      if (sgn(v[c]) == 0) continue;
      auto& b = rows_[c];
      if (b.empty()) {
        if (sgn(v[c]) < 0)
          for (auto& x : v) x = -x;
        b = std::move(v);
        return;
      }
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), b[c].get_mpz_t(), v[c].get_mpz_t());
      const mpz_class bc = b[c] / g, vc = v[c] / g;
      std::vector<mpz_class> nb(n_), nv(n_);
      for (std::size_t k = 0; k < n_; ++k) {
        nb[k] = s * b[k] + t * v[k];
        nv[k] = bc * v[k] - vc * b[k];
      }
      b = std::move(nb);
      v = std::move(nv);
    }
  }

  std::vector<std::vector<mpz_class>> basis() const {
    std::vector<std::vector<mpz_class>> out;
    for (const auto& r : rows_)
      if (!r.empty()) out.push_back(r);
    return out;
  }

  std::size_t dimension() const { return n_; }

 private:
  std::size_t n_;
  std::vector<std::vector<mpz_class>> rows_;
};

// Nonzero diagonal of the Smith normal form of an integer matrix.
inline std::vector<mpz_class> smith_diagonal(std::vector<std::vector<mpz_class>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<mpz_class> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (sgn(a[i][j]) != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
            pr = i;
            pc = j;
          }
      if (pr == rows) return diag;
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pc]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sgn(a[i][t]) == 0) continue;
        const mpz_class q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (sgn(a[i][t]) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(a[t][j]) == 0) continue;
        const mpz_class q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (sgn(a[t][j]) != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols && divides; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
            divides = false;
          }
      if (divides) break;
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

}  // namespace lazyh2
