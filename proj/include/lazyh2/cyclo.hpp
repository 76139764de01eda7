#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lazyh2/core.hpp"

namespace lazyh2 {

using Rational = mpq_class;

namespace cyclo_detail {

struct PrimePower {
  int p = 0;
  int k = 0;
  int q = 1;
  int phi = 1;
  int sub = 1;  // p^(k-1)

  bool operator==(const PrimePower& o) const { return p == o.p && k == o.k; }
};

inline PrimePower make_pp(int p, int k) {
  PrimePower f;
  f.p = p;
  f.k = k;
  f.sub = 1;
  for (int i = 1; i < k; ++i) f.sub *= p;
  f.q = f.sub * p;
  f.phi = f.sub * (p - 1);
  return f;
}

inline std::vector<std::pair<int, int>> factorize(std::int64_t n) {
  std::vector<std::pair<int, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    out.emplace_back(static_cast<int>(p), k);
  }
  if (n > 1) out.emplace_back(static_cast<int>(n), 1);
  return out;
}

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t r0 = m, r1 = mod(a, m), s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t t = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - t * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - t * s1);
  }
  if (r0 != 1) fail(ErrorKind::Internal, "inverse_mod: not coprime");
  return mod(s0, m);
}

inline std::vector<PrimePower> merge(const std::vector<PrimePower>& a,
                                     const std::vector<PrimePower>& b) {
  std::vector<PrimePower> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].p < b[j].p)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].p < a[i].p) {
      out.push_back(b[j++]);
    } else {
      out.push_back(a[i].k >= b[j].k ? a[i] : b[j]);
      ++i;
      ++j;
    }
  }
  return out;
}

inline std::size_t basis_dim(const std::vector<PrimePower>& f) {
  std::size_t d = 1;
  for (const auto& x : f) d *= static_cast<std::size_t>(x.phi);
  return d;
}

inline std::vector<std::size_t> strides(const std::vector<PrimePower>& f) {
  std::vector<std::size_t> s(f.size(), 1);
  for (std::size_t i = f.size(); i-- > 1;) s[i - 1] = s[i] * static_cast<std::size_t>(f[i].phi);
  return s;
}

}  // namespace cyclo_detail

// Element of a cyclotomic field. The basis is the tensor product of the power
// bases of Q(zeta_q) over the prime powers q of the conductor, which keeps the
// representation canonical once the conductor is minimal.
class CycNum {
  using PP = cyclo_detail::PrimePower;

 public:
  CycNum() : c_(1) {}
  CycNum(int v) : c_{Rational(v)} {}
  CycNum(long v) : c_{Rational(v)} {}
  CycNum(long long v) : c_{Rational(static_cast<long>(v))} {}
  CycNum(const Rational& q) : c_{q} { c_[0].canonicalize(); }

  static CycNum root_of_unity(std::int64_t n, std::int64_t e) {
    using namespace cyclo_detail;
    if (n < 1) fail(ErrorKind::InvalidInput, "root_of_unity: n must be positive");
    CycNum out;
    out.factors_.clear();
    int sign = 1;
    std::vector<std::vector<Rational>> parts;
    const std::int64_t en = mod(e, n);
    for (auto [p, k] : factorize(n)) {
      PP f = make_pp(p, k);
      const std::int64_t cof = n / f.q;
      const std::int64_t c = inverse_mod(cof % f.q, f.q);
      const std::int64_t x = mod((en % f.q) * c, f.q);
      if (f.q == 2) {
        if (x == 1) sign = -sign;
        continue;
      }
      std::vector<Rational> v(f.phi);
      if (x < f.phi) {
        v[x] = 1;
      } else {
        for (int t = 0; t + 1 < f.p; ++t) v[x - f.phi + t * f.sub] = -1;
      }
      out.factors_.push_back(f);
      parts.push_back(std::move(v));
    }
    std::vector<Rational> acc{Rational(sign)};
    for (const auto& v : parts) {
      std::vector<Rational> next(acc.size() * v.size());
      for (std::size_t i = 0; i < acc.size(); ++i) {
        if (sgn(acc[i]) == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j)
          if (sgn(v[j]) != 0) next[i * v.size() + j] = acc[i] * v[j];
      }
      acc = std::move(next);
    }
    out.c_ = std::move(acc);
    out.normalize();
    return out;
  }

  std::int64_t conductor() const {
    std::int64_t n = 1;
    for (const auto& f : factors_) n *= f.q;
    return n;
  }

  bool is_zero() const { return factors_.empty() && sgn(c_[0]) == 0; }
  bool is_one() const { return factors_.empty() && c_[0] == 1; }
  bool is_rational() const { return factors_.empty(); }

  const Rational& rational_value() const {
    if (!is_rational()) fail(ErrorKind::Internal, "rational_value of irrational CycNum");
    return c_[0];
  }

  // Nonzero terms as (exponent of zeta_n, coefficient), n = conductor(), sorted.
  std::vector<std::pair<std::int64_t, Rational>> terms() const {
    const std::int64_t n = conductor();
    const auto st = cyclo_detail::strides(factors_);
    std::vector<std::pair<std::int64_t, Rational>> out;
    for (std::size_t idx = 0; idx < c_.size(); ++idx) {
      if (sgn(c_[idx]) == 0) continue;
      std::int64_t e = 0;
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        const std::int64_t ei = static_cast<std::int64_t>((idx / st[i]) % factors_[i].phi);
        e += ei * (n / factors_[i].q);
      }
      out.emplace_back(e % n, c_[idx]);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  static CycNum from_terms(std::int64_t n, const std::vector<std::pair<std::int64_t, Rational>>& ts) {
    CycNum out;
    for (const auto& [e, q] : ts) out += root_of_unity(n, e) * CycNum(q);
    return out;
  }

  CycNum galois(std::int64_t a) const {
    const std::int64_t n = conductor();
    if (std::gcd(cyclo_detail::mod(a, n), n) != 1)
      fail(ErrorKind::InvalidInput, "galois: exponent not coprime to conductor");
    CycNum out;
    for (const auto& [e, q] : terms()) out += root_of_unity(n, a * e) * CycNum(q);
    return out;
  }

  CycNum inv() const {
    if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
    if (is_rational()) return CycNum(Rational(1) / c_[0]);
    const std::int64_t n = conductor();
    CycNum y(1);
    for (std::int64_t a = 2; a < n; ++a)
      if (std::gcd(a, n) == 1) y *= galois(a);
    const CycNum norm = *this * y;
    if (!norm.is_rational()) fail(ErrorKind::Internal, "norm is not rational");
    return y * CycNum(Rational(1) / norm.c_[0]);
  }

  CycNum pow(std::int64_t k) const {
    if (k < 0) return inv().pow(-k);
    CycNum result(1), base = *this;
    while (k > 0) {
      if (k & 1) result *= base;
      k >>= 1;
      if (k > 0) base *= base;
    }
    return result;
  }

  // If this is a root of unity, returns (N, k) with value zeta_N^k, where N is
  // the order of the full root-of-unity group of the field and k < N.
  std::optional<std::pair<std::int64_t, std::int64_t>> as_root_of_unity() const {
    if (is_zero()) return std::nullopt;
    std::int64_t n = conductor();
    const std::int64_t N = (n % 2 == 1) ? 2 * n : n;
    for (std::int64_t k = 0; k < N; ++k)
      if (root_of_unity(N, k) == *this) return std::make_pair(N, k);
    return std::nullopt;
  }

  // Smallest m > 0 with x^m = 1, if x is a root of unity.
  std::optional<std::int64_t> root_order() const {
    auto r = as_root_of_unity();
    if (!r) return std::nullopt;
    return r->first / std::gcd(r->first, r->second);
  }

  CycNum operator-() const {
    CycNum out = *this;
    for (auto& x : out.c_) x = -x;
    return out;
  }

  CycNum& operator+=(const CycNum& o) { return add_in_place(o, 1); }
  CycNum& operator-=(const CycNum& o) { return add_in_place(o, -1); }

  CycNum& operator*=(const CycNum& o) {
    *this = *this * o;
    return *this;
  }

  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator/(const CycNum& a, const CycNum& b) { return a * b.inv(); }

  friend CycNum operator*(const CycNum& a, const CycNum& b) {
    if (a.factors_.empty() && b.factors_.empty()) return CycNum(a.c_[0] * b.c_[0]);
    if (a.factors_.empty()) return b.scaled(a.c_[0]);
    if (b.factors_.empty()) return a.scaled(b.c_[0]);
    CycNum out;
    out.factors_ = cyclo_detail::merge(a.factors_, b.factors_);
    auto x = a.embed(out.factors_);
    auto y = b.embed(out.factors_);
    out.c_ = multiply(out.factors_, x, y);
    out.normalize();
    return out;
  }

  friend bool operator==(const CycNum& a, const CycNum& b) {
    return a.factors_ == b.factors_ && a.c_ == b.c_;
  }
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

  std::string to_string() const {
    auto ts = terms();
    if (ts.empty()) return "0";
    const std::int64_t n = conductor();
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, q] : ts) {
      if (!first) os << " + ";
      first = false;
      if (e == 0) {
        os << q.get_str();
      } else {
        os << q.get_str() << "*z" << n << "^" << e;
      }
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const CycNum& x) { return os << x.to_string(); }

 private:
  std::vector<PP> factors_;
  std::vector<Rational> c_;

  CycNum scaled(const Rational& q) const {
    if (sgn(q) == 0) return CycNum();
    CycNum out = *this;
    for (auto& x : out.c_)
      if (sgn(x) != 0) x *= q;
    return out;
  }

  CycNum& add_in_place(const CycNum& o, int sign) {
    if (factors_ == o.factors_) {
      for (std::size_t i = 0; i < c_.size(); ++i) {
        if (sign > 0)
          c_[i] += o.c_[i];
        else
          c_[i] -= o.c_[i];
      }
    } else {
      auto target = cyclo_detail::merge(factors_, o.factors_);
      auto x = embed(target);
      auto y = o.embed(target);
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (sign > 0)
          x[i] += y[i];
        else
          x[i] -= y[i];
      }
      factors_ = std::move(target);
      c_ = std::move(x);
    }
    normalize();
    return *this;
  }

  std::vector<Rational> embed(const std::vector<PP>& target) const {
    if (target == factors_) return c_;
    std::vector<Rational> out(cyclo_detail::basis_dim(target));
    const auto st = cyclo_detail::strides(factors_);
    const auto ts = cyclo_detail::strides(target);
    std::vector<std::size_t> pos(factors_.size());
    std::vector<std::int64_t> scale(factors_.size(), 1);
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      std::size_t j = 0;
      while (target[j].p != factors_[i].p) ++j;
      pos[i] = j;
      for (int t = factors_[i].k; t < target[j].k; ++t) scale[i] *= factors_[i].p;
    }
    for (std::size_t idx = 0; idx < c_.size(); ++idx) {
      if (sgn(c_[idx]) == 0) continue;
      std::size_t tidx = 0;
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        const std::size_t ei = (idx / st[i]) % factors_[i].phi;
        tidx += ei * static_cast<std::size_t>(scale[i]) * ts[pos[i]];
      }
      out[tidx] = c_[idx];
    }
    return out;
  }

  static std::vector<Rational> multiply(const std::vector<PP>& f, const std::vector<Rational>& a,
                                        const std::vector<Rational>& b) {
    const std::size_t r = f.size();
    std::vector<std::size_t> ext(r), est(r, 1);
    for (std::size_t i = 0; i < r; ++i) ext[i] = 2 * static_cast<std::size_t>(f[i].phi) - 1;
    for (std::size_t i = r; i-- > 1;) est[i - 1] = est[i] * ext[i];
    const std::size_t total = r == 0 ? 1 : est[0] * ext[0];
    const auto st = cyclo_detail::strides(f);
    auto to_ext = [&](std::size_t idx) {
      std::size_t e = 0;
      for (std::size_t i = 0; i < r; ++i) e += ((idx / st[i]) % f[i].phi) * est[i];
      return e;
    };
    std::vector<std::pair<std::size_t, const Rational*>> na, nb;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (sgn(a[i]) != 0) na.emplace_back(to_ext(i), &a[i]);
    for (std::size_t i = 0; i < b.size(); ++i)
      if (sgn(b[i]) != 0) nb.emplace_back(to_ext(i), &b[i]);
    std::vector<Rational> tmp(total);
    Rational prod;
    for (const auto& [ia, va] : na)
      for (const auto& [ib, vb] : nb) {
        mpq_mul(prod.get_mpq_t(), va->get_mpq_t(), vb->get_mpq_t());
        tmp[ia + ib] += prod;
      }
    for (std::size_t i = 0; i < r; ++i) {
      const std::size_t inner = est[i];
      const std::size_t outer = total / (ext[i] * inner);
      const std::size_t phi = static_cast<std::size_t>(f[i].phi);
      for (std::size_t e = ext[i]; e-- > phi;) {
        for (std::size_t o = 0; o < outer; ++o)
          for (std::size_t in = 0; in < inner; ++in) {
            const std::size_t p = (o * ext[i] + e) * inner + in;
            if (sgn(tmp[p]) == 0) continue;
            for (int t = 0; t + 1 < f[i].p; ++t) {
              const std::size_t target = e - phi + static_cast<std::size_t>(t) * f[i].sub;
              tmp[(o * ext[i] + target) * inner + in] -= tmp[p];
            }
            tmp[p] = 0;
          }
      }
    }
    std::vector<Rational> out(cyclo_detail::basis_dim(f));
    for (std::size_t idx = 0; idx < out.size(); ++idx) out[idx] = tmp[to_ext(idx)];
    return out;
  }

  void normalize() {
    for (;;) {
      bool zero = true;
      for (const auto& x : c_)
        if (sgn(x) != 0) {
          zero = false;
          break;
        }
      if (zero) {
        factors_.clear();
        c_.assign(1, Rational(0));
        return;
      }
      bool changed = false;
      const auto st = cyclo_detail::strides(factors_);
      for (std::size_t i = 0; i < factors_.size() && !changed; ++i) {
        const PP f = factors_[i];
        const bool drop = f.k == 1 || (f.p == 2 && f.k == 2);
        bool ok = true;
        for (std::size_t idx = 0; idx < c_.size() && ok; ++idx) {
          if (sgn(c_[idx]) == 0) continue;
          const std::size_t ei = (idx / st[i]) % f.phi;
          ok = drop ? ei == 0 : ei % f.p == 0;
        }
        if (!ok) continue;
        std::vector<PP> nf = factors_;
        if (drop)
          nf.erase(nf.begin() + static_cast<std::ptrdiff_t>(i));
        else
          nf[i] = cyclo_detail::make_pp(f.p, f.k - 1);
        const auto nst = cyclo_detail::strides(nf);
        std::vector<Rational> nc(cyclo_detail::basis_dim(nf));
        for (std::size_t idx = 0; idx < c_.size(); ++idx) {
          if (sgn(c_[idx]) == 0) continue;
          std::size_t nidx = 0;
          for (std::size_t j = 0, jj = 0; j < factors_.size(); ++j) {
            std::size_t ej = (idx / st[j]) % factors_[j].phi;
            if (j == i) {
              if (drop) continue;
              ej /= f.p;
            }
            nidx += ej * nst[jj++];
          }
          nc[nidx] = c_[idx];
        }
        factors_ = std::move(nf);
        c_ = std::move(nc);
        changed = true;
      }
      if (!changed) return;
    }
  }
};

inline CycNum root_of_unity(std::int64_t n, std::int64_t e) { return CycNum::root_of_unity(n, e); }

inline CycNum cyc_inv(const CycNum& x) { return x.inv(); }

inline CycNum sqrt_odd_root(const CycNum& x, std::int64_t m) {
  if (m <= 0 || m % 2 == 0) fail(ErrorKind::NotOddRoot, "modulus must be odd and positive");
  if (!x.pow(m).is_one()) fail(ErrorKind::NotOddRoot, "value is not an m-th root of unity");
  return x.pow((m + 1) / 2);
}

}  // namespace lazyh2
