#pragma once

#include <array>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "lazyh2/groups.hpp"

namespace lazyh2 {

namespace fixtures_detail {

inline std::string power_word(const std::vector<std::pair<std::string, int>>& parts) {
  std::string s;
  for (const auto& [sym, k] : parts) {
    if (k == 0) continue;
    if (!s.empty()) s += "*";
    s += sym;
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s.empty() ? "1" : s;
}

}  // namespace fixtures_detail

// Direct product of cyclic groups Z/d1 x ... x Z/dr, elements in mixed radix
// with the first factor most significant.
inline GroupPtr abelian_group(const std::vector<int>& orders, std::string name = "") {
  std::size_t n = 1;
  for (int d : orders) {
    if (d < 1) fail(ErrorKind::InvalidInput, "cyclic factor order must be positive");
    n *= static_cast<std::size_t>(d);
  }
  auto decode = [&](std::size_t x) {
    std::vector<int> c(orders.size());
    for (std::size_t i = orders.size(); i-- > 0;) {
      c[i] = static_cast<int>(x % static_cast<std::size_t>(orders[i]));
      x /= static_cast<std::size_t>(orders[i]);
    }
    return c;
  };
  auto encode = [&](const std::vector<int>& c) {
    std::size_t x = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) x = x * static_cast<std::size_t>(orders[i]) + static_cast<std::size_t>(c[i]);
    return x;
  };
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < n; ++x) {
    auto c = decode(x);
    std::vector<std::pair<std::string, int>> parts;
    for (std::size_t i = 0; i < c.size(); ++i)
      parts.emplace_back(orders.size() == 1 ? "g" : "g" + std::to_string(i + 1), c[i]);
    labels.push_back(fixtures_detail::power_word(parts));
  }
  return FiniteGroup::from_product(
      n,
      [&](std::size_t a, std::size_t b) {
        auto x = decode(a), y = decode(b);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = (x[i] + y[i]) % orders[i];
        return encode(x);
      },
      std::move(labels), std::move(name));
}

inline GroupPtr quaternion_group() {
  // Element 2*u + s is s ? -q_u : q_u with q = (1, i, j, k).
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  const std::array<std::string, 4> names{"1", "i", "j", "k"};
  std::vector<std::string> labels;
  for (int u = 0; u < 4; ++u)
    for (int s = 0; s < 2; ++s) labels.push_back((s ? "-" : "") + names[u]);
  return FiniteGroup::from_product(
      8,
      [&](std::size_t a, std::size_t b) {
        const int ua = static_cast<int>(a / 2), sa = static_cast<int>(a % 2);
        const int ub = static_cast<int>(b / 2), sb = static_cast<int>(b % 2);
        const int s = (sa + sb + unit_sign[ua][ub]) % 2;
        return static_cast<std::size_t>(2 * unit_mul[ua][ub] + s);
      },
      std::move(labels), "Q8");
}

// Extraspecial group of order 27 and exponent 3: e1^a e2^b c^k with e1
// central and c e2 c^-1 = e1 e2.
inline GroupPtr order27_group() {
  auto dec = [](std::size_t x) { return std::array<int, 3>{int(x / 9), int(x / 3 % 3), int(x % 3)}; };
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < 27; ++x) {
    auto [a, b, k] = dec(x);
    labels.push_back(fixtures_detail::power_word({{"e1", a}, {"e2", b}, {"c", k}}));
  }
  return FiniteGroup::from_product(
      27,
      [&](std::size_t x, std::size_t y) {
        auto [a, b, k] = dec(x);
        auto [a2, b2, k2] = dec(y);
        const int na = (a + a2 + k * b2) % 3, nb = (b + b2) % 3, nk = (k + k2) % 3;
        return static_cast<std::size_t>(9 * na + 3 * nb + nk);
      },
      std::move(labels), "C27sd");
}

// u^k s^i t^j with s u s^-1 = u^3, t u t^-1 = u^5, s, t commuting involutions.
inline GroupPtr wall_group() {
  auto dec = [](std::size_t x) { return std::array<int, 3>{int(x % 8), int(x / 8 % 2), int(x / 16)}; };
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < 32; ++x) {
    auto [k, i, j] = dec(x);
    labels.push_back(fixtures_detail::power_word({{"u", k}, {"s", i}, {"t", j}}));
  }
  return FiniteGroup::from_product(
      32,
      [&](std::size_t x, std::size_t y) {
        auto [k, i, j] = dec(x);
        auto [k2, i2, j2] = dec(y);
        int mult = 1;
        if (i) mult *= 3;
        if (j) mult *= 5;
        const int nk = (k + mult * k2) % 8;
        return static_cast<std::size_t>(nk + 8 * (i ^ i2) + 16 * (j ^ j2));
      },
      std::move(labels), "Wall32");
}

// Z/p wr Z/p acting on p^2 points: a p-cycle on the first block and the block shift.
inline GroupPtr wreath_group(int p, std::size_t bound) {
  const int d = p * p;
  std::vector<int> cyc(d), shift(d);
  for (int i = 0; i < d; ++i) {
    cyc[i] = i + 1;
    shift[i] = (i + p) % d + 1;
  }
  for (int i = 0; i < p; ++i) cyc[i] = (i + 1) % p + 1;
  return FiniteGroup::from_permutations(d, {cyc, shift}, bound, "Wr_" + std::to_string(p));
}

inline std::vector<std::string> builtin_group_names() {
  return {"A4", "S3", "S4", "D8", "Q8", "C27sd", "Wall32", "Wr_2", "Wr_3", "Wr_5", "V4", "C<n>", "C<n>xC<m>..."};
}

inline GroupPtr builtin_group(std::string_view name, std::size_t bound = 256) {
  if (name == "A4") return FiniteGroup::from_permutations(4, {{2, 1, 4, 3}, {2, 3, 1, 4}}, bound, "A4");
  if (name == "S3") return FiniteGroup::from_permutations(3, {{2, 1, 3}, {2, 3, 1}}, bound, "S3");
  if (name == "S4") return FiniteGroup::from_permutations(4, {{2, 1, 3, 4}, {2, 3, 4, 1}}, bound, "S4");
  if (name == "D8")
    return FiniteGroup::from_permutations(4, {{2, 1, 3, 4}, {1, 2, 4, 3}, {3, 4, 1, 2}}, bound, "D8");
  if (name == "Q8") return quaternion_group();
  if (name == "C27sd") return order27_group();
  if (name == "Wall32") return wall_group();
  if (name == "V4" || name == "K4") return abelian_group({2, 2}, std::string(name));
  if (name.size() == 4 && name.substr(0, 3) == "Wr_" && std::isdigit(static_cast<unsigned char>(name[3]))) {
    const int p = name[3] - '0';
    if (p == 2 || p == 3 || p == 5) return wreath_group(p, bound);
  }
  // C<n> or C<n>xC<m>x...
  if (!name.empty() && name[0] == 'C') {
    std::vector<int> orders;
    std::size_t i = 0;
    bool ok = true;
    while (ok && i < name.size()) {
      if (name[i] != 'C') {
        ok = false;
        break;
      }
      ++i;
      std::size_t j = i;
      while (j < name.size() && std::isdigit(static_cast<unsigned char>(name[j]))) ++j;
      if (j == i || j - i > 6) {
        ok = false;
        break;
      }
      orders.push_back(std::stoi(std::string(name.substr(i, j - i))));
      i = j;
      if (i < name.size()) {
        if (name[i] != 'x') ok = false;
        ++i;
        if (i == name.size()) ok = false;
      }
    }
    if (ok && !orders.empty()) {
      std::size_t n = 1;
      for (int d : orders) {
        if (d < 1) ok = false;
        n *= static_cast<std::size_t>(std::max(d, 1));
        if (n > bound) fail(ErrorKind::OrderLimitExceeded, "group exceeds order bound " + std::to_string(bound));
      }
      if (ok) return abelian_group(orders, std::string(name));
    }
  }
  fail(ErrorKind::InvalidInput, "unknown group fixture '" + std::string(name) + "'");
}

}  // namespace lazyh2
