#pragma once

#include <array>
#include <string>
#include <vector>

#include "group.hpp"

namespace orbifolder::presets {

inline GroupPtr trivial() { return FiniteGroup::from_table({{0}}, "C1"); }

/// Z/k with element i the i-th power of the generator.
inline GroupPtr cyclic(unsigned k, const Caps& caps = {}) {
  if (k == 0) throw ValidationError("cyclic group needs k >= 1");
  require_within_cap(k, caps.max_group_order, "group order");
  std::vector<std::vector<element_t>> table(k, std::vector<element_t>(k));
  for (unsigned a = 0; a < k; ++a)
    for (unsigned b = 0; b < k; ++b) table[a][b] = (a + b) % k;
  return FiniteGroup::from_table(table, "C" + std::to_string(k), caps);
}

/// Symmetries of the regular k-gon, order 2k. Index i < k is r^i, index k+i is s r^i,
/// with r s = s r^-1.
inline GroupPtr dihedral(unsigned k, const Caps& caps = {}) {
  if (k == 0) throw ValidationError("dihedral group needs k >= 1");
  require_within_cap(2 * std::size_t{k}, caps.max_group_order, "group order");
  const unsigned n = 2 * k;
  std::vector<std::vector<element_t>> table(n, std::vector<element_t>(n));
  for (unsigned a = 0; a < n; ++a) {
    for (unsigned b = 0; b < n; ++b) {
      const bool sa = a >= k, sb = b >= k;
      const unsigned i = a % k, j = b % k;
      if (!sa && !sb) table[a][b] = (i + j) % k;
      else if (!sa && sb) table[a][b] = k + (j + k - i) % k;
      else if (sa && !sb) table[a][b] = k + (i + j) % k;
      else table[a][b] = (j + k - i) % k;
    }
  }
  return FiniteGroup::from_table(table, "D" + std::to_string(k), caps);
}

/// S_n as permutations of {0..n-1}, elements in lexicographic one-line order.
inline GroupPtr symmetric(unsigned n, const Caps& caps = {}) {
  if (n == 0) throw ValidationError("symmetric group needs n >= 1");
  if (n > 8) throw CapExceeded("symmetric preset supports n <= 8");
  if (n == 1) return FiniteGroup::from_permutations(1, {{0}}, "S1", caps);
  std::vector<unsigned> swap(n), cycle(n);
  for (unsigned i = 0; i < n; ++i) {
    swap[i] = i;
    cycle[i] = (i + 1) % n;
  }
  std::swap(swap[0], swap[1]);
  return FiniteGroup::from_permutations(n, {swap, cycle}, "S" + std::to_string(n), caps);
}

/// Q8 with indices 0:1 1:-1 2:i 3:-i 4:j 5:-j 6:k 7:-k.
inline GroupPtr quaternion() {
  // Unit products on {1,i,j,k}: (sign, unit).
  constexpr std::array<std::array<std::pair<int, int>, 4>, 4> units{{
      {{{1, 0}, {1, 1}, {1, 2}, {1, 3}}},
      {{{1, 1}, {-1, 0}, {1, 3}, {-1, 2}}},
      {{{1, 2}, {-1, 3}, {-1, 0}, {1, 1}}},
      {{{1, 3}, {1, 2}, {-1, 1}, {-1, 0}}},
  }};
  std::vector<std::vector<element_t>> table(8, std::vector<element_t>(8));
  for (unsigned a = 0; a < 8; ++a) {
    for (unsigned b = 0; b < 8; ++b) {
      const int sign_a = (a % 2) ? -1 : 1, sign_b = (b % 2) ? -1 : 1;
      auto [s, u] = units[a / 2][b / 2];
      const int sign = sign_a * sign_b * s;
      table[a][b] = static_cast<element_t>(2 * u + (sign < 0 ? 1 : 0));
    }
  }
  return FiniteGroup::from_table(table, "Q8");
}

/// A×B with (a,b) at index a*|B| + b.
inline GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b, const Caps& caps = {}) {
  const std::size_t na = a->order(), nb = b->order();
  require_within_cap(na * nb, caps.max_group_order, "group order");
  std::vector<std::vector<element_t>> table(na * nb, std::vector<element_t>(na * nb));
  for (element_t x = 0; x < na * nb; ++x)
    for (element_t y = 0; y < na * nb; ++y)
      table[x][y] = static_cast<element_t>(a->mul(x / nb, y / nb) * nb + b->mul(x % nb, y % nb));
  return FiniteGroup::from_table(table, a->name() + "x" + b->name(), caps);
}

inline GroupHom projection_first(const GroupPtr& product, const GroupPtr& a, const GroupPtr& b) {
  std::vector<element_t> map(product->order());
  for (element_t x = 0; x < map.size(); ++x) map[x] = static_cast<element_t>(x / b->order());
  return GroupHom(product, a, std::move(map));
}

inline GroupHom projection_second(const GroupPtr& product, const GroupPtr& a, const GroupPtr& b) {
  (void)a;
  std::vector<element_t> map(product->order());
  for (element_t x = 0; x < map.size(); ++x) map[x] = static_cast<element_t>(x % b->order());
  return GroupHom(product, b, std::move(map));
}

/// g -> (g, g)
inline GroupHom diagonal(const GroupPtr& group, const GroupPtr& square) {
  std::vector<element_t> map(group->order());
  for (element_t x = 0; x < map.size(); ++x) map[x] = static_cast<element_t>(x * group->order() + x);
  return GroupHom(group, square, std::move(map));
}

/// f×g : A×B -> C×D
inline GroupHom product_hom(const GroupHom& f, const GroupHom& g, const GroupPtr& source, const GroupPtr& target) {
  const std::size_t nb = g.source()->order(), nd = g.target()->order();
  std::vector<element_t> map(source->order());
  for (element_t x = 0; x < map.size(); ++x)
    map[x] = static_cast<element_t>(f(static_cast<element_t>(x / nb)) * nd + g(static_cast<element_t>(x % nb)));
  return GroupHom(source, target, std::move(map));
}

/// Sign of a permutation group as a hom onto C2.
inline GroupHom sign(const GroupPtr& group) {
  const auto& perms = group->permutations();
  if (!perms) throw ValidationError("sign hom requires a permutation group");
  auto c2 = cyclic(2);
  std::vector<element_t> map(group->order());
  for (element_t x = 0; x < map.size(); ++x) {
    const auto& p = (*perms)[x];
    std::vector<bool> seen(p.size(), false);
    std::size_t transpositions = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = p[j]) {
        seen[j] = true;
        ++len;
      }
      transpositions += len - 1;
    }
    map[x] = static_cast<element_t>(transpositions % 2);
  }
  return GroupHom(group, c2, std::move(map));
}

/// Parses "C4"/"Z4", "D4", "S3", "Q8", "trivial".
inline GroupPtr by_name(const std::string& name, const Caps& caps = {}) {
  if (name == "trivial" || name == "1") return trivial();
  if (name == "Q8") return quaternion();
  if (name.size() >= 2) {
    const char kind = name[0];
    const std::string digits = name.substr(1);
    const bool numeric = !digits.empty() && digits.size() <= 6 &&
                         digits.find_first_not_of("0123456789") == std::string::npos;
    if (numeric) {
      const unsigned k = static_cast<unsigned>(std::stoul(digits));
      switch (kind) {
        case 'C':
        case 'Z': return cyclic(k, caps);
        case 'D': return dihedral(k, caps);
        case 'S': return symmetric(k, caps);
        default: break;
      }
    }
  }
  throw ValidationError("unknown preset group '" + name + "'");
}

}  // namespace orbifolder::presets
