#pragma once

// Brute-force reference computations. Only FiniteGroup::mul/inv/order are used.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include <orbifolder/group.hpp>
#include <orbifolder/rational.hpp>

namespace oracle {

using orbifolder::element_t;
using orbifolder::FiniteGroup;
using orbifolder::Rational;
using Tuple = std::vector<element_t>;

inline std::uint64_t test_seed() {
  if (const char* s = std::getenv("ORBIFOLDER_TEST_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240611u;
}

inline void for_each_tuple(std::size_t order, std::size_t n, const std::function<void(const Tuple&)>& fn) {
  Tuple t(n, 0);
  if (n == 0) {
    fn(t);
    return;
  }
  while (true) {
    fn(t);
    std::size_t i = n;
    while (i > 0 && ++t[i - 1] == order) t[--i] = 0;
    if (i == 0) return;
  }
}

inline bool pairwise_commuting(const FiniteGroup& g, const Tuple& t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (g.mul(t[i], t[j]) != g.mul(t[j], t[i])) return false;
  return true;
}

inline std::vector<Tuple> commuting_tuples(const FiniteGroup& g, std::size_t n) {
  std::vector<Tuple> out;
  for_each_tuple(g.order(), n, [&](const Tuple& t) {
    if (pairwise_commuting(g, t)) out.push_back(t);
  });
  return out;
}

inline element_t conj(const FiniteGroup& g, element_t a, element_t x) { return g.mul(g.mul(a, x), g.inv(a)); }

inline Tuple conj(const FiniteGroup& g, element_t a, Tuple t) {
  for (auto& x : t) x = conj(g, a, x);
  return t;
}

/// Orbits of a group action on a finite set, found by applying every element.
template <class Action>
std::size_t orbit_count(const std::vector<Tuple>& objects, std::size_t order, Action act) {
  std::set<Tuple> unseen(objects.begin(), objects.end());
  std::size_t orbits = 0;
  while (!unseen.empty()) {
    const Tuple x = *unseen.begin();
    for (element_t a = 0; a < order; ++a) unseen.erase(act(a, x));
    ++orbits;
  }
  return orbits;
}

inline std::size_t conjugation_orbits(const FiniteGroup& g, std::size_t n) {
  return orbit_count(commuting_tuples(g, n), g.order(), [&](element_t a, const Tuple& t) { return conj(g, a, t); });
}

inline std::size_t class_count(const FiniteGroup& g) { return conjugation_orbits(g, 1); }

/// Σ over classes [g] of the number of classes of C(g).
inline std::size_t drinfeld_simples(const FiniteGroup& g) {
  std::set<element_t> unseen;
  for (element_t x = 0; x < g.order(); ++x) unseen.insert(x);
  std::size_t total = 0;
  while (!unseen.empty()) {
    const element_t x = *unseen.begin();
    for (element_t a = 0; a < g.order(); ++a) unseen.erase(conj(g, a, x));
    std::vector<element_t> cent;
    for (element_t c = 0; c < g.order(); ++c)
      if (g.mul(c, x) == g.mul(x, c)) cent.push_back(c);
    std::set<element_t> rest(cent.begin(), cent.end());
    while (!rest.empty()) {
      const element_t y = *rest.begin();
      for (element_t c : cent) rest.erase(conj(g, c, y));
      ++total;
    }
  }
  return total;
}

/// Objects of the lift groupoid over Q: pairs (x, v), x ∈ Com(H^n), v ∈ J, v λ(x) v^-1 = Q.
inline std::vector<Tuple> lifts(const FiniteGroup& h, const FiniteGroup& j, const std::vector<element_t>& lambda,
                                const Tuple& q) {
  std::vector<Tuple> out;
  for (const auto& x : commuting_tuples(h, q.size())) {
    for (element_t v = 0; v < j.order(); ++v) {
      bool hit = true;
      for (std::size_t i = 0; i < q.size() && hit; ++i) hit = conj(j, v, lambda[x[i]]) == q[i];
      if (!hit) continue;
      Tuple t = x;
      t.push_back(v);
      out.push_back(t);
    }
  }
  return out;
}

inline Rational closed_value(const FiniteGroup& h, const FiniteGroup& j, const std::vector<element_t>& lambda,
                             const Tuple& q) {
  return Rational(static_cast<long long>(lifts(h, j, lambda, q).size()), static_cast<long long>(h.order()));
}

/// Components of the lift groupoid: h acts by (h x h^-1, v λ(h)^-1).
inline std::size_t lift_components(const FiniteGroup& h, const FiniteGroup& j, const std::vector<element_t>& lambda,
                                   const Tuple& q) {
  return orbit_count(lifts(h, j, lambda, q), h.order(), [&](element_t a, const Tuple& t) {
    Tuple out(t.begin(), t.end() - 1);
    out = conj(h, a, out);
    out.push_back(j.mul(t.back(), j.inv(lambda[a])));
    return out;
  });
}

/// Pushforward of a function on Com(J^n) along μ : J -> K, at R ∈ Com(K^n).
inline Rational pushforward(const FiniteGroup& j, const FiniteGroup& k, const std::vector<element_t>& mu,
                            const std::map<Tuple, Rational>& table, const Tuple& r) {
  Rational total = 0;
  for (const auto& [y, value] : table) {
    for (element_t w = 0; w < k.order(); ++w) {
      bool hit = true;
      for (std::size_t i = 0; i < r.size() && hit; ++i) hit = conj(k, w, mu[y[i]]) == r[i];
      if (hit) total += value;
    }
  }
  return total / static_cast<long long>(j.order());
}

/// Order of the subgroup generated by `gens`, by closure under multiplication.
inline std::size_t generated_order(const FiniteGroup& g, const Tuple& gens) {
  std::set<element_t> sub{0};
  bool grew = true;
  while (grew) {
    grew = false;
    for (element_t a : std::vector<element_t>(sub.begin(), sub.end()))
      for (element_t b : gens) grew |= sub.insert(g.mul(a, b)).second;
  }
  return sub.size();
}

/// (1/|G|) Σ over commuting triples of k^[G : <σ1,σ2,σ3>].
inline orbifolder::Integer perm_orbifold(const FiniteGroup& g, const orbifolder::Integer& k) {
  orbifolder::Integer total = 0;
  for (const auto& t : commuting_tuples(g, 3))
    total += boost::multiprecision::pow(k, static_cast<unsigned>(g.order() / generated_order(g, t)));
  return total / g.order();
}

}  // namespace oracle
