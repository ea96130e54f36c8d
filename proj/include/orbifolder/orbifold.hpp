#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dw.hpp"

namespace orbifolder {

struct OrbifoldSummand {
  Tuple representative;
  std::size_t aut_order;
  Rational summand;  // value(rep) / |Aut(rep)|
};

struct OrbifoldReport {
  ManifoldTag manifold;
  Rational value;
  bool integral = false;  // value is a non-negative integer
  std::vector<OrbifoldSummand> breakdown;
};

/// Integral of a value table over its base groupoid, evaluated two ways:
/// Σ over components of value/|Aut| and (1/|J|) Σ over all objects.
inline OrbifoldReport integrate_table(const ValueTable& table, const Caps& caps = {}) {
  const auto& g = *table.base.groupoid;
  OrbifoldReport report{table.base.manifold, 0, false, {}};
  for (const auto& c : g.components()) {
    const std::size_t aut = g.stabilizer(c.representative).size();
    const Rational s = table.values[c.representative] / static_cast<long long>(aut);
    report.breakdown.push_back({g.object(c.representative), aut, s});
  }
  report.value = groupoid_integral(g, [&](std::size_t x) { return table.values[x]; }, caps);
  Rational direct = 0;
  for (const auto& v : table.values) direct += v;
  direct /= static_cast<long long>(g.group().order());
  if (direct != report.value) {
    throw ModelInconsistency("orbifold routes disagree: " + to_string(report.value) + " vs " + to_string(direct));
  }
  report.integral = is_nonnegative_integer(report.value);
  return report;
}

inline OrbifoldReport orbifold_closed(const EquivariantTheory& theory, const ManifoldTag& manifold, const Caps& caps = {}) {
  TheoryOnManifold ctx(theory, manifold, caps);
  return integrate_table(closed_value_table(ctx), caps);
}

/// μ_* of a value table over Bun_J(M): the value over R ∈ Bun_K(M) is the
/// integral over μ_*^-1[R] of the table pulled back along the projection.
inline ValueTable pushforward_closed(const ValueTable& table, const GroupHom& hom, const Caps& caps = {}) {
  if (!hom.source()->same_as(*table.base.group)) throw ValidationError("pushforward: hom source is not the table's group");
  auto target = bundle_groupoid(hom.target(), table.base.manifold, caps);
  auto induced = induced_functor(hom, table.base, target);
  auto values = parallel_map(target.groupoid->size(), caps.threads, [&](std::size_t r) {
    auto fiber = homotopy_fiber(induced, r, caps);
    const auto& proj = fiber.projection;
    return groupoid_integral(*fiber.groupoid, [&](std::size_t x) { return table.values[proj(x)]; }, caps);
  });
  return {std::move(target), std::move(values)};
}

inline ValueTable pushforward_closed(const EquivariantTheory& theory, const GroupHom& hom, const ManifoldTag& manifold,
                                     const Caps& caps = {}) {
  TheoryOnManifold ctx(theory, manifold, caps);
  return pushforward_closed(closed_value_table(ctx), hom, caps);
}

/// Number of simple objects of the orbifold category: (1/|J|) Σ over Com(J^3)
/// of the closed torus values. Non-integral results are a model error.
inline Integer simple_count(const EquivariantTheory& theory, const Caps& caps = {}) {
  const auto report = orbifold_closed(theory, ManifoldTag::torus(3), caps);
  if (!report.integral) {
    throw ModelInconsistency("simple-object count is not a non-negative integer: " + to_string(report.value));
  }
  return numerator_of(report.value);
}

/// (1/n!) Σ over commuting triples in S_n of k^[S_n : <σ1,σ2,σ3>].
inline Integer perm_orbifold_simples(unsigned letters, const Integer& k, const Caps& caps = {}) {
  if (letters == 0) throw ValidationError("permutation orbifold needs at least one letter");
  if (letters > caps.max_perm_orbifold_letters) {
    throw CapExceeded("permutation orbifold letters " + std::to_string(letters) + " exceed cap " +
                      std::to_string(caps.max_perm_orbifold_letters));
  }
  if (k < 1) throw ValidationError("permutation orbifold needs k >= 1");
  auto sn = presets::symmetric(letters, caps);
  const auto triples = commuting_tuples(sn, 3, caps);
  auto terms = parallel_map(triples.size(), caps.threads, [&](std::size_t i) {
    const auto sub = generated_subgroup(*sn, triples[i]);
    return static_cast<unsigned>(coset_index(*sn, sub));
  });
  Integer total = 0;
  for (unsigned e : terms) total += boost::multiprecision::pow(k, e);
  const Rational value(total, Integer(sn->order()));
  if (!is_nonnegative_integer(value)) {
    throw ModelInconsistency("permutation orbifold count is not integral: " + to_string(value));
  }
  return numerator_of(value);
}

struct DivisibilityReport {
  Rational sum;
  std::size_t group_order;
  bool ok = false;  // sum is a non-negative integer multiple of |G|
};

/// values[i] belongs to the i-th tuple of Com(G^n) (lexicographic order).
inline DivisibilityReport divisibility_check(const GroupPtr& group, const CommutingTupleSet& tuples,
                                             const std::vector<Rational>& values) {
  if (values.size() != tuples.size()) throw ValidationError("divisibility_check: one value per commuting tuple required");
  if (!tuples.group()->same_as(*group)) throw ValidationError("divisibility_check: tuples belong to another group");
  auto index_of = [&](const Tuple& t) {
    std::size_t lo = 0, hi = tuples.size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      const auto s = tuples[mid];
      if (std::lexicographical_compare(s.begin(), s.end(), t.begin(), t.end())) lo = mid + 1;
      else hi = mid;
    }
    return lo;
  };
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    for (element_t g : group->generators()) {
      Tuple c = tuples.tuple(i);
      for (auto& x : c) x = group->conj(g, x);
      if (values[index_of(c)] != values[i]) {
        throw ValidationError("divisibility_check: value table is not conjugation-invariant");
      }
    }
  }
  DivisibilityReport report{0, group->order(), false};
  for (const auto& v : values) report.sum += v;
  const Rational quotient = report.sum / static_cast<long long>(group->order());
  report.ok = is_nonnegative_integer(quotient);
  return report;
}

/// Dimension of the orbifold's torus space: parallel sections of the surface value on torus:2.
inline std::size_t orbifold_verlinde(const EquivariantTheory& theory, const Caps& caps = {}) {
  TheoryOnManifold ctx(theory, ManifoldTag::torus(2), caps);
  return invariants_dim(surface_value(ctx));
}

}  // namespace orbifolder
