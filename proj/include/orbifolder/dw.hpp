#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bundle.hpp"
#include "rep.hpp"

namespace orbifolder {

/// A theory equivariant for J built from a structure hom λ : H -> J.
///
/// On a closed manifold decorated by a J-bundle Q the value is the
/// cardinality of the lift groupoid λ_*^-1[Q]; on a surface the fiber over Q
/// is the free vector space on π0 of that groupoid, with a morphism u of
/// Bun_J acting by relabeling witnesses [(x, v)] -> [(x, u v)]. The
/// non-equivariant (classical) theory of H is λ : H -> 1.
class EquivariantTheory {
 public:
  explicit EquivariantTheory(GroupHom structure) : structure_(std::move(structure)) {}

  static EquivariantTheory classical(const GroupPtr& group) {
    return EquivariantTheory(GroupHom::trivial(group, presets::trivial()));
  }

  const GroupHom& structure() const noexcept { return structure_; }
  const GroupPtr& big_group() const noexcept { return structure_.source(); }
  const GroupPtr& equivariance_group() const noexcept { return structure_.target(); }

 private:
  GroupHom structure_;
};

/// Bundle groupoids of both groups on one manifold and the induced functor between them.
class TheoryOnManifold {
 public:
  TheoryOnManifold(EquivariantTheory theory, ManifoldTag manifold, const Caps& caps = {})
      : theory_(std::move(theory)),
        caps_(caps),
        source_(bundle_groupoid(theory_.big_group(), manifold, caps)),
        target_(bundle_groupoid(theory_.equivariance_group(), manifold, caps)),
        induced_(induced_functor(theory_.structure(), source_, target_)) {}

  const EquivariantTheory& theory() const noexcept { return theory_; }
  const Caps& caps() const noexcept { return caps_; }
  const ManifoldTag& manifold() const noexcept { return source_.manifold; }
  const BundleGroupoid& source_bundles() const noexcept { return source_; }
  const BundleGroupoid& target_bundles() const noexcept { return target_; }
  const GroupoidFunctor& induced() const noexcept { return induced_; }

  std::size_t decoration_index(const Tuple& q) const {
    auto idx = target_.groupoid->find(q);
    if (!idx) throw ValidationError("decoration is not a J-bundle on " + manifold().to_string());
    return *idx;
  }

 private:
  EquivariantTheory theory_;
  Caps caps_;
  BundleGroupoid source_;
  BundleGroupoid target_;
  GroupoidFunctor induced_;
};

/// Objects (x, v): H-holonomy x and witness v with v λ(x) v^-1 = Q.
inline FiberResult lift_groupoid(const TheoryOnManifold& ctx, std::size_t decoration) {
  return homotopy_fiber(ctx.induced(), decoration, ctx.caps());
}

inline Rational closed_value(const TheoryOnManifold& ctx, std::size_t decoration) {
  return cardinality(*lift_groupoid(ctx, decoration).groupoid);
}

inline Rational closed_value(const EquivariantTheory& theory, const ManifoldTag& manifold, const Tuple& decoration,
                             const Caps& caps = {}) {
  TheoryOnManifold ctx(theory, manifold, caps);
  return closed_value(ctx, ctx.decoration_index(decoration));
}

/// Closed values over every object of Bun_J(M), in object order.
struct ValueTable {
  BundleGroupoid base;
  std::vector<Rational> values;
};

inline ValueTable closed_value_table(const TheoryOnManifold& ctx) {
  const auto& target = ctx.target_bundles();
  auto values = parallel_map(target.groupoid->size(), ctx.caps().threads,
                             [&](std::size_t q) { return closed_value(ctx, q); });
  return {target, std::move(values)};
}

/// Codimension-one value as a permutation representation over Bun_J(M).
inline GroupoidRep surface_value(const TheoryOnManifold& ctx) {
  const auto& m = ctx.manifold();
  const bool surface_like = (m.kind == ManifoldTag::Kind::torus && m.parameter == 2) ||
                            m.kind == ManifoldTag::Kind::surface;
  if (!surface_like) throw ValidationError("surface_value needs torus:2 or a closed surface");
  const auto& target = *ctx.target_bundles().groupoid;
  const FiniteGroup& J = target.group();

  auto lifts = parallel_map(target.size(), ctx.caps().threads, [&](std::size_t q) { return lift_groupoid(ctx, q).groupoid; });
  std::vector<std::size_t> dims(target.size());
  for (std::size_t q = 0; q < target.size(); ++q) dims[q] = lifts[q]->components().size();

  const auto& gens = J.generators();
  std::vector<std::vector<RationalMatrix>> mats(gens.size(), std::vector<RationalMatrix>(target.size()));
  for (std::size_t k = 0; k < gens.size(); ++k) {
    for (std::size_t q = 0; q < target.size(); ++q) {
      const std::size_t moved_q = target.act_generator(k, q);
      const auto& from = *lifts[q];
      const auto& to = *lifts[moved_q];
      std::vector<std::size_t> image(from.components().size());
      for (std::size_t c = 0; c < image.size(); ++c) {
        Tuple t = from.object(from.components()[c].representative);
        t.back() = J.mul(gens[k], t.back());
        image[c] = to.component_of(to.index_of(t));
      }
      mats[k][q] = RationalMatrix::permutation(image, dims[moved_q]);
    }
  }
  return GroupoidRep(ctx.target_bundles().groupoid, std::move(dims), std::move(mats), ctx.caps());
}

struct VerlindeEntry {
  Tuple pair;  // commuting (g, h) in J
  std::size_t dim;
};

/// Fiber dimensions of the torus value over Com(J^2), lexicographically.
inline std::vector<VerlindeEntry> verlinde_dims(const EquivariantTheory& theory, const Caps& caps = {}) {
  TheoryOnManifold ctx(theory, ManifoldTag::torus(2), caps);
  const auto& target = *ctx.target_bundles().groupoid;
  auto dims = parallel_map(target.size(), caps.threads,
                           [&](std::size_t q) { return lift_groupoid(ctx, q).groupoid->components().size(); });
  std::vector<VerlindeEntry> out;
  for (std::size_t q = 0; q < target.size(); ++q) out.push_back({target.object(q), dims[q]});
  return out;
}

struct SMoveReport {
  bool ok = true;
  std::optional<Tuple> offending_pair;
};

/// dim(g, h) = dim(h^-1, g) for every commuting pair.
inline SMoveReport smove_check(const EquivariantTheory& theory, const Caps& caps = {}) {
  const auto table = verlinde_dims(theory, caps);
  const FiniteGroup& J = *theory.equivariance_group();
  auto dim_of = [&](const Tuple& pair) {
    for (const auto& e : table)
      if (e.pair == pair) return e.dim;
    throw ModelInconsistency("S-move image is not a commuting pair");
  };
  for (const auto& e : table) {
    if (dim_of({J.inv(e.pair[1]), e.pair[0]}) != e.dim) return {false, e.pair};
  }
  return {};
}

struct TwistedSectorReport {
  bool precondition_met = true;  // λ surjective
  bool ok = true;
  std::vector<element_t> empty_sectors;
  std::string message;
};

/// For surjective λ every sector (j, 1) of the torus value is non-zero.
inline TwistedSectorReport twisted_sector_check(const EquivariantTheory& theory, const Caps& caps = {}) {
  TwistedSectorReport report;
  if (!theory.structure().is_surjective()) {
    report.precondition_met = false;
    report.ok = false;
    report.message = "structure hom is not surjective; the monoidal unit is not simple (unit components: " +
                     std::to_string(pushforward_unit_components(theory.structure())) + ")";
    return report;
  }
  for (const auto& e : verlinde_dims(theory, caps)) {
    if (e.pair[1] == FiniteGroup::identity() && e.dim == 0) report.empty_sectors.push_back(e.pair[0]);
  }
  report.ok = report.empty_sectors.empty();
  report.message = report.ok ? "all twisted sectors are non-trivial" : "some twisted sectors are trivial";
  return report;
}

}  // namespace orbifolder
