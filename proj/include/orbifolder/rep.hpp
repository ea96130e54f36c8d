#pragma once

#include <cstddef>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "groupoid.hpp"
#include "matrix.hpp"

namespace orbifolder {

/// A vector bundle over an action groupoid X//A with exact rational fibers.
///
/// For every generator g_k of A and object x the rep stores an invertible
/// matrix fiber(x) -> fiber(g_k . x). The matrix of an arbitrary element is
/// obtained along its shortest generator word. Construction checks
/// invertibility and that these word evaluations define an action: by
/// default on 50 random words equal to the identity at 5 random objects,
/// and exhaustively under caps.full_validation.
class GroupoidRep {
 public:
  GroupoidRep(GroupoidPtr base, std::vector<std::size_t> dims, std::vector<std::vector<RationalMatrix>> generator_matrices,
              const Caps& caps = {})
      : base_(std::move(base)), dims_(std::move(dims)), matrices_(std::move(generator_matrices)) {
    validate_shapes();
    validate_action(caps);
  }

  static GroupoidRep trivial_line(const GroupoidPtr& base) {
    const std::size_t gens = base->group().generators().size();
    return GroupoidRep(base, std::vector<std::size_t>(base->size(), 1),
                       std::vector<std::vector<RationalMatrix>>(gens, std::vector<RationalMatrix>(base->size(), RationalMatrix::identity(1))));
  }

  static GroupoidRep zero(const GroupoidPtr& base) {
    const std::size_t gens = base->group().generators().size();
    return GroupoidRep(base, std::vector<std::size_t>(base->size(), 0),
                       std::vector<std::vector<RationalMatrix>>(gens, std::vector<RationalMatrix>(base->size(), RationalMatrix(0, 0))));
  }

  /// Regular representation of *//G: basis e_h, with g . e_h = e_{gh}.
  static GroupoidRep regular(const GroupPtr& group) {
    auto base = point_groupoid(group);
    std::vector<std::vector<RationalMatrix>> mats;
    for (element_t g : group->generators()) {
      std::vector<std::size_t> image(group->order());
      for (element_t h = 0; h < group->order(); ++h) image[h] = group->mul(g, h);
      mats.push_back({RationalMatrix::permutation(image, group->order())});
    }
    return GroupoidRep(base, {group->order()}, std::move(mats));
  }

  const GroupoidPtr& base() const noexcept { return base_; }
  std::size_t dim(std::size_t x) const { return dims_.at(x); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  const RationalMatrix& generator_matrix(std::size_t k, std::size_t x) const { return matrices_.at(k).at(x); }

  /// Matrix of a : fiber(x) -> fiber(a . x).
  RationalMatrix action(element_t a, std::size_t x) const {
    return along_word(base_->group().word(a), x).first;
  }

 private:
  std::pair<RationalMatrix, std::size_t> along_word(const std::vector<std::size_t>& word, std::size_t x) const {
    RationalMatrix m = RationalMatrix::identity(dims_[x]);
    std::size_t at = x;
    for (std::size_t k : word) {
      m = matrices_[k][at] * m;
      at = base_->act_generator(k, at);
    }
    return {std::move(m), at};
  }

  void validate_shapes() const {
    const std::size_t gens = base_->group().generators().size();
    if (dims_.size() != base_->size()) throw ValidationError("rep: one fiber dimension per object required");
    if (matrices_.size() != gens) throw ValidationError("rep: one matrix family per generator required");
    for (std::size_t k = 0; k < gens; ++k) {
      if (matrices_[k].size() != base_->size()) throw ValidationError("rep: one matrix per object required");
      for (std::size_t x = 0; x < base_->size(); ++x) {
        const std::size_t y = base_->act_generator(k, x);
        const RationalMatrix& m = matrices_[k][x];
        if (m.cols() != dims_[x] || m.rows() != dims_[y]) throw ValidationError("rep: generator matrix has wrong shape");
        if (rank(m) != dims_[x]) throw ValidationError("rep: non-invertible generator matrix");
      }
    }
  }

  void validate_action(const Caps& caps) const {
    const FiniteGroup& g = base_->group();
    const auto& gens = g.generators();
    if (base_->size() == 0 || gens.empty()) return;
    if (caps.full_validation) {
      // rho(g_k a, x) = rho(g_k, a.x) rho(a, x) for all a, k, x.
      for (std::size_t x = 0; x < base_->size(); ++x)
        for (element_t a = 0; a < g.order(); ++a) {
          auto [ma, ax] = along_word(g.word(a), x);
          for (std::size_t k = 0; k < gens.size(); ++k) {
            auto [mka, kax] = along_word(g.word(g.mul(gens[k], a)), x);
            if (kax != base_->act_generator(k, ax) || mka != matrices_[k][ax] * ma) {
              throw ValidationError("rep: generator matrices do not define an action");
            }
          }
        }
      return;
    }
    std::mt19937_64 rng(caps.seed);
    std::uniform_int_distribution<std::size_t> pick_gen(0, gens.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_obj(0, base_->size() - 1);
    std::uniform_int_distribution<std::size_t> pick_len(1, 8);
    for (int trial = 0; trial < 50; ++trial) {
      // w = u followed by the shortest word of eval(u)^-1.
      std::vector<std::size_t> w(pick_len(rng));
      element_t value = FiniteGroup::identity();
      for (auto& k : w) {
        k = pick_gen(rng);
        value = g.mul(gens[k], value);
      }
      const auto back = g.word(g.inv(value));
      w.insert(w.end(), back.begin(), back.end());
      for (int sample = 0; sample < 5; ++sample) {
        const std::size_t x = pick_obj(rng);
        auto [m, end] = along_word(w, x);
        if (end != x || !m.is_identity()) throw ValidationError("rep: generator matrices do not define an action");
      }
    }
  }

  GroupoidPtr base_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<RationalMatrix>> matrices_;
};

/// (1/|Aut(x)|) Σ_{a ∈ Aut(x)} ρ(a) at x. Idempotency is asserted.
inline RationalMatrix averaging_projector(const GroupoidRep& rep, std::size_t x) {
  const ElementSet aut = rep.base()->stabilizer(x);
  RationalMatrix p(rep.dim(x), rep.dim(x));
  for (element_t a : aut) p += rep.action(a, x);
  p *= Rational(1, static_cast<long long>(aut.size()));
  if (p * p != p) throw ModelInconsistency("averaging projector is not idempotent");
  return p;
}

/// Dimension of the space of parallel sections: Σ over components of the
/// rank of the averaging projector at the representative.
inline std::size_t invariants_dim(const GroupoidRep& rep) {
  std::size_t total = 0;
  for (const auto& c : rep.base()->components()) total += rank(averaging_projector(rep, c.representative));
  return total;
}

/// F*ρ: fiber at x is ρ(F(x)); generators act through the translation hom.
inline GroupoidRep pull(const GroupoidRep& rep, const GroupoidFunctor& functor, const Caps& caps = {}) {
  if (functor.target().get() != rep.base().get()) throw ValidationError("pull: functor does not land in the rep's base");
  const auto& source = functor.source();
  const auto& gens = source->group().generators();
  std::vector<std::size_t> dims(source->size());
  for (std::size_t x = 0; x < source->size(); ++x) dims[x] = rep.dim(functor(x));
  std::vector<std::vector<RationalMatrix>> mats(gens.size(), std::vector<RationalMatrix>(source->size()));
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const element_t image = functor.translation()(gens[k]);
    for (std::size_t x = 0; x < source->size(); ++x) mats[k][x] = rep.action(image, functor(x));
  }
  return GroupoidRep(source, std::move(dims), std::move(mats), caps);
}

/// A parallel section: one Aut-invariant vector per component representative.
class Section {
 public:
  Section(std::shared_ptr<const GroupoidRep> rep, std::vector<std::vector<Rational>> values)
      : rep_(std::move(rep)), values_(std::move(values)) {
    const auto& comps = rep_->base()->components();
    if (values_.size() != comps.size()) throw ValidationError("section: one vector per component required");
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const std::size_t x = comps[c].representative;
      if (values_[c].size() != rep_->dim(x)) throw ValidationError("section: vector has wrong dimension");
      if (averaging_projector(*rep_, x) * values_[c] != values_[c]) {
        throw ValidationError("section is not invariant under the automorphisms of its representative");
      }
    }
  }

  /// Value at any object, transported from its component representative.
  std::vector<Rational> at(std::size_t x) const {
    const auto& base = *rep_->base();
    return rep_->action(base.transporter(x), base.components()[base.component_of(x)].representative) *
           values_[base.component_of(x)];
  }

  const std::vector<std::vector<Rational>>& values() const noexcept { return values_; }

 private:
  std::shared_ptr<const GroupoidRep> rep_;
  std::vector<std::vector<Rational>> values_;
};

/// Limit along the homotopy fibers of r : Λ -> Γ.
///
/// The fiber over ξ is the space of parallel sections of ρ pulled back to
/// r^-1[ξ], written in a basis of Aut-invariants at each fiber component
/// representative. A generator s of Γ's group moves (y, w) in r^-1[ξ] to
/// (y, s w) in r^-1[s ξ]; sections are transported along that relabeling.
inline GroupoidRep push_limit(const GroupoidRep& rep, const GroupoidFunctor& r, const Caps& caps = {}) {
  if (r.source().get() != rep.base().get()) throw ValidationError("push_limit: functor source is not the rep's base");
  const auto& gamma = r.target();
  const FiniteGroup& K = gamma->group();

  struct FiberData {
    GroupoidPtr groupoid;
    std::vector<std::size_t> base_object;  // projection to Λ
    std::vector<RationalMatrix> invariant_basis;  // per fiber component
    std::vector<std::size_t> offset;  // coordinate offset per fiber component
    std::size_t dim = 0;
  };
  std::vector<FiberData> fibers(gamma->size());
  for (std::size_t xi = 0; xi < gamma->size(); ++xi) {
    auto fiber = homotopy_fiber(r, xi, caps);
    FiberData& f = fibers[xi];
    f.groupoid = fiber.groupoid;
    f.base_object = fiber.projection.object_map();
    const GroupoidRep pulled = pull(rep, fiber.projection, caps);
    for (const auto& c : f.groupoid->components()) {
      f.offset.push_back(f.dim);
      f.invariant_basis.push_back(column_space_basis(averaging_projector(pulled, c.representative)));
      f.dim += f.invariant_basis.back().cols();
    }
  }

  const auto& gens = K.generators();
  std::vector<std::size_t> dims(gamma->size());
  for (std::size_t xi = 0; xi < gamma->size(); ++xi) dims[xi] = fibers[xi].dim;
  std::vector<std::vector<RationalMatrix>> mats(gens.size(), std::vector<RationalMatrix>(gamma->size()));
  for (std::size_t k = 0; k < gens.size(); ++k) {
    for (std::size_t xi = 0; xi < gamma->size(); ++xi) {
      const FiberData& from = fibers[xi];
      const FiberData& to = fibers[gamma->act_generator(k, xi)];
      RationalMatrix m(to.dim, from.dim);
      for (std::size_t c = 0; c < from.groupoid->components().size(); ++c) {
        const std::size_t rep_obj = from.groupoid->components()[c].representative;
        Tuple moved = from.groupoid->object(rep_obj);
        moved.back() = K.mul(gens[k], moved.back());
        const std::size_t z = to.groupoid->index_of(moved);
        const std::size_t c2 = to.groupoid->component_of(z);
        // a = t(z)^-1 carries z to its representative; over Λ it acts at the base object of z.
        const element_t a = to.groupoid->group().inv(to.groupoid->transporter(z));
        const RationalMatrix transport = rep.action(a, to.base_object[z]);
        const RationalMatrix& src_basis = from.invariant_basis[c];
        const RationalMatrix& dst_basis = to.invariant_basis[c2];
        for (std::size_t j = 0; j < src_basis.cols(); ++j) {
          auto coords = solve_in_basis(dst_basis, transport * src_basis.column(j));
          if (!coords) throw ModelInconsistency("push_limit: transported section is not parallel");
          for (std::size_t i = 0; i < coords->size(); ++i) m(to.offset[c2] + i, from.offset[c] + j) = (*coords)[i];
        }
      }
      mats[k][xi] = std::move(m);
    }
  }
  return GroupoidRep(gamma, std::move(dims), std::move(mats), caps);
}

}  // namespace orbifolder
