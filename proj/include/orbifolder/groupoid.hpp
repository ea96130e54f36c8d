#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "group.hpp"
#include "presets.hpp"
#include "rational.hpp"

namespace orbifolder {

class FiniteGroupoid;
using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

struct Component {
  std::size_t representative;  // minimal object index in the orbit
  std::size_t size;
};

/// Action groupoid X//A of a finite group acting on a finite set of
/// fixed-length tuples.
///
/// Objects keep the order they were given in; lookups go through a sorted
/// index. At construction the generator action table, the orbit
/// decomposition and, for every object x, a transporter t(x) with
/// t(x) . rep(x) = x are computed by breadth-first search along generators.
class FiniteGroupoid {
 public:
  using Action = std::function<Tuple(element_t, const Tuple&)>;

  FiniteGroupoid(GroupPtr group, std::size_t arity, std::vector<Tuple> objects, Action action,
                 const Caps& caps = {})
      : group_(std::move(group)), arity_(arity), objects_(std::move(objects)), action_(std::move(action)) {
    require_within_cap(objects_.size(), caps.max_objects, "groupoid objects");
    for (const auto& obj : objects_) {
      if (obj.size() != arity_) throw ValidationError("groupoid object has wrong arity");
    }
    sorted_.resize(objects_.size());
    std::iota(sorted_.begin(), sorted_.end(), std::size_t{0});
    std::sort(sorted_.begin(), sorted_.end(), [&](std::size_t a, std::size_t b) { return objects_[a] < objects_[b]; });
    for (std::size_t i = 1; i < sorted_.size(); ++i) {
      if (objects_[sorted_[i - 1]] == objects_[sorted_[i]]) throw ValidationError("groupoid object set has duplicates");
    }
    build_generator_table();
    validate_action(caps);
    build_components();
  }

  static GroupoidPtr make(GroupPtr group, std::size_t arity, std::vector<Tuple> objects, Action action,
                          const Caps& caps = {}) {
    return std::make_shared<const FiniteGroupoid>(std::move(group), arity, std::move(objects), std::move(action), caps);
  }

  const FiniteGroup& group() const noexcept { return *group_; }
  const GroupPtr& group_ptr() const noexcept { return group_; }
  std::size_t arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return objects_.size(); }
  const Tuple& object(std::size_t x) const { return objects_.at(x); }
  const std::vector<Tuple>& objects() const noexcept { return objects_; }

  std::optional<std::size_t> find(const Tuple& payload) const {
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), payload,
                               [&](std::size_t idx, const Tuple& t) { return objects_[idx] < t; });
    if (it == sorted_.end() || objects_[*it] != payload) return std::nullopt;
    return *it;
  }

  std::size_t index_of(const Tuple& payload) const {
    if (auto idx = find(payload)) return *idx;
    throw ValidationError("unknown groupoid object");
  }

  void require_object(std::size_t x) const {
    if (x >= objects_.size()) throw ValidationError("object index " + std::to_string(x) + " out of range");
  }

  /// Payload-level action, for building derived groupoids.
  Tuple apply(element_t a, const Tuple& payload) const { return action_(a, payload); }

  std::size_t act(element_t a, std::size_t x) const {
    auto idx = find(action_(a, objects_[x]));
    if (!idx) throw ValidationError("group action leaves the object set");
    return *idx;
  }

  /// Action of group().generators()[k].
  std::size_t act_generator(std::size_t k, std::size_t x) const { return generator_table_[k * objects_.size() + x]; }

  const std::vector<Component>& components() const noexcept { return components_; }
  std::size_t component_of(std::size_t x) const { return component_of_[x]; }
  element_t transporter(std::size_t x) const { return transporter_[x]; }

  /// Objects of the component, in index order.
  std::vector<std::size_t> component_members(std::size_t c) const {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < objects_.size(); ++x)
      if (component_of_[x] == c) out.push_back(x);
    return out;
  }

  ElementSet stabilizer(std::size_t x) const {
    require_object(x);
    ElementSet result;
    for (element_t a = 0; a < group_->order(); ++a)
      if (action_(a, objects_[x]) == objects_[x]) result.push_back(a);
    return result;
  }

 private:
  void build_generator_table() {
    const auto& gens = group_->generators();
    generator_table_.resize(gens.size() * objects_.size());
    for (std::size_t k = 0; k < gens.size(); ++k)
      for (std::size_t x = 0; x < objects_.size(); ++x) generator_table_[k * objects_.size() + x] = act(gens[k], x);
  }

  void validate_action(const Caps& caps) {
    for (std::size_t x = 0; x < objects_.size(); ++x) {
      if (action_(FiniteGroup::identity(), objects_[x]) != objects_[x]) {
        throw ValidationError("identity does not act trivially");
      }
    }
    // Compatibility with multiplication: (g a).x = g.(a.x) for generators g.
    const auto& gens = group_->generators();
    std::mt19937_64 rng(caps.seed);
    std::uniform_int_distribution<element_t> pick(0, static_cast<element_t>(group_->order() - 1));
    for (std::size_t x = 0; x < objects_.size(); ++x) {
      auto check = [&](element_t a) {
        const std::size_t ax = act(a, x);
        for (std::size_t k = 0; k < gens.size(); ++k) {
          if (act(group_->mul(gens[k], a), x) != act_generator(k, ax)) {
            throw ValidationError("map is not a group action");
          }
        }
      };
      if (caps.full_validation) {
        for (element_t a = 0; a < group_->order(); ++a) check(a);
      } else {
        check(pick(rng));
      }
    }
  }

  void build_components() {
    constexpr std::size_t unseen = ~std::size_t{0};
    const auto& gens = group_->generators();
    component_of_.assign(objects_.size(), unseen);
    transporter_.assign(objects_.size(), FiniteGroup::identity());
    std::vector<std::size_t> queue;
    for (std::size_t x = 0; x < objects_.size(); ++x) {
      if (component_of_[x] != unseen) continue;
      const std::size_t c = components_.size();
      component_of_[x] = c;
      queue.assign(1, x);
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t z = queue[head];
        for (std::size_t k = 0; k < gens.size(); ++k) {
          const std::size_t y = act_generator(k, z);
          if (component_of_[y] == unseen) {
            component_of_[y] = c;
            transporter_[y] = group_->mul(gens[k], transporter_[z]);
            queue.push_back(y);
          }
        }
      }
      components_.push_back({x, queue.size()});
    }
  }

  GroupPtr group_;
  std::size_t arity_;
  std::vector<Tuple> objects_;
  Action action_;
  std::vector<std::size_t> sorted_;
  std::vector<std::size_t> generator_table_;
  std::vector<Component> components_;
  std::vector<std::size_t> component_of_;
  std::vector<element_t> transporter_;
};

// ---------------------------------------------------------------------------
// Constructions

/// G//G: elements of G under conjugation, as 1-tuples.
inline GroupoidPtr conjugation_groupoid(const GroupPtr& group, const Caps& caps = {}) {
  std::vector<Tuple> objects;
  for (element_t g = 0; g < group->order(); ++g) objects.push_back({g});
  const FiniteGroup* G = group.get();
  return FiniteGroupoid::make(group, 1, std::move(objects),
                              [G](element_t a, const Tuple& t) { return Tuple{G->conj(a, t[0])}; }, caps);
}

/// The one-object groupoid *//G.
inline GroupoidPtr point_groupoid(const GroupPtr& group) {
  return FiniteGroupoid::make(group, 0, {Tuple{}}, [](element_t, const Tuple& t) { return t; });
}

/// m objects, trivial acting group.
inline GroupoidPtr discrete_groupoid(std::size_t m, const Caps& caps = {}) {
  std::vector<Tuple> objects;
  for (std::size_t i = 0; i < m; ++i) objects.push_back({static_cast<element_t>(i)});
  return FiniteGroupoid::make(presets::trivial(), 1, std::move(objects), [](element_t, const Tuple& t) { return t; },
                              caps);
}

/// Γ×Λ acted on by the product of the acting groups; payloads are concatenated.
inline GroupoidPtr product_groupoid(const GroupoidPtr& first, const GroupoidPtr& second, const Caps& caps = {}) {
  auto group = presets::direct_product(first->group_ptr(), second->group_ptr(), caps);
  require_within_cap(first->size() * second->size(), caps.max_objects, "product groupoid objects");
  std::vector<Tuple> objects;
  objects.reserve(first->size() * second->size());
  for (const auto& x : first->objects())
    for (const auto& y : second->objects()) {
      Tuple t = x;
      t.insert(t.end(), y.begin(), y.end());
      objects.push_back(std::move(t));
    }
  const std::size_t split = first->arity();
  const std::size_t nb = second->group().order();
  return FiniteGroupoid::make(
      group, first->arity() + second->arity(), std::move(objects),
      [first, second, split, nb](element_t a, const Tuple& t) {
        Tuple x(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(split));
        Tuple y(t.begin() + static_cast<std::ptrdiff_t>(split), t.end());
        Tuple out = first->apply(static_cast<element_t>(a / nb), x);
        Tuple ya = second->apply(static_cast<element_t>(a % nb), y);
        out.insert(out.end(), ya.begin(), ya.end());
        return out;
      },
      caps);
}

// ---------------------------------------------------------------------------
// Invariants of a single groupoid

inline const std::vector<Component>& pi0(const FiniteGroupoid& groupoid) { return groupoid.components(); }

/// Aut(x): the stabilizer of x in the acting group.
inline ElementSet aut_group(const FiniteGroupoid& groupoid, std::size_t x) { return groupoid.stabilizer(x); }

/// Σ over components of 1/|Aut(rep)|, cross-checked against |objects|/|acting group|.
inline Rational cardinality(const FiniteGroupoid& groupoid) {
  Rational by_components = 0;
  for (const auto& c : groupoid.components()) {
    by_components += Rational(1, static_cast<long long>(groupoid.stabilizer(c.representative).size()));
  }
  const Rational by_count(static_cast<long long>(groupoid.size()), static_cast<long long>(groupoid.group().order()));
  if (by_components != by_count) {
    throw ModelInconsistency("groupoid cardinality routes disagree: " + to_string(by_components) + " vs " +
                             to_string(by_count));
  }
  return by_components;
}

/// Σ over components of f(rep)/|Aut(rep)|. f must be constant on components;
/// each component is spot-checked at one random member (all members under
/// caps.full_validation).
inline Rational groupoid_integral(const FiniteGroupoid& groupoid, const std::function<Rational(std::size_t)>& f,
                                  const Caps& caps = {}) {
  std::vector<std::vector<std::size_t>> members(groupoid.components().size());
  for (std::size_t x = 0; x < groupoid.size(); ++x) members[groupoid.component_of(x)].push_back(x);
  std::mt19937_64 rng(caps.seed);
  Rational total = 0;
  for (std::size_t c = 0; c < members.size(); ++c) {
    const std::size_t rep = groupoid.components()[c].representative;
    const Rational value = f(rep);
    auto check = [&](std::size_t y) {
      if (f(y) != value) {
        throw InvarianceViolation("integrand is not constant on the component of object " + std::to_string(rep));
      }
    };
    if (caps.full_validation) {
      for (std::size_t y : members[c]) check(y);
    } else if (members[c].size() > 1) {
      std::uniform_int_distribution<std::size_t> pick(1, members[c].size() - 1);
      check(members[c][pick(rng)]);
    }
    total += value / static_cast<long long>(groupoid.stabilizer(rep).size());
  }
  return total;
}

// ---------------------------------------------------------------------------
// Functors

/// Functor between action groupoids given by an object map that intertwines
/// the actions through a homomorphism of acting groups.
class GroupoidFunctor {
 public:
  GroupoidFunctor(GroupoidPtr source, GroupoidPtr target, GroupHom translation, std::vector<std::size_t> object_map)
      : source_(std::move(source)),
        target_(std::move(target)),
        translation_(std::move(translation)),
        object_map_(std::move(object_map)) {
    validate();
  }

  static GroupoidFunctor from_object_function(GroupoidPtr source, GroupoidPtr target, GroupHom translation,
                                              const std::function<Tuple(const Tuple&)>& on_objects) {
    std::vector<std::size_t> map(source->size());
    for (std::size_t x = 0; x < source->size(); ++x) {
      auto idx = target->find(on_objects(source->object(x)));
      if (!idx) throw ValidationError("functor object map leaves the target object set");
      map[x] = *idx;
    }
    return GroupoidFunctor(std::move(source), std::move(target), std::move(translation), std::move(map));
  }

  static GroupoidFunctor identity(const GroupoidPtr& groupoid) {
    std::vector<std::size_t> map(groupoid->size());
    std::iota(map.begin(), map.end(), std::size_t{0});
    return GroupoidFunctor(groupoid, groupoid, GroupHom::identity(groupoid->group_ptr()), std::move(map));
  }

  /// The unique functor to *//1.
  static GroupoidFunctor terminal(const GroupoidPtr& groupoid) {
    auto point = point_groupoid(presets::trivial());
    return GroupoidFunctor(groupoid, point, GroupHom::trivial(groupoid->group_ptr(), point->group_ptr()),
                           std::vector<std::size_t>(groupoid->size(), 0));
  }

  const GroupoidPtr& source() const noexcept { return source_; }
  const GroupoidPtr& target() const noexcept { return target_; }
  const GroupHom& translation() const noexcept { return translation_; }
  const std::vector<std::size_t>& object_map() const noexcept { return object_map_; }
  std::size_t operator()(std::size_t x) const { return object_map_.at(x); }

  /// next ∘ this
  GroupoidFunctor then(const GroupoidFunctor& next) const {
    if (next.source_.get() != target_.get()) throw ValidationError("functor composition: groupoids do not match");
    std::vector<std::size_t> map(object_map_.size());
    for (std::size_t x = 0; x < map.size(); ++x) map[x] = next.object_map_[object_map_[x]];
    return GroupoidFunctor(source_, next.target_, next.translation_.after(translation_), std::move(map));
  }

 private:
  void validate() const {
    if (!translation_.source()->same_as(source_->group()) || !translation_.target()->same_as(target_->group())) {
      throw ValidationError("functor translation hom does not match the acting groups");
    }
    if (object_map_.size() != source_->size()) throw ValidationError("functor object map has wrong size");
    for (std::size_t y : object_map_) target_->require_object(y);
    const auto& gens = source_->group().generators();
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const element_t image = translation_(gens[k]);
      for (std::size_t x = 0; x < source_->size(); ++x) {
        if (object_map_[source_->act_generator(k, x)] != target_->act(image, object_map_[x])) {
          throw ValidationError("object map does not intertwine the actions");
        }
      }
    }
  }

  GroupoidPtr source_;
  GroupoidPtr target_;
  GroupHom translation_;
  std::vector<std::size_t> object_map_;
};

namespace detail {

/// All u in the target group with u . from = to (empty when not isomorphic).
inline ElementSet transporters_between(const FiniteGroupoid& groupoid, std::size_t from, std::size_t to,
                                       const ElementSet& stabilizer_of_to) {
  if (groupoid.component_of(from) != groupoid.component_of(to)) return {};
  const FiniteGroup& g = groupoid.group();
  // t(to) . rep = to and t(from) . rep = from, so u0 = t(to) t(from)^-1 maps from -> to.
  const element_t u0 = g.mul(groupoid.transporter(to), g.inv(groupoid.transporter(from)));
  ElementSet out;
  out.reserve(stabilizer_of_to.size());
  for (element_t s : stabilizer_of_to) out.push_back(g.mul(s, u0));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

struct FiberResult {
  GroupoidPtr groupoid;
  GroupoidFunctor projection;
};

/// Homotopy fiber F^-1[d]: objects (x, u) with u . F(x) = d, payload x ++ [u];
/// the source group acts by a.(x, u) = (a.x, u τ(a)^-1).
inline FiberResult homotopy_fiber(const GroupoidFunctor& functor, std::size_t d, const Caps& caps = {}) {
  const auto& source = functor.source();
  const auto& target = functor.target();
  target->require_object(d);
  const ElementSet stab_d = target->stabilizer(d);
  std::vector<Tuple> objects;
  std::vector<std::size_t> projection;
  for (std::size_t x = 0; x < source->size(); ++x) {
    for (element_t u : detail::transporters_between(*target, functor(x), d, stab_d)) {
      Tuple t = source->object(x);
      t.push_back(u);
      objects.push_back(std::move(t));
      projection.push_back(x);
      require_within_cap(objects.size(), caps.max_objects, "homotopy fiber objects");
    }
  }
  const FiniteGroup* K = &target->group();
  const GroupHom tau = functor.translation();
  auto fiber = FiniteGroupoid::make(
      source->group_ptr(), source->arity() + 1, std::move(objects),
      [source, K, tau](element_t a, const Tuple& t) {
        Tuple x(t.begin(), t.end() - 1);
        Tuple out = source->apply(a, x);
        out.push_back(K->mul(t.back(), K->inv(tau(a))));
        return out;
      },
      caps);
  GroupoidFunctor proj(fiber, source, GroupHom::identity(source->group_ptr()), std::move(projection));
  return {std::move(fiber), std::move(proj)};
}

struct PullbackResult {
  GroupoidPtr groupoid;
  GroupoidFunctor first;
  GroupoidFunctor second;
};

/// Homotopy pullback of F : Γ -> Ω <- Λ : F'. Objects (x, y, u) with
/// u . F(x) = F'(y), payload x ++ y ++ [u]; (a, b) acts by
/// (a.x, b.y, τ'(b) u τ(a)^-1).
inline PullbackResult homotopy_pullback(const GroupoidFunctor& left, const GroupoidFunctor& right,
                                        const Caps& caps = {}) {
  if (left.target().get() != right.target().get()) throw ValidationError("homotopy pullback: mismatched targets");
  const auto& omega = left.target();
  const auto& gamma = left.source();
  const auto& lambda = right.source();
  auto group = presets::direct_product(gamma->group_ptr(), lambda->group_ptr(), caps);

  std::vector<std::optional<ElementSet>> stab_cache(omega->size());
  std::vector<Tuple> objects;
  std::vector<std::size_t> first_map, second_map;
  for (std::size_t x = 0; x < gamma->size(); ++x) {
    for (std::size_t y = 0; y < lambda->size(); ++y) {
      const std::size_t fy = right(y);
      if (omega->component_of(left(x)) != omega->component_of(fy)) continue;
      if (!stab_cache[fy]) stab_cache[fy] = omega->stabilizer(fy);
      for (element_t u : detail::transporters_between(*omega, left(x), fy, *stab_cache[fy])) {
        Tuple t = gamma->object(x);
        const Tuple& yt = lambda->object(y);
        t.insert(t.end(), yt.begin(), yt.end());
        t.push_back(u);
        objects.push_back(std::move(t));
        first_map.push_back(x);
        second_map.push_back(y);
        require_within_cap(objects.size(), caps.max_objects, "homotopy pullback objects");
      }
    }
  }

  const FiniteGroup* K = &omega->group();
  const GroupHom tau = left.translation();
  const GroupHom tau_prime = right.translation();
  const std::size_t split = gamma->arity();
  const std::size_t nb = lambda->group().order();
  auto pullback = FiniteGroupoid::make(
      group, gamma->arity() + lambda->arity() + 1, std::move(objects),
      [gamma, lambda, K, tau, tau_prime, split, nb](element_t ab, const Tuple& t) {
        const auto a = static_cast<element_t>(ab / nb), b = static_cast<element_t>(ab % nb);
        Tuple x(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(split));
        Tuple y(t.begin() + static_cast<std::ptrdiff_t>(split), t.end() - 1);
        Tuple out = gamma->apply(a, x);
        Tuple yb = lambda->apply(b, y);
        out.insert(out.end(), yb.begin(), yb.end());
        out.push_back(K->mul(K->mul(tau_prime(b), t.back()), K->inv(tau(a))));
        return out;
      },
      caps);
  GroupoidFunctor p1(pullback, gamma, presets::projection_first(group, gamma->group_ptr(), lambda->group_ptr()),
                     std::move(first_map));
  GroupoidFunctor p2(pullback, lambda, presets::projection_second(group, gamma->group_ptr(), lambda->group_ptr()),
                     std::move(second_map));
  return {std::move(pullback), std::move(p1), std::move(p2)};
}

/// Components of the homotopy fiber of *//G -> *//H over the point: |H / im λ|.
inline std::size_t pushforward_unit_components(const GroupHom& hom) {
  auto src = point_groupoid(hom.source());
  auto tgt = point_groupoid(hom.target());
  GroupoidFunctor induced(src, tgt, hom, {0});
  return homotopy_fiber(induced, 0).groupoid->components().size();
}

}  // namespace orbifolder
