#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "caps.hpp"
#include "error.hpp"
#include "parallel.hpp"

namespace orbifolder {

/// Dense element index; the identity is always 0.
using element_t = std::uint32_t;

/// Sorted, duplicate-free list of element indices.
using ElementSet = std::vector<element_t>;

/// Fixed-length list of element indices (holonomies, object payloads).
using Tuple = std::vector<element_t>;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A finite group given by its full multiplication table.
///
/// Construction validates the table (Latin square, identity, inverses and,
/// up to order 512, exhaustive associativity) and relabels so that the
/// identity is element 0. A deterministic generating set and a shortest word
/// for every element over that set are computed once; representations and
/// orbit computations only ever move along generators.
class FiniteGroup {
 public:
  /// Rows of `table` are left factors: table[a][b] = a*b.
  static GroupPtr from_table(const std::vector<std::vector<element_t>>& table, std::string name,
                             const Caps& caps = {}) {
    const std::size_t n = table.size();
    if (n == 0) throw ValidationError("group table is empty");
    require_within_cap(n, caps.max_group_order, "group order");
    std::vector<element_t> flat(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      if (table[a].size() != n) throw ValidationError("group table row " + std::to_string(a) + " has wrong length");
      for (std::size_t b = 0; b < n; ++b) {
        if (table[a][b] >= n) throw ValidationError("group table entry out of range");
        flat[a * n + b] = table[a][b];
      }
    }
    return from_flat(n, std::move(flat), std::move(name), {}, caps);
  }

  /// Group generated by permutations in one-line notation (images of 0..degree-1).
  /// Elements are listed in lexicographic order of their one-line notation, and
  /// the product is composition (a*b)(i) = a(b(i)).
  static GroupPtr from_permutations(unsigned degree, const std::vector<std::vector<unsigned>>& generators,
                                    std::string name, const Caps& caps = {}) {
    if (degree > caps.max_perm_degree) {
      throw CapExceeded("permutation degree " + std::to_string(degree) + " exceeds cap " +
                        std::to_string(caps.max_perm_degree));
    }
    using Perm = std::vector<std::uint8_t>;
    std::vector<Perm> gens;
    for (const auto& g : generators) {
      if (g.size() != degree) throw ValidationError("permutation generator has wrong degree");
      std::vector<bool> seen(degree, false);
      Perm p(degree);
      for (unsigned i = 0; i < degree; ++i) {
        if (g[i] >= degree || seen[g[i]]) throw ValidationError("generator is not a permutation");
        seen[g[i]] = true;
        p[i] = static_cast<std::uint8_t>(g[i]);
      }
      gens.push_back(std::move(p));
    }
    Perm id(degree);
    std::iota(id.begin(), id.end(), std::uint8_t{0});

    // Breadth-first closure under right multiplication by generators.
    std::vector<Perm> elements{id};
    std::set<Perm> seen{id};
    for (std::size_t head = 0; head < elements.size(); ++head) {
      for (const auto& g : gens) {
        Perm next(degree);
        for (unsigned i = 0; i < degree; ++i) next[i] = elements[head][g[i]];
        if (seen.insert(next).second) {
          elements.push_back(std::move(next));
          require_within_cap(elements.size(), caps.max_group_order, "permutation group order");
        }
      }
    }

    const std::vector<Perm> sorted(seen.begin(), seen.end());
    const std::size_t n = sorted.size();
    // Packing entries into nibbles (first entry highest) preserves lexicographic order.
    auto pack = [](const Perm& p) {
      std::uint64_t key = 0;
      for (auto v : p) key = (key << 4) | v;
      return key;
    };
    std::vector<std::uint64_t> keys(n);
    for (std::size_t a = 0; a < n; ++a) keys[a] = pack(sorted[a]);
    auto index_of = [&](const Perm& p) {
      return static_cast<element_t>(std::lower_bound(keys.begin(), keys.end(), pack(p)) - keys.begin());
    };
    std::vector<element_t> flat(n * n);
    Perm prod(degree);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (unsigned i = 0; i < degree; ++i) prod[i] = sorted[a][sorted[b][i]];
        flat[a * n + b] = index_of(prod);
      }
    }
    std::vector<std::vector<unsigned>> perms(n);
    for (std::size_t a = 0; a < n; ++a) perms[a].assign(sorted[a].begin(), sorted[a].end());
    // Tables built from permutations are associative by construction.
    return from_flat(n, std::move(flat), std::move(name), std::move(perms), caps, /*check_assoc=*/false);
  }

  std::size_t order() const noexcept { return order_; }
  const std::string& name() const noexcept { return name_; }
  static constexpr element_t identity() noexcept { return 0; }

  element_t mul(element_t a, element_t b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  element_t inv(element_t a) const { return inverse_[a]; }
  /// a x a^-1
  element_t conj(element_t a, element_t x) const { return mul(mul(a, x), inverse_[a]); }
  bool commute(element_t a, element_t b) const { return mul(a, b) == mul(b, a); }

  bool contains(element_t a) const noexcept { return a < order_; }
  void require_element(element_t a) const {
    if (a >= order_) {
      throw ValidationError("element index " + std::to_string(a) + " out of range for group " + name_ +
                            " of order " + std::to_string(order_));
    }
  }

  /// Deterministic generating set: greedily the smallest element not yet generated.
  const std::vector<element_t>& generators() const noexcept { return generators_; }

  /// Positions into generators() such that a = g[w_k] * ... * g[w_1] for
  /// the returned [w_1, ..., w_k] (first entry is applied first).
  std::vector<std::size_t> word(element_t a) const {
    std::vector<std::size_t> w;
    for (element_t x = a; x != identity(); x = word_parent_[x]) w.push_back(word_step_[x]);
    std::reverse(w.begin(), w.end());
    return w;
  }

  bool is_abelian() const {
    for (element_t g : generators_)
      for (element_t h : generators_)
        if (!commute(g, h)) return false;
    return true;
  }

  /// One-line images when the group was built from permutations.
  const std::optional<std::vector<std::vector<unsigned>>>& permutations() const noexcept { return perms_; }

  /// Same multiplication table (identical object or equal tables).
  bool same_as(const FiniteGroup& other) const noexcept {
    return this == &other || (order_ == other.order_ && table_ == other.table_);
  }

  /// Exhaustive associativity check; O(order^3).
  bool is_associative() const {
    for (element_t a = 0; a < order_; ++a)
      for (element_t b = 0; b < order_; ++b) {
        const element_t ab = mul(a, b);
        for (element_t c = 0; c < order_; ++c)
          if (mul(ab, c) != mul(a, mul(b, c))) return false;
      }
    return true;
  }

 private:
  struct Token {};

 public:
  FiniteGroup(Token, std::size_t n, std::vector<element_t> table, std::string name,
              std::optional<std::vector<std::vector<unsigned>>> perms)
      : order_(n), table_(std::move(table)), name_(std::move(name)), perms_(std::move(perms)) {}

 private:
  static GroupPtr from_flat(std::size_t n, std::vector<element_t> flat, std::string name,
                            std::optional<std::vector<std::vector<unsigned>>> perms, const Caps& caps,
                            bool check_assoc = true) {
    validate_latin(n, flat);

    // Locate the identity and relabel it to index 0 by swapping labels.
    std::optional<element_t> e;
    for (element_t a = 0; a < n && !e; ++a) {
      bool left = true;
      for (element_t b = 0; b < n && left; ++b) left = flat[a * n + b] == b && flat[b * n + a] == b;
      if (left) e = a;
    }
    if (!e) throw ValidationError("group table has no two-sided identity");
    if (*e != 0) {
      auto relabel = [&](element_t x) { return x == *e ? 0 : (x == 0 ? *e : x); };
      std::vector<element_t> swapped(n * n);
      for (element_t a = 0; a < n; ++a)
        for (element_t b = 0; b < n; ++b) swapped[relabel(a) * n + relabel(b)] = relabel(flat[a * n + b]);
      flat = std::move(swapped);
      if (perms) std::swap((*perms)[0], (*perms)[*e]);
    }

    if (check_assoc) {
      if (n <= 512) {
        for (element_t a = 0; a < n; ++a)
          for (element_t b = 0; b < n; ++b)
            for (element_t c = 0; c < n; ++c)
              if (flat[flat[a * n + b] * n + c] != flat[a * n + flat[b * n + c]])
                throw ValidationError("group table is not associative");
      } else {
        std::mt19937_64 rng(caps.seed);
        std::uniform_int_distribution<element_t> pick(0, static_cast<element_t>(n - 1));
        for (int trial = 0; trial < 200000; ++trial) {
          const element_t a = pick(rng), b = pick(rng), c = pick(rng);
          if (flat[flat[a * n + b] * n + c] != flat[a * n + flat[b * n + c]])
            throw ValidationError("group table is not associative");
        }
      }
    }

    auto group = std::make_shared<FiniteGroup>(Token{}, n, std::move(flat), std::move(name), std::move(perms));
    group->finish();
    return group;
  }

  static void validate_latin(std::size_t n, const std::vector<element_t>& flat) {
    std::vector<std::uint32_t> stamp(n, 0);
    std::uint32_t round = 0;
    for (std::size_t a = 0; a < n; ++a) {
      ++round;
      for (std::size_t b = 0; b < n; ++b) {
        if (stamp[flat[a * n + b]] == round) throw ValidationError("group table row is not a permutation");
        stamp[flat[a * n + b]] = round;
      }
    }
    for (std::size_t b = 0; b < n; ++b) {
      ++round;
      for (std::size_t a = 0; a < n; ++a) {
        if (stamp[flat[a * n + b]] == round) throw ValidationError("group table column is not a permutation");
        stamp[flat[a * n + b]] = round;
      }
    }
  }

  void finish() {
    inverse_.assign(order_, 0);
    for (element_t a = 0; a < order_; ++a) {
      bool found = false;
      for (element_t b = 0; b < order_ && !found; ++b) {
        if (mul(a, b) == 0) {
          if (mul(b, a) != 0) throw ValidationError("group table has a one-sided inverse");
          inverse_[a] = b;
          found = true;
        }
      }
      if (!found) throw ValidationError("group table element has no inverse");
    }

    // Greedy generating set with breadth-first words: x -> g*x.
    word_parent_.assign(order_, 0);
    word_step_.assign(order_, 0);
    std::vector<bool> reached(order_, false);
    reached[identity()] = true;
    std::size_t reached_count = 1;
    for (element_t candidate = 0; candidate < order_ && reached_count < order_; ++candidate) {
      if (reached[candidate]) continue;
      generators_.push_back(candidate);
      // Recompute words from scratch so they stay shortest over the enlarged set.
      std::fill(reached.begin(), reached.end(), false);
      reached[identity()] = true;
      reached_count = 1;
      std::vector<element_t> queue{identity()};
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const element_t x = queue[head];
        for (std::size_t k = 0; k < generators_.size(); ++k) {
          const element_t y = mul(generators_[k], x);
          if (!reached[y]) {
            reached[y] = true;
            ++reached_count;
            word_parent_[y] = x;
            word_step_[y] = k;
            queue.push_back(y);
          }
        }
      }
    }
  }

  std::size_t order_;
  std::vector<element_t> table_;
  std::vector<element_t> inverse_;
  std::string name_;
  std::optional<std::vector<std::vector<unsigned>>> perms_;
  std::vector<element_t> generators_;
  std::vector<element_t> word_parent_;
  std::vector<std::size_t> word_step_;
};

// ---------------------------------------------------------------------------
// Elementary subgroup machinery

inline ElementSet centralizer(const FiniteGroup& group, element_t g) {
  group.require_element(g);
  ElementSet result;
  for (element_t x = 0; x < group.order(); ++x)
    if (group.commute(x, g)) result.push_back(x);
  return result;
}

/// Breadth-first closure of `gens` under multiplication; always contains the identity.
inline ElementSet generated_subgroup(const FiniteGroup& group, std::span<const element_t> gens) {
  for (element_t g : gens) group.require_element(g);
  std::vector<bool> seen(group.order(), false);
  std::vector<element_t> queue{FiniteGroup::identity()};
  seen[FiniteGroup::identity()] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (element_t g : gens) {
      const element_t y = group.mul(queue[head], g);
      if (!seen[y]) {
        seen[y] = true;
        queue.push_back(y);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

inline ElementSet generated_subgroup(const FiniteGroup& group, std::initializer_list<element_t> gens) {
  return generated_subgroup(group, std::span<const element_t>(gens.begin(), gens.size()));
}

inline bool is_subgroup(const FiniteGroup& group, std::span<const element_t> set) {
  if (set.empty()) return false;
  std::vector<bool> member(group.order(), false);
  for (element_t x : set) {
    if (!group.contains(x) || member[x]) return false;
    member[x] = true;
  }
  if (!member[FiniteGroup::identity()]) return false;
  for (element_t a : set) {
    if (!member[group.inv(a)]) return false;
    for (element_t b : set)
      if (!member[group.mul(a, b)]) return false;
  }
  return true;
}

/// [G : subgroup]; validates that the set really is a subgroup.
inline std::size_t coset_index(const FiniteGroup& group, std::span<const element_t> subgroup) {
  if (!is_subgroup(group, subgroup)) throw ValidationError("coset_index: input set is not a subgroup");
  return group.order() / subgroup.size();
}

struct ConjugacyClass {
  element_t representative;  // minimal element index of the class
  ElementSet members;

  std::size_t size() const noexcept { return members.size(); }
};

/// Classes ordered by representative.
inline std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& group) {
  std::vector<bool> seen(group.order(), false);
  std::vector<ConjugacyClass> classes;
  for (element_t x = 0; x < group.order(); ++x) {
    if (seen[x]) continue;
    ConjugacyClass cls{x, {x}};
    seen[x] = true;
    for (std::size_t head = 0; head < cls.members.size(); ++head) {
      for (element_t g : group.generators()) {
        const element_t y = group.conj(g, cls.members[head]);
        if (!seen[y]) {
          seen[y] = true;
          cls.members.push_back(y);
        }
      }
    }
    std::sort(cls.members.begin(), cls.members.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

// ---------------------------------------------------------------------------
// Commuting tuples

/// Com(G^n): all pairwise commuting n-tuples, lexicographically ordered and stored flat.
class CommutingTupleSet {
 public:
  CommutingTupleSet(GroupPtr group, std::size_t arity, std::vector<element_t> flat)
      : group_(std::move(group)), arity_(arity), flat_(std::move(flat)) {}

  const GroupPtr& group() const noexcept { return group_; }
  std::size_t arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return arity_ == 0 ? 0 : flat_.size() / arity_; }
  std::span<const element_t> operator[](std::size_t i) const {
    return std::span<const element_t>(flat_).subspan(i * arity_, arity_);
  }
  Tuple tuple(std::size_t i) const {
    auto s = (*this)[i];
    return Tuple(s.begin(), s.end());
  }

 private:
  GroupPtr group_;
  std::size_t arity_;
  std::vector<element_t> flat_;
};

namespace detail {

inline void extend_commuting(const FiniteGroup& group, std::size_t arity, Tuple& prefix,
                             const std::vector<element_t>& candidates, std::vector<element_t>& out,
                             std::size_t cap) {
  if (prefix.size() == arity) {
    out.insert(out.end(), prefix.begin(), prefix.end());
    require_within_cap(out.size() / arity, cap, "commuting tuples");
    return;
  }
  for (element_t c : candidates) {
    std::vector<element_t> next;
    next.reserve(candidates.size());
    if (prefix.size() + 1 < arity) {
      for (element_t d : candidates)
        if (group.commute(c, d)) next.push_back(d);
    }
    prefix.push_back(c);
    extend_commuting(group, arity, prefix, next, out, cap);
    prefix.pop_back();
  }
}

}  // namespace detail

/// Enumerates Com(G^n) along centralizer chains g1 in G, g2 in C(g1),
/// g3 in C(g1) ∩ C(g2), ...; parallel over g1 when caps.threads > 1.
inline CommutingTupleSet commuting_tuples(const GroupPtr& group, std::size_t arity, const Caps& caps = {}) {
  if (arity == 0) throw ValidationError("commuting_tuples: arity must be at least 1");
  const FiniteGroup& g = *group;
  auto chunks = parallel_map(g.order(), caps.threads, [&](std::size_t first) {
    std::vector<element_t> out;
    Tuple prefix{static_cast<element_t>(first)};
    std::vector<element_t> next;
    if (arity > 1) next = centralizer(g, static_cast<element_t>(first));
    detail::extend_commuting(g, arity, prefix, next, out, caps.max_objects);
    return out;
  });
  std::size_t total = 0;
  for (const auto& c : chunks) total += c.size();
  require_within_cap(total / arity, caps.max_objects, "commuting tuples");
  std::vector<element_t> flat;
  flat.reserve(total);
  for (auto& c : chunks) flat.insert(flat.end(), c.begin(), c.end());
  return CommutingTupleSet(group, arity, std::move(flat));
}

// ---------------------------------------------------------------------------
// Homomorphisms

/// Element-wise map between finite groups, validated as a homomorphism.
class GroupHom {
 public:
  GroupHom(GroupPtr source, GroupPtr target, std::vector<element_t> map)
      : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
    validate();
  }

  /// Extends images of a generating set; fails when the assignment is not a homomorphism.
  static GroupHom from_generator_images(GroupPtr source, GroupPtr target,
                                        const std::vector<std::pair<element_t, element_t>>& images) {
    std::vector<element_t> keys;
    for (auto [x, y] : images) {
      source->require_element(x);
      target->require_element(y);
      keys.push_back(x);
    }
    constexpr element_t unset = ~element_t{0};
    std::vector<element_t> map(source->order(), unset);
    map[FiniteGroup::identity()] = FiniteGroup::identity();
    std::vector<element_t> queue{FiniteGroup::identity()};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const element_t x = queue[head];
      for (auto [g, image] : images) {
        const element_t y = source->mul(x, g);
        const element_t fy = target->mul(map[x], image);
        if (map[y] == unset) {
          map[y] = fy;
          queue.push_back(y);
        } else if (map[y] != fy) {
          throw ValidationError("generator images do not extend to a homomorphism");
        }
      }
    }
    if (queue.size() != source->order()) throw ValidationError("hom images must be given on a generating set");
    try {
      return GroupHom(std::move(source), std::move(target), std::move(map));
    } catch (const ValidationError&) {
      throw ValidationError("generator images do not extend to a homomorphism");
    }
  }

  static GroupHom identity(const GroupPtr& group) {
    std::vector<element_t> map(group->order());
    std::iota(map.begin(), map.end(), element_t{0});
    return GroupHom(group, group, std::move(map));
  }

  /// The hom sending everything to the identity.
  static GroupHom trivial(const GroupPtr& source, const GroupPtr& target) {
    return GroupHom(source, target, std::vector<element_t>(source->order(), FiniteGroup::identity()));
  }

  const GroupPtr& source() const noexcept { return source_; }
  const GroupPtr& target() const noexcept { return target_; }
  element_t operator()(element_t a) const { return map_[a]; }
  const std::vector<element_t>& table() const noexcept { return map_; }

  ElementSet kernel() const {
    ElementSet k;
    for (element_t a = 0; a < source_->order(); ++a)
      if (map_[a] == FiniteGroup::identity()) k.push_back(a);
    return k;
  }

  ElementSet image() const {
    ElementSet im(map_.begin(), map_.end());
    std::sort(im.begin(), im.end());
    im.erase(std::unique(im.begin(), im.end()), im.end());
    return im;
  }

  bool is_surjective() const { return image().size() == target_->order(); }

  /// (this ∘ first): apply `first`, then this.
  GroupHom after(const GroupHom& first) const {
    if (!first.target_->same_as(*source_)) {
      throw ValidationError("hom composition: target of first does not match source of second");
    }
    std::vector<element_t> map(first.source_->order());
    for (element_t a = 0; a < map.size(); ++a) map[a] = map_[first.map_[a]];
    return GroupHom(first.source_, target_, std::move(map));
  }

 private:
  void validate() const {
    if (map_.size() != source_->order()) throw ValidationError("hom table has wrong length");
    for (element_t y : map_) target_->require_element(y);
    if (map_[FiniteGroup::identity()] != FiniteGroup::identity()) throw ValidationError("hom does not fix the identity");
    // Multiplicativity against a generating set implies it for all pairs.
    for (element_t x = 0; x < source_->order(); ++x)
      for (element_t g : source_->generators())
        if (map_[source_->mul(x, g)] != target_->mul(map_[x], map_[g]))
          throw ValidationError("map is not a homomorphism");
  }

  GroupPtr source_;
  GroupPtr target_;
  std::vector<element_t> map_;
};

}  // namespace orbifolder
