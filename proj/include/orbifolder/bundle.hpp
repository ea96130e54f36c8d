#pragma once

#include <functional>
#include <string>
#include <vector>

#include "group.hpp"
#include "groupoid.hpp"

namespace orbifolder {

/// Circle, n-torus or closed oriented surface of genus g.
struct ManifoldTag {
  enum class Kind { circle, torus, surface };

  Kind kind = Kind::circle;
  unsigned parameter = 1;  // torus dimension or genus

  static ManifoldTag circle() { return {Kind::circle, 1}; }
  static ManifoldTag torus(unsigned n) { return {Kind::torus, n}; }
  static ManifoldTag surface(unsigned genus) { return {Kind::surface, genus}; }

  /// "circle", "torus:3", "surface:2"
  static ManifoldTag parse(const std::string& text) {
    if (text == "circle") return circle();
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
      const std::string head = text.substr(0, colon), tail = text.substr(colon + 1);
      if (!tail.empty() && tail.size() <= 3 && tail.find_first_not_of("0123456789") == std::string::npos) {
        const auto value = static_cast<unsigned>(std::stoul(tail));
        if (head == "torus") {
          if (value == 0) throw ValidationError("torus dimension must be at least 1");
          return torus(value);
        }
        if (head == "surface") return surface(value);
      }
    }
    throw ValidationError("malformed manifold spec '" + text + "'");
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::circle: return "circle";
      case Kind::torus: return "torus:" + std::to_string(parameter);
      case Kind::surface: return "surface:" + std::to_string(parameter);
    }
    return "?";
  }

  /// Length of a holonomy tuple.
  std::size_t holonomy_arity() const {
    switch (kind) {
      case Kind::circle: return 1;
      case Kind::torus: return parameter;
      case Kind::surface: return 2 * std::size_t{parameter};
    }
    return 0;
  }

  bool operator==(const ManifoldTag&) const = default;
};

/// Bun_G(M) in the holonomy model: tuples of group elements modulo
/// simultaneous conjugation.
struct BundleGroupoid {
  ManifoldTag manifold;
  GroupPtr group;
  GroupoidPtr groupoid;
};

namespace detail {

inline FiniteGroupoid::Action simultaneous_conjugation(const GroupPtr& group) {
  const FiniteGroup* G = group.get();
  return [G, keep = group](element_t a, const Tuple& t) {
    Tuple out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) out[i] = G->conj(a, t[i]);
    return out;
  };
}

inline element_t commutator(const FiniteGroup& g, element_t a, element_t b) {
  return g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
}

/// All 2g-tuples (a1,b1,...,ag,bg) with Π[aj,bj] = 1, lexicographically.
/// The first g-1 handles are free; the last pair is read off a bucket of
/// pairs sorted by commutator value.
inline std::vector<Tuple> surface_holonomies(const FiniteGroup& group, unsigned genus, const Caps& caps) {
  if (genus == 0) return {Tuple{}};
  const std::size_t n = group.order();
  std::vector<std::vector<std::pair<element_t, element_t>>> by_commutator(n);
  for (element_t a = 0; a < n; ++a)
    for (element_t b = 0; b < n; ++b) by_commutator[commutator(group, a, b)].push_back({a, b});

  std::vector<Tuple> out;
  Tuple prefix;
  std::function<void(unsigned, element_t)> recurse = [&](unsigned handle, element_t product) {
    if (handle + 1 == genus) {
      for (auto [a, b] : by_commutator[group.inv(product)]) {
        Tuple t = prefix;
        t.push_back(a);
        t.push_back(b);
        out.push_back(std::move(t));
        require_within_cap(out.size(), caps.max_objects, "surface bundle objects");
      }
      return;
    }
    for (element_t a = 0; a < n; ++a)
      for (element_t b = 0; b < n; ++b) {
        prefix.push_back(a);
        prefix.push_back(b);
        recurse(handle + 1, group.mul(product, commutator(group, a, b)));
        prefix.resize(prefix.size() - 2);
      }
  };
  recurse(0, FiniteGroup::identity());
  return out;
}

inline void check_manifold_caps(const FiniteGroup& group, const ManifoldTag& m, const Caps& caps) {
  if (m.kind == ManifoldTag::Kind::torus && m.parameter > caps.max_torus_dim) {
    throw CapExceeded("torus dimension " + std::to_string(m.parameter) + " exceeds cap " +
                      std::to_string(caps.max_torus_dim));
  }
  if (m.kind == ManifoldTag::Kind::surface) {
    if (m.parameter > caps.max_genus) {
      throw CapExceeded("genus " + std::to_string(m.parameter) + " exceeds cap " + std::to_string(caps.max_genus));
    }
    if (m.parameter > 0 && group.order() > caps.max_surface_group_order) {
      throw CapExceeded("surface enumeration needs |G| <= " + std::to_string(caps.max_surface_group_order));
    }
  }
}

}  // namespace detail

inline BundleGroupoid bundle_groupoid(const GroupPtr& group, const ManifoldTag& manifold, const Caps& caps = {}) {
  detail::check_manifold_caps(*group, manifold, caps);
  std::vector<Tuple> objects;
  switch (manifold.kind) {
    case ManifoldTag::Kind::circle:
      for (element_t g = 0; g < group->order(); ++g) objects.push_back({g});
      break;
    case ManifoldTag::Kind::torus: {
      auto tuples = commuting_tuples(group, manifold.parameter, caps);
      objects.reserve(tuples.size());
      for (std::size_t i = 0; i < tuples.size(); ++i) objects.push_back(tuples.tuple(i));
      break;
    }
    case ManifoldTag::Kind::surface:
      objects = detail::surface_holonomies(*group, manifold.parameter, caps);
      break;
  }
  auto groupoid = FiniteGroupoid::make(group, manifold.holonomy_arity(), std::move(objects),
                                       detail::simultaneous_conjugation(group), caps);
  return {manifold, group, std::move(groupoid)};
}

/// λ_* : Bun_source(M) -> Bun_target(M), coordinate-wise through λ.
inline GroupoidFunctor induced_functor(const GroupHom& hom, const BundleGroupoid& source, const BundleGroupoid& target) {
  if (!(source.manifold == target.manifold)) throw ValidationError("induced functor: manifolds differ");
  return GroupoidFunctor::from_object_function(source.groupoid, target.groupoid, hom, [&hom](const Tuple& t) {
    Tuple out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) out[i] = hom(t[i]);
    return out;
  });
}

inline GroupoidFunctor induced_functor(const GroupHom& hom, const ManifoldTag& manifold, const Caps& caps = {}) {
  return induced_functor(hom, bundle_groupoid(hom.source(), manifold, caps), bundle_groupoid(hom.target(), manifold, caps));
}

/// Source <- apex -> target.
struct Span {
  GroupoidPtr apex;
  GroupoidFunctor source_leg;
  GroupoidFunctor target_leg;
};

/// G//G × G//G <- (G×G)//G -> G//G: restriction to the two incoming circles,
/// and multiplication for the outgoing one.
inline Span pants_span(const GroupPtr& group, const Caps& caps = {}) {
  std::vector<Tuple> pairs;
  for (element_t a = 0; a < group->order(); ++a)
    for (element_t b = 0; b < group->order(); ++b) pairs.push_back({a, b});
  auto apex = FiniteGroupoid::make(group, 2, std::move(pairs), detail::simultaneous_conjugation(group), caps);

  auto circle = conjugation_groupoid(group, caps);
  auto two_circles = product_groupoid(circle, circle, caps);
  auto diag = presets::diagonal(group, two_circles->group_ptr());
  auto restrict_in = GroupoidFunctor::from_object_function(apex, two_circles, diag, [](const Tuple& t) { return t; });
  const FiniteGroup* G = group.get();
  auto multiply = GroupoidFunctor::from_object_function(apex, circle, GroupHom::identity(group),
                                                        [G](const Tuple& t) { return Tuple{G->mul(t[0], t[1])}; });
  return {apex, std::move(restrict_in), std::move(multiply)};
}

/// A bordism built as a disjoint union of cylinders over the circle and pairs of pants.
struct BordismDescription {
  enum class Piece { cylinder, pants };
  std::vector<Piece> pieces;

  static BordismDescription parse(const std::string& text) {
    BordismDescription d;
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto plus = text.find('+', start);
      const std::string part = text.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
      if (part == "cylinder") d.pieces.push_back(Piece::cylinder);
      else if (part == "pants") d.pieces.push_back(Piece::pants);
      else throw ValidationError("unsupported bordism shape '" + part + "'");
      if (plus == std::string::npos) break;
      start = plus + 1;
    }
    return d;
  }
};

inline Span restriction_span(const GroupPtr& group, const BordismDescription& bordism, const Caps& caps = {}) {
  if (bordism.pieces.empty()) throw ValidationError("empty bordism description");
  auto piece_span = [&](BordismDescription::Piece p) {
    if (p == BordismDescription::Piece::pants) return pants_span(group, caps);
    auto circle = conjugation_groupoid(group, caps);
    return Span{circle, GroupoidFunctor::identity(circle), GroupoidFunctor::identity(circle)};
  };
  Span span = piece_span(bordism.pieces.front());
  for (std::size_t i = 1; i < bordism.pieces.size(); ++i) {
    Span next = piece_span(bordism.pieces[i]);
    auto leg_product = [&](const GroupoidFunctor& f, const GroupoidFunctor& g, const GroupoidPtr& apex) {
      auto target = product_groupoid(f.target(), g.target(), caps);
      auto hom = presets::product_hom(f.translation(), g.translation(), apex->group_ptr(), target->group_ptr());
      const std::size_t split = f.source()->arity();
      return GroupoidFunctor::from_object_function(apex, target, hom, [&](const Tuple& t) {
        Tuple x(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(split));
        Tuple y(t.begin() + static_cast<std::ptrdiff_t>(split), t.end());
        Tuple out = f.target()->object(f(f.source()->index_of(x)));
        const Tuple& gy = g.target()->object(g(g.source()->index_of(y)));
        out.insert(out.end(), gy.begin(), gy.end());
        return out;
      });
    };
    auto apex = product_groupoid(span.apex, next.apex, caps);
    auto src = leg_product(span.source_leg, next.source_leg, apex);
    auto tgt = leg_product(span.target_leg, next.target_leg, apex);
    span = Span{apex, std::move(src), std::move(tgt)};
  }
  return span;
}

}  // namespace orbifolder
