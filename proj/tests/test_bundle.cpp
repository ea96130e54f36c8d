#include <gtest/gtest.h>

#include "common.hpp"
#include "oracles.hpp"

using namespace orbifolder;

namespace {

// |Hom(π1 Σ_g, G)| by brute force over all 2g-tuples.
std::size_t surface_homs(const FiniteGroup& g, unsigned genus) {
  std::size_t count = 0;
  oracle::for_each_tuple(g.order(), 2 * genus, [&](const oracle::Tuple& t) {
    element_t prod = 0;
    for (unsigned i = 0; i < genus; ++i) {
      const element_t a = t[2 * i], b = t[2 * i + 1];
      prod = g.mul(prod, g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
    }
    count += prod == 0;
  });
  return count;
}

}  // namespace

TEST(Bundle, ManifoldTags) {
  EXPECT_EQ(ManifoldTag::parse("circle").to_string(), "circle");
  EXPECT_EQ(ManifoldTag::parse("torus:3").holonomy_arity(), 3u);
  EXPECT_EQ(ManifoldTag::parse("surface:2").holonomy_arity(), 4u);
  EXPECT_THROW(ManifoldTag::parse("sphere"), ValidationError);
  EXPECT_THROW(ManifoldTag::parse("torus:x"), ValidationError);
  EXPECT_THROW(ManifoldTag::parse("torus:0"), ValidationError);
}

TEST(Bundle, CircleBundlesAreClasses) {
  for (const char* name : {"Z4", "S3", "Q8"}) {
    auto g = fixtures::group(name);
    auto bun = bundle_groupoid(g, ManifoldTag::circle());
    EXPECT_EQ(bun.groupoid->size(), g->order());
    EXPECT_EQ(pi0(*bun.groupoid).size(), oracle::class_count(*g));
  }
}

TEST(Bundle, TorusCardinalityIsClassCount) {
  for (const char* name : {"Z2", "Z4", "S3", "D4", "Q8", "S4"}) {
    auto g = fixtures::group(name);
    auto bun = bundle_groupoid(g, ManifoldTag::torus(2));
    EXPECT_EQ(cardinality(*bun.groupoid), Rational(static_cast<long long>(oracle::class_count(*g)))) << name;
    EXPECT_EQ(pi0(*bun.groupoid).size(), oracle::conjugation_orbits(*g, 2)) << name;
  }
}

TEST(Bundle, HigherTorusCardinality) {
  for (const char* name : {"S3", "D4", "Q8"}) {
    auto g = fixtures::group(name);
    auto t3 = bundle_groupoid(g, ManifoldTag::torus(3));
    EXPECT_EQ(t3.groupoid->size(), oracle::commuting_tuples(*g, 3).size());
    EXPECT_EQ(cardinality(*t3.groupoid), Rational(static_cast<long long>(oracle::conjugation_orbits(*g, 2))));
  }
}

TEST(Bundle, SurfaceBundlesMatchBruteForce) {
  for (const char* name : {"Z2", "S3", "Q8", "D4"}) {
    auto g = fixtures::group(name);
    for (unsigned genus : {1u, 2u}) {
      auto bun = bundle_groupoid(g, ManifoldTag::surface(genus));
      EXPECT_EQ(bun.groupoid->size(), surface_homs(*g, genus)) << name << " genus " << genus;
    }
  }
  // Frobenius: 6^3 (1 + 1 + 1/4) = 486
  EXPECT_EQ(bundle_groupoid(presets::symmetric(3), ManifoldTag::surface(2)).groupoid->size(), 486u);
  EXPECT_EQ(cardinality(*bundle_groupoid(presets::symmetric(3), ManifoldTag::surface(2)).groupoid), Rational(81));
}

TEST(Bundle, SurfaceCaps) {
  EXPECT_THROW(bundle_groupoid(presets::symmetric(4), ManifoldTag::surface(4)), CapExceeded);
  EXPECT_THROW(bundle_groupoid(presets::symmetric(5), ManifoldTag::surface(2)), CapExceeded);
  EXPECT_THROW(bundle_groupoid(presets::cyclic(2), ManifoldTag::torus(5)), CapExceeded);
}

TEST(Bundle, InducedFunctorOnTorus) {
  auto sgn = presets::sign(presets::symmetric(3));
  auto f = induced_functor(sgn, ManifoldTag::torus(2));
  EXPECT_EQ(f.source()->size(), 18u);
  EXPECT_EQ(f.target()->size(), 4u);
  for (std::size_t x = 0; x < f.source()->size(); ++x) {
    const auto& src = f.source()->object(x);
    const auto& tgt = f.target()->object(f(x));
    EXPECT_EQ(tgt[0], sgn(src[0]));
    EXPECT_EQ(tgt[1], sgn(src[1]));
  }
}

TEST(Bundle, PantsFiberIsDiscrete) {
  for (const char* name : {"Z4", "S3", "D4"}) {
    auto g = fixtures::group(name);
    auto pants = pants_span(g);
    for (std::size_t d = 0; d < pants.target_leg.target()->size(); ++d) {
      auto fiber = homotopy_fiber(pants.target_leg, d);
      EXPECT_EQ(pi0(*fiber.groupoid).size(), g->order()) << name;
      for (const auto& c : pi0(*fiber.groupoid)) EXPECT_EQ(aut_group(*fiber.groupoid, c.representative).size(), 1u);
    }
  }
}

TEST(Bundle, RestrictionSpans) {
  auto g = presets::symmetric(3);
  auto span = restriction_span(g, BordismDescription::parse("cylinder+pants"));
  EXPECT_EQ(span.apex->size(), 6u * 36u);
  EXPECT_EQ(span.source_leg.target()->arity(), 3u);
  EXPECT_EQ(span.target_leg.target()->arity(), 2u);
  EXPECT_THROW(BordismDescription::parse("cylinder+disk"), ValidationError);
}

TEST(Bundle, SmallExamples) {
  EXPECT_EQ(bundle_groupoid(presets::symmetric(3), ManifoldTag::torus(2)).groupoid->size(), 18u);
  EXPECT_EQ(bundle_groupoid(presets::cyclic(2), ManifoldTag::surface(2)).groupoid->size(), 16u);
  EXPECT_EQ(bundle_groupoid(presets::symmetric(4), ManifoldTag::surface(0)).groupoid->size(), 1u);
  EXPECT_EQ(ManifoldTag::parse("surface:0").holonomy_arity(), 0u);

  auto s3 = presets::symmetric(3);
  auto id = induced_functor(GroupHom::identity(s3), ManifoldTag::torus(2));
  for (std::size_t x = 0; x < id.source()->size(); ++x) EXPECT_EQ(id.source()->object(x), id.target()->object(id(x)));

  auto sgn = induced_functor(presets::sign(s3), ManifoldTag::torus(1));
  for (element_t t : {1u, 2u, 5u}) EXPECT_EQ(sgn.target()->object(sgn(sgn.source()->index_of({t}))), (Tuple{1}));
  for (element_t t : {0u, 3u, 4u}) EXPECT_EQ(sgn.target()->object(sgn(sgn.source()->index_of({t}))), (Tuple{0}));

  auto z4 = presets::cyclic(4), z2 = presets::cyclic(2);
  auto mu = GroupHom::from_generator_images(z4, z2, {{1, 1}});
  auto nu = GroupHom::trivial(z2, presets::trivial());
  auto m = ManifoldTag::torus(3);
  auto b4 = bundle_groupoid(z4, m), b2 = bundle_groupoid(z2, m), b1 = bundle_groupoid(presets::trivial(), m);
  auto stepwise = induced_functor(mu, b4, b2).then(induced_functor(nu, b2, b1));
  auto direct = induced_functor(nu.after(mu), b4, b1);
  EXPECT_EQ(stepwise.object_map(), direct.object_map());
}

TEST(Bundle, PantsLegs) {
  for (const char* name : {"S3", "D4"}) {
    auto g = fixtures::group(name);
    auto pants = pants_span(g);
    EXPECT_EQ(cardinality(*pants.apex), Rational(static_cast<long long>(g->order())));
    for (element_t a = 0; a < g->order(); ++a) {
      const std::size_t x = pants.apex->index_of({a, g->inv(a)});
      EXPECT_EQ(pants.target_leg.target()->object(pants.target_leg(x)), (Tuple{0}));
    }
  }
}

TEST(Bundle, CylinderSpans) {
  auto g = presets::symmetric(3);
  auto one = restriction_span(g, BordismDescription::parse("cylinder"));
  EXPECT_EQ(one.apex->size(), 6u);
  EXPECT_EQ(one.source_leg.object_map(), GroupoidFunctor::identity(one.apex).object_map());
  EXPECT_EQ(one.target_leg.object_map(), GroupoidFunctor::identity(one.apex).object_map());
  auto two = restriction_span(g, BordismDescription::parse("cylinder+cylinder"));
  EXPECT_EQ(two.apex->size(), 36u);
  EXPECT_EQ(cardinality(*two.apex), Rational(1));
  for (std::size_t x = 0; x < two.apex->size(); ++x) {
    EXPECT_EQ(two.source_leg.target()->object(two.source_leg(x)), two.apex->object(x));
    EXPECT_EQ(two.target_leg.target()->object(two.target_leg(x)), two.apex->object(x));
  }
  auto pants = restriction_span(g, BordismDescription::parse("pants"));
  EXPECT_EQ(pants.apex->size(), 36u);
}
