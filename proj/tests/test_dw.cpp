#include <gtest/gtest.h>

#include "common.hpp"
#include "oracles.hpp"

using namespace orbifolder;

TEST(Dw, ParityTorusValues) {
  auto sgn = presets::sign(presets::symmetric(3));
  TheoryOnManifold ctx(EquivariantTheory(sgn), ManifoldTag::torus(3));
  const auto table = closed_value_table(ctx);
  ASSERT_EQ(table.values.size(), 8u);
  EXPECT_EQ(table.values[ctx.decoration_index({0, 0, 0})], Rational(9));
  Rational total = 0;
  for (std::size_t q = 0; q < 8; ++q) {
    if (q != ctx.decoration_index({0, 0, 0})) {
      EXPECT_EQ(table.values[q], Rational(1));
    }
    total += table.values[q];
  }
  EXPECT_EQ(total, Rational(16));
  EXPECT_EQ(closed_value(EquivariantTheory(sgn), ManifoldTag::torus(3), {1, 1, 0}), Rational(1));
}

TEST(Dw, ClosedValuesMatchBruteForce) {
  for (const auto& s : fixtures::extension_sequences()) {
    for (unsigned n : {1u, 2u, 3u}) {
      TheoryOnManifold ctx(EquivariantTheory(s.lambda), ManifoldTag::torus(n));
      const auto table = closed_value_table(ctx);
      for (std::size_t q = 0; q < table.values.size(); ++q) {
        EXPECT_EQ(table.values[q], oracle::closed_value(*s.lambda.source(), *s.lambda.target(), s.lambda.table(),
                                                        table.base.groupoid->object(q)))
            << s.name << " n=" << n << " q=" << q;
      }
    }
  }
}

TEST(Dw, ClassicalTheoryIsGroupoidCardinality) {
  for (const char* name : {"S3", "D4", "Q8"}) {
    auto g = fixtures::group(name);
    const auto theory = EquivariantTheory::classical(g);
    for (auto m : {ManifoldTag::circle(), ManifoldTag::torus(2), ManifoldTag::torus(3), ManifoldTag::surface(2)}) {
      EXPECT_EQ(closed_value(theory, m, Tuple(m.holonomy_arity(), 0)), cardinality(*bundle_groupoid(g, m).groupoid))
          << name << " " << m.to_string();
    }
  }
}

TEST(Dw, ForeignDecorationIsRejected) {
  auto sgn = presets::sign(presets::symmetric(3));
  EXPECT_THROW(closed_value(EquivariantTheory(sgn), ManifoldTag::torus(2), {0, 2}), ValidationError);
  EXPECT_THROW(closed_value(EquivariantTheory(sgn), ManifoldTag::torus(2), {0}), ValidationError);
}

TEST(Dw, ParityVerlindeDims) {
  const auto rows = verlinde_dims(EquivariantTheory(presets::sign(presets::symmetric(3))));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].pair, (Tuple{0, 0}));
  EXPECT_EQ(rows[0].dim, 9u);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(rows[i].dim, 1u);
}

TEST(Dw, VerlindeDimsMatchBruteForceOrbits) {
  for (const auto& s : fixtures::extension_sequences()) {
    for (const auto& e : verlinde_dims(EquivariantTheory(s.lambda))) {
      EXPECT_EQ(e.dim, oracle::lift_components(*s.lambda.source(), *s.lambda.target(), s.lambda.table(), e.pair))
          << s.name;
    }
  }
}

TEST(Dw, SurfaceValueInvariants) {
  auto sgn = presets::sign(presets::symmetric(3));
  TheoryOnManifold ctx(EquivariantTheory(sgn), ManifoldTag::torus(2));
  const auto rep = surface_value(ctx);
  std::vector<std::size_t> per_object;
  for (std::size_t q = 0; q < rep.base()->size(); ++q) {
    RationalMatrix p = averaging_projector(rep, q);
    per_object.push_back(rank(p));
  }
  EXPECT_EQ(rep.dims(), (std::vector<std::size_t>{9, 1, 1, 1}));
  EXPECT_EQ(per_object, (std::vector<std::size_t>{5, 1, 1, 1}));
  EXPECT_EQ(invariants_dim(rep), 8u);
  EXPECT_THROW(surface_value(TheoryOnManifold(EquivariantTheory(sgn), ManifoldTag::torus(3))), ValidationError);
}

TEST(Dw, SurfaceValueOnGenusTwo) {
  // J trivial: the fiber is the free space on π0 Bun_H(Σ), all Aut act trivially.
  auto s3 = presets::symmetric(3);
  TheoryOnManifold ctx(EquivariantTheory::classical(s3), ManifoldTag::surface(2));
  const auto rep = surface_value(ctx);
  EXPECT_EQ(invariants_dim(rep), pi0(*bundle_groupoid(s3, ManifoldTag::surface(2)).groupoid).size());
}

TEST(Dw, SMoveSymmetry) {
  for (const auto& s : fixtures::extension_sequences()) {
    const auto report = smove_check(EquivariantTheory(s.lambda));
    EXPECT_TRUE(report.ok) << s.name;
    EXPECT_FALSE(report.offending_pair.has_value());
  }
}

TEST(Dw, TwistedSectors) {
  for (const auto& s : fixtures::extension_sequences()) {
    const auto report = twisted_sector_check(EquivariantTheory(s.lambda));
    EXPECT_TRUE(report.precondition_met) << s.name;
    EXPECT_TRUE(report.ok) << s.name;
    EXPECT_TRUE(report.empty_sectors.empty());
  }
  auto inc = GroupHom::from_generator_images(presets::cyclic(2), presets::cyclic(4), {{1, 2}});
  const auto report = twisted_sector_check(EquivariantTheory(inc));
  EXPECT_FALSE(report.precondition_met);
  EXPECT_NE(report.message.find("unit components: 2"), std::string::npos);
}

TEST(Dw, InclusionHasEmptySectors) {
  // Holonomies outside im λ admit no lifts.
  auto inc = GroupHom::from_generator_images(presets::cyclic(2), presets::cyclic(4), {{1, 2}});
  for (const auto& e : verlinde_dims(EquivariantTheory(inc))) {
    const bool in_image = e.pair[0] % 2 == 0 && e.pair[1] % 2 == 0;
    EXPECT_EQ(e.dim, in_image ? 2u : 0u);
  }
}

TEST(Dw, ClosedValueExamples) {
  auto s3 = presets::symmetric(3);
  TheoryOnManifold same(EquivariantTheory(GroupHom::identity(s3)), ManifoldTag::torus(2));
  for (const auto& v : closed_value_table(same).values) EXPECT_EQ(v, Rational(1));

  auto z4 = presets::cyclic(4), z2 = presets::cyclic(2);
  const EquivariantTheory quot(GroupHom::from_generator_images(z4, z2, {{1, 1}}));
  EXPECT_EQ(closed_value(quot, ManifoldTag::torus(3), {0, 0, 0}), Rational(4));
  EXPECT_EQ(closed_value(EquivariantTheory::classical(z2), ManifoldTag::torus(3), {0, 0, 0}), Rational(4));
}

TEST(Dw, SurfaceValueExamples) {
  auto z4 = presets::cyclic(4), z2 = presets::cyclic(2);
  const auto quot = surface_value(TheoryOnManifold(EquivariantTheory(GroupHom::from_generator_images(z4, z2, {{1, 1}})), ManifoldTag::torus(2)));
  EXPECT_EQ(quot.dims(), std::vector<std::size_t>(4, 4));
  const auto same = surface_value(TheoryOnManifold(EquivariantTheory(GroupHom::identity(z2)), ManifoldTag::torus(2)));
  EXPECT_EQ(same.dims(), std::vector<std::size_t>(4, 1));
  EXPECT_EQ(invariants_dim(same), 4u);
}

TEST(Dw, SMoveAndSectorExamples) {
  EXPECT_TRUE(smove_check(EquivariantTheory(GroupHom::identity(presets::cyclic(4)))).ok);
  EXPECT_TRUE(smove_check(EquivariantTheory::classical(presets::symmetric(3))).ok);
  EXPECT_TRUE(smove_check(EquivariantTheory(GroupHom::identity(presets::symmetric(3)))).ok);
  for (const char* name : {"Z2", "S3", "D4"}) {
    const auto report = twisted_sector_check(EquivariantTheory(GroupHom::identity(fixtures::group(name))));
    EXPECT_TRUE(report.precondition_met) << name;
    EXPECT_TRUE(report.ok) << name;
    EXPECT_TRUE(report.empty_sectors.empty()) << name;
  }
}
