// One line per acceptance criterion; exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <orbifolder/cli.hpp>

#include "common.hpp"
#include "oracles.hpp"

using namespace orbifolder;

namespace {

struct Check {
  bool ok = true;
  std::string detail;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

const std::vector<const char*> kGroups{"Z2", "Z4", "S3", "D4", "Q8", "S4"};

Check torus_identity() {
  Check c;
  for (const char* name : kGroups) {
    auto g = fixtures::group(name);
    c.expect(cardinality(*bundle_groupoid(g, ManifoldTag::torus(2)).groupoid) ==
                 Rational(static_cast<long long>(oracle::class_count(*g))),
             name);
  }
  return c;
}

Check burnside() {
  Check c;
  for (const char* name : kGroups) {
    auto g = fixtures::group(name);
    const Rational lhs(static_cast<long long>(commuting_tuples(g, 3).size()), static_cast<long long>(g->order()));
    c.expect(lhs == Rational(static_cast<long long>(pi0(*bundle_groupoid(g, ManifoldTag::torus(2)).groupoid).size())), name);
  }
  return c;
}

Check pants_fiber() {
  Check c;
  for (const char* name : {"Z4", "S3", "D4"}) {
    auto g = fixtures::group(name);
    auto pants = pants_span(g);
    for (std::size_t d = 0; d < pants.target_leg.target()->size(); ++d) {
      auto fiber = homotopy_fiber(pants.target_leg, d);
      c.expect(pi0(*fiber.groupoid).size() == g->order(), name);
      for (const auto& comp : pi0(*fiber.groupoid)) c.expect(aut_group(*fiber.groupoid, comp.representative).size() == 1, name);
    }
  }
  return c;
}

Check orbifold_is_extension() {
  Check c;
  for (const auto& s : fixtures::extension_sequences()) {
    const auto& h = *s.lambda.source();
    const Rational independent(static_cast<long long>(oracle::commuting_tuples(h, 3).size()), static_cast<long long>(h.order()));
    c.expect(Rational(simple_count(EquivariantTheory(s.lambda))) == independent, s.name);
  }
  return c;
}

Check drinfeld_counts() {
  Check c;
  for (const auto& [name, n] : std::vector<std::pair<const char*, std::size_t>>{{"Z2", 4}, {"S3", 8}, {"D4", 22}, {"S4", 21}}) {
    auto g = fixtures::group(name);
    c.expect(oracle::drinfeld_simples(*g) == n, std::string(name) + " oracle");
    c.expect(simple_count(EquivariantTheory::classical(g)) == Integer(n), name);
  }
  return c;
}

Check perm_orbifold() {
  Check c;
  for (long k : {1, 2, 3}) c.expect(perm_orbifold_simples(2, k) == Integer((k * k + 7 * k) / 2), "n=2");
  c.expect(perm_orbifold_simples(2, 1) == 4 && perm_orbifold_simples(2, 2) == 9 && perm_orbifold_simples(2, 3) == 15, "4,9,15");
  c.expect(perm_orbifold_simples(3, 1) == 8, "n=3");
  c.expect(perm_orbifold_simples(4, 1) == 21, "n=4");
  return c;
}

Check two_routes() {
  Check c;
  for (const auto& s : fixtures::extension_sequences()) {
    const EquivariantTheory t(s.lambda);
    c.expect(simple_count(t) == Integer(orbifold_verlinde(t)), s.name);
  }
  const EquivariantTheory parity(presets::sign(presets::symmetric(3)));
  const auto rep = surface_value(TheoryOnManifold(parity, ManifoldTag::torus(2)));
  std::vector<std::size_t> inv;
  for (std::size_t q = 0; q < rep.base()->size(); ++q) inv.push_back(rank(averaging_projector(rep, q)));
  c.expect(rep.dims() == std::vector<std::size_t>{9, 1, 1, 1}, "parity fibers");
  c.expect(inv == std::vector<std::size_t>{5, 1, 1, 1}, "parity invariants");
  c.expect(invariants_dim(rep) == 8, "parity total");
  return c;
}

Check smove_and_sectors() {
  Check c;
  for (const auto& s : fixtures::extension_sequences()) {
    const EquivariantTheory t(s.lambda);
    c.expect(smove_check(t).ok, s.name + " S-move");
    const auto tw = twisted_sector_check(t);
    c.expect(tw.precondition_met && tw.ok, s.name + " sectors");
  }
  const EquivariantTheory inc(GroupHom::from_generator_images(presets::cyclic(2), presets::cyclic(4), {{1, 2}}));
  c.expect(smove_check(inc).ok, "inclusion S-move");
  c.expect(!twisted_sector_check(inc).precondition_met, "inclusion precondition");
  c.expect(pushforward_unit_components(inc.structure()) == 2, "unit components");
  return c;
}

Check divisibility() {
  Check c;
  for (const auto& s : fixtures::extension_sequences()) {
    for (unsigned n : {1u, 2u, 3u}) {
      TheoryOnManifold ctx(EquivariantTheory(s.lambda), ManifoldTag::torus(n));
      const auto table = closed_value_table(ctx);
      const auto tuples = commuting_tuples(s.lambda.target(), n);
      std::vector<Rational> values(tuples.size());
      for (std::size_t i = 0; i < tuples.size(); ++i) values[i] = table.values[table.base.groupoid->index_of(tuples.tuple(i))];
      c.expect(divisibility_check(s.lambda.target(), tuples, values).ok, s.name);
    }
  }
  const auto z2 = presets::cyclic(2);
  const auto tuples = commuting_tuples(z2, 3);
  std::vector<Rational> bad(tuples.size(), 0);
  bad[0] = 1;
  c.expect(!divisibility_check(z2, tuples, bad).ok, "counterexample");
  return c;
}

Check composition_law() {
  Check c;
  auto z4 = presets::cyclic(4), z2 = presets::cyclic(2), one = presets::trivial(), s3 = presets::symmetric(3);
  const std::vector<std::pair<GroupHom, GroupHom>> chains{
      {GroupHom::from_generator_images(z4, z2, {{1, 1}}), GroupHom::trivial(z2, one)},
      {presets::sign(s3), GroupHom::trivial(presets::sign(s3).target(), one)}};
  for (const auto& [mu, nu] : chains) {
    for (auto m : {ManifoldTag::torus(2), ManifoldTag::torus(3)}) {
      const auto base = closed_value_table(TheoryOnManifold(EquivariantTheory(GroupHom::identity(mu.source())), m));
      c.expect(pushforward_closed(base, nu.after(mu)).values == pushforward_closed(pushforward_closed(base, mu), nu).values,
               mu.source()->name() + " " + m.to_string());
    }
  }
  return c;
}

std::string cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  (void)cli::run(args, out, err);
  return out.str();
}

Check properties() {
  Check c;
  std::mt19937_64 rng(oracle::test_seed());
  // Cardinality two-formula agreement on random tuple groupoids.
  for (int t = 0; t < 10; ++t) {
    auto g = fixtures::group(kGroups[rng() % kGroups.size()]);
    auto bun = bundle_groupoid(g, ManifoldTag::torus(1 + rng() % 3));
    Rational sum = 0;
    for (const auto& comp : pi0(*bun.groupoid))
      sum += Rational(1, static_cast<long long>(aut_group(*bun.groupoid, comp.representative).size()));
    c.expect(sum == Rational(static_cast<long long>(bun.groupoid->size()), static_cast<long long>(g->order())), "cardinality");
  }
  // Projector idempotency.
  const auto seqs = fixtures::extension_sequences();
  for (int t = 0; t < 3; ++t) {
    const auto rep = surface_value(TheoryOnManifold(EquivariantTheory(seqs[rng() % seqs.size()].lambda), ManifoldTag::torus(2)));
    for (std::size_t x = 0; x < rep.base()->size(); ++x) {
      const auto p = averaging_projector(rep, x);
      c.expect(p * p == p, "idempotency");
    }
  }
  // Re-indexing invariance.
  for (int t = 0; t < 4; ++t) {
    auto g = fixtures::group(kGroups[rng() % kGroups.size()]);
    std::vector<element_t> perm(g->order());
    std::iota(perm.begin(), perm.end(), element_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<element_t>> table(g->order(), std::vector<element_t>(g->order()));
    for (element_t a = 0; a < g->order(); ++a)
      for (element_t b = 0; b < g->order(); ++b) table[perm[a]][perm[b]] = perm[g->mul(a, b)];
    auto h = FiniteGroup::from_table(table, "shuffled");
    c.expect(simple_count(EquivariantTheory::classical(h)) == simple_count(EquivariantTheory::classical(g)), "re-indexing");
    c.expect(cardinality(*bundle_groupoid(h, ManifoldTag::torus(3)).groupoid) ==
                 cardinality(*bundle_groupoid(g, ManifoldTag::torus(3)).groupoid),
             "re-indexing");
  }
  // CLI output independent of parallelism.
  const std::string parity = R"({"source":{"type":"preset","name":"S3"},"map":"sign"})";
  const std::vector<std::vector<std::string>> commands{
      {"dw", "closed", "--theory", parity, "--manifold", "torus:3"},
      {"dw", "verlinde", "--theory", parity, "--smove", "--twisted-sectors"},
      {"orbifold", "closed", "--theory", parity, "--manifold", "surface:2"},
      {"orbifold", "permorb", "--n", "4", "--k", "2"},
      {"par", "invariants", "--theory", parity}};
  for (const auto& cmd : commands) {
    std::vector<std::string> threaded{"--threads", std::to_string(2 + rng() % 3)};
    threaded.insert(threaded.end(), cmd.begin(), cmd.end());
    c.expect(cli(cmd) == cli(threaded), "parallelism " + cmd[0] + " " + cmd[1]);
  }
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;  // 0: no limit
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "torus cardinality equals class count", 1, torus_identity},
      {2, "Burnside consistency of commuting triples", 5, burnside},
      {3, "multiplication fiber is discrete with |G| components", 0, pants_fiber},
      {4, "orbifold simple count equals extension group count", 10, orbifold_is_extension},
      {5, "known Drinfeld double simple counts", 0, drinfeld_counts},
      {6, "permutation orbifold formula", 30, perm_orbifold},
      {7, "two-route simple count and parity Verlinde data", 0, two_routes},
      {8, "S-move symmetry, twisted sectors and non-surjective precondition", 0, smove_and_sectors},
      {9, "divisibility of closed-value tables", 0, divisibility},
      {10, "pushforward composition law", 0, composition_law},
      {11, "property suites", 0, properties},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check result;
    try {
      result = c.run();
    } catch (const std::exception& e) {
      result.ok = false;
      result.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds >= c.limit_seconds) result.expect(false, "time limit exceeded");
    std::ostringstream line;
    line << (result.ok ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << std::fixed;
    line.precision(3);
    line << seconds << " s)";
    if (!result.ok) line << ": " << result.detail;
    std::cout << line.str() << "\n";
    failures += !result.ok;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed (seed " << oracle::test_seed()
            << ")\n";
  return failures;
}
