#pragma once

#include <string>
#include <vector>

#include <orbifolder/orbifold.hpp>
#include <orbifolder/presets.hpp>

namespace fixtures {

using namespace orbifolder;

struct Sequence {
  std::string name;
  GroupHom lambda;  // H -> J with kernel the first group
};

inline GroupPtr z2xz2() { return presets::direct_product(presets::cyclic(2), presets::cyclic(2)); }

inline std::vector<Sequence> extension_sequences() {
  auto z4 = presets::cyclic(4);
  auto z2 = presets::cyclic(2);
  auto d4 = presets::dihedral(4);
  auto q8 = presets::quaternion();
  auto k4 = z2xz2();
  return {
      {"Z2-Z4-Z2", GroupHom::from_generator_images(z4, z2, {{1, 1}})},
      {"Z3-S3-Z2", presets::sign(presets::symmetric(3))},
      // r -> (1,0), s -> (0,1)
      {"Z2-D4-K4", GroupHom::from_generator_images(d4, k4, {{1, 2}, {4, 1}})},
      // i -> (1,0), j -> (0,1)
      {"Z2-Q8-K4", GroupHom::from_generator_images(q8, k4, {{2, 2}, {4, 1}})},
  };
}

inline GroupPtr group(const std::string& name) { return presets::by_name(name); }

}  // namespace fixtures
