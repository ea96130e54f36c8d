#pragma once

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "bundle.hpp"
#include "dw.hpp"
#include "presets.hpp"
#include "rep.hpp"

namespace orbifolder::spec {

using json = nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("spec is missing field '") + key + "'");
  return j.at(key);
}

inline element_t element_index(const json& j) {
  if (j.is_number_unsigned()) return j.get<element_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<element_t>(j.get<long long>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (!s.empty() && s.size() <= 9 && s.find_first_not_of("0123456789") == std::string::npos) {
      return static_cast<element_t>(std::stoul(s));
    }
  }
  throw ValidationError("element index must be a non-negative integer");
}

}  // namespace detail

/// {"type":"preset","name":"S3"}, {"type":"product","factors":[...]},
/// {"type":"cayley","table":[[...]]}, {"type":"perm","degree":n,"generators":[[...]]}
inline GroupPtr parse_group(const json& j, const Caps& caps = {}) {
  const json& type = detail::field(j, "type");
  if (!type.is_string()) throw ValidationError("group spec 'type' must be a string");
  const auto kind = type.get<std::string>();
  if (kind == "preset") {
    const json& name = detail::field(j, "name");
    if (!name.is_string()) throw ValidationError("preset 'name' must be a string");
    return presets::by_name(name.get<std::string>(), caps);
  }
  if (kind == "product") {
    const json& factors = detail::field(j, "factors");
    if (!factors.is_array() || factors.empty()) throw ValidationError("product needs a non-empty 'factors' array");
    GroupPtr g = parse_group(factors[0], caps);
    for (std::size_t i = 1; i < factors.size(); ++i) g = presets::direct_product(g, parse_group(factors[i], caps), caps);
    return g;
  }
  if (kind == "cayley") {
    const json& table = detail::field(j, "table");
    if (!table.is_array()) throw ValidationError("cayley 'table' must be an array of rows");
    std::vector<std::vector<element_t>> rows;
    for (const auto& row : table) {
      if (!row.is_array()) throw ValidationError("cayley table rows must be arrays");
      std::vector<element_t> r;
      for (const auto& x : row) r.push_back(detail::element_index(x));
      rows.push_back(std::move(r));
    }
    return FiniteGroup::from_table(rows, j.value("name", std::string("cayley")), caps);
  }
  if (kind == "perm") {
    const json& degree = detail::field(j, "degree");
    const json& gens = detail::field(j, "generators");
    if (!degree.is_number_unsigned() || !gens.is_array()) throw ValidationError("perm spec needs 'degree' and 'generators'");
    std::vector<std::vector<unsigned>> generators;
    for (const auto& g : gens) {
      if (!g.is_array()) throw ValidationError("permutation generators must be arrays");
      std::vector<unsigned> p;
      for (const auto& x : g) p.push_back(detail::element_index(x));
      generators.push_back(std::move(p));
    }
    return FiniteGroup::from_permutations(degree.get<unsigned>(), generators, j.value("name", std::string("perm")), caps);
  }
  throw ValidationError("unknown group spec type '" + kind + "'");
}

/// {"source":G,"target":K,"images":{"i":j,...}} (generator images) or
/// "images":[...] (full table); {"source":G,"map":"identity"|"sign"};
/// {"source":G,"target":K,"map":"trivial"}.
inline GroupHom parse_hom(const json& j, const Caps& caps = {}) {
  GroupPtr source = parse_group(detail::field(j, "source"), caps);
  if (j.contains("map")) {
    const auto kind = j.at("map").get<std::string>();
    if (kind == "identity") return GroupHom::identity(source);
    if (kind == "sign") return presets::sign(source);
    if (kind == "trivial") return GroupHom::trivial(source, parse_group(detail::field(j, "target"), caps));
    throw ValidationError("unknown hom map '" + kind + "'");
  }
  GroupPtr target = parse_group(detail::field(j, "target"), caps);
  const json& images = detail::field(j, "images");
  if (images.is_array()) {
    std::vector<element_t> map;
    for (const auto& x : images) map.push_back(detail::element_index(x));
    return GroupHom(source, target, std::move(map));
  }
  if (!images.is_object()) throw ValidationError("hom 'images' must be an object or array");
  std::vector<std::pair<element_t, element_t>> pairs;
  for (const auto& [key, value] : images.items()) {
    pairs.push_back({detail::element_index(json(key)), detail::element_index(value)});
  }
  return GroupHom::from_generator_images(source, target, pairs);
}

inline bool is_hom_spec(const json& j) { return j.is_object() && j.contains("source"); }

/// A hom spec gives Z_λ; a bare group spec gives the classical theory of that group.
inline EquivariantTheory parse_theory(const json& j, const Caps& caps = {}) {
  if (is_hom_spec(j)) return EquivariantTheory(parse_hom(j, caps));
  return EquivariantTheory::classical(parse_group(j, caps));
}

/// Group spec of the equivariance group J of a theory spec.
inline json theory_target_spec(const json& j) {
  if (!is_hom_spec(j)) return json{{"type", "preset"}, {"name", "trivial"}};
  if (j.contains("target")) return j.at("target");
  const auto kind = j.value("map", std::string());
  if (kind == "sign") return json{{"type", "preset"}, {"name", "C2"}};
  return j.at("source");
}

inline json parse_json_text(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

inline json to_json(const Tuple& t) { return json(std::vector<element_t>(t.begin(), t.end())); }

/// "1,0,2" -> {1,0,2}
inline Tuple parse_tuple(const std::string& text) {
  Tuple t;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    t.push_back(detail::element_index(json(part)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Representation files

/// {"base":{"group":<spec>,"manifold":"torus:2"},"fiber_dims":[...],
///  "generators":[{"element":g,"matrices":[{"object":x,"rows":r,"cols":c,
///  "entries":[[i,j,"p/q"],...]}]}]}; only non-zero entries are listed.
inline json rep_to_json(const GroupoidRep& rep, const json& group_spec, const ManifoldTag& manifold) {
  json out;
  out["base"] = json{{"group", group_spec}, {"manifold", manifold.to_string()}};
  out["fiber_dims"] = rep.dims();
  json gens = json::array();
  const auto& elements = rep.base()->group().generators();
  for (std::size_t k = 0; k < elements.size(); ++k) {
    json mats = json::array();
    for (std::size_t x = 0; x < rep.base()->size(); ++x) {
      const auto& m = rep.generator_matrix(k, x);
      json entries = json::array();
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t c = 0; c < m.cols(); ++c)
          if (m(i, c) != 0) entries.push_back(json::array({i, c, to_string(m(i, c))}));
      mats.push_back(json{{"object", x}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}});
    }
    gens.push_back(json{{"element", elements[k]}, {"matrices", std::move(mats)}});
  }
  out["generators"] = std::move(gens);
  return out;
}

struct LoadedRep {
  BundleGroupoid base;
  GroupoidRep rep;
};

inline LoadedRep rep_from_json(const json& j, const Caps& caps = {}) {
  const json& base_spec = detail::field(j, "base");
  auto group = parse_group(detail::field(base_spec, "group"), caps);
  auto manifold = ManifoldTag::parse(detail::field(base_spec, "manifold").get<std::string>());
  auto base = bundle_groupoid(group, manifold, caps);
  const auto& objects = *base.groupoid;

  const json& dims_json = detail::field(j, "fiber_dims");
  std::vector<std::size_t> dims;
  for (const auto& d : dims_json) dims.push_back(d.get<std::size_t>());
  if (dims.size() != objects.size()) throw ValidationError("rep file: fiber_dims does not match the base groupoid");

  const json& gens = detail::field(j, "generators");
  const auto& elements = group->generators();
  if (!gens.is_array() || gens.size() != elements.size()) throw ValidationError("rep file: generator list mismatch");
  std::vector<std::vector<RationalMatrix>> mats(elements.size(), std::vector<RationalMatrix>(objects.size()));
  for (std::size_t k = 0; k < elements.size(); ++k) {
    if (detail::element_index(detail::field(gens[k], "element")) != elements[k]) {
      throw ValidationError("rep file: generator elements do not match the group's generating set");
    }
    const json& list = detail::field(gens[k], "matrices");
    if (!list.is_array() || list.size() != objects.size()) throw ValidationError("rep file: one matrix per object required");
    for (const auto& entry : list) {
      const auto x = detail::field(entry, "object").get<std::size_t>();
      objects.require_object(x);
      RationalMatrix m(detail::field(entry, "rows").get<std::size_t>(), detail::field(entry, "cols").get<std::size_t>());
      for (const auto& e : detail::field(entry, "entries")) {
        if (!e.is_array() || e.size() != 3) throw ValidationError("rep file: entries are [row, col, \"p/q\"]");
        const auto r = e[0].get<std::size_t>(), c = e[1].get<std::size_t>();
        if (r >= m.rows() || c >= m.cols()) throw ValidationError("rep file: entry out of range");
        m(r, c) = parse_rational(e[2].get<std::string>());
      }
      mats[k][x] = std::move(m);
    }
  }
  GroupoidRep rep(base.groupoid, std::move(dims), std::move(mats), caps);
  return {std::move(base), std::move(rep)};
}

}  // namespace orbifolder::spec
