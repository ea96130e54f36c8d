#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <string>

#include "error.hpp"

namespace orbifolder {

/// Desk-scale resource guards and execution knobs. Every enumeration checks
/// the relevant limit and raises CapExceeded instead of running away.
struct Caps {
  std::size_t max_objects = std::size_t{1} << 22;
  std::size_t max_group_order = 5040;
  unsigned max_perm_degree = 10;
  unsigned max_torus_dim = 4;
  unsigned max_genus = 3;
  std::size_t max_surface_group_order = 48;
  unsigned max_perm_orbifold_letters = 5;

  unsigned threads = 1;
  bool full_validation = false;
  std::uint64_t seed = 0x0b1f01d5eedULL;

  /// Defaults overridden by ORBIFOLDER_CAP_OBJECTS and ORBIFOLDER_THREADS.
  static Caps from_environment() {
    Caps caps;
    if (const char* v = std::getenv("ORBIFOLDER_CAP_OBJECTS")) caps.max_objects = parse_count(v, "ORBIFOLDER_CAP_OBJECTS");
    if (const char* v = std::getenv("ORBIFOLDER_THREADS")) caps.threads = static_cast<unsigned>(parse_count(v, "ORBIFOLDER_THREADS"));
    if (caps.threads == 0) caps.threads = 1;
    return caps;
  }

 private:
  static std::size_t parse_count(const std::string& text, const char* name) {
    std::size_t pos = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(text, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != text.size()) {
      throw ValidationError(std::string(name) + " must be a non-negative integer, got '" + text + "'");
    }
    return static_cast<std::size_t>(value);
  }
};

inline void require_within_cap(std::size_t count, std::size_t cap, const std::string& what) {
  if (count > cap) {
    throw CapExceeded(what + ": " + std::to_string(count) + " exceeds cap " + std::to_string(cap));
  }
}

}  // namespace orbifolder
