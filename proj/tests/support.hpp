#pragma once

#include <string>
#include <vector>

#include "dynaut/formula.hpp"
#include "dynaut/semantics.hpp"

namespace support {

inline const std::string example_dynamic = "< ([ true* ] b)? > < true > a";
inline const std::string example_temporal = "G b & X a";

inline const std::vector<std::string>& ab() {
  static const std::vector<std::string> atoms{"a", "b"};
  return atoms;
}

/// The seeded random suite: depth <= 3 over {a, b}.
inline std::vector<dynaut::Formula> random_suite(std::size_t count) {
  std::vector<dynaut::Formula> out;
  for (std::size_t seed = 1; seed <= count; ++seed) out.push_back(dynaut::random_formula(seed, 3, ab()));
  return out;
}

inline const std::vector<dynaut::Trace>& traces_ab(std::size_t max_len) {
  static std::vector<std::vector<dynaut::Trace>> cache(8);
  if (cache[max_len].empty()) cache[max_len] = dynaut::enumerate_traces(ab(), max_len);
  return cache[max_len];
}

}  // namespace support
