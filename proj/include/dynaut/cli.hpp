#pragma once

// Command-line driver. Exit codes: 0 success, 1 usage, 2 input error,
// 3 negative result (empty language, inequivalent, no trace accepted),
// 4 external tool failure.

#include <ostream>
#include <string>
#include <vector>

#include "dynaut/formula.hpp"

namespace dynaut {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int input = 2;
inline constexpr int negative = 3;
inline constexpr int external = 4;
}  // namespace exit_code

/// Names accepted by `bench --family`.
const std::vector<std::string>& bench_families();

/// Preset formula of a family over atoms p1..p`depth`; depth >= 1.
/// Throws InputError on an unknown family.
Formula bench_formula(const std::string& family, int depth);

/// Runs the tool on `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dynaut
