#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ecochain {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

/// Entry point of the ecochain CLI (args exclude the program name):
///   simulate | equilibria | stability | sweep | reproduce fig1..fig4
/// Returns 0 on success, 1 on validation errors, 2 on numerical failures
/// (including a failed reproduce check).
int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace ecochain
