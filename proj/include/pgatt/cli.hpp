#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pgatt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInconclusive = 3;

inline constexpr std::uint64_t kDefaultFuel = 1'000'000;

/// Runs one command; args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pgatt::cli
