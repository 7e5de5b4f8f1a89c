#pragma once

#include <ostream>

namespace eqmix {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitSoundness = 3;

/// Entry point of the `eqmix` executable; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eqmix
