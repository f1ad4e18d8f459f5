#pragma once

// Command-line front end.
//
//   discordant analyze [state.json] [--family F --d N ...] [--side A|B|both]
//   discordant verify --d N [--seed S] [--count K]
//   discordant simplex --d 2 [--points 101] [--every 10]
//   discordant build --family F --d N [...] [--emit auto|circulant|dense|native]
//
// Exit codes: 0 success or agreement, 2 input error, 3 disagreement between
// independent criteria (including a failed verify suite).

#include <iosfwd>

namespace discordant {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitDisagreement = 3;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace discordant
