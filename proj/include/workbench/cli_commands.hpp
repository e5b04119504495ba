#pragma once

#include <array>
#include <string_view>

namespace wb::cli {

// The command table; every module's demo surface hangs off at least one of
// these (the cli test walks this list against the built-in dispatch).
inline constexpr std::array<std::string_view, 22> kCommands = {
    "run-tm",    "run-utm",   "encode-utm", "run-ca",  "life",     "ww-ca",
    "batcher",   "solve-game", "tiling",    "ip-demo", "prime",    "keygen",
    "encrypt",   "decrypt",   "prg",        "gl-demo", "extract",  "nextbit",
    "qsort-bench", "hc-demo", "philosophers", "kolmogorov",
};

} // namespace wb::cli
