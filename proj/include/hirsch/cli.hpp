#pragma once

#include <cstdio>

namespace hirsch::cli {

// Placeholder until subcommands land.
inline int run(int, char**) {
    std::fputs("hirschcalc: no subcommands wired yet\n", stderr);
    return 2;
}

}  // namespace hirsch::cli
