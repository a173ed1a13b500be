#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coarse {

// Command-line surface. `args` excludes the program name. Reports go to
// `out`; interactive game prompts are read from `in`. Exit code: 0 when the
// property holds / the object was constructed / player 2 won, 1 when refuted
// or lost, 2 on bad input or an invalid game.
int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err);

}  // namespace coarse
