#pragma once

#include <iosfwd>

#include "graphmoves/moves.hpp"

namespace gm {

/// The command-line tool. Returns 0 on success, 1 on a domain error or a
/// negative verdict, 2 on a usage error.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

struct Transported {
    Graph graph;
    MoveScript script;
};

/// Re-expresses a script written for from_db(to_db(g)) as one that starts at g:
/// sources are collected first, and positional data follow g's vertex order.
[[nodiscard]] Transported transport(const Graph& g, const MoveScript& s);

}  // namespace gm
