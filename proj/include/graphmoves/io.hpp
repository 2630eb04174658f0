#pragma once

#include <string>
#include <string_view>

#include "graphmoves/canonical.hpp"
#include "graphmoves/ktheory.hpp"
#include "graphmoves/matops.hpp"
#include "graphmoves/moves.hpp"

namespace gm {

/// Malformed input. line and column are 1-based, 0 when unknown.
class FormatError : public DomainError {
public:
    FormatError(const std::string& what, std::size_t line, std::size_t column);
    std::size_t line, column;
};

// All emitters produce compact JSON with sorted keys; the document forms end in "\n".

/// Schema checks only; graph invariants are left to validate_graph.
[[nodiscard]] GraphData parse_graph_data(std::string_view text);
[[nodiscard]] Graph parse_graph(std::string_view text);
[[nodiscard]] std::string emit_graph(const Graph& g);

[[nodiscard]] DBPair parse_db(std::string_view text);
[[nodiscard]] std::string emit_db(const DBPair& p);

/// One move per line; blank lines are skipped.
[[nodiscard]] MoveScript parse_script(std::string_view text);
[[nodiscard]] std::string emit_script(const MoveScript& s);
[[nodiscard]] Move parse_move(std::string_view line);
[[nodiscard]] std::string emit_move(const Move& m);

/// src and dst may be indices or labels of `p`.
[[nodiscard]] OpRecord parse_op(std::string_view text, const DBPair& p);
[[nodiscard]] std::string emit_op(const OpRecord& op);

[[nodiscard]] Certificate parse_certificate(std::string_view text);
[[nodiscard]] std::string emit_certificate(const Certificate& c);

[[nodiscard]] std::string emit_k0(const PointedK0& k);

/// Round-parenthesis text of an integer matrix, one row per line.
[[nodiscard]] std::string paren_matrix(const Matrix<ExtInt>& m);
[[nodiscard]] std::string paren_row(const std::vector<std::int64_t>& v);

}  // namespace gm
