#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "graphmoves/moves.hpp"

namespace gm {

/// Raised when a compiled procedure exceeds its move budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A graph together with the moves applied to it so far.
///
/// Compiled operations address vertices by name, so a script recorded on one
/// session can be reversed onto another whose graph has the same vertices in
/// a different order.
class Session {
public:
    explicit Session(Graph start, std::optional<std::size_t> budget = std::nullopt);

    [[nodiscard]] const Graph& graph() const { return states_.back(); }
    [[nodiscard]] const Graph& start() const { return states_.front(); }
    [[nodiscard]] const MoveScript& script() const { return script_; }
    [[nodiscard]] const std::vector<Graph>& states() const { return states_; }
    [[nodiscard]] DBPair db() const { return to_db(graph()); }

    void emit(const Move& m);
    /// Merge regular sources into one named source_name(...), renaming a lone
    /// source if needed.
    void collect();
    /// Undo `other` move by move. Requires this graph to equal other's final
    /// graph up to vertex order.
    void append_reverse(const Session& other);

    /// Name of the single regular source, if any.
    [[nodiscard]] std::optional<std::string> source() const;

private:
    std::vector<Graph> states_;
    MoveScript script_;
    std::optional<std::size_t> budget_;
};

}  // namespace gm
