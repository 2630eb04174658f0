#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "graphmoves/db_pair.hpp"

namespace gm {

enum class MoveKind { O, Oinv, Iplus, Rplus, Rplusinv };

[[nodiscard]] const char* to_string(MoveKind k);
[[nodiscard]] MoveKind move_kind_from_string(const std::string& s);

/// A vertex given either by position in the current graph or by name.
struct VertexRef {
    std::variant<std::size_t, std::string> v;

    VertexRef() : v(std::size_t{0}) {}
    VertexRef(std::size_t i) : v(i) {}         // NOLINT(implicit)
    VertexRef(std::string s) : v(std::move(s)) {}  // NOLINT(implicit)
    VertexRef(const char* s) : v(std::string(s)) {}  // NOLINT(implicit)

    [[nodiscard]] std::size_t resolve(const Graph& g) const;
    friend bool operator==(const VertexRef&, const VertexRef&) = default;
};

struct RestoreCell {
    VertexRef from, to;
    ExtInt value;
    friend bool operator==(const RestoreCell&, const RestoreCell&) = default;
};

/// One primitive move. Vectors and matrices are indexed by the vertex order of
/// the graph the move is applied to.
///
///  O         vertex, parts (one row per part), names (optional, one per part)
///  Oinv      group, name (optional)
///  Iplus     group, columns (one column per group member, in group order)
///  Rplus     vertex, name (optional, for the new source)
///  Rplusinv  vertex (a regular source), in, out, restore, name (optional)
struct Move {
    MoveKind kind = MoveKind::O;
    VertexRef vertex;
    std::vector<VertexRef> group;
    Matrix<ExtInt> parts;
    Matrix<ExtInt> columns;
    std::vector<std::string> names;
    std::optional<std::string> name;
    std::vector<ExtInt> in, out;
    std::vector<RestoreCell> restore;

    friend bool operator==(const Move&, const Move&) = default;
};

using MoveScript = std::vector<Move>;

// Primitive moves. Every one throws DomainError naming the violated condition.

/// (O). w^1 keeps w's position and takes names[0] (default: w's name); the
/// other parts are appended in order with names[k] (default: fresh names).
[[nodiscard]] Graph outsplit(const Graph& g, std::size_t w, const Matrix<ExtInt>& parts,
                             const std::vector<std::string>& names = {});
/// (O) in reverse. The merged vertex sits at the smallest group position.
[[nodiscard]] Graph outsplit_inverse(const Graph& g, const std::vector<std::size_t>& group,
                                     const std::optional<std::string>& name = std::nullopt);
/// (I-). parts(k, u) counts edges u -> w sent to the k-th copy. Never allowed in scripts.
[[nodiscard]] Graph insplit(const Graph& g, std::size_t w, const Matrix<ExtInt>& parts,
                            const std::vector<std::string>& names = {});

struct IplusResult {
    Graph graph;
    Graph witness;  ///< the common graph G, with the group amalgamated
};
/// (I+) as a redistribution of the in-columns of a group with identical out-rows.
[[nodiscard]] IplusResult iplus_redistribute(const Graph& g, const std::vector<std::size_t>& group,
                                             const Matrix<ExtInt>& new_columns);
/// The common graph G of an (I+) group: the group amalgamated at its smallest position.
[[nodiscard]] Graph iplus_witness(const Graph& g, const std::vector<std::size_t>& group);

/// (R+). The new source takes w's position, named `name` (default w + "~").
[[nodiscard]] Graph rplus(const Graph& g, std::size_t w, const std::optional<std::string>& name = std::nullopt);

struct RplusInverseSpec {
    std::vector<ExtInt> in;   ///< edges u -> new vertex
    std::vector<ExtInt> out;  ///< edges new vertex -> v; must equal the source's row
    std::vector<std::tuple<std::size_t, std::size_t, ExtInt>> restore;  ///< values where inf - inf arose
};
/// (R+) in reverse: the regular source s becomes a regular vertex (same position,
/// named `name`, default s's name) and two-step paths through it are removed.
[[nodiscard]] Graph rplus_inverse(const Graph& g, std::size_t s, const RplusInverseSpec& spec,
                                  const std::optional<std::string>& name = std::nullopt);

/// Merge all regular sources into one by a single reverse (O) move.
struct Collected {
    Graph graph;
    MoveScript script;
};
[[nodiscard]] Collected collect_sources(const Graph& g);

// Scripts.

struct StepLog {
    DBPair db;                     ///< the pair after this step
    std::optional<Graph> witness;  ///< for (I+) steps
};

struct ReplayResult {
    Graph graph;
    std::vector<StepLog> log;
    std::optional<std::size_t> failed_step;
    std::string error;

    [[nodiscard]] bool ok() const { return !failed_step; }
};

[[nodiscard]] Graph apply_move(const Graph& g, const Move& m, std::optional<Graph>* witness = nullptr);
/// Replays eagerly and stops at the first failing step.
[[nodiscard]] ReplayResult apply_script(const Graph& g, const MoveScript& s);

/// The move taking `after` back to `before`, where `after` = apply_move(before, m).
[[nodiscard]] Move inverse_move(const Graph& before, const Move& m, const Graph& after);

/// Re-express positional data of `m` for a graph whose vertex order is `to`
/// instead of `from` (both lists of the same names). Vertex references become names.
[[nodiscard]] Move reorder(const Move& m, const std::vector<std::string>& from, const std::vector<std::string>& to);

}  // namespace gm
