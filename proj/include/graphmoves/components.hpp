#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "graphmoves/db_pair.hpp"

namespace gm {

/// A maximal set of mutually reachable vertices.
struct Component {
    std::vector<std::size_t> members;  ///< regular members first, then singular; ascending within each
    std::size_t regular = 0;
    std::size_t singular = 0;
    bool cyclic = false;  ///< some member has a path back to itself

    [[nodiscard]] std::size_t size() const { return members.size(); }
    /// Cyclic or singular. A lone regular vertex without a loop is transient.
    [[nodiscard]] bool essential() const { return cyclic || singular > 0; }
};

/// Components with the preorder  γ(i) <= γ(j)  iff  there is a path from j to i.
///
/// `comps` is in block order: a linear extension listing larger components
/// first, ties broken by smallest member index.
struct ComponentStructure {
    std::vector<Component> comps;
    std::vector<std::size_t> comp_of;
    std::vector<std::vector<bool>> le;  ///< le[x][y]  <=>  comps[x] <= comps[y]
    std::vector<std::vector<bool>> reach;  ///< reach[i][j]  <=>  path of length >= 1 from i to j

    [[nodiscard]] bool leq(std::size_t x, std::size_t y) const { return le[x][y]; }
    /// All vertices, component by component in block order.
    [[nodiscard]] std::vector<std::size_t> vertex_order() const;
};

/// `edge[i][j]` is true when there is at least one edge i -> j.
[[nodiscard]] ComponentStructure components(const std::vector<std::vector<bool>>& edge,
                                            const std::vector<bool>& singular);
[[nodiscard]] ComponentStructure components(const Graph& g);
[[nodiscard]] ComponentStructure components(const DBPair& p);

/// The pair reordered into block order (singular vertices last in each block).
[[nodiscard]] DBPair canonically_ordered(const DBPair& p);

/// Membership in MG(n): entry (r, c) may be nonzero only when
/// γ(index[r]) <= γ(index[c]). `index` maps matrix positions to vertices.
template <class T>
[[nodiscard]] bool in_block_pattern(const Matrix<T>& x, const ComponentStructure& cs,
                                    std::span<const std::size_t> index) {
    for (std::size_t r = 0; r < x.rows(); ++r)
        for (std::size_t c = 0; c < x.cols(); ++c)
            if (x(r, c) != T(0) && !cs.leq(cs.comp_of[index[r]], cs.comp_of[index[c]])) return false;
    return true;
}

}  // namespace gm
