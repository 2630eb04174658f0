#include "graphmoves/components.hpp"

#include <algorithm>

namespace gm {

std::vector<std::size_t> ComponentStructure::vertex_order() const {
    std::vector<std::size_t> out;
    for (const auto& c : comps) out.insert(out.end(), c.members.begin(), c.members.end());
    return out;
}

ComponentStructure components(const std::vector<std::vector<bool>>& edge, const std::vector<bool>& singular) {
    const std::size_t n = edge.size();
    ComponentStructure cs;
    cs.reach = edge;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (cs.reach[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (cs.reach[k][j]) cs.reach[i][j] = true;

    // Group by mutual reachability, in order of first member.
    std::vector<std::size_t> raw_of(n, n);
    std::vector<Component> raw;
    for (std::size_t i = 0; i < n; ++i) {
        if (raw_of[i] != n) continue;
        Component c;
        std::vector<std::size_t> reg, sing;
        for (std::size_t j = i; j < n; ++j) {
            if (j == i || (cs.reach[i][j] && cs.reach[j][i])) {
                raw_of[j] = raw.size();
                (singular[j] ? sing : reg).push_back(j);
                if (cs.reach[j][j]) c.cyclic = true;
            }
        }
        c.regular = reg.size();
        c.singular = sing.size();
        c.members = reg;
        c.members.insert(c.members.end(), sing.begin(), sing.end());
        raw.push_back(std::move(c));
    }

    // raw_le[x][y]: path from y to x, or x == y.
    const std::size_t m = raw.size();
    auto raw_le = [&](std::size_t x, std::size_t y) {
        return x == y || cs.reach[raw[y].members.front()][raw[x].members.front()];
    };

    // Linear extension, larger first; ties by smallest member.
    std::vector<bool> placed(m, false);
    std::vector<std::size_t> order;
    while (order.size() < m) {
        std::size_t best = m;
        for (std::size_t x = 0; x < m; ++x) {
            if (placed[x]) continue;
            bool ready = true;
            for (std::size_t y = 0; y < m; ++y)
                if (!placed[y] && y != x && raw_le(x, y)) ready = false;
            if (!ready) continue;
            auto key = *std::min_element(raw[x].members.begin(), raw[x].members.end());
            if (best == m || key < *std::min_element(raw[best].members.begin(), raw[best].members.end()))
                best = x;
        }
        placed[best] = true;
        order.push_back(best);
    }

    std::vector<std::size_t> new_of(m);
    for (std::size_t k = 0; k < m; ++k) new_of[order[k]] = k;
    cs.comp_of.resize(n);
    for (std::size_t i = 0; i < n; ++i) cs.comp_of[i] = new_of[raw_of[i]];
    for (auto x : order) cs.comps.push_back(raw[x]);
    cs.le.assign(m, std::vector<bool>(m, false));
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) cs.le[new_of[x]][new_of[y]] = raw_le(x, y);
    return cs;
}

ComponentStructure components(const Graph& g) {
    const std::size_t n = g.size();
    std::vector<std::vector<bool>> edge(n, std::vector<bool>(n));
    std::vector<bool> sing(n);
    for (std::size_t i = 0; i < n; ++i) {
        sing[i] = g.is_singular(i);
        for (std::size_t j = 0; j < n; ++j) edge[i][j] = g.at(i, j).positive();
    }
    return components(edge, sing);
}

ComponentStructure components(const DBPair& p) {
    const std::size_t n = p.size();
    std::vector<std::vector<bool>> edge(n, std::vector<bool>(n));
    std::vector<bool> sing(n);
    for (std::size_t i = 0; i < n; ++i) {
        sing[i] = p.is_singular(i);
        for (std::size_t j = 0; j < n; ++j) edge[i][j] = p.has_edge(i, j);
    }
    return components(edge, sing);
}

DBPair canonically_ordered(const DBPair& p) { return p.permuted(components(p).vertex_order()); }

}  // namespace gm
