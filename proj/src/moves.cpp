#include "graphmoves/moves.hpp"

#include <algorithm>
#include <set>

namespace gm {

const char* to_string(MoveKind k) {
    switch (k) {
        case MoveKind::O: return "O";
        case MoveKind::Oinv: return "Oinv";
        case MoveKind::Iplus: return "Iplus";
        case MoveKind::Rplus: return "Rplus";
        case MoveKind::Rplusinv: return "Rplusinv";
    }
    return "?";
}

MoveKind move_kind_from_string(const std::string& s) {
    for (auto k : {MoveKind::O, MoveKind::Oinv, MoveKind::Iplus, MoveKind::Rplus, MoveKind::Rplusinv})
        if (s == to_string(k)) return k;
    if (s == "Iminus" || s == "I-")
        throw DomainError("move (I-) is not allowed in scripts: it does not preserve the unital C*-algebra");
    throw DomainError("unknown move '" + s + "'");
}

std::size_t VertexRef::resolve(const Graph& g) const {
    if (const auto* i = std::get_if<std::size_t>(&v)) {
        if (*i >= g.size()) throw DomainError("vertex index " + std::to_string(*i) + " out of range");
        return *i;
    }
    return g.index_of(std::get<std::string>(v));
}

namespace {

void check_vertex(const Graph& g, std::size_t w) {
    if (w >= g.size()) throw DomainError("vertex index " + std::to_string(w) + " out of range");
}

void check_group(const Graph& g, const std::vector<std::size_t>& group) {
    if (group.empty()) throw DomainError("empty vertex group");
    std::set<std::size_t> seen;
    for (auto v : group) {
        check_vertex(g, v);
        if (!seen.insert(v).second) throw DomainError("vertex '" + g.name(v) + "' repeated in group");
    }
}

bool in_group(const std::vector<std::size_t>& group, std::size_t v) {
    return std::find(group.begin(), group.end(), v) != group.end();
}

/// Names for k copies of w: names[0] (default w's own) then fresh ones.
std::vector<std::string> copy_names(const Graph& g, std::size_t w, std::size_t k, const std::vector<std::string>& given) {
    if (!given.empty()) {
        if (given.size() != k)
            throw DomainError("expected " + std::to_string(k) + " names, got " + std::to_string(given.size()));
        return given;
    }
    std::vector<std::string> out{g.name(w)};
    std::set<std::string> used(g.names().begin(), g.names().end());
    for (std::size_t k2 = 1, j = 1; j < k; ++k2) {
        auto cand = g.name(w) + "." + std::to_string(k2);
        if (used.insert(cand).second) {
            out.push_back(cand);
            ++j;
        }
    }
    return out;
}

/// Graph with w split into k copies: copy 0 at w, copy j at n + j - 1.
struct Split {
    std::size_t n, k;
    [[nodiscard]] std::size_t copy(std::size_t j, std::size_t w) const { return j == 0 ? w : n + j - 1; }
};

ExtInt row_sum(std::span<const ExtInt> r) {
    ExtInt s = 0;
    for (const auto& x : r) s += x;
    return s;
}

void require_nonnegative(const Matrix<ExtInt>& m, const char* what) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (const auto& x : m.row(i))
            if (x < ExtInt(0)) throw DomainError(std::string(what) + " contain a negative multiplicity");
}

/// Merge `group` at its smallest position; `merged_row`/`merged_col` give the
/// new row and column over the original indices (group entries ignored) and
/// `self` the new loop count.
Graph amalgamate(const Graph& g, const std::vector<std::size_t>& group, const std::vector<ExtInt>& merged_row,
                 const std::vector<ExtInt>& merged_col, ExtInt self, const std::string& name) {
    const std::size_t p = *std::min_element(group.begin(), group.end());
    std::vector<std::size_t> keep;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (v == p || !in_group(group, v)) keep.push_back(v);
    Matrix<ExtInt> a(keep.size(), keep.size());
    std::vector<std::string> names;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        names.push_back(keep[i] == p ? name : g.name(keep[i]));
        for (std::size_t j = 0; j < keep.size(); ++j) {
            const bool ri = keep[i] == p, cj = keep[j] == p;
            if (ri && cj) a(i, j) = self;
            else if (ri) a(i, j) = merged_row[keep[j]];
            else if (cj) a(i, j) = merged_col[keep[i]];
            else a(i, j) = g.at(keep[i], keep[j]);
        }
    }
    return Graph(std::move(names), std::move(a));
}

}  // namespace

Graph outsplit(const Graph& g, std::size_t w, const Matrix<ExtInt>& parts, const std::vector<std::string>& names) {
    check_vertex(g, w);
    const std::size_t n = g.size();
    if (g.is_sink(w)) throw DomainError("(O) requires a vertex that is not a sink; '" + g.name(w) + "' is a sink");
    if (parts.rows() == 0) throw DomainError("(O) requires at least one part");
    if (parts.cols() != n) throw DomainError("each part must have one entry per vertex");
    require_nonnegative(parts, "parts");
    std::size_t infinite = 0;
    for (std::size_t k = 0; k < parts.rows(); ++k) {
        auto s = row_sum(parts.row(k));
        if (s.is_zero()) throw DomainError("(O) partition sets must be nonempty; part " + std::to_string(k + 1) + " is empty");
        if (s.is_inf()) ++infinite;
    }
    if (infinite > 1) throw DomainError("(O) allows at most one of the partition sets to be infinite");
    for (std::size_t v = 0; v < n; ++v) {
        ExtInt s = 0;
        for (std::size_t k = 0; k < parts.rows(); ++k) s += parts(k, v);
        if (s != g.at(w, v))
            throw DomainError("parts do not partition the edges from '" + g.name(w) + "' to '" + g.name(v) + "'");
    }
    const std::size_t k = parts.rows();
    auto nn = copy_names(g, w, k, names);
    Split sp{n, k};
    Matrix<ExtInt> a(n + k - 1, n + k - 1);
    std::vector<std::string> all = g.names();
    all[w] = nn[0];
    for (std::size_t j = 1; j < k; ++j) all.push_back(nn[j]);
    for (std::size_t u = 0; u < n; ++u) {
        if (u == w) continue;
        for (std::size_t v = 0; v < n; ++v)
            if (v != w) a(u, v) = g.at(u, v);
        for (std::size_t i = 0; i < k; ++i) a(u, sp.copy(i, w)) = g.at(u, w);
    }
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t v = 0; v < n; ++v)
            if (v != w) a(sp.copy(j, w), v) = parts(j, v);
        for (std::size_t i = 0; i < k; ++i) a(sp.copy(j, w), sp.copy(i, w)) = parts(j, w);
    }
    return Graph(std::move(all), std::move(a));
}

Graph outsplit_inverse(const Graph& g, const std::vector<std::size_t>& group, const std::optional<std::string>& name) {
    check_group(g, group);
    const std::size_t n = g.size();
    const std::size_t first = group.front();
    for (std::size_t u = 0; u < n; ++u)
        for (auto m : group)
            if (g.at(u, m) != g.at(u, first))
                throw DomainError("reverse (O) requires identical incoming edges; '" + g.name(m) + "' and '" +
                                  g.name(first) + "' differ in edges from '" + g.name(u) + "'");
    std::size_t infinite = 0;
    for (auto m : group) {
        if (g.is_sink(m)) throw DomainError("reverse (O) cannot merge the sink '" + g.name(m) + "'");
        if (g.is_infinite_emitter(m)) ++infinite;
    }
    if (infinite > 1) throw DomainError("reverse (O) allows at most one infinite emitter in the group");
    std::vector<ExtInt> row(n, 0), col(n, 0);
    ExtInt self = 0;
    for (auto m : group) self += g.at(m, first);
    for (std::size_t v = 0; v < n; ++v) {
        col[v] = g.at(v, first);
        for (auto m : group) row[v] += g.at(m, v);
    }
    const std::size_t p = *std::min_element(group.begin(), group.end());
    return amalgamate(g, group, row, col, self, name.value_or(g.name(p)));
}

Graph insplit(const Graph& g, std::size_t w, const Matrix<ExtInt>& parts, const std::vector<std::string>& names) {
    check_vertex(g, w);
    const std::size_t n = g.size();
    if (!g.is_regular(w)) throw DomainError("(I-) requires a regular vertex; '" + g.name(w) + "' is singular");
    if (parts.rows() == 0) throw DomainError("(I-) requires at least one part");
    if (parts.cols() != n) throw DomainError("each part must have one entry per vertex");
    require_nonnegative(parts, "parts");
    for (std::size_t u = 0; u < n; ++u) {
        ExtInt s = 0;
        for (std::size_t k = 0; k < parts.rows(); ++k) s += parts(k, u);
        if (s != g.at(u, w))
            throw DomainError("parts do not partition the edges from '" + g.name(u) + "' to '" + g.name(w) + "'");
    }
    const std::size_t k = parts.rows();
    auto nn = copy_names(g, w, k, names);
    Split sp{n, k};
    Matrix<ExtInt> a(n + k - 1, n + k - 1);
    std::vector<std::string> all = g.names();
    all[w] = nn[0];
    for (std::size_t j = 1; j < k; ++j) all.push_back(nn[j]);
    for (std::size_t u = 0; u < n; ++u) {
        if (u == w) continue;
        for (std::size_t v = 0; v < n; ++v)
            if (v != w) a(u, v) = g.at(u, v);
        for (std::size_t i = 0; i < k; ++i) a(u, sp.copy(i, w)) = parts(i, u);
    }
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t v = 0; v < n; ++v)
            if (v != w) a(sp.copy(j, w), v) = g.at(w, v);
        for (std::size_t i = 0; i < k; ++i) a(sp.copy(j, w), sp.copy(i, w)) = parts(i, w);
    }
    return Graph(std::move(all), std::move(a));
}

Graph iplus_witness(const Graph& g, const std::vector<std::size_t>& group) {
    check_group(g, group);
    const std::size_t n = g.size();
    const std::size_t first = group.front();
    for (auto m : group)
        for (std::size_t v = 0; v < n; ++v)
            if (g.at(m, v) != g.at(first, v))
                throw DomainError("(I+) requires identical outgoing edges; '" + g.name(m) + "' and '" +
                                  g.name(first) + "' differ in edges to '" + g.name(v) + "'");
    auto deg = g.out_degree(first);
    if (deg.is_zero() || deg.is_inf())
        throw DomainError("(I+) requires the common vertex w of G to be regular");
    std::vector<ExtInt> row(n, 0), col(n, 0);
    ExtInt self = 0;
    for (auto m : group) self += g.at(first, m);
    for (std::size_t v = 0; v < n; ++v) {
        row[v] = g.at(first, v);
        for (auto m : group) col[v] += g.at(v, m);
    }
    const std::size_t p = *std::min_element(group.begin(), group.end());
    return amalgamate(g, group, row, col, self, g.name(p));
}

IplusResult iplus_redistribute(const Graph& g, const std::vector<std::size_t>& group, const Matrix<ExtInt>& cols) {
    auto witness = iplus_witness(g, group);
    const std::size_t n = g.size(), k = group.size();
    if (cols.rows() != n || cols.cols() != k)
        throw DomainError("(I+) columns must have one row per vertex and one column per group member");
    require_nonnegative(cols, "columns");
    for (std::size_t u = 0; u < n; ++u) {
        if (in_group(group, u)) {
            for (std::size_t i = 0; i < k; ++i)
                if (cols(u, i) != cols(group.front(), i))
                    throw DomainError("(I+) edges from the group to member '" + g.name(group[i]) +
                                      "' must be the same for every group member");
        }
        ExtInt before = 0, after = 0;
        for (std::size_t i = 0; i < k; ++i) {
            before += g.at(u, group[i]);
            after += cols(u, i);
        }
        if (before != after)
            throw DomainError("(I+) must keep the number of edges from '" + g.name(u) + "' into the group (" +
                              before.str() + ", got " + after.str() + ")");
    }
    Matrix<ExtInt> a = g.adjacency();
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t i = 0; i < k; ++i) a(u, group[i]) = cols(u, i);
    Graph out(g.names(), std::move(a));
    return {out, std::move(witness)};
}

Graph rplus(const Graph& g, std::size_t w, const std::optional<std::string>& name) {
    check_vertex(g, w);
    if (!g.is_regular(w)) throw DomainError("(R+) requires a regular vertex; '" + g.name(w) + "' is singular");
    if (g.supports_loop(w)) throw DomainError("(R+) requires a vertex which does not support a loop; '" + g.name(w) + "' does");
    const std::size_t n = g.size();
    std::string nm;
    if (name) {
        nm = *name;
    } else {
        nm = g.name(w) + "~";
        while (g.find(nm)) nm += "~";
    }
    Matrix<ExtInt> a(n, n);
    for (std::size_t u = 0; u < n; ++u) {
        if (u == w) continue;
        for (std::size_t v = 0; v < n; ++v)
            if (v != w) a(u, v) = g.at(u, v) + g.at(u, w) * g.at(w, v);
    }
    for (std::size_t v = 0; v < n; ++v) a(w, v) = g.at(w, v);
    auto names = g.names();
    names[w] = nm;
    return Graph(std::move(names), std::move(a));
}

Graph rplus_inverse(const Graph& g, std::size_t s, const RplusInverseSpec& spec, const std::optional<std::string>& name) {
    check_vertex(g, s);
    const std::size_t n = g.size();
    if (!g.is_regular_source(s)) throw DomainError("reverse (R+) requires a regular source; '" + g.name(s) + "' is not");
    if (spec.in.size() != n || spec.out.size() != n) throw DomainError("reverse (R+) vectors must have one entry per vertex");
    for (std::size_t v = 0; v < n; ++v) {
        if (spec.in[v] < ExtInt(0) || spec.out[v] < ExtInt(0)) throw DomainError("reverse (R+) data contain a negative multiplicity");
        if (spec.out[v] != g.at(s, v)) throw DomainError("reverse (R+) out-row must equal the edges of the source '" + g.name(s) + "'");
    }
    if (!spec.in[s].is_zero()) throw DomainError("reverse (R+) cannot create a loop at the new vertex");
    Matrix<ExtInt> a(n, n);
    std::vector<std::vector<bool>> undetermined(n, std::vector<bool>(n, false));
    for (std::size_t u = 0; u < n; ++u) {
        if (u == s) continue;
        for (std::size_t v = 0; v < n; ++v) {
            if (v == s) continue;
            auto through = spec.in[u] * spec.out[v];
            if (through > g.at(u, v))
                throw DomainError("reverse (R+) would leave a negative number of edges from '" + g.name(u) + "' to '" +
                                  g.name(v) + "'");
            a(u, v) = ExtInt::sub(g.at(u, v), through, true);
            undetermined[u][v] = through.is_inf();
        }
        a(u, s) = spec.in[u];
    }
    for (std::size_t v = 0; v < n; ++v) a(s, v) = spec.out[v];
    for (const auto& [u, v, x] : spec.restore) {
        if (u >= n || v >= n || !undetermined[u][v])
            throw DomainError("reverse (R+) restore cells are only allowed where inf - inf arose");
        a(u, v) = x;
    }
    auto names = g.names();
    names[s] = name.value_or(g.name(s));
    Graph cand(std::move(names), std::move(a));
    if (rplus(cand, s, g.name(s)) != g) throw DomainError("reverse (R+) check failed: (R+) does not reproduce the graph");
    return cand;
}

Collected collect_sources(const Graph& g) {
    auto sources = g.regular_sources();
    if (sources.size() <= 1) return {g, {}};
    std::vector<std::string> others;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (!in_group(sources, v)) others.push_back(g.name(v));
    Move m;
    m.kind = MoveKind::Oinv;
    for (auto s : sources) m.group.emplace_back(g.name(s));
    m.name = source_name(others);
    auto out = outsplit_inverse(g, sources, m.name);
    return {std::move(out), {m}};
}

namespace {

std::vector<std::size_t> resolve_all(const Graph& g, const std::vector<VertexRef>& refs) {
    std::vector<std::size_t> out;
    for (const auto& r : refs) out.push_back(r.resolve(g));
    return out;
}

}  // namespace

Graph apply_move(const Graph& g, const Move& m, std::optional<Graph>* witness) {
    switch (m.kind) {
        case MoveKind::O: return outsplit(g, m.vertex.resolve(g), m.parts, m.names);
        case MoveKind::Oinv: return outsplit_inverse(g, resolve_all(g, m.group), m.name);
        case MoveKind::Iplus: {
            auto r = iplus_redistribute(g, resolve_all(g, m.group), m.columns);
            if (witness) *witness = std::move(r.witness);
            return r.graph;
        }
        case MoveKind::Rplus: return rplus(g, m.vertex.resolve(g), m.name);
        case MoveKind::Rplusinv: {
            RplusInverseSpec spec{m.in, m.out, {}};
            for (const auto& c : m.restore) spec.restore.emplace_back(c.from.resolve(g), c.to.resolve(g), c.value);
            return rplus_inverse(g, m.vertex.resolve(g), spec, m.name);
        }
    }
    throw DomainError("unknown move");
}

ReplayResult apply_script(const Graph& g, const MoveScript& s) {
    ReplayResult r{g, {}, std::nullopt, {}};
    for (std::size_t i = 0; i < s.size(); ++i) {
        try {
            std::optional<Graph> w;
            Graph next = apply_move(r.graph, s[i], &w);
            r.log.push_back({to_db(next), std::move(w)});
            r.graph = std::move(next);
        } catch (const DomainError& e) {
            r.failed_step = i;
            r.error = e.what();
            return r;
        }
    }
    return r;
}

Move inverse_move(const Graph& before, const Move& m, const Graph& after) {
    Move inv;
    switch (m.kind) {
        case MoveKind::O: {
            const auto w = m.vertex.resolve(before);
            const std::size_t k = m.parts.rows();
            inv.kind = MoveKind::Oinv;
            inv.group.emplace_back(after.name(w));
            for (std::size_t j = 1; j < k; ++j) inv.group.emplace_back(after.name(before.size() + j - 1));
            inv.name = before.name(w);
            return inv;
        }
        case MoveKind::Oinv: {
            auto group = resolve_all(before, m.group);
            const std::size_t p = *std::min_element(group.begin(), group.end());
            std::stable_partition(group.begin(), group.end(), [&](auto v) { return v == p; });
            const std::size_t merged = after.index_of(m.name.value_or(before.name(p)));
            inv.kind = MoveKind::O;
            inv.vertex = after.name(merged);
            inv.parts = Matrix<ExtInt>(group.size(), after.size());
            for (std::size_t j = 0; j < group.size(); ++j) {
                inv.names.push_back(before.name(group[j]));
                for (std::size_t v = 0; v < after.size(); ++v)
                    inv.parts(j, v) = v == merged ? before.at(group[j], group.front())
                                                  : before.at(group[j], before.index_of(after.name(v)));
            }
            return inv;
        }
        case MoveKind::Iplus: {
            auto group = resolve_all(before, m.group);
            inv.kind = MoveKind::Iplus;
            for (auto v : group) inv.group.emplace_back(before.name(v));
            inv.columns = Matrix<ExtInt>(before.size(), group.size());
            for (std::size_t u = 0; u < before.size(); ++u)
                for (std::size_t i = 0; i < group.size(); ++i) inv.columns(u, i) = before.at(u, group[i]);
            return inv;
        }
        case MoveKind::Rplus: {
            const auto w = m.vertex.resolve(before);
            const std::size_t n = before.size();
            inv.kind = MoveKind::Rplusinv;
            inv.vertex = after.name(w);
            inv.name = before.name(w);
            inv.in = before.adjacency().col_vec(w);
            inv.out = before.adjacency().row_vec(w);
            for (std::size_t u = 0; u < n; ++u)
                for (std::size_t v = 0; v < n; ++v)
                    if (u != w && v != w && (inv.in[u] * inv.out[v]).is_inf() && before.at(u, v).is_finite())
                        inv.restore.push_back({after.name(u), after.name(v), before.at(u, v)});
            return inv;
        }
        case MoveKind::Rplusinv: {
            const auto s = m.vertex.resolve(before);
            inv.kind = MoveKind::Rplus;
            inv.vertex = after.name(s);
            inv.name = before.name(s);
            return inv;
        }
    }
    throw DomainError("unknown move");
}

Move reorder(const Move& m, const std::vector<std::string>& from, const std::vector<std::string>& to) {
    if (from.size() != to.size()) throw DomainError("cannot reorder a move between graphs of different sizes");
    const std::size_t n = to.size();
    std::vector<std::size_t> f(n);
    for (std::size_t t = 0; t < n; ++t) {
        auto it = std::find(from.begin(), from.end(), to[t]);
        if (it == from.end()) throw DomainError("cannot reorder a move: vertex '" + to[t] + "' unknown");
        f[t] = static_cast<std::size_t>(it - from.begin());
    }
    auto named = [&](const VertexRef& r) -> VertexRef {
        if (const auto* i = std::get_if<std::size_t>(&r.v)) return from.at(*i);
        return r;
    };
    Move out = m;
    out.vertex = named(m.vertex);
    for (auto& g : out.group) g = named(g);
    for (auto& c : out.restore) {
        c.from = named(c.from);
        c.to = named(c.to);
    }
    if (m.parts.cols() == n) {
        for (std::size_t k = 0; k < m.parts.rows(); ++k)
            for (std::size_t t = 0; t < n; ++t) out.parts(k, t) = m.parts(k, f[t]);
    }
    if (m.columns.rows() == n) {
        for (std::size_t t = 0; t < n; ++t)
            for (std::size_t i = 0; i < m.columns.cols(); ++i) out.columns(t, i) = m.columns(f[t], i);
    }
    if (m.in.size() == n)
        for (std::size_t t = 0; t < n; ++t) out.in[t] = m.in[f[t]];
    if (m.out.size() == n)
        for (std::size_t t = 0; t < n; ++t) out.out[t] = m.out[f[t]];
    return out;
}

}  // namespace gm
