#include "graphmoves/matops.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "graphmoves/canonical.hpp"

namespace gm {

const char* to_string(OpKind k) {
    switch (k) {
        case OpKind::RowAdd: return "rowAdd";
        case OpKind::RowSub: return "rowSub";
        case OpKind::ColAdd: return "colAdd";
        case OpKind::AntennaAdd: return "antennaAdd";
        case OpKind::AntennaSub: return "antennaSub";
    }
    return "?";
}

OpKind op_kind_from_string(const std::string& s) {
    for (auto k : {OpKind::RowAdd, OpKind::RowSub, OpKind::ColAdd, OpKind::AntennaAdd, OpKind::AntennaSub})
        if (s == to_string(k)) return k;
    throw DomainError("unknown operation '" + s + "'");
}

// ---- formulas

namespace {

void check_index(const DBPair& p, std::size_t i) {
    if (i >= p.size()) throw DomainError("index " + std::to_string(i) + " out of range");
}

void check_distinct(const DBPair& p, std::size_t src, std::size_t dst) {
    check_index(p, src);
    check_index(p, dst);
    if (src == dst) throw DomainError("src and dst must differ");
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw DomainError("integer overflow in D");
    return r;
}

}  // namespace

DBPair add_row(const DBPair& p, std::size_t src, std::size_t dst) {
    check_distinct(p, src, dst);
    DBPair q = p;
    for (std::size_t k = 0; k < p.size(); ++k) q.b(dst, k) = p.b(dst, k) + p.b(src, k);
    q.d[dst] = checked_add(p.d[dst], p.d[src]);
    return q;
}

DBPair sub_row(const DBPair& p, std::size_t src, std::size_t dst) {
    check_distinct(p, src, dst);
    DBPair q = p;
    for (std::size_t k = 0; k < p.size(); ++k) q.b(dst, k) = ExtInt::sub(p.b(dst, k), p.b(src, k), p.is_singular(k));
    q.d[dst] = checked_add(p.d[dst], -p.d[src]);
    return q;
}

DBPair add_col(const DBPair& p, std::size_t src, std::size_t dst) {
    check_distinct(p, src, dst);
    DBPair q = p;
    for (std::size_t k = 0; k < p.size(); ++k) q.b(k, dst) = p.b(k, dst) + p.b(k, src);
    return q;
}

DBPair add_antenna(const DBPair& p, std::size_t src, std::int64_t times) {
    check_index(p, src);
    if (!p.is_regular(src)) throw DomainError("vertex " + p.labels[src] + " is singular");
    DBPair q = p;
    for (std::size_t k = 0; k < p.size(); ++k) {
        std::int64_t step;
        if (__builtin_mul_overflow(p.b(k, src).value(), times, &step)) throw DomainError("integer overflow in D");
        q.d[k] = checked_add(q.d[k], step);
    }
    return q;
}

namespace {

std::pair<std::size_t, std::int64_t> z_support(const DBPair& p, const std::vector<std::int64_t>& z) {
    if (z.empty()) return {0, 0};
    if (z.size() != p.size()) throw DomainError("z has length " + std::to_string(z.size()) + ", expected " + std::to_string(p.size()));
    std::size_t l = 0;
    std::int64_t k = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (z[i] == 0) continue;
        if (z[i] < 0) throw DomainError("z must be nonnegative");
        if (k != 0) throw DomainError("z must be a multiple of a single basis vector");
        if (!p.is_regular(i)) throw DomainError("z is nonzero at singular index " + std::to_string(i));
        l = i;
        k = z[i];
    }
    return {l, k};
}

}  // namespace

DBPair apply_formula(const DBPair& p, const OpRecord& op) {
    switch (op.kind) {
        case OpKind::RowAdd: return add_row(p, op.src, op.dst);
        case OpKind::RowSub: {
            auto [l, k] = z_support(p, op.z);
            return sub_row(k ? add_antenna(p, l, k) : p, op.src, op.dst);
        }
        case OpKind::ColAdd: return add_col(p, op.src, op.dst);
        case OpKind::AntennaAdd: return add_antenna(p, op.src);
        case OpKind::AntennaSub: return add_antenna(p, op.src, -1);
    }
    throw DomainError("unknown operation");
}

// ---- legality

namespace {

ExtInt column_sum(const DBPair& p, std::size_t j) {
    ExtInt s = p.b(j, j);
    for (std::size_t i = 0; i < p.size(); ++i)
        if (i != j) s += p.b(i, j);
    return s;
}

}  // namespace

std::string row_add_basic_violation(const DBPair& p, std::size_t src, std::size_t dst) {
    check_distinct(p, src, dst);
    if (!p.b(dst, src).positive()) return "b[dst][src] must be positive (no edge " + p.labels[src] + " -> " + p.labels[dst] + ")";
    if (!column_sum(p, src).positive()) return "column " + p.labels[src] + " must have positive sum";
    return {};
}

std::string col_add_basic_violation(const DBPair& p, std::size_t src, std::size_t dst) {
    check_distinct(p, src, dst);
    if (!p.is_regular(src)) return "vertex " + p.labels[src] + " is singular";
    if (!p.b(src, dst).positive()) return "b[src][dst] must be positive (no edge " + p.labels[dst] + " -> " + p.labels[src] + ")";
    for (std::size_t j = 0; j < p.size(); ++j) {
        auto need = p.b(j, src).value() + (j == src ? 2 : 1);
        if (p.d[j] < need)
            return "d[" + p.labels[j] + "] = " + std::to_string(p.d[j]) + " must be at least " + std::to_string(need);
    }
    return {};
}

std::string antenna_add_basic_violation(const DBPair& p, std::size_t src) {
    check_index(p, src);
    if (!p.is_regular(src)) return "vertex " + p.labels[src] + " is singular";
    bool helper = false;
    for (std::size_t j = 0; j < p.size(); ++j)
        if (j != src && p.b(src, j).positive()) helper = true;
    if (!helper) return "row " + p.labels[src] + " has no positive off-diagonal entry";
    for (std::size_t j = 0; j < p.size(); ++j) {
        auto need = p.b(j, src).value() + (j == src ? 3 : 1);
        if (p.d[j] < need)
            return "d[" + p.labels[j] + "] = " + std::to_string(p.d[j]) + " must be at least " + std::to_string(need);
    }
    return {};
}

// ---- session-level compilation

namespace compile {

namespace {

std::size_t db_index(const DBPair& p, const std::string& name) { return p.index_of(name); }

void require(const std::string& violation) {
    if (!violation.empty()) throw DomainError(violation);
}

std::string rplus_name(const Graph& g, const std::string& w) {
    auto n = w + "~";
    return g.find(n) ? g.fresh_name(n) : n;
}

void emit_rplus(Session& s, const std::string& w) {
    Move m;
    m.kind = MoveKind::Rplus;
    m.vertex = w;
    m.name = rplus_name(s.graph(), w);
    s.emit(m);
}

/// Outsplit vertex w into parts; part 0 keeps the name. Returns the names.
std::vector<std::string> emit_outsplit(Session& s, const std::string& w, const std::vector<std::vector<ExtInt>>& parts,
                                       std::vector<std::string> names = {}) {
    const Graph& g = s.graph();
    Move m;
    m.kind = MoveKind::O;
    m.vertex = w;
    m.parts = Matrix<ExtInt>(parts.size(), g.size(), 0);
    for (std::size_t r = 0; r < parts.size(); ++r)
        for (std::size_t c = 0; c < g.size(); ++c) m.parts(r, c) = parts[r][c];
    if (names.empty()) {
        names.push_back(w);
        std::vector<std::string> used = g.names();
        for (std::size_t r = 1; r < parts.size(); ++r) {
            std::string n;
            for (std::size_t k = 1;; ++k) {
                n = w + "." + std::to_string(k);
                if (std::find(used.begin(), used.end(), n) == used.end()) break;
            }
            used.push_back(n);
            names.push_back(n);
        }
    }
    m.names = names;
    s.emit(m);
    return names;
}

std::vector<ExtInt> unit(std::size_t n, std::size_t k, ExtInt v = 1) {
    std::vector<ExtInt> e(n, 0);
    e[k] = v;
    return e;
}

std::vector<ExtInt> minus(const std::vector<ExtInt>& a, const std::vector<ExtInt>& b) {
    std::vector<ExtInt> r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        r[k] = a[k] - b[k];
        if (r[k] < ExtInt(0)) throw std::logic_error("negative multiplicity in a split");
    }
    return r;
}

bool all_zero(const std::vector<ExtInt>& v) {
    return std::all_of(v.begin(), v.end(), [](const ExtInt& x) { return x.is_zero(); });
}

/// Split off a regular source emitting exactly `row`; returns its name.
std::string peel(Session& s, const std::vector<ExtInt>& row) {
    auto src = s.source();
    if (!src) throw std::logic_error("no antennae to peel");
    const Graph& g = s.graph();
    auto c = g.adjacency().row_vec(g.index_of(*src));
    auto rest = minus(c, row);
    if (all_zero(rest)) return *src;
    return emit_outsplit(s, *src, {rest, row})[1];
}

void emit_iplus(Session& s, const std::vector<std::string>& group, const std::vector<std::vector<ExtInt>>& columns) {
    const Graph& g = s.graph();
    Move m;
    m.kind = MoveKind::Iplus;
    for (const auto& v : group) m.group.emplace_back(v);
    m.columns = Matrix<ExtInt>(g.size(), group.size(), 0);
    for (std::size_t c = 0; c < group.size(); ++c)
        for (std::size_t r = 0; r < g.size(); ++r) m.columns(r, c) = columns[c][r];
    s.emit(m);
}

std::vector<ExtInt> in_column(const Graph& g, const std::string& v) { return g.adjacency().col_vec(g.index_of(v)); }
std::vector<ExtInt> out_row(const Graph& g, const std::string& v) { return g.adjacency().row_vec(g.index_of(v)); }

void reverse_onto(Session& s, const Session& other) {
    if (!s.graph().same_up_to_relabeling(other.graph()))
        throw DomainError("the inverse operation does not lead back to the current graph");
    s.append_reverse(other);
}

}  // namespace

void row_add_basic(Session& s, const std::string& src, const std::string& dst) {
    auto p = s.db();
    require(row_add_basic_violation(p, db_index(p, src), db_index(p, dst)));
    const Graph& g = s.graph();
    auto row = out_row(g, src);
    auto e = unit(g.size(), g.index_of(dst));
    auto names = emit_outsplit(s, src, {minus(row, e), e});
    emit_rplus(s, names[1]);
    s.collect();
}

void col_add_basic(Session& s, const std::string& src, const std::string& dst) {
    auto p = s.db();
    require(col_add_basic_violation(p, db_index(p, src), db_index(p, dst)));
    auto pv = peel(s, out_row(s.graph(), src));
    const Graph& g = s.graph();
    auto cs = in_column(g, src), cp = in_column(g, pv);
    auto t = g.index_of(dst);
    cs[t] = cs[t] - 1;
    cp[t] = cp[t] + 1;
    emit_iplus(s, {src, pv}, {cs, cp});
    emit_rplus(s, pv);
    s.collect();
}

void antenna_add_basic(Session& s, const std::string& src) {
    auto p = s.db();
    auto i = db_index(p, src);
    require(antenna_add_basic_violation(p, i));
    std::size_t h = 0;
    while (h == i || !p.b(i, h).positive()) ++h;
    const auto helper = p.labels[h];

    auto source = s.source();
    if (!source) throw std::logic_error("no antennae");
    auto pv = peel(s, out_row(s.graph(), src));
    const Graph& g = s.graph();
    auto cs = in_column(g, src), cp = in_column(g, pv);
    for (auto u : {g.index_of(helper), g.index_of(*source)}) {
        cs[u] = cs[u] - 1;
        cp[u] = cp[u] + 1;
    }
    emit_iplus(s, {src, pv}, {cs, cp});
    emit_rplus(s, pv);
    s.collect();

    // now at (D + column src, B with column helper += column src)
    auto b = p;
    for (std::size_t j = 0; j < p.size(); ++j) b.d[j] += p.b(j, i).value();
    Session q(from_db(b));
    col_add_basic(q, src, helper);
    reverse_onto(s, q);
}

namespace {

std::vector<std::string> shortest_path(const Graph& g, const std::string& from, const std::string& to) {
    auto n = g.size();
    auto a = g.index_of(from), b = g.index_of(to);
    std::vector<std::size_t> prev(n, n);
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> queue{a};
    seen[a] = true;
    while (!queue.empty()) {
        auto u = queue.front();
        queue.pop_front();
        for (std::size_t v = 0; v < n; ++v) {
            if (seen[v] || g.at(u, v).is_zero() || g.is_regular_source(v)) continue;
            seen[v] = true;
            prev[v] = u;
            queue.push_back(v);
        }
    }
    if (!seen[b]) throw DomainError("no path from " + from + " to " + to);
    std::vector<std::string> path;
    for (auto v = b; v != a; v = prev[v]) path.push_back(g.name(v));
    path.push_back(from);
    std::reverse(path.begin(), path.end());
    return path;
}

// Add rows path[l] for l = last .. first to row dst (= path.back()).
void add_along(Session& s, const std::vector<std::string>& path, std::size_t first) {
    const auto& dst = path.back();
    for (std::size_t l = path.size() - 1; l-- > first;) {
        auto p = s.db();
        auto i = db_index(p, path[l]);
        if (column_sum(p, i) == ExtInt(0)) {
            emit_rplus(s, path[l]);
            s.collect();
        } else {
            require(row_add_basic_violation(p, i, db_index(p, dst)));
            row_add_basic(s, path[l], dst);
        }
    }
}

}  // namespace

void row_add_improved(Session& s, const std::string& src, const std::string& dst, bool allow_no_loop) {
    auto p = s.db();
    auto i = db_index(p, src), j = db_index(p, dst);
    check_distinct(p, i, j);
    if (!p.supports_loop(i)) {
        if (!allow_no_loop) throw DomainError("vertex " + src + " does not support a loop");
        if (!column_sum(p, i).positive()) throw DomainError("vertex " + src + " emits fewer than two edges");
    }
    auto path = shortest_path(s.graph(), src, dst);
    auto target = add_row(p, i, j);

    add_along(s, path, 0);
    Session q(from_db(target));
    add_along(q, path, 1);
    reverse_onto(s, q);
}

void row_add(Session& s, const std::string& src, const std::string& dst) {
    auto p = s.db();
    if (row_add_basic_violation(p, db_index(p, src), db_index(p, dst)).empty())
        row_add_basic(s, src, dst);
    else
        row_add_improved(s, src, dst, true);
}

void row_sub(Session& s, const std::string& src, const std::string& dst) {
    auto p = s.db();
    auto cand = sub_row(p, db_index(p, src), db_index(p, dst));
    auto bad = validate_db(cand);
    if (!bad.empty()) throw DomainError("subtracting row " + src + " from row " + dst + " gives an invalid pair: " + bad.front());
    Session q(from_db(cand));
    row_add(q, src, dst);
    reverse_onto(s, q);
}

namespace {

void antenna_sub_by(Session& s, const std::string& src, const std::function<void(Session&, const std::string&)>& add) {
    auto p = s.db();
    auto cand = add_antenna(p, db_index(p, src), -1);
    for (std::size_t k = 0; k < cand.size(); ++k)
        if (cand.d[k] < 1) throw DomainError("d[" + cand.labels[k] + "] would drop below 1");
    Session q(from_db(cand));
    add(q, src);
    reverse_onto(s, q);
}

void require_canonical(const DBPair& p) {
    auto r = check_canonical(p);
    if (r.canonical()) return;
    std::string why;
    for (const auto* c : {&r.loops, &r.edges, &r.infinite, &r.large})
        if (!c->ok) {
            why = c->witnesses.front();
            break;
        }
    throw DomainError("pair is not in canonical form: " + why);
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return a <= 0 ? 0 : (a + b - 1) / b; }

void lone_loop_case(Session& s, const std::string& v) {
    auto p = s.db();
    auto i = db_index(p, v);
    bool zero = true;
    for (std::size_t k = 0; k < p.size(); ++k)
        if (k != i && !p.b(k, i).is_zero()) zero = false;
    if (zero) return;

    const auto m = p.d[i] - 1;
    std::vector<std::string> chain;
    std::string last = v;
    for (std::int64_t k = 0; k < m; ++k) {
        const Graph& g0 = s.graph();
        auto t = peel(s, unit(g0.size(), g0.index_of(v)));
        const Graph& g = s.graph();
        Move r;
        r.kind = MoveKind::Rplusinv;
        r.vertex = t;
        r.in = unit(g.size(), g.index_of(last));
        r.out = out_row(g, t);
        r.name = g.fresh_name(v);
        s.emit(r);
        last = *r.name;
        chain.push_back(last);
        s.collect();
    }

    const Graph& g = s.graph();
    auto row = out_row(g, v);
    auto keep = unit(g.size(), g.index_of(chain.empty() ? v : chain.front()));
    auto names = emit_outsplit(s, v, {keep, minus(row, keep)});
    emit_rplus(s, names[1]);
    if (!chain.empty()) {
        emit_rplus(s, v);
        for (std::size_t k = 0; k + 1 < chain.size(); ++k) emit_rplus(s, chain[k]);
        Move rename;
        rename.kind = MoveKind::Oinv;
        rename.group = {chain.back()};
        rename.name = v;
        s.emit(rename);
    }
    s.collect();
}

void zero_diagonal_case(Session& s, const std::string& v) {
    auto p = s.db();
    auto i = db_index(p, v);
    std::size_t h = 0;
    while (h == i || !p.b(i, h).positive()) ++h;
    const auto helper = p.labels[h];

    row_add_basic(s, helper, v);
    row_add_basic(s, helper, v);

    p = s.db();
    i = db_index(p, v);
    std::vector<std::pair<std::string, std::int64_t>> mult;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (j == i || !p.b(j, i).positive()) continue;
        auto m = ceil_div(p.b(j, i).value() + 1 - p.d[j], p.d[i]);
        if (m > 0) mult.emplace_back(p.labels[j], m);
    }
    for (const auto& [j, m] : mult)
        for (std::int64_t k = 0; k < m; ++k) row_add_basic(s, v, j);
    antenna_add_basic(s, v);
    for (const auto& [j, m] : mult)
        for (std::int64_t k = 0; k < m; ++k) row_sub(s, v, j);
    row_sub(s, helper, v);
    row_sub(s, helper, v);
}

void large_case(Session& s, const std::string& v) {
    auto p = s.db();
    auto i = db_index(p, v);
    const auto d1 = p.d[i];
    const auto b11 = p.b(i, i).value();
    std::vector<std::string> targets;
    std::int64_t n = std::max<std::int64_t>({1, 2 * b11 - 2 * d1, b11 + 2 - d1});
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (j == i || !p.b(j, i).positive()) continue;
        targets.push_back(p.labels[j]);
        n = std::max(n, p.b(j, i).value() + b11 - p.d[j] - d1);
    }

    const Graph& g = s.graph();
    auto row = out_row(g, v);
    auto loop = unit(g.size(), g.index_of(v));
    std::vector<std::string> fresh;
    for (std::size_t k = 1; fresh.size() < 2; ++k) {
        auto c = v + "." + std::to_string(k);
        if (!g.find(c)) fresh.push_back(c);
    }
    const auto a = fresh[0], b = fresh[1];
    emit_outsplit(s, v, {loop, minus(row, loop)}, {a, b});

    row_add_basic(s, a, b);
    row_add_basic(s, a, b);
    row_add_basic(s, b, a);
    for (std::int64_t k = 0; k < n; ++k) antenna_add_basic(s, a);
    row_sub(s, b, a);
    row_sub(s, a, b);
    row_sub(s, a, b);

    row_add_basic(s, b, a);
    for (const auto& j : targets) row_add_basic(s, b, j);
    antenna_add_basic(s, b);
    for (const auto& j : targets) row_sub(s, b, j);
    for (std::int64_t k = 1; k < n; ++k) antenna_sub_by(s, a, antenna_add_basic);
    row_sub(s, b, a);

    Move merge;

    merge.kind = MoveKind::Oinv;
    merge.group = {a, b};
    merge.name = v;
    s.emit(merge);
}

}  // namespace

void antenna_add_canonical(Session& s, const std::string& src) {
    auto p = s.db();
    auto i = db_index(p, src);
    if (!p.is_regular(i)) throw DomainError("vertex " + src + " is singular");
    require_canonical(p);
    bool row_zero = true;
    for (std::size_t k = 0; k < p.size(); ++k)
        if (!p.b(i, k).is_zero()) row_zero = false;
    if (row_zero)
        lone_loop_case(s, src);
    else if (p.b(i, i).is_zero())
        zero_diagonal_case(s, src);
    else if (p.b(i, i).positive())
        large_case(s, src);
    else
        throw DomainError("vertex " + src + " supports no loop");
}

void antenna_sub_canonical(Session& s, const std::string& src) {
    auto p = s.db();
    auto i = db_index(p, src);
    if (!p.is_regular(i)) throw DomainError("vertex " + src + " is singular");
    require_canonical(p);
    antenna_sub_by(s, src, antenna_add_canonical);
}

void col_add_improved(Session& s, const std::string& src, const std::string& dst) {
    auto p = s.db();
    auto i = db_index(p, src), j = db_index(p, dst);
    check_distinct(p, i, j);
    if (!p.is_regular(i) || !p.is_regular(j)) throw DomainError("src and dst must be regular");
    require_canonical(p);
    if (!p.b(i, j).positive()) throw DomainError("b[src][dst] must be positive (no edge " + dst + " -> " + src + ")");
    antenna_add_canonical(s, src);
    antenna_add_canonical(s, src);
    antenna_add_canonical(s, dst);
    antenna_add_canonical(s, dst);
    col_add_basic(s, src, dst);
    antenna_sub_canonical(s, dst);
    antenna_sub_canonical(s, dst);
}

}  // namespace compile

// ---- index-level wrappers

namespace {

OpResult run(const DBPair& p, const DBPair& expected, const std::function<void(Session&)>& body) {
    require_valid_db(p);
    Session s(from_db(p));
    body(s);
    auto got = s.db();
    if (got.size() == p.size()) {
        auto out = got.aligned_to(p.labels);
        if (!out.same_numbers(expected)) throw std::logic_error("compiled script does not reproduce the formula");
        return {out, s.script()};
    }
    // some vertex of the formula pair is a regular source; the session holds it collected
    auto want = collect_pair(expected);
    if (got.size() != want.size() || !got.aligned_to(want.labels).same_numbers(want))
        throw std::logic_error("compiled script does not reproduce the formula");
    return {want, s.script()};
}

}  // namespace

OpResult row_add_basic(const DBPair& p, std::size_t src, std::size_t dst) {
    check_distinct(p, src, dst);
    return run(p, add_row(p, src, dst), [&](Session& s) { compile::row_add_basic(s, p.labels[src], p.labels[dst]); });
}

OpResult col_add_basic(const DBPair& p, std::size_t src, std::size_t dst) {
    check_distinct(p, src, dst);
    return run(p, add_col(p, src, dst), [&](Session& s) { compile::col_add_basic(s, p.labels[src], p.labels[dst]); });
}

OpResult antenna_add_basic(const DBPair& p, std::size_t src) {
    check_index(p, src);
    compile::require(antenna_add_basic_violation(p, src));
    return run(p, add_antenna(p, src), [&](Session& s) { compile::antenna_add_basic(s, p.labels[src]); });
}

OpResult row_add_improved(const DBPair& p, std::size_t src, std::size_t dst) {
    check_distinct(p, src, dst);
    return run(p, add_row(p, src, dst), [&](Session& s) { compile::row_add_improved(s, p.labels[src], p.labels[dst]); });
}

OpResult row_sub(const DBPair& p, std::size_t src, std::size_t dst, const std::vector<std::int64_t>& z) {
    check_distinct(p, src, dst);
    auto [l, k] = z_support(p, z);
    auto expected = apply_formula(p, {OpKind::RowSub, src, dst, z});
    return run(p, expected, [&](Session& s) {
        for (std::int64_t r = 0; r < k; ++r) compile::antenna_add_canonical(s, p.labels[l]);
        compile::row_sub(s, p.labels[src], p.labels[dst]);
    });
}

OpResult antenna_add_canonical(const DBPair& p, std::size_t src) {
    check_index(p, src);
    return run(p, add_antenna(p, src), [&](Session& s) { compile::antenna_add_canonical(s, p.labels[src]); });
}

OpResult antenna_sub_canonical(const DBPair& p, std::size_t src) {
    check_index(p, src);
    return run(p, add_antenna(p, src, -1), [&](Session& s) { compile::antenna_sub_canonical(s, p.labels[src]); });
}

OpResult col_add_improved(const DBPair& p, std::size_t src, std::size_t dst) {
    check_distinct(p, src, dst);
    return run(p, add_col(p, src, dst), [&](Session& s) { compile::col_add_improved(s, p.labels[src], p.labels[dst]); });
}

OpResult compile_op(const DBPair& p, const OpRecord& op) {
    switch (op.kind) {
        case OpKind::RowAdd:
            if (row_add_basic_violation(p, op.src, op.dst).empty()) return row_add_basic(p, op.src, op.dst);
            return row_add_improved(p, op.src, op.dst);
        case OpKind::RowSub: return row_sub(p, op.src, op.dst, op.z);
        case OpKind::ColAdd:
            if (col_add_basic_violation(p, op.src, op.dst).empty()) return col_add_basic(p, op.src, op.dst);
            return col_add_improved(p, op.src, op.dst);
        case OpKind::AntennaAdd:
            if (antenna_add_basic_violation(p, op.src).empty()) return antenna_add_basic(p, op.src);
            return antenna_add_canonical(p, op.src);
        case OpKind::AntennaSub: return antenna_sub_canonical(p, op.src);
    }
    throw DomainError("unknown operation");
}

}  // namespace gm
