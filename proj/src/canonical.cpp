#include "graphmoves/canonical.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "graphmoves/matops.hpp"

namespace gm {

const char* to_string(Trichotomy t) {
    switch (t) {
        case Trichotomy::Large: return "large";
        case Trichotomy::LoneLoop: return "(0)";
        case Trichotomy::LoneSingular: return "(-1)";
        case Trichotomy::Other: return "other";
    }
    return "?";
}

namespace {

ExtInt adj(const DBPair& p, std::size_t i, std::size_t j) { return p.b(j, i) + ExtInt(i == j ? 1 : 0); }

void fail(ConditionCheck& c, std::string msg) {
    c.ok = false;
    c.witnesses.push_back(std::move(msg));
}

// A strongly connected component has a vertex with two distinct first-return
// paths iff it is not a simple cycle of single edges.
bool has_two_return_paths(const DBPair& p, const ComponentStructure& cs, std::size_t k) {
    const auto& comp = cs.comps[k];
    if (!comp.cyclic) return false;
    for (auto i : comp.members) {
        ExtInt out = 0;
        for (auto j : comp.members) out += adj(p, i, j);
        if (out != ExtInt(1)) return true;
    }
    return false;
}

}  // namespace

CanonicalReport check_canonical(const DBPair& p) {
    require_valid_db(p);
    CanonicalReport r;
    r.structure = components(p);
    const auto& cs = r.structure;
    const auto n = p.size();
    const auto& L = p.labels;

    for (std::size_t j = 0; j < n; ++j)
        if (p.is_regular(j) && !p.supports_loop(j)) fail(r.loops, "vertex " + L[j] + " is regular but supports no loop");

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!cs.reach[i][j]) continue;
            auto a = adj(p, i, j);
            if (a.is_zero()) fail(r.edges, "path " + L[i] + " -> " + L[j] + " but no edge");
            if (p.is_infinite_emitter(i) && !a.is_inf())
                fail(r.infinite, "infinite emitter " + L[i] + " reaches " + L[j] + " but emits " + a.str() + " edges to it");
        }

    for (std::size_t k = 0; k < cs.comps.size(); ++k) {
        const auto& comp = cs.comps[k];
        if (!has_two_return_paths(p, cs, k)) continue;
        for (auto i : comp.members)
            if (adj(p, i, i) < ExtInt(2)) fail(r.large, "vertex " + L[i] + " has two return paths but fewer than two loops");
        std::size_t need = std::max<std::size_t>(3, mr(p, k) + 2);
        if (comp.regular < need) {
            std::ostringstream os;
            os << "component of " << L[comp.members[0]] << " has " << comp.regular << " regular vertices, needs " << need;
            fail(r.large, os.str());
        }
    }

    for (const auto& comp : cs.comps) {
        Trichotomy t = Trichotomy::Large;
        if (comp.size() == 1 && p.b(comp.members[0], comp.members[0]) == ExtInt(0)) t = Trichotomy::LoneLoop;
        else if (comp.size() == 1 && p.b(comp.members[0], comp.members[0]) == ExtInt(-1)) t = Trichotomy::LoneSingular;
        else
            for (auto i : comp.members)
                for (auto j : comp.members)
                    if (!p.b(i, j).positive()) t = Trichotomy::Other;
        if (t == Trichotomy::LoneLoop && !p.is_regular(comp.members[0])) t = Trichotomy::Other;
        if (t == Trichotomy::LoneSingular && !p.is_singular(comp.members[0])) t = Trichotomy::Other;
        r.classes.push_back(t);
    }
    return r;
}

bool is_canonical(const DBPair& p) { return check_canonical(p).canonical(); }

// ---- canonicalization

std::size_t default_step_budget(const DBPair& p) {
    auto g = from_db(p);
    std::size_t e = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            if (g.at(i, j).is_finite()) e += static_cast<std::size_t>(g.at(i, j).value());
    auto t = g.size() + e;
    return 10 * t * t;
}

namespace {

struct View {
    DBPair p;
    ComponentStructure cs;
    explicit View(const Session& s) : p(s.db()), cs(components(p)) {}
    const std::string& name(std::size_t i) const { return p.labels[i]; }
    ExtInt a(std::size_t i, std::size_t j) const { return p.b(j, i) + ExtInt(i == j ? 1 : 0); }
};

std::vector<ExtInt> row_of(const Graph& g, const std::string& v) { return g.adjacency().row_vec(g.index_of(v)); }

void emit_split(Session& s, const std::string& v, const std::vector<ExtInt>& first, const std::vector<ExtInt>& second) {
    const Graph& g = s.graph();
    Move m;
    m.kind = MoveKind::O;
    m.vertex = v;
    m.parts = Matrix<ExtInt>(2, g.size(), 0);
    for (std::size_t c = 0; c < g.size(); ++c) {
        m.parts(0, c) = first[c];
        m.parts(1, c) = second[c];
    }
    s.emit(m);
}

// Infinite emitters emit 0 or inf to every vertex.
void step1(Session& s) {
    for (const auto& v : s.graph().names()) {
        const Graph& g = s.graph();
        auto i = g.index_of(v);
        if (!g.is_infinite_emitter(i)) continue;
        std::vector<ExtInt> inf(g.size(), 0), fin(g.size(), 0);
        bool finite = false;
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (g.at(i, j).is_inf()) inf[j] = kInf;
            else if (!g.at(i, j).is_zero()) finite = true, fin[j] = g.at(i, j);
        }
        if (finite) emit_split(s, v, inf, fin);
    }
}

// Regular vertices without a loop become sources.
void step2(Session& s) {
    for (;;) {
        const Graph& g = s.graph();
        std::optional<std::string> v;
        for (std::size_t i = 0; i < g.size() && !v; ++i)
            if (g.is_regular(i) && !g.is_regular_source(i) && !g.supports_loop(i)) v = g.name(i);
        if (!v) break;
        Move m;
        m.kind = MoveKind::Rplus;
        m.vertex = *v;
        auto n = *v + "~";
        m.name = g.find(n) ? g.fresh_name(n) : n;
        s.emit(m);
    }
    s.collect();
}

// Split off one loop of v; the rest, including all edges leaving, stays with the copy.
void split_loop(Session& s, const std::string& v) {
    const Graph& g = s.graph();
    std::vector<ExtInt> e(g.size(), 0);
    e[g.index_of(v)] = 1;
    auto rest = row_of(g, v);
    rest[g.index_of(v)] = rest[g.index_of(v)] - 1;
    emit_split(s, v, e, rest);
}

// No lone vertex carries two or more loops.
void step3(Session& s) {
    View w(s);
    for (const auto& c : w.cs.comps) {
        if (c.size() != 1) continue;
        auto v = c.members[0];
        if (w.a(v, v) >= ExtInt(2)) split_loop(s, w.name(v));
    }
}

bool block_positive(const View& w, const Component& c) {
    for (auto i : c.members)
        for (auto j : c.members)
            if (!w.p.b(i, j).positive()) return false;
    return true;
}

std::vector<std::string> names_of(const View& w, const Component& c) {
    std::vector<std::string> r;
    for (auto i : c.members) r.push_back(w.name(i));
    return r;
}

// Diagonal blocks of components with more than one vertex become positive.
void step4(Session& s) {
    View w(s);
    std::vector<std::vector<std::string>> todo;
    for (const auto& c : w.cs.comps)
        if (c.size() > 1 && !block_positive(w, c)) todo.push_back(names_of(w, c));
    for (const auto& m : todo) {
        const auto& last = m.back();
        for (std::size_t k = 0; k + 1 < m.size(); ++k) compile::row_add(s, m[k], last);
        for (std::size_t k = 0; k + 1 < m.size(); ++k) compile::row_add(s, last, m[k]);
    }
}

bool has_two_return_paths(const View& w, const Component& c) {
    if (!c.cyclic) return false;
    for (auto i : c.members) {
        ExtInt out = 0;
        for (auto j : c.members) out += w.a(i, j);
        if (out != ExtInt(1)) return true;
    }
    return false;
}

// Enlarge components failing the size bound, repairing positivity each time.
void step45(Session& s) {
    for (;;) {
        step4(s);
        View w(s);
        std::optional<std::string> v;
        for (std::size_t k = 0; k < w.cs.comps.size() && !v; ++k) {
            const auto& c = w.cs.comps[k];
            if (!has_two_return_paths(w, c)) continue;
            if (c.regular >= std::max<std::size_t>(3, mr(w.p, k) + 2)) continue;
            v = w.name(c.members[0]);
        }
        if (!v) return;
        split_loop(s, *v);
    }
}

// Every vertex below a large component receives an edge from each of its vertices.
void step6(Session& s) {
    View w(s);
    std::vector<std::pair<std::string, std::string>> todo;
    for (std::size_t x = 0; x < w.cs.comps.size(); ++x) {
        const auto& big = w.cs.comps[x];
        if (big.size() < 2) continue;
        for (std::size_t i = 0; i < w.p.size(); ++i) {
            auto y = w.cs.comp_of[i];
            if (y == x || !w.cs.leq(y, x)) continue;
            bool ok = true;
            for (auto j : big.members) ok = ok && w.p.b(i, j).positive();
            if (!ok) todo.emplace_back(w.name(big.members[0]), w.name(i));
        }
    }
    for (const auto& [src, dst] : todo) compile::row_add(s, src, dst);
}

// A nonzero column of an off-diagonal block becomes positive on the whole block.
bool step7(Session& s) {
    View w(s);
    for (std::size_t y = 0; y < w.cs.comps.size(); ++y) {
        const auto& low = w.cs.comps[y];
        if (low.size() < 2) continue;
        for (std::size_t j = 0; j < w.p.size(); ++j) {
            if (w.cs.comp_of[j] == y) continue;
            std::optional<std::size_t> pos;
            std::vector<std::size_t> zero;
            for (auto i : low.members) {
                if (w.p.b(i, j).positive()) pos = i;
                else zero.push_back(i);
            }
            if (!pos || zero.empty()) continue;
            auto src = w.name(*pos);
            std::vector<std::string> dst;
            for (auto i : zero) dst.push_back(w.name(i));
            for (const auto& d : dst) compile::row_add(s, src, d);
            return true;
        }
    }
    return false;
}

// i -> j -> k without i -> k: add row j to row k.
bool step8(Session& s) {
    View w(s);
    const auto n = w.p.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || w.a(i, j).is_zero()) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j || w.a(j, k).is_zero() || !w.a(i, k).is_zero()) continue;
                compile::row_add_basic(s, w.name(j), w.name(k));
                return true;
            }
        }
    return false;
}

}  // namespace

CanonicalizeResult canonicalize(const DBPair& p, std::optional<std::size_t> budget) {
    require_valid_db(p);
    auto limit = budget.value_or(default_step_budget(p));
    Session s(from_db(p), limit);
    step1(s);
    s.collect();
    step2(s);
    step3(s);
    step45(s);
    step6(s);
    for (;;) {
        while (step7(s)) {
        }
        if (!step8(s)) break;
    }
    auto out = s.db();
    auto report = check_canonical(out);
    if (!report.canonical()) {
        std::string why;
        for (const auto* c : {&report.loops, &report.edges, &report.infinite, &report.large})
            if (!c->ok) why = c->witnesses.front();
        throw std::logic_error("canonicalization finished in a non-canonical pair: " + why);
    }
    return {out, s.script(), limit};
}

// ---- essential structure

EssentialStructure essential_structure(const DBPair& p) {
    require_valid_db(p);
    auto g = from_db(p);
    const auto names = g.names();
    for (const auto& v : names) {
        auto i = g.index_of(v);
        if (!g.is_infinite_emitter(i)) continue;
        Matrix<ExtInt> parts(2, g.size(), 0);
        bool finite = false;
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (g.at(i, j).is_inf()) parts(0, j) = kInf;
            else if (!g.at(i, j).is_zero()) finite = true, parts(1, j) = g.at(i, j);
        }
        if (finite) g = outsplit(g, i, parts);
    }
    auto cs = components(to_db(g));
    EssentialStructure r;
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < cs.comps.size(); ++k)
        if (cs.comps[k].essential()) {
            keep.push_back(k);
            r.comps.push_back(cs.comps[k]);
        }
    r.le.assign(keep.size(), std::vector<bool>(keep.size()));
    for (std::size_t x = 0; x < keep.size(); ++x)
        for (std::size_t y = 0; y < keep.size(); ++y) r.le[x][y] = cs.leq(keep[x], keep[y]);
    return r;
}

bool same_structure(const EssentialStructure& a, const EssentialStructure& b) {
    const auto n = a.comps.size();
    if (n != b.comps.size()) return false;
    std::vector<std::size_t> psi(n);
    std::vector<bool> used(n, false);
    std::function<bool(std::size_t)> go = [&](std::size_t x) {
        if (x == n) return true;
        for (std::size_t y = 0; y < n; ++y) {
            if (used[y] || a.comps[x].cyclic != b.comps[y].cyclic || a.comps[x].singular != b.comps[y].singular) continue;
            bool ok = true;
            for (std::size_t z = 0; z < x && ok; ++z)
                ok = a.le[x][z] == b.le[y][psi[z]] && a.le[z][x] == b.le[psi[z]][y];
            if (!ok) continue;
            psi[x] = y;
            used[y] = true;
            if (go(x + 1)) return true;
            used[y] = false;
        }
        return false;
    };
    return go(0);
}

// ---- component matching

std::optional<std::vector<std::size_t>> match_components(const DBPair& p1, const DBPair& p2) {
    auto c1 = components(p1), c2 = components(p2);
    const auto n = c1.comps.size();
    if (n != c2.comps.size()) return std::nullopt;
    std::vector<std::size_t> psi(n, n);
    std::vector<bool> used(n, false);
    std::function<bool(std::size_t)> go = [&](std::size_t x) {
        if (x == n) return true;
        const auto& a = c1.comps[x];
        for (std::size_t y = 0; y < n; ++y) {
            const auto& b = c2.comps[y];
            if (used[y] || a.regular != b.regular || a.singular != b.singular || a.cyclic != b.cyclic) continue;
            bool ok = true;
            for (std::size_t z = 0; z < x && ok; ++z)
                ok = c1.leq(x, z) == c2.leq(y, psi[z]) && c1.leq(z, x) == c2.leq(psi[z], y);
            if (!ok) continue;
            psi[x] = y;
            used[y] = true;
            if (go(x + 1)) return true;
            used[y] = false;
        }
        return false;
    };
    if (!go(0)) return std::nullopt;
    return psi;
}

// ---- certificates

const char* to_string(EquivalenceLevel l) {
    switch (l) {
        case EquivalenceLevel::None: return "none";
        case EquivalenceLevel::GL: return "GL";
        case EquivalenceLevel::SL: return "SL";
        case EquivalenceLevel::GLPlus: return "GL+";
        case EquivalenceLevel::SLPlus: return "SL+";
    }
    return "?";
}

EquivalenceLevel level_from_string(const std::string& s) {
    for (auto l : {EquivalenceLevel::None, EquivalenceLevel::GL, EquivalenceLevel::SL, EquivalenceLevel::GLPlus,
                   EquivalenceLevel::SLPlus})
        if (s == to_string(l)) return l;
    throw DomainError("unknown level '" + s + "'");
}

bool CertificateVerdict::accepts(EquivalenceLevel claimed) const {
    bool base = pattern && invertible && intertwines;
    switch (claimed) {
        case EquivalenceLevel::None: return true;
        case EquivalenceLevel::GL: return base;
        case EquivalenceLevel::SL: return base && special;
        case EquivalenceLevel::GLPlus: return base && unit;
        case EquivalenceLevel::SLPlus: return base && special && unit;
    }
    return false;
}

namespace {

IntMatrix sub(const IntMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    IntMatrix r(rows.size(), cols.size(), 0);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) r(i, j) = m(rows[i], cols[j]);
    return r;
}

IntMatrix regular_columns(const DBPair& p) {
    auto reg = p.regular_indices();
    IntMatrix r(p.size(), reg.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < reg.size(); ++j) r(i, j) = p.b(i, reg[j]).value();
    return r;
}

}  // namespace

CertificateVerdict verify_certificate(const DBPair& pe, const DBPair& pf, const Certificate& cert) {
    require_valid_db(pe);
    require_valid_db(pf);
    const auto n = pe.size();
    if (pf.size() != n) throw DomainError("pairs have different sizes");
    auto reg = pe.regular_indices();
    if (pf.regular_indices() != reg) throw DomainError("pairs have different regular indices");
    const auto m = reg.size();
    if (cert.u.rows() != n || cert.u.cols() != n) throw DomainError("U must be " + std::to_string(n) + "x" + std::to_string(n));
    if (cert.v.rows() != m || cert.v.cols() != m) throw DomainError("V must be " + std::to_string(m) + "x" + std::to_string(m));

    auto ce = components(pe), cf = components(pf);
    auto psi = match_components(pe, pf);
    if (!psi) throw DomainError("component structures do not match");
    for (std::size_t i = 0; i < n; ++i)
        if ((*psi)[ce.comp_of[i]] != cf.comp_of[i])
            throw DomainError("index " + std::to_string(i) + " lies in components that do not correspond");

    CertificateVerdict v;
    v.notes.push_back("unit condition read as membership in the image of B_F restricted to regular columns");

    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    v.pattern = in_block_pattern(cert.u, ce, all) && in_block_pattern(cert.v, ce, reg);

    auto du = det(cert.u), dv = det(cert.v);
    v.invertible = abs(du) == 1 && abs(dv) == 1;

    auto be = regular_columns(pe), bf = regular_columns(pf);
    v.intertwines = cert.u * be == bf * cert.v;
    for (auto j : pe.singular_indices())
        for (std::size_t i = 0; i < n; ++i)
            if (pe.b(i, j) != pf.b(i, j)) v.intertwines = false;

    v.special = true;
    for (const auto& c : ce.comps) {
        std::vector<std::size_t> rows = c.members, regs;
        std::sort(rows.begin(), rows.end());
        for (std::size_t k = 0; k < m; ++k)
            if (ce.comp_of[reg[k]] == static_cast<std::size_t>(&c - ce.comps.data())) regs.push_back(k);
        if (det(sub(cert.u, rows, rows)) != 1) v.special = false;
        if (!regs.empty() && det(sub(cert.v, regs, regs)) != 1) v.special = false;
    }

    std::vector<BigInt> de(pe.d.begin(), pe.d.end()), diff = cert.u * de;
    for (std::size_t i = 0; i < n; ++i) diff[i] -= pf.d[i];
    v.unit = solve_in_image(bf, diff).has_value();

    if (!v.accepts(EquivalenceLevel::GL)) v.level = EquivalenceLevel::None;
    else if (v.special && v.unit) v.level = EquivalenceLevel::SLPlus;
    else if (v.unit) v.level = EquivalenceLevel::GLPlus;
    else if (v.special) v.level = EquivalenceLevel::SL;
    else v.level = EquivalenceLevel::GL;
    return v;
}

}  // namespace gm
