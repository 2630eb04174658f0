#include "graphmoves/db_pair.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gm {

bool DBPair::is_sink(std::size_t j) const {
    for (std::size_t i = 0; i < size(); ++i) {
        if (b(i, j) != ExtInt(i == j ? -1 : 0)) return false;
    }
    return true;
}

bool DBPair::is_infinite_emitter(std::size_t j) const {
    for (std::size_t i = 0; i < size(); ++i)
        if (b(i, j).is_inf()) return true;
    return false;
}

bool DBPair::has_edge(std::size_t from, std::size_t to) const {
    if (from == to) return supports_loop(from);
    return b(to, from).positive();
}

std::vector<std::size_t> DBPair::regular_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < size(); ++j)
        if (is_regular(j)) out.push_back(j);
    return out;
}

std::vector<std::size_t> DBPair::singular_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < size(); ++j)
        if (is_singular(j)) out.push_back(j);
    return out;
}

std::size_t DBPair::index_of(const std::string& label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw DomainError("no vertex labelled '" + label + "'");
    return static_cast<std::size_t>(it - labels.begin());
}

DBPair DBPair::permuted(const std::vector<std::size_t>& order) const {
    DBPair r{b.select(order, order), {}, {}};
    for (auto i : order) {
        r.d.push_back(d.at(i));
        r.labels.push_back(labels.at(i));
    }
    return r;
}

DBPair DBPair::aligned_to(const std::vector<std::string>& want) const {
    if (want.size() != size()) throw DomainError("cannot align pairs of different sizes");
    std::vector<std::size_t> order;
    for (const auto& l : want) order.push_back(index_of(l));
    return permuted(order);
}

std::vector<std::string> validate_db(const DBPair& p) {
    std::vector<std::string> out;
    const std::size_t n = p.d.size();
    if (n == 0) out.emplace_back("no non-source vertices");
    if (p.b.rows() != n || p.b.cols() != n) {
        out.emplace_back("B must be square with one row per entry of D");
        return out;
    }
    if (p.labels.size() != n) out.emplace_back("label count does not match D");
    std::set<std::string> seen(p.labels.begin(), p.labels.end());
    if (seen.size() != p.labels.size()) out.emplace_back("duplicate labels");
    for (std::size_t i = 0; i < n; ++i) {
        if (p.d[i] < 1) out.emplace_back("d_" + std::to_string(i + 1) + " < 1");
        for (std::size_t j = 0; j < n; ++j) {
            const auto& x = p.b(i, j);
            if (x.is_inf()) continue;
            if (i != j && x.value() < 0)
                out.emplace_back("b_" + std::to_string(i + 1) + std::to_string(j + 1) + " < 0 off the diagonal");
            if (i == j && x.value() < -1) out.emplace_back("b_" + std::to_string(i + 1) + std::to_string(i + 1) + " < -1");
        }
    }
    if (!out.empty()) return out;
    for (std::size_t j = 0; j < n; ++j) {
        if (!p.is_regular(j) || p.d[j] > 1) continue;
        bool receives = false;
        for (std::size_t k = 0; k < n; ++k)
            if (p.has_edge(k, j)) receives = true;
        if (!receives)
            out.emplace_back("regular vertex " + std::to_string(j + 1) +
                             " receives no edges and no antennae, so it would be a regular source");
    }
    return out;
}

void require_valid_db(const DBPair& p) {
    auto diags = validate_db(p);
    if (diags.empty()) return;
    std::ostringstream os;
    for (std::size_t i = 0; i < diags.size(); ++i) os << (i ? "; " : "") << diags[i];
    throw DomainError(os.str());
}

DBPair collect_pair(const DBPair& p) {
    DBPair q = p;
    for (;;) {
        std::size_t j = 0;
        for (; j < q.size(); ++j) {
            if (!q.is_regular(j) || q.d[j] > 1) continue;
            bool receives = false;
            for (std::size_t k = 0; k < q.size() && !receives; ++k) receives = q.has_edge(k, j);
            if (!receives) break;
        }
        if (j == q.size()) return q;
        std::vector<std::size_t> keep;
        for (std::size_t k = 0; k < q.size(); ++k)
            if (k != j) keep.push_back(k);
        DBPair r{q.b.select(keep, keep), {}, {}};
        for (auto k : keep) {
            r.d.push_back(q.d[k] + q.b(k, j).value());
            r.labels.push_back(q.labels[k]);
        }
        q = std::move(r);
    }
}

std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= n; ++i) out.push_back("v" + std::to_string(i));
    return out;
}

std::string source_name(const std::vector<std::string>& labels) {
    std::string s = "src";
    while (std::find(labels.begin(), labels.end(), s) != labels.end()) s += "'";
    return s;
}

ACPair to_ac(const Graph& g) {
    auto sources = g.regular_sources();
    std::vector<std::size_t> keep;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (std::find(sources.begin(), sources.end(), v) == sources.end()) keep.push_back(v);
    if (keep.empty()) throw DomainError("graph has no non-source vertices");
    ACPair p{g.adjacency().select(keep, keep), std::vector<std::int64_t>(keep.size(), 0), {}};
    for (std::size_t k = 0; k < keep.size(); ++k) {
        p.labels.push_back(g.name(keep[k]));
        ExtInt c = 0;
        for (auto s : sources) c += g.at(s, keep[k]);
        p.c[k] = c.value();
    }
    return p;
}

DBPair to_db(const ACPair& p) {
    const std::size_t n = p.c.size();
    DBPair r{Matrix<ExtInt>(n, n), std::vector<std::int64_t>(n), p.labels};
    for (std::size_t i = 0; i < n; ++i) {
        r.d[i] = p.c[i] + 1;
        for (std::size_t j = 0; j < n; ++j) r.b(i, j) = p.a(j, i) - ExtInt(i == j ? 1 : 0);
    }
    return r;
}

DBPair to_db(const Graph& g) { return to_db(to_ac(g)); }

ACPair to_ac(const DBPair& p) {
    require_valid_db(p);
    const std::size_t n = p.size();
    ACPair r{Matrix<ExtInt>(n, n), std::vector<std::int64_t>(n), p.labels};
    for (std::size_t i = 0; i < n; ++i) {
        r.c[i] = p.d[i] - 1;
        for (std::size_t j = 0; j < n; ++j) r.a(i, j) = p.b(j, i) + ExtInt(i == j ? 1 : 0);
    }
    return r;
}

Graph from_db(const DBPair& p) {
    ACPair ac = to_ac(p);
    const std::size_t n = p.size();
    const bool has_source = std::any_of(ac.c.begin(), ac.c.end(), [](auto c) { return c > 0; });
    const std::size_t m = n + (has_source ? 1 : 0);
    Matrix<ExtInt> adj(m, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) adj(i, j) = ac.a(i, j);
    auto names = ac.labels;
    if (has_source) {
        for (std::size_t j = 0; j < n; ++j) adj(n, j) = ac.c[j];
        names.push_back(source_name(ac.labels));
    }
    return Graph(std::move(names), std::move(adj));
}

}  // namespace gm
