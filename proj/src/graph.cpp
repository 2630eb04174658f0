#include "graphmoves/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace gm {

const char* to_string(VertexClass c) {
    switch (c) {
        case VertexClass::Regular: return "regular";
        case VertexClass::RegularSource: return "regular-source";
        case VertexClass::Sink: return "sink";
        case VertexClass::InfiniteEmitter: return "infinite-emitter";
    }
    return "?";
}

std::vector<std::string> validate_graph(const GraphData& data) {
    std::vector<std::string> out;
    const std::size_t n = data.rows.size();
    if (n == 0) out.emplace_back("graph has no vertices");
    if (data.names.size() != n)
        out.emplace_back("vertex count mismatch: " + std::to_string(data.names.size()) + " names, " +
                         std::to_string(n) + " adjacency rows");
    bool square = true;
    for (const auto& r : data.rows)
        if (r.size() != n) square = false;
    if (!square) out.emplace_back("not square");
    bool negative = false;
    for (const auto& r : data.rows)
        for (const auto& x : r)
            if (x.is_finite() && x.value() < 0) negative = true;
    if (negative) out.emplace_back("negative multiplicity");
    std::set<std::string> seen;
    for (const auto& nm : data.names) {
        if (nm.empty()) out.emplace_back("empty vertex name");
        if (!seen.insert(nm).second) out.emplace_back("duplicate vertex name '" + nm + "'");
    }
    return out;
}

namespace {

GraphData to_data(const std::vector<std::string>& names, const Matrix<ExtInt>& adj) {
    GraphData d{names, {}};
    for (std::size_t i = 0; i < adj.rows(); ++i) d.rows.push_back(adj.row_vec(i));
    return d;
}

void throw_if_invalid(const GraphData& d) {
    auto diags = validate_graph(d);
    if (diags.empty()) return;
    std::ostringstream os;
    for (std::size_t i = 0; i < diags.size(); ++i) os << (i ? "; " : "") << diags[i];
    throw DomainError(os.str());
}

}  // namespace

Graph::Graph(std::vector<std::string> names, Matrix<ExtInt> adjacency)
    : names_(std::move(names)), adj_(std::move(adjacency)) {
    if (adj_.rows() != adj_.cols()) throw DomainError("not square");
    throw_if_invalid(to_data(names_, adj_));
}

Graph::Graph(const GraphData& data) {
    throw_if_invalid(data);
    const std::size_t n = data.rows.size();
    names_ = data.names;
    adj_ = Matrix<ExtInt>(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) adj_(i, j) = data.rows[i][j];
}

std::optional<std::size_t> Graph::find(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
}

std::size_t Graph::index_of(const std::string& name) const {
    if (auto i = find(name)) return *i;
    throw DomainError("no vertex named '" + name + "'");
}

ExtInt Graph::out_degree(std::size_t v) const {
    ExtInt s = 0;
    for (const auto& x : adj_.row(v)) s += x;
    return s;
}

ExtInt Graph::in_degree(std::size_t v) const {
    ExtInt s = 0;
    for (std::size_t u = 0; u < size(); ++u) s += adj_(u, v);
    return s;
}

bool Graph::is_sink(std::size_t v) const { return out_degree(v).is_zero(); }

bool Graph::is_infinite_emitter(std::size_t v) const { return out_degree(v).is_inf(); }

bool Graph::is_regular_source(std::size_t v) const { return is_regular(v) && in_degree(v).is_zero(); }

std::vector<std::size_t> Graph::regular_sources() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < size(); ++v)
        if (is_regular_source(v)) out.push_back(v);
    return out;
}

Graph Graph::permuted(const std::vector<std::size_t>& order) const {
    std::vector<std::string> nn;
    for (auto i : order) nn.push_back(names_[i]);
    return Graph(std::move(nn), adj_.select(order, order));
}

Graph Graph::sorted_by_name() const {
    std::vector<std::size_t> order(size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return names_[a] < names_[b]; });
    return permuted(order);
}

bool Graph::same_up_to_relabeling(const Graph& other) const {
    return size() == other.size() && sorted_by_name() == other.sorted_by_name();
}

std::string Graph::fresh_name(const std::string& base) const {
    for (std::size_t k = 1;; ++k) {
        auto cand = base + "." + std::to_string(k);
        if (!find(cand)) return cand;
    }
}

VertexClass vertex_class(const Graph& g, std::size_t v) {
    if (v >= g.size()) throw DomainError("vertex index " + std::to_string(v) + " out of range");
    if (g.is_sink(v)) return VertexClass::Sink;
    if (g.is_infinite_emitter(v)) return VertexClass::InfiniteEmitter;
    return g.in_degree(v).is_zero() ? VertexClass::RegularSource : VertexClass::Regular;
}

}  // namespace gm
