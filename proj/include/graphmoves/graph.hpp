#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "graphmoves/ext_int.hpp"
#include "graphmoves/matrix.hpp"

namespace gm {

enum class VertexClass { Regular, RegularSource, Sink, InfiniteEmitter };

[[nodiscard]] const char* to_string(VertexClass c);

/// Raw, possibly invalid graph data as read from a file.
struct GraphData {
    std::vector<std::string> names;
    std::vector<std::vector<ExtInt>> rows;
};

/// Every violated graph invariant, one message each. Empty means valid.
[[nodiscard]] std::vector<std::string> validate_graph(const GraphData& data);

/// A directed graph with finitely many vertices and multiplicities in N ∪ {inf}.
/// Entry (i, j) of the adjacency matrix counts edges i -> j. Always valid.
class Graph {
public:
    Graph(std::vector<std::string> names, Matrix<ExtInt> adjacency);
    explicit Graph(const GraphData& data);

    [[nodiscard]] std::size_t size() const { return names_.size(); }
    [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
    [[nodiscard]] const std::string& name(std::size_t i) const { return names_.at(i); }
    [[nodiscard]] const Matrix<ExtInt>& adjacency() const { return adj_; }
    [[nodiscard]] const ExtInt& at(std::size_t i, std::size_t j) const { return adj_(i, j); }

    [[nodiscard]] std::optional<std::size_t> find(const std::string& name) const;
    /// Index of `name`; throws DomainError when absent.
    [[nodiscard]] std::size_t index_of(const std::string& name) const;

    [[nodiscard]] ExtInt out_degree(std::size_t v) const;
    [[nodiscard]] ExtInt in_degree(std::size_t v) const;
    [[nodiscard]] bool is_sink(std::size_t v) const;
    [[nodiscard]] bool is_infinite_emitter(std::size_t v) const;
    [[nodiscard]] bool is_singular(std::size_t v) const { return is_sink(v) || is_infinite_emitter(v); }
    [[nodiscard]] bool is_regular(std::size_t v) const { return !is_singular(v); }
    [[nodiscard]] bool is_regular_source(std::size_t v) const;
    [[nodiscard]] bool supports_loop(std::size_t v) const { return adj_(v, v).positive(); }

    [[nodiscard]] std::vector<std::size_t> regular_sources() const;

    /// Same vertices and edges, with vertices matched by name.
    [[nodiscard]] bool same_up_to_relabeling(const Graph& other) const;
    /// The same graph with vertices sorted by name.
    [[nodiscard]] Graph sorted_by_name() const;
    /// The same graph with vertices listed in `order` (a permutation of indices).
    [[nodiscard]] Graph permuted(const std::vector<std::size_t>& order) const;

    /// A name of the form base.k (smallest k >= 1) not used in this graph.
    [[nodiscard]] std::string fresh_name(const std::string& base) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::string> names_;
    Matrix<ExtInt> adj_;
};

[[nodiscard]] VertexClass vertex_class(const Graph& g, std::size_t v);

}  // namespace gm
