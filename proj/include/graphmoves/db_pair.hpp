#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphmoves/graph.hpp"

namespace gm {

/// Adjacency of the non-source vertices together with the antenna counts from
/// one collected regular source. c = 0 means there is no regular source.
struct ACPair {
    Matrix<ExtInt> a;
    std::vector<std::int64_t> c;
    std::vector<std::string> labels;
};

/// The (D, B) encoding: b_ij = a_ji - [i == j], d_i = c_i + 1.
///
/// Column j of b is vertex j's out-row shifted by -e_j, so singular columns
/// (sinks and infinite emitters) are recognisable from b alone. Labels carry
/// vertex names through conversions; they are not part of the numeric data.
struct DBPair {
    Matrix<ExtInt> b;
    std::vector<std::int64_t> d;
    std::vector<std::string> labels;

    [[nodiscard]] std::size_t size() const { return d.size(); }

    [[nodiscard]] bool is_sink(std::size_t j) const;
    [[nodiscard]] bool is_infinite_emitter(std::size_t j) const;
    [[nodiscard]] bool is_singular(std::size_t j) const { return is_sink(j) || is_infinite_emitter(j); }
    [[nodiscard]] bool is_regular(std::size_t j) const { return !is_singular(j); }
    /// a_jj >= 1
    [[nodiscard]] bool supports_loop(std::size_t j) const { return b(j, j) >= ExtInt(0); }
    [[nodiscard]] bool has_edge(std::size_t from, std::size_t to) const;

    [[nodiscard]] std::vector<std::size_t> regular_indices() const;
    [[nodiscard]] std::vector<std::size_t> singular_indices() const;
    [[nodiscard]] std::size_t index_of(const std::string& label) const;

    /// Same b and d, ignoring labels.
    [[nodiscard]] bool same_numbers(const DBPair& o) const { return b == o.b && d == o.d; }

    /// Reorder to match `labels` exactly (a permutation of this pair's labels).
    [[nodiscard]] DBPair aligned_to(const std::vector<std::string>& labels) const;
    [[nodiscard]] DBPair permuted(const std::vector<std::size_t>& order) const;

    friend bool operator==(const DBPair&, const DBPair&) = default;
};

/// Every violated DBPair invariant. Empty means valid.
[[nodiscard]] std::vector<std::string> validate_db(const DBPair& p);
/// Throws DomainError listing the violations, if any.
void require_valid_db(const DBPair& p);

/// Folds every regular index that receives no edges and has d = 1 into the
/// antennae of the others, as collecting it with the source would.
[[nodiscard]] DBPair collect_pair(const DBPair& p);

[[nodiscard]] std::vector<std::string> default_labels(std::size_t n);

/// Name used for the collected regular source: "src", primed until unused.
[[nodiscard]] std::string source_name(const std::vector<std::string>& labels);

/// Collect all regular sources into C and drop them; keeps the relative order
/// of the remaining vertices.
[[nodiscard]] ACPair to_ac(const Graph& g);
[[nodiscard]] DBPair to_db(const Graph& g);
[[nodiscard]] DBPair to_db(const ACPair& p);
[[nodiscard]] ACPair to_ac(const DBPair& p);
/// Vertices in label order, then one regular source (named source_name) when d != 1.
[[nodiscard]] Graph from_db(const DBPair& p);

}  // namespace gm
