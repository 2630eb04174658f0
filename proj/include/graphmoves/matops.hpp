#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphmoves/session.hpp"

namespace gm {

enum class OpKind { RowAdd, RowSub, ColAdd, AntennaAdd, AntennaSub };

[[nodiscard]] const char* to_string(OpKind k);
[[nodiscard]] OpKind op_kind_from_string(const std::string& s);

/// One matrix-level operation. Indices refer to the rows/columns of the pair
/// it is applied to. z is only used by RowSub and must be k * e_l with l regular.
struct OpRecord {
    OpKind kind = OpKind::RowAdd;
    std::size_t src = 0;
    std::size_t dst = 0;
    std::vector<std::int64_t> z;

    friend bool operator==(const OpRecord&, const OpRecord&) = default;
};

struct OpResult {
    DBPair pair;        ///< labels as in the input
    MoveScript script;  ///< applies to from_db(input)
};
// When the formula turns a vertex into a regular source, `pair` is the
// formula result after collect_pair and lacks that label.

// Formulas. No legality checks beyond arithmetic.

[[nodiscard]] DBPair add_row(const DBPair& p, std::size_t src, std::size_t dst);
/// Row dst -= row src, d_dst -= d_src, with inf - inf = inf in singular columns.
[[nodiscard]] DBPair sub_row(const DBPair& p, std::size_t src, std::size_t dst);
[[nodiscard]] DBPair add_col(const DBPair& p, std::size_t src, std::size_t dst);
[[nodiscard]] DBPair add_antenna(const DBPair& p, std::size_t src, std::int64_t times = 1);
[[nodiscard]] DBPair apply_formula(const DBPair& p, const OpRecord& op);

// Legality of the basic operations, as error messages (empty when legal).

[[nodiscard]] std::string row_add_basic_violation(const DBPair& p, std::size_t src, std::size_t dst);
[[nodiscard]] std::string col_add_basic_violation(const DBPair& p, std::size_t src, std::size_t dst);
[[nodiscard]] std::string antenna_add_basic_violation(const DBPair& p, std::size_t src);

// Compiled operations. Each throws DomainError when a precondition fails and
// std::logic_error if the emitted script does not reproduce the formula.

[[nodiscard]] OpResult row_add_basic(const DBPair& p, std::size_t src, std::size_t dst);
[[nodiscard]] OpResult col_add_basic(const DBPair& p, std::size_t src, std::size_t dst);
[[nodiscard]] OpResult antenna_add_basic(const DBPair& p, std::size_t src);
[[nodiscard]] OpResult row_add_improved(const DBPair& p, std::size_t src, std::size_t dst);
[[nodiscard]] OpResult row_sub(const DBPair& p, std::size_t src, std::size_t dst, const std::vector<std::int64_t>& z);
[[nodiscard]] OpResult antenna_add_canonical(const DBPair& p, std::size_t src);
[[nodiscard]] OpResult antenna_sub_canonical(const DBPair& p, std::size_t src);
[[nodiscard]] OpResult col_add_improved(const DBPair& p, std::size_t src, std::size_t dst);

/// rowAdd and colAdd use the basic form when legal, else the improved one;
/// antennaAdd likewise falls back to the canonical form.
[[nodiscard]] OpResult compile_op(const DBPair& p, const OpRecord& op);

/// The same operations on a running session, with vertices given by name.
/// The session graph must have its sources collected.
namespace compile {

void row_add_basic(Session& s, const std::string& src, const std::string& dst);
void col_add_basic(Session& s, const std::string& src, const std::string& dst);
void antenna_add_basic(Session& s, const std::string& src);
/// `allow_no_loop` relaxes the loop requirement on src to out-degree >= 2
/// within the first step, as used by canonicalization.
void row_add_improved(Session& s, const std::string& src, const std::string& dst, bool allow_no_loop = false);
/// Basic when legal, improved otherwise.
void row_add(Session& s, const std::string& src, const std::string& dst);
/// Subtract row src from row dst. Throws DomainError when the result is not a
/// valid pair or the corresponding addition is not legal from it.
void row_sub(Session& s, const std::string& src, const std::string& dst);
void antenna_add_canonical(Session& s, const std::string& src);
void antenna_sub_canonical(Session& s, const std::string& src);
void col_add_improved(Session& s, const std::string& src, const std::string& dst);

}  // namespace compile

}  // namespace gm
