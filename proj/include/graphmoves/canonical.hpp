#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphmoves/components.hpp"
#include "graphmoves/ktheory.hpp"
#include "graphmoves/moves.hpp"

namespace gm {

enum class Trichotomy { Large, LoneLoop, LoneSingular, Other };
[[nodiscard]] const char* to_string(Trichotomy t);

struct ConditionCheck {
    bool ok = true;
    std::vector<std::string> witnesses;  ///< one line per violation
};

/// Conditions (I)-(IV) on the graph of a pair. The collected regular source
/// carries no conditions: it is not a vertex of B.
struct CanonicalReport {
    ConditionCheck loops;     ///< (I) every regular vertex supports a loop
    ConditionCheck edges;     ///< (II) a path i -> j implies an edge i -> j
    ConditionCheck infinite;  ///< (III) an infinite emitter emits inf along every path
    ConditionCheck large;     ///< (IV) two return paths: two loops and enough regular vertices
    ComponentStructure structure;
    std::vector<Trichotomy> classes;  ///< per component of `structure`

    [[nodiscard]] bool canonical() const { return loops.ok && edges.ok && infinite.ok && large.ok; }
};

[[nodiscard]] CanonicalReport check_canonical(const DBPair& p);
[[nodiscard]] bool is_canonical(const DBPair& p);

/// The components that every move preserves: cyclic or singular ones, taken
/// after splitting each infinite emitter into its infinite and finite parts.
struct EssentialStructure {
    std::vector<Component> comps;
    std::vector<std::vector<bool>> le;
};

[[nodiscard]] EssentialStructure essential_structure(const DBPair& p);
/// An isomorphism of preorders matching cyclicity and singular counts.
[[nodiscard]] bool same_structure(const EssentialStructure& a, const EssentialStructure& b);

struct CanonicalizeResult {
    DBPair pair;        ///< labels are the names of the final graph
    MoveScript script;  ///< applies to from_db(input)
    std::size_t budget = 0;
};

/// 10 (n + e)^2 with n vertices and e the finite edge total of from_db(p).
[[nodiscard]] std::size_t default_step_budget(const DBPair& p);

/// Brings the pair into canonical form. Throws BudgetExceeded when the script
/// would exceed `budget` moves.
[[nodiscard]] CanonicalizeResult canonicalize(const DBPair& p, std::optional<std::size_t> budget = std::nullopt);

/// Component k of p1 goes to result[k] of p2.
[[nodiscard]] std::optional<std::vector<std::size_t>> match_components(const DBPair& p1, const DBPair& p2);

enum class EquivalenceLevel { None, GL, SL, GLPlus, SLPlus };
[[nodiscard]] const char* to_string(EquivalenceLevel l);
[[nodiscard]] EquivalenceLevel level_from_string(const std::string& s);

/// U acts on all indices of the pairs, V on the regular ones (in index order).
struct Certificate {
    IntMatrix u, v;
    EquivalenceLevel level = EquivalenceLevel::SLPlus;
};

struct CertificateVerdict {
    bool pattern = false;     ///< U, V in MG
    bool invertible = false;  ///< det U, det V = +-1
    bool intertwines = false; ///< U B_E = B_F V on regular columns, singular columns equal
    bool special = false;     ///< every diagonal block has determinant 1
    bool unit = false;        ///< U D_E - D_F in the image of B_F
    EquivalenceLevel level = EquivalenceLevel::None;  ///< strongest level passed
    std::vector<std::string> notes;

    [[nodiscard]] bool accepts(EquivalenceLevel claimed) const;
};

/// Throws DomainError on dimension mismatch or unmatched component structures.
[[nodiscard]] CertificateVerdict verify_certificate(const DBPair& pe, const DBPair& pf, const Certificate& cert);

}  // namespace gm
