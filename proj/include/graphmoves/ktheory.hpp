#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "graphmoves/db_pair.hpp"

namespace gm {

using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = Matrix<BigInt>;

/// Finite entries only; throws DomainError on inf.
[[nodiscard]] IntMatrix to_int_matrix(const Matrix<ExtInt>& m);
[[nodiscard]] IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
[[nodiscard]] std::vector<BigInt> operator*(const IntMatrix& a, const std::vector<BigInt>& x);
[[nodiscard]] BigInt det(const IntMatrix& m);

/// u * m * v == s, s diagonal with s_1 | s_2 | ..., all >= 0.
struct SmithDecomposition {
    IntMatrix u, s, v;
    [[nodiscard]] std::size_t rank() const;
};

[[nodiscard]] SmithDecomposition snf(const IntMatrix& m);

/// x with m * x == v, if one exists.
[[nodiscard]] std::optional<std::vector<BigInt>> solve_in_image(const IntMatrix& m, const std::vector<BigInt>& v);

/// (cok B•, [D]): cok B• = Z/f_1 + ... + Z/f_k + Z^l with every f_i > 1.
/// `unit` holds the coordinates of D: k torsion coordinates reduced mod f_i,
/// then l free coordinates.
struct PointedK0 {
    std::vector<BigInt> factors;
    std::size_t free_rank = 0;
    std::vector<BigInt> unit;

    [[nodiscard]] std::size_t mr() const { return factors.size() + free_rank; }
    [[nodiscard]] BigInt torsion_order() const;
    friend bool operator==(const PointedK0&, const PointedK0&) = default;
    friend std::ostream& operator<<(std::ostream& os, const PointedK0& k);
};

/// Pointed K0 of B restricted to its regular columns.
[[nodiscard]] PointedK0 pointed_k0(const Matrix<ExtInt>& b, const std::vector<std::int64_t>& d,
                                   const std::vector<std::size_t>& regular);
[[nodiscard]] PointedK0 pointed_k0(const DBPair& p);

/// The pair restricted to the vertices with a path into component `comp`
/// (numbered as in components(p)), with regularity recomputed there.
[[nodiscard]] DBPair quotient_for_component(const DBPair& p, std::size_t comp);
/// Pointed K0 of quotient_for_component(p, comp).
[[nodiscard]] PointedK0 pointed_k0(const DBPair& p, std::size_t comp);

/// k + l for cok of the diagonal block B•_γ (rows of γ, regular columns of γ).
[[nodiscard]] std::size_t mr(const DBPair& p, std::size_t comp);

enum class IsoVerdict { Iso, NotIso, Undecided };
[[nodiscard]] const char* to_string(IsoVerdict v);

/// Decides whether an automorphism of the group carries one unit class to the
/// other. Undecided when the torsion is larger than the bound.
[[nodiscard]] IsoVerdict pointed_iso(const PointedK0& a, const PointedK0& b, const BigInt& torsion_bound = 1000);

}  // namespace gm
