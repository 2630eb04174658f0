#include "graphmoves/ktheory.hpp"

#include <algorithm>
#include <utility>

#include "graphmoves/components.hpp"

namespace gm {

IntMatrix to_int_matrix(const Matrix<ExtInt>& m) {
    IntMatrix r(m.rows(), m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).value();
    return r;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw DomainError("matrix dimensions do not match");
    IntMatrix r(a.rows(), b.cols(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

std::vector<BigInt> operator*(const IntMatrix& a, const std::vector<BigInt>& x) {
    if (a.cols() != x.size()) throw DomainError("matrix dimensions do not match");
    std::vector<BigInt> r(a.rows(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) r[i] += a(i, k) * x[k];
    return r;
}

BigInt det(const IntMatrix& m) {
    if (!m.square()) throw DomainError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    // Bareiss fraction-free elimination
    IntMatrix a = m;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

std::size_t SmithDecomposition::rank() const {
    std::size_t r = 0;
    while (r < std::min(s.rows(), s.cols()) && s(r, r) != 0) ++r;
    return r;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row dst -= q * row src
void sub_row(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= q * m(src, j);
}
void sub_col(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
}

}  // namespace

SmithDecomposition snf(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    SmithDecomposition r{IntMatrix::identity(rows), m, IntMatrix::identity(cols)};
    auto& s = r.s;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        for (;;) {
            // pivot: smallest nonzero |entry| in the trailing block, row-major ties
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (s(i, j) != 0 && (pi == rows || abs(s(i, j)) < abs(s(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == rows) return r;
            swap_rows(s, t, pi);
            swap_rows(r.u, t, pi);
            swap_cols(s, t, pj);
            swap_cols(r.v, t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (s(i, t) == 0) continue;
                BigInt q = s(i, t) / s(t, t);
                sub_row(s, i, t, q);
                sub_row(r.u, i, t, q);
                if (s(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (s(t, j) == 0) continue;
                BigInt q = s(t, j) / s(t, t);
                sub_col(s, j, t, q);
                sub_col(r.v, j, t, q);
                if (s(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // divisibility: fold an offending row into row t and retry
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (s(i, j) % s(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == rows) break;
            sub_row(s, t, bad, -1);
            sub_row(r.u, t, bad, -1);
        }
        if (s(t, t) < 0) {
            for (std::size_t j = 0; j < cols; ++j) s(t, j) = -s(t, j);
            for (std::size_t j = 0; j < rows; ++j) r.u(t, j) = -r.u(t, j);
        }
    }
    return r;
}

std::optional<std::vector<BigInt>> solve_in_image(const IntMatrix& m, const std::vector<BigInt>& v) {
    if (v.size() != m.rows()) throw DomainError("vector length does not match the matrix");
    auto sd = snf(m);
    auto w = sd.u * v;
    const std::size_t rk = sd.rank();
    std::vector<BigInt> y(m.cols(), 0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i < rk) {
            if (w[i] % sd.s(i, i) != 0) return std::nullopt;
            y[i] = w[i] / sd.s(i, i);
        } else if (w[i] != 0) {
            return std::nullopt;
        }
    }
    auto x = sd.v * y;
    if (m * x != v) throw DomainError("internal error: image solution does not verify");
    return x;
}

BigInt PointedK0::torsion_order() const {
    BigInt o = 1;
    for (const auto& f : factors) o *= f;
    return o;
}

std::ostream& operator<<(std::ostream& os, const PointedK0& k) {
    os << "(";
    bool first = true;
    for (const auto& f : k.factors) {
        os << (first ? "" : " + ") << "Z/" << f;
        first = false;
    }
    if (k.free_rank) os << (first ? "" : " + ") << "Z^" << k.free_rank;
    if (first && !k.free_rank) os << "0";
    os << ", [";
    for (std::size_t i = 0; i < k.unit.size(); ++i) os << (i ? " " : "") << k.unit[i];
    return os << "])";
}

PointedK0 pointed_k0(const Matrix<ExtInt>& b, const std::vector<std::int64_t>& d, const std::vector<std::size_t>& regular) {
    const std::size_t n = d.size();
    std::vector<std::size_t> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = i;
    auto bb = to_int_matrix(b.select(rows, regular));
    auto sd = snf(bb);
    std::vector<BigInt> dv(d.begin(), d.end());
    auto y = sd.u * dv;
    PointedK0 k;
    const std::size_t rk = sd.rank();
    for (std::size_t i = 0; i < rk; ++i) {
        if (sd.s(i, i) == 1) continue;
        k.factors.push_back(sd.s(i, i));
        BigInt c = y[i] % sd.s(i, i);
        if (c < 0) c += sd.s(i, i);
        k.unit.push_back(c);
    }
    k.free_rank = n - rk;
    for (std::size_t i = rk; i < n; ++i) k.unit.push_back(y[i]);
    return k;
}

PointedK0 pointed_k0(const DBPair& p) { return pointed_k0(p.b, p.d, p.regular_indices()); }

DBPair quotient_for_component(const DBPair& p, std::size_t comp) {
    auto cs = components(p);
    if (comp >= cs.comps.size()) throw DomainError("component index out of range");
    const auto target = cs.comps[comp].members.front();
    std::vector<std::size_t> keep;
    for (std::size_t v = 0; v < p.size(); ++v)
        if (cs.comp_of[v] == comp || cs.reach[v][target]) keep.push_back(v);
    return p.permuted(keep);
}

PointedK0 pointed_k0(const DBPair& p, std::size_t comp) { return pointed_k0(quotient_for_component(p, comp)); }

std::size_t mr(const DBPair& p, std::size_t comp) {
    auto cs = components(p);
    if (comp >= cs.comps.size()) throw DomainError("component index out of range");
    const auto& members = cs.comps[comp].members;
    std::vector<std::size_t> reg;
    for (auto v : members)
        if (p.is_regular(v)) reg.push_back(v);
    auto sd = snf(to_int_matrix(p.b.select(members, reg)));
    std::size_t k = 0;
    for (std::size_t i = 0; i < sd.rank(); ++i)
        if (sd.s(i, i) != 1) ++k;
    return k + (members.size() - sd.rank());
}

const char* to_string(IsoVerdict v) {
    switch (v) {
        case IsoVerdict::Iso: return "iso";
        case IsoVerdict::NotIso: return "not-iso";
        case IsoVerdict::Undecided: return "undecided";
    }
    return "?";
}

namespace {

std::vector<BigInt> primes_dividing(BigInt n) {
    std::vector<BigInt> out;
    for (BigInt p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::size_t valuation(BigInt x, const BigInt& p) {
    std::size_t e = 0;
    while (x != 0 && x % p == 0) {
        x /= p;
        ++e;
    }
    return e;
}

/// Heights of t, pt, p^2 t, ... in the p-primary part, until zero. Two elements
/// of a finite abelian p-group lie in one automorphism orbit iff these agree.
std::vector<std::size_t> ulm_sequence(const std::vector<BigInt>& factors, const std::vector<BigInt>& t, const BigInt& p) {
    std::vector<BigInt> mod, y;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        BigInt q = 1;
        for (std::size_t e = valuation(factors[i], p); e > 0; --e) q *= p;
        mod.push_back(q);
        y.push_back(((t[i] % q) + q) % q);
    }
    std::vector<std::size_t> seq;
    for (;;) {
        std::size_t h = SIZE_MAX;
        for (const auto& x : y)
            if (x != 0) h = std::min(h, valuation(x, p));
        if (h == SIZE_MAX) return seq;
        seq.push_back(h);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = (y[i] * p) % mod[i];
    }
}

bool same_orbit(const std::vector<BigInt>& factors, const std::vector<BigInt>& a, const std::vector<BigInt>& b,
                const std::vector<BigInt>& primes) {
    for (const auto& p : primes)
        if (ulm_sequence(factors, a, p) != ulm_sequence(factors, b, p)) return false;
    return true;
}

}  // namespace

IsoVerdict pointed_iso(const PointedK0& a, const PointedK0& b, const BigInt& torsion_bound) {
    if (a.factors != b.factors || a.free_rank != b.free_rank) return IsoVerdict::NotIso;
    if (a.unit == b.unit) return IsoVerdict::Iso;
    const auto order = a.torsion_order();
    if (order > torsion_bound) return IsoVerdict::Undecided;
    const std::size_t k = a.factors.size();
    std::vector<BigInt> ta(a.unit.begin(), a.unit.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<BigInt> tb(b.unit.begin(), b.unit.begin() + static_cast<std::ptrdiff_t>(k));
    auto primes = primes_dividing(order);
    if (a.free_rank == 0) return same_orbit(a.factors, ta, tb, primes) ? IsoVerdict::Iso : IsoVerdict::NotIso;

    // T + Z^l: automorphisms send (t, z) to (alpha(t) + beta(z), gamma(z)), so z matters
    // only through g = gcd(z), and beta(z) runs over g T
    BigInt ga = 0, gb = 0;
    for (std::size_t i = k; i < a.unit.size(); ++i) ga = gcd(ga, abs(a.unit[i]));
    for (std::size_t i = k; i < b.unit.size(); ++i) gb = gcd(gb, abs(b.unit[i]));
    if (ga != gb) return IsoVerdict::NotIso;
    std::vector<BigInt> beta(k, 0);
    for (;;) {
        std::vector<BigInt> t(k);
        for (std::size_t i = 0; i < k; ++i) t[i] = ((tb[i] - ga * beta[i]) % a.factors[i] + a.factors[i]) % a.factors[i];
        if (same_orbit(a.factors, ta, t, primes)) return IsoVerdict::Iso;
        std::size_t i = 0;
        while (i < k && ++beta[i] == a.factors[i]) beta[i++] = 0;
        if (i == k) return IsoVerdict::NotIso;
    }
}

}  // namespace gm
