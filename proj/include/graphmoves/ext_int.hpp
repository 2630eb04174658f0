#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace gm {

/// Raised for any violated precondition of a graph operation. The message is
/// meant to be shown to a user verbatim.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An integer extended by a single positive infinity.
///
/// Edge multiplicities live in {0, 1, ..., inf}; entries of the B matrix live
/// in {-1, 0, 1, ..., inf}. Both use this type. Finite arithmetic is checked
/// and throws on overflow instead of wrapping.
class ExtInt {
public:
    constexpr ExtInt() = default;
    constexpr ExtInt(std::int64_t v) : value_(v) {}  // NOLINT(implicit)

    static constexpr ExtInt inf() {
        ExtInt r;
        r.inf_ = true;
        return r;
    }

    [[nodiscard]] constexpr bool is_inf() const { return inf_; }
    [[nodiscard]] constexpr bool is_finite() const { return !inf_; }

    /// Finite value; throws when infinite.
    [[nodiscard]] std::int64_t value() const {
        if (inf_) throw DomainError("infinite multiplicity where a finite value is required");
        return value_;
    }

    [[nodiscard]] constexpr bool is_zero() const { return !inf_ && value_ == 0; }
    [[nodiscard]] constexpr bool positive() const { return inf_ || value_ > 0; }

    friend constexpr bool operator==(const ExtInt& a, const ExtInt& b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
    }
    friend constexpr std::strong_ordering operator<=>(const ExtInt& a, const ExtInt& b) {
        if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
        return a.value_ <=> b.value_;
    }

    friend ExtInt operator+(const ExtInt& a, const ExtInt& b) {
        if (a.inf_ || b.inf_) return inf();
        std::int64_t r;
        if (__builtin_add_overflow(a.value_, b.value_, &r))
            throw DomainError("integer overflow in multiplicity arithmetic");
        return r;
    }
    ExtInt& operator+=(const ExtInt& o) { return *this = *this + o; }

    /// inf * 0 = 0 and inf * k = inf for k >= 1. Negative times inf is an error.
    friend ExtInt operator*(const ExtInt& a, const ExtInt& b) {
        if (a.is_zero() || b.is_zero()) return 0;
        if (a.inf_ || b.inf_) {
            if ((!a.inf_ && a.value_ < 0) || (!b.inf_ && b.value_ < 0))
                throw DomainError("negative value multiplied by infinity");
            return inf();
        }
        std::int64_t r;
        if (__builtin_mul_overflow(a.value_, b.value_, &r))
            throw DomainError("integer overflow in multiplicity arithmetic");
        return r;
    }

    /// a - b. inf - finite = inf. finite - inf is always an error. inf - inf
    /// is an error unless `allow_inf_minus_inf`, in which case it is inf.
    [[nodiscard]] static ExtInt sub(const ExtInt& a, const ExtInt& b, bool allow_inf_minus_inf = false) {
        if (b.inf_) {
            if (a.inf_ && allow_inf_minus_inf) return inf();
            if (a.inf_) throw DomainError("inf - inf is undefined here");
            throw DomainError("cannot subtract infinity from a finite value");
        }
        if (a.inf_) return inf();
        std::int64_t r;
        if (__builtin_sub_overflow(a.value_, b.value_, &r))
            throw DomainError("integer overflow in multiplicity arithmetic");
        return r;
    }
    friend ExtInt operator-(const ExtInt& a, const ExtInt& b) { return sub(a, b); }

    [[nodiscard]] std::string str() const { return inf_ ? "inf" : std::to_string(value_); }

    friend std::ostream& operator<<(std::ostream& os, const ExtInt& x) { return os << x.str(); }

private:
    std::int64_t value_ = 0;
    bool inf_ = false;
};

using ExtNat = ExtInt;  // nonnegativity is enforced by the containers that hold it

inline constexpr ExtInt kInf = ExtInt::inf();

}  // namespace gm
