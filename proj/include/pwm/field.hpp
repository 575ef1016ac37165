#pragma once

// Exact arithmetic in Q and in real quadratic fields Q(sqrt(d)).
//
// An element is a + b*sqrt(d) with a, b rational (GMP, always in lowest
// terms). Elements with b == 0 are stored with d == 0, so every value has a
// single representation and equality/hashing are structural. A rational
// element combines freely with elements of any Q(sqrt(d)); two elements with
// nonzero irrational parts over different radicands raise MixedFields.

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace pwm {

using Integer = mpz_class;
using Rational = mpq_class;

bool is_squarefree(long d);

/// Q (radicand 0) or Q(sqrt(d)) with d >= 2 squarefree.
class FieldDescriptor {
public:
    FieldDescriptor() = default;

    static FieldDescriptor rational() { return {}; }
    static FieldDescriptor quadratic(long d);

    bool is_rational() const { return d_ == 0; }
    long radicand() const { return d_; }

    bool operator==(const FieldDescriptor&) const = default;

    std::string to_string() const;

private:
    explicit FieldDescriptor(long d) : d_(d) {}
    long d_ = 0;
};

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(long long n) : a_(static_cast<long>(n)) {} // NOLINT: implicit by intent
    FieldElement(long n) : a_(n) {}                         // NOLINT
    FieldElement(int n) : a_(n) {}                          // NOLINT
    FieldElement(Rational a) : a_(std::move(a)) { a_.canonicalize(); } // NOLINT
    FieldElement(Rational a, Rational b, long d);

    /// p/q as an element of Q.
    static FieldElement fraction(long p, long q);
    /// sqrt(n) for n >= 0, with square factors pulled out (sqrt(8) = 2*sqrt(2)).
    static FieldElement sqrt(long n);
    /// Parse `p/q`, `p/q + r/s*sqrt(d)` and general +,-,*,/ expressions with
    /// parentheses, integers, decimals and sqrt(n).
    static FieldElement parse(std::string_view text);

    const Rational& rational_part() const { return a_; }
    const Rational& irrational_part() const { return b_; }
    /// 0 when the element is rational.
    long radicand() const { return d_; }
    bool is_rational() const { return d_ == 0; }
    bool in_field(const FieldDescriptor& f) const { return d_ == 0 || d_ == f.radicand(); }

    Sign sign() const;
    bool is_zero() const { return sgn(a_) == 0 && d_ == 0; }
    FieldElement conjugate() const;
    FieldElement abs() const { return sign() == Sign::Negative ? -*this : *this; }

    /// Nearest double; display and test oracles only.
    double to_double() const;
    std::string to_string() const;
    std::size_t hash() const;

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& y);
    FieldElement& operator-=(const FieldElement& y);
    FieldElement& operator*=(const FieldElement& y);
    FieldElement& operator/=(const FieldElement& y);

    friend FieldElement operator+(FieldElement x, const FieldElement& y) { return x += y; }
    friend FieldElement operator-(FieldElement x, const FieldElement& y) { return x -= y; }
    friend FieldElement operator*(FieldElement x, const FieldElement& y) { return x *= y; }
    friend FieldElement operator/(FieldElement x, const FieldElement& y) { return x /= y; }

    friend bool operator==(const FieldElement& x, const FieldElement& y) {
        return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend std::strong_ordering operator<=>(const FieldElement& x, const FieldElement& y);

private:
    void normalize();
    static long common_radicand(const FieldElement& x, const FieldElement& y);

    Rational a_;
    Rational b_;
    long d_ = 0;
};

enum class ArithOp { Add, Sub, Mul, Div };

/// Exact field operation; throws DivisionByZero or MixedFields.
FieldElement field_arith(ArithOp op, const FieldElement& x, const FieldElement& y);
Sign field_sign(const FieldElement& x);

inline const FieldElement& min(const FieldElement& x, const FieldElement& y) { return y < x ? y : x; }
inline const FieldElement& max(const FieldElement& x, const FieldElement& y) { return x < y ? y : x; }

std::ostream& operator<<(std::ostream& os, const FieldElement& x);

struct FieldElementHash {
    std::size_t operator()(const FieldElement& x) const { return x.hash(); }
};

} // namespace pwm

template <>
struct std::hash<pwm::FieldElement> {
    std::size_t operator()(const pwm::FieldElement& x) const { return x.hash(); }
};
