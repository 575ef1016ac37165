#include "pwm/field.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "pwm/errors.hpp"

namespace pwm {

bool is_squarefree(long d) {
    if (d < 1)
        return false;
    for (long p = 2; p * p <= d; ++p)
        if (d % (p * p) == 0)
            return false;
    return true;
}

FieldDescriptor FieldDescriptor::quadratic(long d) {
    if (d < 2 || !is_squarefree(d))
        throw ValidationError("quadratic field radicand must be a squarefree integer >= 2, got " +
                              std::to_string(d));
    return FieldDescriptor(d);
}

std::string FieldDescriptor::to_string() const {
    return d_ == 0 ? "Q" : "Q(sqrt(" + std::to_string(d_) + "))";
}

FieldElement::FieldElement(Rational a, Rational b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    a_.canonicalize();
    b_.canonicalize();
    if (sgn(b_) != 0 && (d < 2 || !is_squarefree(d)))
        throw ValidationError("quadratic field radicand must be a squarefree integer >= 2, got " +
                              std::to_string(d));
    normalize();
}

FieldElement FieldElement::fraction(long p, long q) {
    if (q == 0)
        throw DivisionByZero();
    Rational r(p, q);
    r.canonicalize();
    return FieldElement(r);
}

FieldElement FieldElement::sqrt(long n) {
    if (n < 0)
        throw ValidationError("sqrt of a negative number is not real");
    long outside = 1;
    long inside = n;
    for (long p = 2; p * p <= inside; ++p) {
        while (inside % (p * p) == 0) {
            inside /= p * p;
            outside *= p;
        }
    }
    if (inside == 0)
        return {};
    if (inside == 1)
        return FieldElement(Rational(outside));
    return FieldElement(Rational(0), Rational(outside), inside);
}

void FieldElement::normalize() {
    if (sgn(b_) == 0)
        d_ = 0;
}

long FieldElement::common_radicand(const FieldElement& x, const FieldElement& y) {
    if (x.d_ == 0)
        return y.d_;
    if (y.d_ == 0 || y.d_ == x.d_)
        return x.d_;
    throw MixedFields(x.d_, y.d_);
}

Sign FieldElement::sign() const {
    const int sa = sgn(a_);
    const int sb = sgn(b_);
    if (sb == 0)
        return static_cast<Sign>(sa);
    if (sa == 0 || sa == sb)
        return static_cast<Sign>(sb);
    // Opposite signs: compare a^2 with b^2 d. Equality is impossible for
    // irrational sqrt(d).
    const Rational a2 = a_ * a_;
    const Rational b2d = b_ * b_ * d_;
    return static_cast<Sign>(a2 > b2d ? sa : sb);
}

FieldElement FieldElement::conjugate() const {
    FieldElement r = *this;
    r.b_ = -r.b_;
    return r;
}

double FieldElement::to_double() const {
    if (d_ == 0)
        return a_.get_d();
    return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_));
}

namespace {

std::string rational_text(const Rational& q) { return q.get_str(); }

} // namespace

std::string FieldElement::to_string() const {
    if (d_ == 0)
        return rational_text(a_);
    std::string root = "sqrt(" + std::to_string(d_) + ")";
    const Rational absb = ::abs(b_);
    std::string irr = absb == 1 ? root : rational_text(absb) + "*" + root;
    if (sgn(a_) == 0)
        return sgn(b_) < 0 ? "-" + irr : irr;
    return rational_text(a_) + (sgn(b_) < 0 ? " - " : " + ") + irr;
}

namespace {

std::size_t hash_mpz(const mpz_class& z) {
    std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
    const std::size_t n = mpz_size(z.get_mpz_t());
    for (std::size_t i = 0; i < n; ++i) {
        h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i))) + 0x9e3779b97f4a7c15ULL +
             (h << 6) + (h >> 2);
    }
    return h;
}

std::size_t combine(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

} // namespace

std::size_t FieldElement::hash() const {
    std::size_t h = hash_mpz(a_.get_num());
    h = combine(h, hash_mpz(a_.get_den()));
    if (d_ != 0) {
        h = combine(h, hash_mpz(b_.get_num()));
        h = combine(h, hash_mpz(b_.get_den()));
        h = combine(h, static_cast<std::size_t>(d_));
    }
    return h;
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& y) {
    d_ = common_radicand(*this, y);
    a_ += y.a_;
    b_ += y.b_;
    normalize();
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& y) {
    d_ = common_radicand(*this, y);
    a_ -= y.a_;
    b_ -= y.b_;
    normalize();
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& y) {
    const long d = common_radicand(*this, y);
    if (d == 0) {
        a_ *= y.a_;
        d_ = 0;
        return *this;
    }
    Rational a = a_ * y.a_ + b_ * y.b_ * d;
    Rational b = a_ * y.b_ + y.a_ * b_;
    a_ = std::move(a);
    b_ = std::move(b);
    d_ = d;
    normalize();
    return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& y) {
    if (y.is_zero())
        throw DivisionByZero();
    const long d = common_radicand(*this, y);
    if (y.d_ == 0) {
        a_ /= y.a_;
        b_ /= y.a_;
        d_ = d;
        normalize();
        return *this;
    }
    // x / y = x * conj(y) / (a^2 - b^2 d)
    const Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * y.d_;
    *this *= y.conjugate();
    a_ /= norm;
    b_ /= norm;
    normalize();
    return *this;
}

std::strong_ordering operator<=>(const FieldElement& x, const FieldElement& y) {
    if (x == y)
        return std::strong_ordering::equal;
    if (x.d_ == 0 && y.d_ == 0)
        return x.a_ < y.a_ ? std::strong_ordering::less : std::strong_ordering::greater;
    switch ((x - y).sign()) {
    case Sign::Negative:
        return std::strong_ordering::less;
    case Sign::Positive:
        return std::strong_ordering::greater;
    case Sign::Zero:
        break;
    }
    return std::strong_ordering::equal;
}

FieldElement field_arith(ArithOp op, const FieldElement& x, const FieldElement& y) {
    switch (op) {
    case ArithOp::Add:
        return x + y;
    case ArithOp::Sub:
        return x - y;
    case ArithOp::Mul:
        return x * y;
    case ArithOp::Div:
        return x / y;
    }
    return {};
}

Sign field_sign(const FieldElement& x) { return x.sign(); }

std::ostream& operator<<(std::ostream& os, const FieldElement& x) { return os << x.to_string(); }

// ---------------------------------------------------------------------------
// Expression parser

namespace {

class ExprParser {
public:
    explicit ExprParser(std::string_view s) : s_(s) {}

    FieldElement run() {
        FieldElement v = expr();
        skip_ws();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, 1, pos_ + 1); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    FieldElement expr() {
        FieldElement v = term();
        for (;;) {
            if (accept('+'))
                v += term();
            else if (accept('-'))
                v -= term();
            else
                return v;
        }
    }

    FieldElement term() {
        FieldElement v = unary();
        for (;;) {
            if (accept('*')) {
                v *= unary();
            } else if (accept('/')) {
                const std::size_t at = pos_;
                FieldElement d = unary();
                if (d.is_zero()) {
                    pos_ = at;
                    fail("division by zero");
                }
                v /= d;
            } else {
                return v;
            }
        }
    }

    FieldElement unary() {
        if (accept('-'))
            return -unary();
        if (accept('+'))
            return unary();
        return primary();
    }

    FieldElement primary() {
        skip_ws();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        if (accept('(')) {
            FieldElement v = expr();
            if (!accept(')'))
                fail("expected ')'");
            return v;
        }
        if (s_.substr(pos_, 4) == "sqrt") {
            pos_ += 4;
            if (!accept('('))
                fail("expected '(' after sqrt");
            skip_ws();
            const std::size_t at = pos_;
            Rational n = number();
            if (n.get_den() != 1 || sgn(n) < 0 || !n.get_num().fits_slong_p()) {
                pos_ = at;
                fail("sqrt argument must be a nonnegative integer");
            }
            if (!accept(')'))
                fail("expected ')'");
            return FieldElement::sqrt(n.get_num().get_si());
        }
        if (std::isdigit(static_cast<unsigned char>(s_[pos_])))
            return FieldElement(number());
        fail("expected a number, sqrt(n) or '('");
    }

    Rational number() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected digits");
        mpz_class whole(std::string(s_.substr(start, pos_ - start)));
        Rational value(whole);
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            const std::size_t fs = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (fs == pos_)
                fail("expected digits after '.'");
            mpz_class frac(std::string(s_.substr(fs, pos_ - fs)));
            mpz_class scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 10, pos_ - fs);
            value += Rational(frac, scale);
            value.canonicalize();
        }
        return value;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

FieldElement FieldElement::parse(std::string_view text) { return ExprParser(text).run(); }

} // namespace pwm
