#include "pwm/linalg.hpp"

#include <utility>

namespace pwm {

RatMatrix rref_basis(const RatMatrix& input, std::vector<std::size_t>* pivots) {
    RatMatrix m = input;
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m(p, c) == 0)
            ++p;
        if (p == rows)
            continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(m(p, j), m(r, j));
        const Rational lead = m(r, c);
        for (std::size_t j = 0; j < cols; ++j)
            m(r, j) /= lead;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m(i, c) == 0)
                continue;
            const Rational f = m(i, c);
            for (std::size_t j = 0; j < cols; ++j)
                m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    RatMatrix basis(r, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            basis(i, j) = m(i, j);
    if (pivots)
        *pivots = std::move(piv);
    return basis;
}

std::size_t rank(const RatMatrix& m) { return rref_basis(m).rows(); }

RatVector characteristic_polynomial(const RatMatrix& a) {
    if (!a.square())
        throw std::invalid_argument("characteristic polynomial of a non-square matrix");
    const std::size_t n = a.rows();
    // Faddeev-LeVerrier.
    RatVector c(n + 1, Rational(0));
    c[n] = 1;
    RatMatrix mk(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        RatMatrix next = a * mk;
        for (std::size_t i = 0; i < n; ++i)
            next(i, i) += c[n - k + 1];
        mk = std::move(next);
        RatMatrix am = a * mk;
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            tr += am(i, i);
        c[n - k] = -tr / Rational(static_cast<long>(k));
    }
    return c;
}

RatMatrix inverse(const RatMatrix& a) {
    if (!a.square())
        throw std::invalid_argument("inverse of a non-square matrix");
    const std::size_t n = a.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    std::vector<std::size_t> piv;
    RatMatrix r = rref_basis(aug, &piv);
    if (r.rows() < n || piv[n - 1] != n - 1)
        throw std::domain_error("matrix is singular");
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = r(i, n + j);
    return inv;
}

} // namespace pwm
