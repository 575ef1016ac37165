#pragma once

// Points of the disconnected interval and the lifted local homeomorphism.
//
// Every point of the generalized orbit in (0, 1) is doubled into x- < x+.
// Only such doubled points are representable; 0 exists only as 0+ and 1 only
// as 1-. The clopen interval I(a, b) is the order interval [a+, b-].

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "pwm/field.hpp"
#include "pwm/map.hpp"

namespace pwm {

enum class Side { Minus, Plus };

struct XPoint {
    FieldElement coordinate;
    Side side = Side::Plus;

    /// Normalizing constructor: coordinate 0 forces Plus, 1 forces Minus.
    static XPoint make(FieldElement x, Side s);
    static XPoint minus(FieldElement x) { return make(std::move(x), Side::Minus); }
    static XPoint plus(FieldElement x) { return make(std::move(x), Side::Plus); }

    std::string to_string() const;

    friend bool operator==(const XPoint&, const XPoint&) = default;
    friend std::strong_ordering operator<=>(const XPoint& p, const XPoint& q) {
        if (auto c = p.coordinate <=> q.coordinate; c != 0)
            return c;
        return static_cast<int>(p.side) <=> static_cast<int>(q.side);
    }
};

/// I(lo, hi) = [lo+, hi-]; empty when lo == hi.
struct ClopenInterval {
    FieldElement lo;
    FieldElement hi;

    /// I(a, b) with endpoints in either order.
    static ClopenInterval make(FieldElement a, FieldElement b);

    bool empty() const { return lo == hi; }
    bool contains(const XPoint& p) const;
    std::string to_string() const;

    friend bool operator==(const ClopenInterval&, const ClopenInterval&) = default;
};

/// Index of the branch block [a_{i}+, a_{i+1}-] containing p.
std::size_t branch_of(const PwmMap& map, const XPoint& p);

/// The lifted map on doubled points: increasing branches keep the side tag,
/// decreasing branches flip it.
XPoint sigma_apply(const PwmMap& map, const XPoint& p);

/// Image of I(lo, hi) under branch i; the interval must lie in the branch domain.
ClopenInterval interval_image(const PwmMap& map, std::size_t branch, const ClopenInterval& iv);

/// Word s_0 .. s_{n-1} with s_k the index of the block containing sigma^k(p).
/// The blocks must be nonempty and tile X in some order.
std::vector<std::size_t> itinerary(const PwmMap& map, const std::vector<ClopenInterval>& blocks, const XPoint& p,
                                   std::size_t n);

} // namespace pwm
