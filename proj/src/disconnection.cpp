#include "pwm/disconnection.hpp"

#include <algorithm>
#include <numeric>

#include "pwm/errors.hpp"

namespace pwm {

XPoint XPoint::make(FieldElement x, Side s) {
    if (x == FieldElement(0))
        s = Side::Plus;
    else if (x == FieldElement(1))
        s = Side::Minus;
    return XPoint{std::move(x), s};
}

std::string XPoint::to_string() const { return coordinate.to_string() + (side == Side::Minus ? "-" : "+"); }

ClopenInterval ClopenInterval::make(FieldElement a, FieldElement b) {
    if (b < a)
        std::swap(a, b);
    return ClopenInterval{std::move(a), std::move(b)};
}

bool ClopenInterval::contains(const XPoint& p) const {
    if (empty())
        return false;
    return XPoint{lo, Side::Plus} <= p && p <= XPoint{hi, Side::Minus};
}

std::string ClopenInterval::to_string() const { return "I(" + lo.to_string() + ", " + hi.to_string() + ")"; }

std::size_t branch_of(const PwmMap& map, const XPoint& p) {
    const auto& a = map.partition();
    if (p.coordinate < FieldElement(0) || p.coordinate > FieldElement(1))
        throw OutOfDomain(p.to_string() + " is outside X");
    // Block i is [a_i+, a_{i+1}-]: a_i- belongs to block i-1, a_i+ to block i.
    const auto it = std::lower_bound(a.begin(), a.end(), p.coordinate);
    const std::size_t k = static_cast<std::size_t>(it - a.begin());
    if (*it == p.coordinate) {
        if (k == 0)
            return 0;
        if (k == a.size() - 1)
            return k - 1;
        return p.side == Side::Minus ? k - 1 : k;
    }
    return k - 1;
}

XPoint sigma_apply(const PwmMap& map, const XPoint& p) {
    const std::size_t i = branch_of(map, p);
    const Branch& b = map.branches()[i];
    const Side s = b.increasing() ? p.side : (p.side == Side::Minus ? Side::Plus : Side::Minus);
    return XPoint::make(b(p.coordinate), s);
}

ClopenInterval interval_image(const PwmMap& map, std::size_t branch, const ClopenInterval& iv) {
    if (branch >= map.num_branches())
        throw NotInsideBranch("branch index " + std::to_string(branch) + " out of range");
    const Interval dom = map.domain(branch);
    if (iv.lo < dom.lo || iv.hi > dom.hi)
        throw NotInsideBranch(iv.to_string() + " is not inside branch " + std::to_string(branch + 1));
    const Branch& b = map.branches()[branch];
    return ClopenInterval::make(b(iv.lo), b(iv.hi));
}

std::vector<std::size_t> itinerary(const PwmMap& map, const std::vector<ClopenInterval>& blocks, const XPoint& p,
                                   std::size_t n) {
    if (n == 0)
        throw ValidationError("itinerary length must be at least 1");
    std::vector<std::size_t> order(blocks.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return blocks[x].lo < blocks[y].lo; });
    FieldElement reach = 0;
    for (std::size_t k : order) {
        if (blocks[k].empty())
            throw BlocksNotPartition("block " + blocks[k].to_string() + " is empty");
        if (blocks[k].lo != reach)
            throw BlocksNotPartition("blocks leave a gap or overlap at " + reach.to_string());
        reach = blocks[k].hi;
    }
    if (reach != FieldElement(1))
        throw BlocksNotPartition("blocks do not reach 1");

    std::vector<std::size_t> word;
    word.reserve(n);
    XPoint q = p;
    for (std::size_t step = 0; step < n; ++step) {
        const auto it = std::find_if(blocks.begin(), blocks.end(), [&](const ClopenInterval& b) { return b.contains(q); });
        word.push_back(static_cast<std::size_t>(it - blocks.begin()));
        if (step + 1 < n)
            q = sigma_apply(map, q);
    }
    return word;
}

} // namespace pwm
