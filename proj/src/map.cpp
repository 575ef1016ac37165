#include "pwm/map.hpp"

#include <algorithm>
#include <numeric>

#include "pwm/errors.hpp"

namespace pwm {

bool MultiValue::contains(const FieldElement& y) const {
    return std::find(values.begin(), values.end(), y) != values.end();
}

namespace {

void require_in_field(const FieldDescriptor& f, const FieldElement& x, const char* what) {
    if (!x.in_field(f))
        throw InvalidMap(std::string(what) + " " + x.to_string() + " is not in the field " + f.to_string());
}

FieldDescriptor field_of(const FieldElement& x) {
    return x.is_rational() ? FieldDescriptor::rational() : FieldDescriptor::quadratic(x.radicand());
}

FieldDescriptor field_of(const std::vector<FieldElement>& xs) {
    FieldDescriptor f;
    for (const auto& x : xs) {
        if (x.is_rational())
            continue;
        if (!f.is_rational() && f.radicand() != x.radicand())
            throw InvalidLengths("data lives in two different quadratic fields");
        f = field_of(x);
    }
    return f;
}

} // namespace

PwmMap::PwmMap(FieldDescriptor field, std::vector<FieldElement> partition, std::vector<Branch> branches,
               FamilyTag family)
    : field_(field), partition_(std::move(partition)), branches_(std::move(branches)), family_(std::move(family)) {
    if (partition_.size() < 2)
        throw InvalidMap("partition needs at least the points 0 and 1");
    if (partition_.front() != FieldElement(0) || partition_.back() != FieldElement(1))
        throw InvalidMap("partition must start at 0 and end at 1");
    for (const auto& a : partition_)
        require_in_field(field_, a, "partition point");
    for (std::size_t i = 1; i < partition_.size(); ++i)
        if (!(partition_[i - 1] < partition_[i]))
            throw InvalidMap("partition must be strictly increasing at index " + std::to_string(i));
    if (branches_.size() != partition_.size() - 1)
        throw InvalidMap("expected " + std::to_string(partition_.size() - 1) + " branches, got " +
                         std::to_string(branches_.size()));
    for (std::size_t i = 0; i < branches_.size(); ++i) {
        const Branch& b = branches_[i];
        require_in_field(field_, b.slope, "slope");
        require_in_field(field_, b.intercept, "intercept");
        if (b.slope.is_zero())
            throw InvalidMap("branch " + std::to_string(i + 1) + " has zero slope (not strictly monotonic)");
        for (const auto& x : {partition_[i], partition_[i + 1]}) {
            const FieldElement y = b(x);
            if (y < FieldElement(0) || y > FieldElement(1))
                throw InvalidMap("branch " + std::to_string(i + 1) + " maps " + x.to_string() + " to " +
                                 y.to_string() + ", outside [0, 1]");
        }
    }
}

PwmMap PwmMap::from_endpoint_values(FieldDescriptor field, std::vector<FieldElement> partition,
                                    const std::vector<FieldElement>& left_values,
                                    const std::vector<FieldElement>& right_values) {
    if (partition.size() < 2 || left_values.size() != partition.size() - 1 ||
        right_values.size() != partition.size() - 1)
        throw InvalidMap("endpoint value lists must have one entry per branch");
    std::vector<Branch> branches;
    for (std::size_t i = 0; i + 1 < partition.size(); ++i) {
        const FieldElement dx = partition[i + 1] - partition[i];
        if (dx.sign() != Sign::Positive)
            throw InvalidMap("partition must be strictly increasing at index " + std::to_string(i + 1));
        const FieldElement slope = (right_values[i] - left_values[i]) / dx;
        branches.push_back({slope, left_values[i] - slope * partition[i]});
    }
    return PwmMap(field, std::move(partition), std::move(branches));
}

PwmMap PwmMap::from_nodes(FieldDescriptor field, const std::vector<FieldElement>& xs,
                          const std::vector<FieldElement>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw InvalidMap("node lists must have equal length >= 2");
    std::vector<FieldElement> left(ys.begin(), ys.end() - 1);
    std::vector<FieldElement> right(ys.begin() + 1, ys.end());
    return from_endpoint_values(field, xs, left, right);
}

Interval PwmMap::image(std::size_t i) const {
    const Branch& b = branches_.at(i);
    FieldElement y0 = b(partition_[i]);
    FieldElement y1 = b(partition_[i + 1]);
    if (y1 < y0)
        std::swap(y0, y1);
    return {y0, y1};
}

FieldElement PwmMap::branch_eval(std::size_t i, const FieldElement& x) const {
    if (i >= branches_.size())
        throw OutOfBranchDomain("branch index " + std::to_string(i) + " out of range");
    if (x < partition_[i] || x > partition_[i + 1])
        throw OutOfBranchDomain(x.to_string() + " is outside branch " + std::to_string(i + 1) + " domain [" +
                                partition_[i].to_string() + ", " + partition_[i + 1].to_string() + "]");
    return branches_[i](x);
}

std::vector<std::size_t> PwmMap::branches_at(const FieldElement& x) const {
    std::vector<std::size_t> out;
    if (x < FieldElement(0) || x > FieldElement(1))
        return out;
    // First partition point >= x.
    const auto it = std::lower_bound(partition_.begin(), partition_.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - partition_.begin());
    if (*it == x) {
        if (k > 0)
            out.push_back(k - 1);
        if (k < branches_.size())
            out.push_back(k);
    } else {
        out.push_back(k - 1);
    }
    return out;
}

MultiValue PwmMap::tau_hat(const FieldElement& x) const {
    if (x < FieldElement(0) || x > FieldElement(1))
        throw OutOfDomain(x.to_string() + " is outside [0, 1]");
    MultiValue mv;
    for (std::size_t i : branches_at(x)) {
        FieldElement y = branches_[i](x);
        if (!mv.contains(y))
            mv.values.push_back(std::move(y));
    }
    std::sort(mv.values.begin(), mv.values.end());
    return mv;
}

FieldElement PwmMap::value(const FieldElement& x) const {
    const auto bs = branches_at(x);
    if (bs.empty())
        throw OutOfDomain(x.to_string() + " is outside [0, 1]");
    return branches_[bs.back()](x);
}

std::vector<FieldElement> PwmMap::tau_hat_preimage(const FieldElement& y) const {
    std::vector<FieldElement> out;
    for (std::size_t i = 0; i < branches_.size(); ++i) {
        if (!image(i).contains(y))
            continue;
        FieldElement x = branches_[i].inverse(y);
        if (x < partition_[i] || x > partition_[i + 1])
            continue;
        out.push_back(std::move(x));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool PwmMap::is_continuous() const {
    for (std::size_t i = 1; i < branches_.size(); ++i)
        if (branches_[i - 1](partition_[i]) != branches_[i](partition_[i]))
            return false;
    return true;
}

bool PwmMap::all_increasing() const {
    return std::all_of(branches_.begin(), branches_.end(), [](const Branch& b) { return b.increasing(); });
}

std::vector<FieldElement> PwmMap::non_maximal_points() const {
    std::vector<FieldElement> out;
    for (std::size_t i = 1; i < branches_.size(); ++i)
        if (branches_[i - 1] == branches_[i])
            out.push_back(partition_[i]);
    return out;
}

bool PwmMap::is_surjective() const {
    std::vector<Interval> imgs;
    for (std::size_t i = 0; i < branches_.size(); ++i)
        imgs.push_back(image(i));
    std::sort(imgs.begin(), imgs.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    FieldElement reach = 0;
    for (const auto& iv : imgs) {
        if (iv.lo > reach)
            return false;
        reach = max(reach, iv.hi);
    }
    return reach == FieldElement(1);
}

PwmMap make_tent(const FieldElement& s) {
    if (!(s > FieldElement(1) && s <= FieldElement(2)))
        throw InvalidSlope("tent slope must satisfy 1 < s <= 2, got " + s.to_string());
    const FieldDescriptor f = field_of(s);
    FamilyTag tag{MapFamily::Tent, s, {}};
    return PwmMap(f, {0, FieldElement::fraction(1, 2), 1}, {{s, 0}, {-s, s}}, tag);
}

FieldElement restricted_tent_critical_point(const FieldElement& s) { return FieldElement(1) - FieldElement(1) / s; }

PwmMap make_restricted_tent(const FieldElement& s) {
    if (!(s > FieldElement(1) && s <= FieldElement(2)))
        throw InvalidSlope("restricted tent slope must satisfy 1 < s <= 2, got " + s.to_string());
    const FieldDescriptor f = field_of(s);
    const FieldElement c = restricted_tent_critical_point(s);
    FamilyTag tag{MapFamily::RestrictedTent, s, {}};
    // 1 + s(x - c) = s x + (2 - s);  1 - s(x - c) = -s x + s
    return PwmMap(f, {0, c, 1}, {{s, FieldElement(2) - s}, {-s, s}}, tag);
}

PwmMap make_interval_exchange(const std::vector<FieldElement>& lengths, const std::vector<std::size_t>& permutation) {
    const std::size_t n = lengths.size();
    if (n == 0)
        throw InvalidLengths("interval exchange needs at least one interval");
    if (permutation.size() != n)
        throw InvalidLengths("permutation length does not match the number of intervals");
    FieldElement total = 0;
    for (const auto& l : lengths) {
        if (l.sign() != Sign::Positive)
            throw InvalidLengths("interval lengths must be positive, got " + l.to_string());
        total += l;
    }
    if (total != FieldElement(1))
        throw InvalidLengths("interval lengths must sum to 1, got " + total.to_string());
    std::vector<bool> seen(n, false);
    for (std::size_t p : permutation) {
        if (p >= n || seen[p])
            throw InvalidLengths("permutation is not a bijection of 0.." + std::to_string(n - 1));
        seen[p] = true;
    }
    const FieldDescriptor f = field_of(lengths);
    std::vector<FieldElement> partition{0};
    for (const auto& l : lengths)
        partition.push_back(partition.back() + l);
    partition.back() = 1;
    std::vector<Branch> branches;
    for (std::size_t i = 0; i < n; ++i) {
        FieldElement start = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (permutation[j] < permutation[i])
                start += lengths[j];
        branches.push_back({1, start - partition[i]});
    }
    FamilyTag tag{MapFamily::IntervalExchange, std::nullopt, permutation};
    return PwmMap(f, std::move(partition), std::move(branches), tag);
}

} // namespace pwm
