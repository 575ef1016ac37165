#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pwm/field.hpp"

namespace pwm {

/// Affine piece x -> slope*x + intercept.
struct Branch {
    FieldElement slope;
    FieldElement intercept;

    FieldElement operator()(const FieldElement& x) const { return slope * x + intercept; }
    FieldElement inverse(const FieldElement& y) const { return (y - intercept) / slope; }
    bool increasing() const { return slope.sign() == Sign::Positive; }

    bool operator==(const Branch&) const = default;
};

/// The constructor that produced a map. Only maps built by make_tent /
/// make_restricted_tent are eligible for the tent-family exactness certificate.
enum class MapFamily { Custom, Tent, RestrictedTent, IntervalExchange };

struct FamilyTag {
    MapFamily kind = MapFamily::Custom;
    std::optional<FieldElement> slope;
    std::vector<std::size_t> permutation;
};

/// One- or two-element set of one-sided limits of the map at a point.
struct MultiValue {
    std::vector<FieldElement> values;

    bool singleton() const { return values.size() == 1; }
    bool contains(const FieldElement& y) const;
    bool operator==(const MultiValue&) const = default;
};

/// Closed interval [lo, hi] with exact endpoints.
struct Interval {
    FieldElement lo;
    FieldElement hi;

    bool contains(const FieldElement& x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool degenerate() const { return lo == hi; }
    FieldElement length() const { return hi - lo; }
    FieldElement midpoint() const { return (lo + hi) / FieldElement(2); }
    bool operator==(const Interval&) const = default;
};

/// Piecewise affine, piecewise monotonic self-map of [0, 1].
///
/// Branch i (0-based) lives on [a_i, a_{i+1}] of the partition and is the
/// continuous extension of the map on the open interval. Immutable once
/// constructed; the constructor validates every invariant and throws
/// InvalidMap naming the first violation.
class PwmMap {
public:
    PwmMap(FieldDescriptor field, std::vector<FieldElement> partition, std::vector<Branch> branches,
           FamilyTag family = {});

    /// Build from branch endpoint values: left_values[i] and right_values[i]
    /// are the limits of branch i at its left and right domain endpoints.
    static PwmMap from_endpoint_values(FieldDescriptor field, std::vector<FieldElement> partition,
                                       const std::vector<FieldElement>& left_values,
                                       const std::vector<FieldElement>& right_values);
    /// Continuous map, linear between the given (x, y) nodes.
    static PwmMap from_nodes(FieldDescriptor field, const std::vector<FieldElement>& xs,
                             const std::vector<FieldElement>& ys);

    const FieldDescriptor& field() const { return field_; }
    const std::vector<FieldElement>& partition() const { return partition_; }
    const std::vector<Branch>& branches() const { return branches_; }
    std::size_t num_branches() const { return branches_.size(); }
    const FamilyTag& family() const { return family_; }

    Interval domain(std::size_t i) const { return {partition_[i], partition_[i + 1]}; }
    /// Closed image interval of branch i.
    Interval image(std::size_t i) const;

    /// s_i * x + t_i for x in the closed domain of branch i.
    FieldElement branch_eval(std::size_t i, const FieldElement& x) const;
    /// Left and right limits at x (the set-valued extension).
    MultiValue tau_hat(const FieldElement& x) const;
    /// Single-valued map: right-continuous at interior partition points, left
    /// continuous at 1. This is the convention for interval exchange maps.
    FieldElement value(const FieldElement& x) const;
    /// All x whose one-sided limits include y, sorted.
    std::vector<FieldElement> tau_hat_preimage(const FieldElement& y) const;

    /// Indices of branches whose closed domain contains x.
    std::vector<std::size_t> branches_at(const FieldElement& x) const;

    bool is_continuous() const;
    bool all_increasing() const;
    /// Interior partition points where adjacent branches share slope and
    /// value; a maximal partition has none.
    std::vector<FieldElement> non_maximal_points() const;
    /// Closed images of the branches cover [0, 1].
    bool is_surjective() const;

    bool operator==(const PwmMap& o) const {
        return field_ == o.field_ && partition_ == o.partition_ && branches_ == o.branches_;
    }

private:
    FieldDescriptor field_;
    std::vector<FieldElement> partition_;
    std::vector<Branch> branches_;
    FamilyTag family_;
};

/// Symmetric tent x -> s*x on [0, 1/2], s - s*x on [1/2, 1]; 1 < s <= 2.
PwmMap make_tent(const FieldElement& s);
/// Tent restricted to its core and rescaled: 1 + s(x - c) for x <= c,
/// 1 - s(x - c) after, with c = 1 - 1/s; 1 < s <= 2.
PwmMap make_restricted_tent(const FieldElement& s);
/// Interval exchange: interval i of the given lengths is translated to
/// position permutation[i] in the stacking order of the image (0-based).
PwmMap make_interval_exchange(const std::vector<FieldElement>& lengths, const std::vector<std::size_t>& permutation);

/// Turning point of a restricted tent map with slope s.
FieldElement restricted_tent_critical_point(const FieldElement& s);

} // namespace pwm
