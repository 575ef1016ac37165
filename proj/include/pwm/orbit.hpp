#pragma once

// Forward orbits under the set-valued map, Markov detection, the infinite
// disjoint orbit check and the eventual range.
//
// Everything that depends on a search bound carries that bound in its result;
// a bounded search never turns into an unconditional answer.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pwm/field.hpp"
#include "pwm/map.hpp"

namespace pwm {

struct OrbitBounds {
    std::size_t max_steps = 10000;   ///< iterations per seed
    std::size_t max_points = 100000; ///< total distinct points
    unsigned threads = 1;            ///< seeds expanded concurrently when > 1

    /// Defaults, with DIMGROUP_MAX_POINTS overriding max_points when set.
    static OrbitBounds from_environment();
    static OrbitBounds steps(std::size_t n) {
        OrbitBounds b;
        b.max_steps = n;
        return b;
    }
};

/// Level sets L_0 = {seed}, L_{k+1} = image of L_k; for a single-valued orbit
/// this is the usual preperiod/period pair.
struct SeedStatus {
    enum class Kind { EventuallyPeriodic, OpenAtBound };
    Kind kind = Kind::OpenAtBound;
    std::size_t preperiod = 0;
    std::size_t period = 0;
    std::size_t bound = 0;

    bool periodic() const { return kind == Kind::EventuallyPeriodic; }
};

struct OrbitReport {
    std::vector<FieldElement> points; ///< sorted union of every level set visited
    std::vector<FieldElement> seeds;
    std::vector<SeedStatus> status;   ///< parallel to seeds
    std::vector<std::vector<std::vector<FieldElement>>> levels; ///< per seed, L_0 .. L_last
    bool exhausted = false;           ///< every seed resolved: points is closed under the map
    OrbitBounds bounds;
};

OrbitReport forward_orbit(const PwmMap& map, const std::vector<FieldElement>& seeds,
                          const OrbitBounds& bounds = OrbitBounds{});

/// Image of a finite set under the set-valued map, sorted and deduplicated.
std::vector<FieldElement> tau_hat_image(const PwmMap& map, const std::vector<FieldElement>& xs);

/// Sorted, disjoint union of nondegenerate closed intervals; touching
/// intervals are merged.
class IntervalUnion {
public:
    IntervalUnion() = default;
    explicit IntervalUnion(std::vector<Interval> parts);

    static IntervalUnion unit() { return IntervalUnion({Interval{0, 1}}); }

    const std::vector<Interval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    bool contains(const FieldElement& x) const;
    bool contains(const Interval& iv) const;
    bool contains(const IntervalUnion& other) const;
    /// Intersection with a closed interval, dropping degenerate pieces.
    IntervalUnion intersect(const Interval& iv) const;
    std::string to_string() const;

    bool operator==(const IntervalUnion&) const = default;

private:
    std::vector<Interval> parts_;
};

/// Closure of the image of a union of intervals, branch by branch.
IntervalUnion image_of(const PwmMap& map, const IntervalUnion& u);

struct MarkovPartition {
    std::vector<FieldElement> endpoints; ///< b_0 = 0 < ... < b_q = 1
    std::size_t absorbed_at = 0;         ///< k with image^k(C) inside the endpoints

    std::size_t size() const { return endpoints.size() - 1; }
    Interval interval(std::size_t j) const { return {endpoints[j], endpoints[j + 1]}; }
    bool contains_endpoint(const FieldElement& x) const;
};

/// Checks the Markov partition conditions exactly and returns the partition;
/// throws MarkovValidationFailed naming the violated condition.
MarkovPartition validate_markov_partition(const PwmMap& map, std::vector<FieldElement> endpoints,
                                          std::size_t absorb_bound = 64);

struct MarkovDetection {
    std::optional<MarkovPartition> partition;
    std::size_t bound = 0; ///< the per-seed step bound used
    bool detected() const { return partition.has_value(); }
};

/// Markov partition from the finite forward orbit of the partition points,
/// or NotDetected (empty partition) when the orbit stays open at the bound.
MarkovDetection detect_markov(const PwmMap& map, const OrbitBounds& bounds = OrbitBounds{});

struct IdocWitness {
    enum class Kind { Collision, TwoValuedHit };
    Kind kind = Kind::Collision;
    FieldElement first;
    std::size_t first_step = 0;
    FieldElement second;
    std::size_t second_step = 0;
    std::string to_string() const;
};

struct IdocResult {
    std::optional<IdocWitness> witness; ///< empty: consistent up to bound
    std::size_t bound = 0;
    bool consistent() const { return !witness.has_value(); }
};

/// Follows the single-valued orbits x, map.value(x), ... of every point for
/// steps 0..bound and reports the first exact coincidence
/// value^m(b1) == value^n(b2) with (b1, m) != (b2, n), or the first visit
/// (after step 0) to an interior partition point where the map is two-valued.
IdocResult idoc_check(const PwmMap& map, const std::vector<FieldElement>& points, std::size_t bound);

struct EventualRange {
    std::vector<IntervalUnion> ranges; ///< R_0 = [0, 1], R_1, ...
    std::optional<std::size_t> stabilized_at;
    std::size_t bound = 0;

    const IntervalUnion& eventual() const { return ranges.back(); }
};

EventualRange eventual_range(const PwmMap& map, std::size_t bound = 64);

struct Restriction {
    PwmMap map;                         ///< restriction rescaled to [0, 1]
    FieldElement lo;                    ///< eventual range J = [lo, hi]
    FieldElement hi;
    std::size_t level = 0;              ///< N with image^N(I) = J
    std::vector<FieldElement> partition; ///< C' in original coordinates
};

/// Restricts an eventually surjective map to its eventual range J and rescales
/// it to [0, 1], with partition (C n J) u image^N(C).
Restriction restrict_to_eventual_range(const PwmMap& map, std::size_t bound = 64);

} // namespace pwm
