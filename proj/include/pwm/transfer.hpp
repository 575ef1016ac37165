#pragma once

// Integer step functions on the disconnected interval and the transfer
// operator (L f)(x) = sum of f(y) over the preimages y of x.
//
// A step function is a list of interior cut coordinates 0 < x_1 < ... < x_m < 1
// and values v_0 .. v_m, with v_k taken on I(x_k, x_{k+1}) (x_0 = 0,
// x_{m+1} = 1). Adjacent equal values are always merged, so equality is
// structural.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pwm/disconnection.hpp"
#include "pwm/field.hpp"
#include "pwm/linalg.hpp"
#include "pwm/map.hpp"
#include "pwm/orbit.hpp"
#include "pwm/tristate.hpp"

namespace pwm {

struct StepTerm {
    FieldElement lo;
    FieldElement hi;
    Integer coefficient;
};

class StepFunction {
public:
    StepFunction() : values_{Integer(0)} {}

    static StepFunction constant(const Integer& n);
    /// The characteristic function of I(a, b); zero when a == b.
    static StepFunction indicator(const FieldElement& a, const FieldElement& b);
    /// Sum of coefficient * indicator(lo, hi) over the terms.
    static StepFunction from_terms(const std::vector<StepTerm>& terms);
    /// Constant v[j] on I(b_j, b_{j+1}).
    static StepFunction from_vector(const std::vector<FieldElement>& breakpoints, const IntVector& v);

    const std::vector<FieldElement>& cuts() const { return cuts_; }
    const std::vector<Integer>& values() const { return values_; }

    /// Breakpoints including 0 and 1.
    std::vector<FieldElement> breakpoints() const;
    Integer value_at(const XPoint& p) const;
    bool is_zero() const { return cuts_.empty() && values_[0] == 0; }
    bool nonnegative() const;
    bool nonpositive() const;
    /// All cuts lie in the sorted list `points`.
    bool cuts_within(const std::vector<FieldElement>& points) const;
    /// Values on I(b_j, b_{j+1}); requires cuts_within(b).
    IntVector coefficients(const std::vector<FieldElement>& b) const;
    /// Terms lo, hi, value over maximal constant pieces with nonzero value.
    std::vector<StepTerm> terms() const;
    std::string to_string() const;

    StepFunction operator-() const;
    friend StepFunction operator+(const StepFunction& f, const StepFunction& g);
    friend StepFunction operator-(const StepFunction& f, const StepFunction& g) { return f + (-g); }
    friend StepFunction operator*(const Integer& n, const StepFunction& f);
    friend bool operator==(const StepFunction&, const StepFunction&) = default;

private:
    StepFunction(std::vector<FieldElement> cuts, std::vector<Integer> values);
    void canonicalize();

    std::vector<FieldElement> cuts_;
    std::vector<Integer> values_;
};

StepFunction transfer_apply(const PwmMap& map, const StepFunction& f);
StepFunction transfer_power(const PwmMap& map, StepFunction f, std::size_t n);

struct Decision {
    TriState verdict;
    std::optional<std::size_t> level; ///< iterate count that settled a True verdict
};

/// f ~ g: L^k f = L^k g for some k <= bound. With a Markov partition the
/// question is decided once both iterates are constant on its intervals.
Decision equivalent(const PwmMap& map, const StepFunction& f, const StepFunction& g, std::size_t bound,
                    const std::optional<MarkovPartition>& markov);
Decision equivalent(const PwmMap& map, const StepFunction& f, const StepFunction& g, std::size_t bound);

/// [f] <= [g]: L^k f <= L^k g pointwise for some k <= bound.
Decision leq(const PwmMap& map, const StepFunction& f, const StepFunction& g, std::size_t bound,
             const std::optional<MarkovPartition>& markov);
Decision leq(const PwmMap& map, const StepFunction& f, const StepFunction& g, std::size_t bound);

/// Points where the step function, extended by 0 outside [0, 1], jumps.
std::vector<FieldElement> discontinuity_set(const StepFunction& f);

/// Module generators: intervals between adjacent points of C u {M} with M the
/// least point of the image of C, then the jump intervals at the partition
/// points. Throws NotEventuallySurjective.
std::vector<ClopenInterval> generator_intervals(const PwmMap& map, std::size_t bound = 64);
std::vector<StepFunction> generators(const PwmMap& map, std::size_t bound = 64);

} // namespace pwm
