#pragma once

// Incidence matrices of Markov maps and the graph verdicts built on them.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pwm/linalg.hpp"
#include "pwm/map.hpp"
#include "pwm/orbit.hpp"
#include "pwm/tristate.hpp"

namespace pwm {

/// A(i, j) = 1 iff the closure of the image of partition interval i contains
/// partition interval j.
IntMatrix incidence_matrix(const PwmMap& map, const MarkovPartition& mp);

/// Strongly connected components in order of first vertex.
std::vector<std::vector<std::size_t>> strongly_connected_components(const IntMatrix& a);

/// Every loop of the graph of `a` has an exit.
bool condition_L(const IntMatrix& a);

struct GraphClass {
    bool irreducible = false;
    bool primitive = false;
    bool permutation = false;
    std::size_t period = 0; ///< gcd of cycle lengths when irreducible, else 0
};

GraphClass graph_classify(const IntMatrix& a);

/// Graph of `a` in DOT, one edge per unit of multiplicity.
std::string incidence_dot(const IntMatrix& a, const std::vector<std::string>& labels = {});

/// Maps built by make_restricted_tent with sqrt(2) < s <= 2, and make_tent(2).
bool tent_exactness_certificate(const PwmMap& map);

struct DynamicsVerdict {
    TriState exact;
    TriState transitive;
    TriState conjugate_to_sft;
    TriState homtervals; ///< true: the map has a homterval
    std::optional<MarkovPartition> partition;
    std::optional<IntMatrix> matrix;
    std::size_t bound = 0;
};

DynamicsVerdict dynamics_verdict(const PwmMap& map, const OrbitBounds& bounds = OrbitBounds{});
/// Verdicts read off a known Markov partition.
DynamicsVerdict markov_verdict(const PwmMap& map, const MarkovPartition& mp);

} // namespace pwm

namespace pwm {

/// v A^n == 0 with n the size of A, i.e. v dies under iteration.
bool eventually_zero(const RatMatrix& a, const RatVector& v);

/// True once some v A^m (m <= bound) is entrywise >= 0; False once an iterate
/// is <= 0 and does not die; Unknown otherwise. `level` receives the deciding m.
TriState eventually_nonnegative(const RatMatrix& a, RatVector v, std::size_t bound, std::size_t* level = nullptr);

} // namespace pwm
