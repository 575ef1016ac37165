#pragma once

// The leveled diagram of the interval-algebra limit: point sets C_n, the
// interval partitions P_n of the n-th image, multiplicities k(Y) and the
// connecting multiplicities between consecutive levels.

#include <cstddef>
#include <string>
#include <vector>

#include "pwm/field.hpp"
#include "pwm/linalg.hpp"
#include "pwm/map.hpp"

namespace pwm {

/// C_0 = {0, 1}; C_n = (union of the images of C of order 1..2n) restricted to
/// the n-th image of [0, 1].
std::vector<std::vector<FieldElement>> c_n_sets(const PwmMap& map, std::size_t levels);

struct BratteliVertex {
    Interval interval;
    Integer k;
};

struct BratteliEdge {
    std::size_t from; ///< vertex index on the previous level
    std::size_t to;   ///< vertex index on this level
    Integer mult;
};

struct BratteliLevel {
    std::vector<BratteliVertex> vertices;
    std::vector<BratteliEdge> edges; ///< empty on level 0
};

struct BratteliDiagram {
    std::vector<BratteliLevel> levels;
};

constexpr std::size_t default_vertex_cap = 10000;

/// Levels 0..levels. Each k(Y) is checked against the number of n-fold
/// preimages of the midpoint of Y; a mismatch throws ConsistencyFailure.
/// More than `vertex_cap` vertices on one level throws DiagramTooWide.
BratteliDiagram build_diagram(const PwmMap& map, std::size_t levels, std::size_t vertex_cap = default_vertex_cap);

struct K0Sequence {
    std::vector<std::size_t> ranks;
    std::vector<IntMatrix> connecting; ///< level n -> n+1, rows indexed by level n
};

K0Sequence k0_sequence(const BratteliDiagram& d);

/// Number of points x' with tau^n(x') = x, counted through branch inverses.
std::size_t preimage_count(const PwmMap& map, const FieldElement& x, std::size_t n);

std::string to_dot(const BratteliDiagram& d);
/// {"version":1,"levels":[{"vertices":[{"lo","hi","k"}],"edges":[{"from","to","mult"}]}]}
std::string to_json(const BratteliDiagram& d, int indent = 2);

} // namespace pwm
