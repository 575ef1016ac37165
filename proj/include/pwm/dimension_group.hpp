#pragma once

// Concrete presentations of the dimension group: the stationary limit G_A of
// an incidence matrix, computed on the eventual range V_A of A over Q, and the
// module classification of DG for the families where it is known.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pwm/disconnection.hpp"
#include "pwm/linalg.hpp"
#include "pwm/map.hpp"
#include "pwm/orbit.hpp"
#include "pwm/transfer.hpp"
#include "pwm/tristate.hpp"

namespace pwm {

/// [v, k]: the class of v pushed back k steps.
struct GAElement {
    RatVector v;
    std::size_t k = 0;

    GAElement operator-() const;
    friend GAElement operator+(const GAElement& x, const GAElement& y);
};

struct GroupPresentation {
    IntMatrix matrix;      ///< A, n x n
    std::size_t n = 0;
    std::size_t rank = 0;  ///< dim V_A
    RatMatrix basis;       ///< rank x n, reduced row echelon form
    std::vector<std::size_t> pivots;
    RatMatrix action;      ///< basis * A = action * basis
    std::size_t stabilized_at = 0; ///< first k with rank(A^k) = rank(A^(k+1))
    GAElement order_unit;  ///< class of the constant function 1
};

GroupPresentation ga_presentation(const IntMatrix& a);

/// Coordinates of [v A^n, k + n] in the basis of V_A, with the level.
std::pair<RatVector, std::size_t> ga_coordinates(const GroupPresentation& p, const GAElement& x);

bool ga_equal(const GroupPresentation& p, const GAElement& x, const GAElement& y);
TriState ga_positive(const GroupPresentation& p, const GAElement& x, std::size_t bound);

struct ModuleVector {
    IntVector v;
    std::size_t level = 0;
};

/// Least n <= bound with L^n f constant on every Markov interval, and the
/// coefficient vector there. Throws BoundExceeded.
ModuleVector markov_module_vector(const PwmMap& map, const MarkovPartition& mp, const StepFunction& f,
                                  std::size_t bound);

TriState is_simple(const PwmMap& map, const OrbitBounds& bounds = OrbitBounds{});

enum class ModuleTag { MarkovTriple, Cyclic, FreeRank, ExchangeForm, Unknown };

std::string to_string(ModuleTag t);

struct ModuleClassification {
    ModuleTag tag = ModuleTag::Unknown;
    bool conditional = false;     ///< rests on orbit conditions checked to `bound`
    std::size_t bound = 0;
    std::size_t free_rank = 0;    ///< number of Z[t, 1/t] summands (FreeRank, ExchangeForm, Cyclic payload)
    std::optional<GroupPresentation> presentation;
    std::optional<MarkovPartition> partition;
    std::vector<ClopenInterval> generators;
    std::string payload;
    std::vector<std::string> certificate;

    std::string summary() const;
};

ModuleClassification classify_module(const PwmMap& map, std::size_t bound = 50);

/// Continuous with two branches of opposite orientation.
bool is_unimodal(const PwmMap& map);
/// All branches increasing and the branch images tile [0, 1].
bool is_generalized_exchange(const PwmMap& map);

} // namespace pwm
