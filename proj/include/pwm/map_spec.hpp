#pragma once

// Map descriptions: JSON files, preset strings and the built-in examples.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pwm/field.hpp"
#include "pwm/map.hpp"

namespace pwm {

struct MapSpec {
    std::string name;
    PwmMap map;
    /// Explicit Markov partition, used instead of detection when present.
    std::optional<std::vector<FieldElement>> markov_partition;
    std::optional<std::size_t> bound;
    std::optional<std::size_t> levels;
};

/// Parse a JSON map description. Numbers may be JSON integers or strings in
/// the field-element syntax ("1/3", "1 - sqrt(2)/2").
///
///   {"field": "Q(sqrt(2))",
///    "partition": ["0", "1/2", "1"],
///    "branches": [{"slope": "2", "intercept": "0"}, ...]}
///
/// Instead of partition/branches: "nodes": {"x": [...], "y": [...]} for a
/// continuous map, "preset": "tent:2" (see parse_preset), or "example": name.
/// Optional: "markov_partition": [...], "options": {"bound": n, "levels": n}.
/// Throws ParseError (with line and column) or ValidationError.
MapSpec parse_map_spec(const std::string& text);
MapSpec load_map_spec(const std::string& path);

/// tent:S, restricted_tent:S (S a field expression, or sqrt2), and
/// interval_exchange:golden or interval_exchange:L1,L2,...:P1,P2,...
MapSpec parse_preset(const std::string& preset);

/// Built-in example by name; throws ValidationError for unknown names.
MapSpec named_example(const std::string& name);
std::vector<std::string> example_names();

/// (sqrt(5) - 1) / 2
FieldElement golden_ratio_conjugate();

} // namespace pwm
