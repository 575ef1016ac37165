#pragma once

#include <string>

namespace pwm {

/// Verdict that may be undecided at a search bound. Unknown always carries a
/// reason, usually naming the bound that ran out.
struct TriState {
    enum class Value { False, True, Unknown };
    Value value = Value::Unknown;
    std::string reason;

    static TriState yes(std::string why = {}) { return {Value::True, std::move(why)}; }
    static TriState no(std::string why = {}) { return {Value::False, std::move(why)}; }
    static TriState unknown(std::string why) { return {Value::Unknown, std::move(why)}; }
    static TriState of(bool b, std::string why = {}) { return b ? yes(std::move(why)) : no(std::move(why)); }

    bool is_true() const { return value == Value::True; }
    bool is_false() const { return value == Value::False; }
    bool is_unknown() const { return value == Value::Unknown; }

    std::string to_string() const {
        switch (value) {
        case Value::True:
            return "true";
        case Value::False:
            return "false";
        case Value::Unknown:
            break;
        }
        return "unknown";
    }
};

inline bool is_true(const TriState& t) { return t.is_true(); }
inline bool is_false(const TriState& t) { return t.is_false(); }
inline bool is_unknown(const TriState& t) { return t.is_unknown(); }
inline std::string to_string(const TriState& t) { return t.to_string(); }

} // namespace pwm
