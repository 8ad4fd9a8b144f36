#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace fixcofe {

// Step index at which approximate equality is observed. Level 0 observes
// nothing; every instance's level-0 observation is empty.
using Level = std::uint32_t;

// Carrier values for NatFun and Stream instances. Arithmetic overflow is a
// reported error, never silent wraparound.
using Value = std::uint64_t;

struct OverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EnumerationCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnverifiedOperatorError : std::logic_error {
    using std::logic_error::logic_error;
};

inline Value add_checked(Value a, Value b) {
    if (a > std::numeric_limits<Value>::max() - b)
        throw OverflowError("addition overflow: " + std::to_string(a) + " + " + std::to_string(b));
    return a + b;
}

// Truncated natural subtraction, clamped at 0.
inline Value monus(Value a, Value b) { return a >= b ? a - b : 0; }

inline std::string show_prefix(const std::vector<Value>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(v[i]);
    }
    out += "]";
    return out;
}

}  // namespace fixcofe
