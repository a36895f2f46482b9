#pragma once

#include <charconv>
#include <stdexcept>
#include <string>

namespace picard {

enum class Axis { T, X };

inline Axis other_axis(Axis a) { return a == Axis::T ? Axis::X : Axis::T; }
inline const char* axis_name(Axis a) { return a == Axis::T ? "t" : "x"; }

// First-order and second-order derivative selectors for state references.
enum class DerivAxis { T, X, TT, XX, TX };

inline const char* deriv_axis_name(DerivAxis d) {
    switch (d) {
        case DerivAxis::T: return "t";
        case DerivAxis::X: return "x";
        case DerivAxis::TT: return "tt";
        case DerivAxis::XX: return "xx";
        case DerivAxis::TX: return "tx";
    }
    return "?";
}

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal form of a double ("2", "0.5", "1e-05").
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Fixed significant-digit form (general format, trailing zeros trimmed).
inline std::string format_double_sig(double v, int digits) {
    char buf[48];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, digits);
    return std::string(buf, res.ptr);
}

}  // namespace picard
