#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

namespace pour {

/// Volume/angle transfer quantum, 2^-30 (mL or degrees).
///
/// The plant rounds every transferred quantity and every integrated angle to
/// this grid. Quantities stay below 2^11, so grid values occupy at most 41
/// mantissa bits and all additions and subtractions between them are exact
/// in double precision; conservation then holds bitwise instead of drifting
/// by an ulp per step.
inline constexpr double kQuantum = 9.313225746154785e-10; // 2^-30

inline double grid_round(double v) {
    return std::round(v * 1073741824.0) * kQuantum; // 2^30
}

/// Shortest round-trip decimal representation (deterministic, locale-free).
inline std::string fmt_double(double v) {
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

/// Fixed-precision decimal representation (deterministic, locale-free).
inline std::string fmt_fixed(double v, int precision) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, precision);
    if (ec != std::errc{}) return fmt_double(v);
    return std::string(buf, p);
}

} // namespace pour
