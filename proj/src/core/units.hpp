#pragma once

#include <string>
#include <string_view>

namespace biphoton {

// Exponents over the (second, meter, radian) base. Frequencies are
// carried as rad/s, i.e. {-1, 0, 1} after simplifying rad away is not
// done: "Hz" maps to {-1, 0, 0} and "rad/s" to {-1, 0, 1}; both are
// accepted where an angular frequency is expected.
struct Dimension {
    int time = 0;
    int length = 0;
    int angle = 0;
    bool operator==(const Dimension&) const = default;
};

namespace dims {
inline constexpr Dimension none{0, 0, 0};
inline constexpr Dimension time{1, 0, 0};
inline constexpr Dimension length{0, 1, 0};
inline constexpr Dimension angle{0, 0, 1};
inline constexpr Dimension time_per_length{1, -1, 0};   // inverse GV difference
inline constexpr Dimension time2_per_length{2, -1, 0};  // GVD coefficient
inline constexpr Dimension rate{-1, 0, 0};              // events / s
inline constexpr Dimension rate_density{-2, 0, 0};      // events / (s * s)
} // namespace dims

// Parses "<number> [unit]" where unit is "tok[^n][/tok[^n]]", e.g.
// "1.5 ps/cm", "3.2e-28 s^2/cm", "45 deg", "250 m", "5e3 1/s^2".
// Angular frequencies additionally accept Hz-family tokens.
// A bare number is accepted only when the value is zero or the expected
// dimension is none; dimensioned values must carry a unit.
double parse_quantity(std::string_view text, const Dimension& expected,
                      std::string_view context = {});

// Plain scalar parsers with whole-string validation.
double parse_double(std::string_view text, std::string_view context = {});
long long parse_integer(std::string_view text, std::string_view context = {});
bool parse_bool(std::string_view text, std::string_view context = {});

} // namespace biphoton
