#include "units.hpp"

#include "errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>

namespace biphoton {
namespace {

struct UnitFactor {
    double factor;
    Dimension dim;
};

std::optional<UnitFactor> lookup_token(std::string_view tok) {
    using namespace dims;
    if (tok == "1") return UnitFactor{1.0, none};
    // time
    if (tok == "fs") return UnitFactor{1e-15, time};
    if (tok == "ps") return UnitFactor{1e-12, time};
    if (tok == "ns") return UnitFactor{1e-9, time};
    if (tok == "us") return UnitFactor{1e-6, time};
    if (tok == "ms") return UnitFactor{1e-3, time};
    if (tok == "s") return UnitFactor{1.0, time};
    // length
    if (tok == "nm") return UnitFactor{1e-9, length};
    if (tok == "um") return UnitFactor{1e-6, length};
    if (tok == "mm") return UnitFactor{1e-3, length};
    if (tok == "cm") return UnitFactor{1e-2, length};
    if (tok == "m") return UnitFactor{1.0, length};
    if (tok == "km") return UnitFactor{1e3, length};
    // angle
    if (tok == "rad") return UnitFactor{1.0, angle};
    if (tok == "deg") return UnitFactor{std::numbers::pi / 180.0, angle};
    // frequency (accepted for angular frequencies as well, see header)
    if (tok == "Hz") return UnitFactor{1.0, rate};
    if (tok == "kHz") return UnitFactor{1e3, rate};
    if (tok == "MHz") return UnitFactor{1e6, rate};
    if (tok == "GHz") return UnitFactor{1e9, rate};
    return std::nullopt;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string describe(std::string_view context) {
    return context.empty() ? std::string{} : " for '" + std::string(context) + "'";
}

// One side of the '/', i.e. "tok" or "tok^n".
UnitFactor parse_part(std::string_view part, std::string_view context) {
    part = trim(part);
    int exponent = 1;
    if (auto caret = part.find('^'); caret != std::string_view::npos) {
        auto exp_text = trim(part.substr(caret + 1));
        auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
        if (ec != std::errc{} || ptr != exp_text.data() + exp_text.size())
            throw ConfigError("bad unit exponent '" + std::string(exp_text) + "'" + describe(context));
        part = trim(part.substr(0, caret));
    }
    auto base = lookup_token(part);
    if (!base)
        throw ConfigError("unknown unit '" + std::string(part) + "'" + describe(context));
    UnitFactor out;
    out.factor = std::pow(base->factor, exponent);
    out.dim = {base->dim.time * exponent, base->dim.length * exponent,
               base->dim.angle * exponent};
    return out;
}

UnitFactor parse_unit(std::string_view unit, std::string_view context) {
    auto slash = unit.find('/');
    if (slash == std::string_view::npos) return parse_part(unit, context);
    UnitFactor num = parse_part(unit.substr(0, slash), context);
    UnitFactor den = parse_part(unit.substr(slash + 1), context);
    return UnitFactor{num.factor / den.factor,
                      {num.dim.time - den.dim.time,
                       num.dim.length - den.dim.length,
                       num.dim.angle - den.dim.angle}};
}

bool dimension_matches(const Dimension& got, const Dimension& expected) {
    if (got == expected) return true;
    // angular frequency: accept plain 1/s where rad/s is expected and
    // vice versa (radians are dimensionless in SI).
    Dimension no_angle_got{got.time, got.length, 0};
    Dimension no_angle_exp{expected.time, expected.length, 0};
    return got.angle != expected.angle && no_angle_got == no_angle_exp;
}

} // namespace

double parse_double(std::string_view text, std::string_view context) {
    text = trim(text);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ConfigError("bad number '" + std::string(text) + "'" + describe(context));
    return value;
}

long long parse_integer(std::string_view text, std::string_view context) {
    text = trim(text);
    long long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ConfigError("bad integer '" + std::string(text) + "'" + describe(context));
    return value;
}

bool parse_bool(std::string_view text, std::string_view context) {
    text = trim(text);
    if (text == "true" || text == "on" || text == "yes" || text == "1") return true;
    if (text == "false" || text == "off" || text == "no" || text == "0") return false;
    throw ConfigError("bad boolean '" + std::string(text) + "'" + describe(context));
}

double parse_quantity(std::string_view text, const Dimension& expected,
                      std::string_view context) {
    text = trim(text);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{})
        throw ConfigError("bad quantity '" + std::string(text) + "'" + describe(context));
    std::string_view unit = trim(std::string_view(ptr, static_cast<size_t>(text.data() + text.size() - ptr)));
    if (unit.empty()) {
        if (value == 0.0 || expected == dims::none) return value;
        throw ConfigError("missing unit on '" + std::string(text) + "'" + describe(context) +
                          " (dimensioned values need an explicit unit, e.g. '2.5 ps')");
    }
    UnitFactor uf = parse_unit(unit, context);
    if (!dimension_matches(uf.dim, expected))
        throw ConfigError("unit '" + std::string(unit) + "' has the wrong dimension" +
                          describe(context));
    return value * uf.factor;
}

} // namespace biphoton
