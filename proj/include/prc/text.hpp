#pragma once

#include <string>
#include <string_view>

namespace prc {

/// Shortest decimal rendering that parses back to the same double.
std::string format_double(double v);

/// Strict locale-independent parse ('.' radix, scientific notation allowed).
/// The whole token must be consumed and the value must be finite.
bool parse_double(std::string_view token, double& out);

}  // namespace prc
