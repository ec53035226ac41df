#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace baire {

// Shortest decimal representation that parses back to the same double.
// Every number the toolkit writes goes through this, which is what makes
// save/load round-trips exact and repeated runs byte-identical.
std::string format_double(double v);
void append_double(std::string& out, double v);

// Strict double parse of an entire token (scientific notation accepted).
std::optional<double> parse_double(std::string_view token);

// FNV-1a 64-bit hash of a byte string; used to pin bundled fixtures.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace baire
