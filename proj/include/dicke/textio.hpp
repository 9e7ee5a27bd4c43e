#pragma once

#include <string>

namespace dicke {

inline constexpr const char* kToolVersion = "0.1.0";

// Shortest decimal that parses back to the same double, capped at 12
// significant digits. Keeps grid outputs diff-friendly across platforms.
std::string format_number(double v);

// Value after a round trip through format_number; JSON documents store this
// so the serializer emits the same digits.
double round12(double v);

}  // namespace dicke
