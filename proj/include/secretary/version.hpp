#pragma once

namespace secretary {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace secretary
