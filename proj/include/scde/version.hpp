#pragma once

namespace scde {

inline constexpr const char* kToolName = "scde";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace scde
