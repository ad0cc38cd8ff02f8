#pragma once

namespace moran {

inline constexpr const char* kToolName = "moran";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace moran
