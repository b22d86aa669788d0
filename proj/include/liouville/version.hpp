#pragma once

namespace liouville {

inline constexpr const char* kToolName = "liouville-lab";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace liouville
