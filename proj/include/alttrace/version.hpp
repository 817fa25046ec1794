#pragma once

namespace alttrace {

inline constexpr const char* kToolName = "alttrace";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace alttrace
