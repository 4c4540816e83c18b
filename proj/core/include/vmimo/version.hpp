#pragma once

namespace vmimo {

inline constexpr const char* kToolName = "vmimo-power-game";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace vmimo
