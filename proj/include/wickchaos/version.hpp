#pragma once

namespace wickchaos {

inline constexpr const char* kLibraryName = "wickchaos";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace wickchaos
