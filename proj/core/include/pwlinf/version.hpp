#pragma once

namespace pwlinf {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pwlinf
