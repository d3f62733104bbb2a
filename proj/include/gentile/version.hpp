#pragma once

namespace gentile {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gentile
