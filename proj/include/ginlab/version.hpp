#pragma once

namespace ginlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ginlab
