#pragma once

namespace compresslab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace compresslab
