#pragma once

#include <string>
#include <string_view>

namespace compresslab {

// Ordered compaction keeps survivors in cyclic order; disordered compaction
// applies a uniform random permutation to them.
enum class CompressionMode { ordered, disordered };

std::string_view to_string(CompressionMode mode) noexcept;

// Throws ConfigError for anything but "ordered" / "disordered".
CompressionMode parse_mode(std::string_view text);

}  // namespace compresslab
