#include "compresslab/mode.hpp"

#include "compresslab/errors.hpp"

namespace compresslab {

std::string_view to_string(CompressionMode mode) noexcept {
  return mode == CompressionMode::ordered ? "ordered" : "disordered";
}

CompressionMode parse_mode(std::string_view text) {
  if (text == "ordered") return CompressionMode::ordered;
  if (text == "disordered") return CompressionMode::disordered;
  throw ConfigError("unknown compression mode '" + std::string(text) + "'");
}

}  // namespace compresslab
