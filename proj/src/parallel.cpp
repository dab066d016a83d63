#include "compresslab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace compresslab {

namespace {

std::size_t initial_thread_count() {
  if (const char* env = std::getenv("COMPRESSLAB_THREADS")) {
    try {
      const long value = std::stol(env);
      if (value > 0) return static_cast<std::size_t>(value);
    } catch (...) {
      // fall through to the hardware default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::atomic<std::size_t>& configured() {
  static std::atomic<std::size_t> count{initial_thread_count()};
  return count;
}

}  // namespace

std::size_t thread_count() { return configured().load(); }

void set_thread_count(std::size_t n) { configured().store(n == 0 ? 1 : n); }

}  // namespace compresslab
