#include "floquet3/parallel.hpp"

#include <cstdlib>
#include <string>

namespace floquet3 {

std::size_t worker_count() {
  if (const char* env = std::getenv("FLOQUET3_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      // Unparsable values fall through to the hardware default.
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace detail {
bool& inside_parallel_region() {
  thread_local bool flag = false;
  return flag;
}
}  // namespace detail

}  // namespace floquet3
