#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

namespace plurichrome {

/// Worker count for internal reductions: hardware concurrency, capped by the
/// PLURICHROME_THREADS environment variable when it holds a positive integer.
inline unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PLURICHROME_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    } catch (const std::exception&) {
    }
  }
  return n;
}

}  // namespace plurichrome
