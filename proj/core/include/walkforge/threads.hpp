#pragma once

#include <cstdlib>
#include <string>
#include <thread>

namespace walkforge {

// Worker cap: an explicit request wins, then WALKFORGE_THREADS, then the
// hardware count.  Always at least 1.
inline unsigned resolve_threads(unsigned requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("WALKFORGE_THREADS")) {
    unsigned long v = std::strtoul(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

}  // namespace walkforge
