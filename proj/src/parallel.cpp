#include "vipkit/parallel.hpp"

#include <atomic>
#include <cstdlib>

namespace vipkit {

namespace {

unsigned initial_thread_count() {
  if (const char* env = std::getenv("VIPKIT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return 1;
}

std::atomic<unsigned> g_threads{initial_thread_count()};

}  // namespace

void set_thread_count(unsigned n) { g_threads.store(n == 0 ? 1 : n); }

unsigned thread_count() { return g_threads.load(); }

}  // namespace vipkit
