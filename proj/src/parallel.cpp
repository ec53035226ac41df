#include "baire/parallel.hpp"

#include <atomic>

namespace baire {

namespace {
std::atomic<int> g_thread_count{0};
}

int hardware_threads() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void set_thread_count(int n) { g_thread_count.store(n < 0 ? 0 : n); }

int thread_count() {
  int n = g_thread_count.load();
  return n > 0 ? n : hardware_threads();
}

}  // namespace baire
