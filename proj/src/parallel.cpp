#include "cgiter/parallel.hpp"

#include <cstdlib>
#include <string>

namespace cgiter {

int thread_budget() {
  const char* env = std::getenv("CG_ITERATE_THREADS");
  long v = 0;
  if (env && *env) {
    try {
      v = std::stol(env);
    } catch (...) {
      v = 0;
    }
  }
  if (v <= 0) {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }
  return static_cast<int>(v);
}

}  // namespace cgiter
