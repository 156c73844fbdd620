#include "pool.hpp"

#include <cstdlib>
#include <string>

#include "polariton/errors.hpp"

namespace polariton::cli {

int worker_limit() {
  if (const char* env = std::getenv("POLARITON_NUM_THREADS"); env && *env) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1 || n > 4096)
      throw ConfigError(std::string("POLARITON_NUM_THREADS must be a positive integer (got '") + env + "')");
    return static_cast<int>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace polariton::cli
