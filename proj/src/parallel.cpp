#include "equidivide/parallel.hpp"

#include <cstdlib>
#include <string>

namespace equidivide {

int default_threads() {
  const char* env = std::getenv("EQUIDIVIDE_THREADS");
  if (env == nullptr) return 1;
  try {
    int t = std::stoi(env);
    return t >= 1 ? t : 1;
  } catch (...) {
    return 1;
  }
}

}  // namespace equidivide
