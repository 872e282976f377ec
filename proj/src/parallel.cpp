#include "nflab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace nflab {

int resolve_jobs(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("NF_LAB_JOBS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (...) {
      // ignore malformed values
    }
  }
  return 1;
}

}  // namespace nflab
