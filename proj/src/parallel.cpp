#include "grl/parallel.hpp"
#include "grl/error.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace grl {

namespace {

int read_env_limit() {
  const char* env = std::getenv("GRL_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  try {
    const int n = std::stoi(env);
    return n > 0 ? n : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

std::atomic<int>& limit_slot() {
  static std::atomic<int> slot{read_env_limit()};
  return slot;
}

}  // namespace

int thread_limit() { return limit_slot().load(std::memory_order_relaxed); }

void set_thread_limit(int n) { limit_slot().store(n > 0 ? n : 0, std::memory_order_relaxed); }

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Size: return "size";
    case ErrorKind::DegenerateInput: return "degenerate-input";
    case ErrorKind::Configuration: return "configuration";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Input: return "input";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::Solver: return "solver";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace grl
