#include "qie/cli/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

namespace qie::cli {

unsigned resolve_threads(unsigned requested) {
  unsigned threads = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv(kMaxThreadsEnv)) {
    const std::string_view text(env);
    unsigned cap = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), cap);
    if (res.ec == std::errc() && res.ptr == text.data() + text.size() && cap > 0) {
      threads = std::min(threads, cap);
    }
  }
  return std::max(1u, threads);
}

}  // namespace qie::cli
