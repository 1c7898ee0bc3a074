#include "factcheck/log.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace factcheck {

std::shared_ptr<spdlog::logger> logger() {
  static const std::shared_ptr<spdlog::logger> instance = [] {
    auto l = spdlog::get("factcheck");
    if (!l) l = spdlog::stderr_color_mt("factcheck");
    l->set_level(spdlog::level::warn);
    return l;
  }();
  return instance;
}

}  // namespace factcheck
