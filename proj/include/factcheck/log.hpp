#pragma once

#include <memory>

#include <spdlog/logger.h>

namespace factcheck {

// The library logger ("factcheck"). Writes warnings to stderr by default;
// remote query text is logged verbatim at debug level.
std::shared_ptr<spdlog::logger> logger();

}  // namespace factcheck
