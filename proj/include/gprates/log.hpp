#pragma once

#include <spdlog/spdlog.h>

#include <memory>

namespace gprates {

// Library-wide logger. Writes to stderr so CLI stdout stays machine-readable.
std::shared_ptr<spdlog::logger> logger();

}  // namespace gprates
