#pragma once

#include <spdlog/spdlog.h>

namespace skyroad {

// The "cutm" logger once init_logging() has run, otherwise a silent one so
// embedding the library (python, tests) prints nothing.
spdlog::logger& logger();

}  // namespace skyroad
