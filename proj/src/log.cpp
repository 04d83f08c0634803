#include "skyroad/log.hpp"

#include "logger.hpp"

#include <cstdlib>
#include <string>

#include <spdlog/sinks/null_sink.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace skyroad {

spdlog::logger& logger() {
  if (auto registered = spdlog::get("cutm")) return *registered;
  static const auto silent = std::make_shared<spdlog::logger>("skyroad", std::make_shared<spdlog::sinks::null_sink_mt>());
  return *silent;
}

void init_logging() {
  static bool done = false;
  if (!done) {
    spdlog::set_default_logger(spdlog::stderr_color_mt("cutm"));
    spdlog::set_pattern("[%l] %v");
    done = true;
  }
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv("CUTM_LOG")) {
    const auto parsed = spdlog::level::from_str(env);
    // from_str maps unknown names to off; keep the default for those.
    if (parsed != spdlog::level::off || std::string(env) == "off") level = parsed;
  }
  spdlog::set_level(level);
}

}  // namespace skyroad
