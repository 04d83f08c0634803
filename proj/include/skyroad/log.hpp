#pragma once

namespace skyroad {

// Sets the spdlog level from CUTM_LOG (trace, debug, info, warn, error,
// off). Defaults to warn.
void init_logging();

}  // namespace skyroad
