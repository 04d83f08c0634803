#pragma once

#include <stdexcept>
#include <string>

namespace skyroad {

// Root of every error the engine raises. `kind()` is the stable name used in
// CLI messages and python exception text.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define SKYROAD_DEFINE_ERROR(Name)                                         \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& what) : Error(#Name, what) {}         \
  };

// Input problems (CLI exit code 2).
SKYROAD_DEFINE_ERROR(ParseError)
SKYROAD_DEFINE_ERROR(ValidationError)
SKYROAD_DEFINE_ERROR(ScenarioError)
SKYROAD_DEFINE_ERROR(DigestMismatchError)
SKYROAD_DEFINE_ERROR(RangeError)
SKYROAD_DEFINE_ERROR(IndexError)

// Geometry and numerics.
SKYROAD_DEFINE_ERROR(DegenerateBoundaryError)
SKYROAD_DEFINE_ERROR(ObstacleNotOnFloorError)
SKYROAD_DEFINE_ERROR(GeometryError)
SKYROAD_DEFINE_ERROR(NonConvergenceError)
SKYROAD_DEFINE_ERROR(NoStreamlinesError)
SKYROAD_DEFINE_ERROR(UnconvergedFieldError)

// Planning.
SKYROAD_DEFINE_ERROR(EdgeNotLiveError)
SKYROAD_DEFINE_ERROR(StartOrGoalAllocatedError)

#undef SKYROAD_DEFINE_ERROR

// True for errors that stem from bad input files or arguments.
inline bool is_input_error(const Error& e) {
  return dynamic_cast<const ParseError*>(&e) || dynamic_cast<const ValidationError*>(&e) ||
         dynamic_cast<const ScenarioError*>(&e) || dynamic_cast<const DigestMismatchError*>(&e) ||
         dynamic_cast<const RangeError*>(&e) || dynamic_cast<const IndexError*>(&e);
}

}  // namespace skyroad
