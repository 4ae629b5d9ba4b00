#pragma once

#include <stdexcept>
#include <string>

namespace nlcf {

// Failure taxonomy shared by every module. Codes that describe invalid
// inputs (bad parameters, unsupported combinations, malformed config) are
// distinguished from numerical failures so the CLI can map them to distinct
// exit codes.
enum class Errc {
  CrossingOverflow,    // a ray met more than the supported number of boundary crossings
  NonBoundaryPoint,    // the evaluation point does not sit on the set boundary
  GridTooLarge,        // requested grid resolution exceeds the supported size
  FrontNotFound,       // no level crossing exists in the field
  FrontOpen,           // the extracted level line is not a closed loop
  DivergentPrimitive,  // radial kernel primitive diverges at the left endpoint
  DivergentTail,       // far-field tail integral diverges for this exponent
  CenterCell,          // cell weight requested for the singular center cell
  UnsupportedKind,     // curvature kind not defined for this set/operation
  UnsupportedOnGrid,   // curvature kind has no grid realization
  CutoffTooSmall,      // grid phase field is not constant outside the cutoff
  StalledFlow,         // no front motion detected (reported, not fatal)
  NonMonotoneErrors,   // sweep errors fail to decrease (reported, table kept)
  ConfigParse,         // config file is malformed
  IoFailure,           // filesystem read/write failed
};

const char* errc_name(Errc c);

// True for codes that indicate an invalid request rather than a numerical
// failure; the CLI exits 2 for these and 3 for the rest.
bool errc_is_validation(Errc c);

class NlcfError : public std::runtime_error {
 public:
  NlcfError(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw NlcfError(code, message);
}

}  // namespace nlcf
