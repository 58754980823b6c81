#ifndef HAZARDLAB_ERROR_HPP
#define HAZARDLAB_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace hazardlab {

enum class ErrorCode {
  horizon_exceeded,
  generator_stalled,
  search_exhausted,
  no_stagnation_segment,
  witness_exhausted,
  precondition_violated,
  bad_arity,
  bad_params,
  degenerate,
  invalid_hazard,
  parse_error,
};

std::string_view to_string(ErrorCode code);

/// Thrown by constructions and queries that cannot produce a value.
/// Verification routines do not throw on a failed check; they return a
/// report carrying the violation instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hazardlab

#endif  // HAZARDLAB_ERROR_HPP
