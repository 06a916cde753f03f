#ifndef CPWB_ERRORS_HPP
#define CPWB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cpwb {

enum class ErrorCode {
  UnboundName,
  LinearityViolation,
  RuleMismatch,
  NonBangContext,
  SystemViolation,
  HoleTypeMismatch,
  TypeMismatch,
  TypingMismatch,
  CutTypeMismatch,
  SortMismatch,
  OpenConfiguration,
  DepthExceeded,
  ConfigError
};

const char* error_name(ErrorCode c);

// Raised by the checkers and the semantic operations. Parse problems use
// SyntaxError instead (see text.hpp).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode c, const std::string& msg, std::string name = {})
      : std::runtime_error(std::string(error_name(c)) + ": " + msg),
        code_(c),
        name_(std::move(name)) {}
  ErrorCode code() const { return code_; }
  // The channel the failure is about, when there is one.
  const std::string& name() const { return name_; }

 private:
  ErrorCode code_;
  std::string name_;
};

}  // namespace cpwb

#endif
