#pragma once

#include <stdexcept>
#include <string>

namespace flowkit {

enum class ErrorCode {
  DuplicateRank,
  NoFeasibleMedium,
  InvalidInput,
  InvalidMap,
  NoWorkHoursConfigured,
  Parse,
  Io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace flowkit
