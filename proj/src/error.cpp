#include "flowkit/error.hpp"
#include "flowkit/issue.hpp"

namespace flowkit {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateRank: return "DuplicateRank";
    case ErrorCode::NoFeasibleMedium: return "NoFeasibleMedium";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InvalidMap: return "InvalidMap";
    case ErrorCode::NoWorkHoursConfigured: return "NoWorkHoursConfigured";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
  }
  return "?";
}

std::string describe(const Issue& issue) {
  std::string out = issue.code;
  if (!issue.element_id.empty()) out += " [" + issue.element_id + "]";
  if (!issue.message.empty()) out += ": " + issue.message;
  return out;
}

}  // namespace flowkit
