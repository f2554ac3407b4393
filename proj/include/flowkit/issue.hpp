#pragma once

#include <string>
#include <vector>

namespace flowkit {

// A broken invariant found by one of the validators. Issues are data; the
// validators never throw.
struct Issue {
  std::string code;        // e.g. "missing-medium", "dangling-reference"
  std::string element_id;  // offending element
  std::string message;

  friend bool operator==(const Issue&, const Issue&) = default;
};

using Issues = std::vector<Issue>;

std::string describe(const Issue& issue);

}  // namespace flowkit
