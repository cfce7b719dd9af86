#pragma once

#include <stdexcept>
#include <string>

namespace twbd {

// Malformed input: cycle notation, group files, design files.
class ParseError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration ran past its configured limit (group closure, orbit
// enumeration, solution count).
class CapExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace twbd
