#pragma once

#include <stdexcept>
#include <string>

namespace rightjump {

// Domain error: invalid inputs, violated preconditions, failed internal
// validation. CLI maps this to exit code 1 (usage errors are exit code 2).
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rightjump
