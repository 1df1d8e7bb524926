#pragma once

#include <stdexcept>
#include <string>

namespace roofkit {

// Raised for malformed or invariant-violating user input (files, configs,
// flag values). Messages carry the offending key path, column, or value.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace roofkit
