#pragma once

#include <stdexcept>
#include <string>

namespace coherence {

/// Base exception for every failure reported by the library. Messages are
/// short and stable enough to grep for ("graph not connected", ...).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace coherence
