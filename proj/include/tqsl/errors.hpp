#pragma once

#include <stdexcept>

namespace tqsl {

// Malformed run configuration (unknown key, bad model id, invalid value).
// Mapped to CLI exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested computation exceeds the configured dimension cap.
// Mapped to CLI exit code 3.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tqsl
