#pragma once

#include <functional>
#include <string>
#include <vector>

namespace tqsl::health {

using Handler = std::function<void(const std::string&)>;

// Replaces the process-wide warning handler (default: write to stderr) and
// returns the previous one. Not thread-safe; install before spawning workers.
Handler set_handler(Handler h);

// Reports a numerical-health warning (e.g. Bures-angle asymmetry beyond 1e-9).
void warn(const std::string& message);

// Collects warnings for the duration of its scope, restoring the previous
// handler on destruction. Used by CLI paths that escalate warnings to errors.
class Collector {
 public:
  Collector();
  ~Collector();
  Collector(const Collector&) = delete;
  Collector& operator=(const Collector&) = delete;

  const std::vector<std::string>& messages() const { return messages_; }

 private:
  std::vector<std::string> messages_;
  Handler prev_;
};

}  // namespace tqsl::health
