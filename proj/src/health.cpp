#include <tqsl/health.hpp>

#include <iostream>

namespace tqsl::health {

namespace {

Handler& handler_ref() {
  static Handler h = [](const std::string& m) { std::cerr << "[health] " << m << "\n"; };
  return h;
}

}  // namespace

Handler set_handler(Handler h) {
  Handler prev = handler_ref();
  handler_ref() = std::move(h);
  return prev;
}

void warn(const std::string& message) { handler_ref()(message); }

Collector::Collector() {
  prev_ = set_handler([this](const std::string& m) { messages_.push_back(m); });
}

Collector::~Collector() { set_handler(prev_); }

}  // namespace tqsl::health
