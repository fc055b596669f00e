#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tmstc {

// Broad failure classes; the CLI maps each to its own exit status.
enum class ErrorCategory {
  kParse,
  kInvalidArgument,
  kDisconnected,
  kPlanning,
  kInternal,
  kIo,
};

inline constexpr std::string_view to_string(ErrorCategory c) noexcept {
  switch (c) {
    case ErrorCategory::kParse: return "parse error";
    case ErrorCategory::kInvalidArgument: return "invalid argument";
    case ErrorCategory::kDisconnected: return "disconnected";
    case ErrorCategory::kPlanning: return "planning error";
    case ErrorCategory::kInternal: return "internal error";
    case ErrorCategory::kIo: return "io error";
  }
  return "error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& detail)
      : std::runtime_error(detail), category_(category) {}

  [[nodiscard]] ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

[[noreturn]] inline void fail(ErrorCategory category, const std::string& detail) {
  throw Error(category, detail);
}

}  // namespace tmstc
