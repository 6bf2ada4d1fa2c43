#pragma once

#include <stdexcept>
#include <string>

namespace dsw {

/// Failure categories. Each maps onto one CLI exit code.
enum class ErrorKind {
  dimension_mismatch,
  invalid_argument,
  load,            // malformed or inconsistent input data
  refusal,         // mathematically meaningless request (e.g. non-integral c(X))
  not_checkable,   // a comparison beyond what truncation can certify
  inconsistency,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

/// 0 success, 2 load/validation, 3 refusal, 4 inconsistency.
int exit_code(ErrorKind kind) noexcept;

const char* to_string(ErrorKind kind) noexcept;

[[noreturn]] void throw_dimension_mismatch(const char* where, std::size_t expected,
                                           std::size_t actual);

} // namespace dsw
