#include "dsw/error.hpp"

namespace dsw {

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::refusal:
    return 3;
  case ErrorKind::inconsistency:
    return 4;
  case ErrorKind::dimension_mismatch:
  case ErrorKind::invalid_argument:
  case ErrorKind::load:
  case ErrorKind::not_checkable:
    return 2;
  }
  return 2;
}

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::dimension_mismatch:
    return "dimension mismatch";
  case ErrorKind::invalid_argument:
    return "invalid argument";
  case ErrorKind::load:
    return "load error";
  case ErrorKind::refusal:
    return "refused";
  case ErrorKind::not_checkable:
    return "not checkable";
  case ErrorKind::inconsistency:
    return "inconsistent";
  }
  return "error";
}

void throw_dimension_mismatch(const char* where, std::size_t expected, std::size_t actual) {
  throw Error(ErrorKind::dimension_mismatch, std::string(where) + ": expected length " +
                                                 std::to_string(expected) + ", got " +
                                                 std::to_string(actual));
}

} // namespace dsw
