#pragma once

#include <stdexcept>
#include <string>

namespace lfe {

enum class ErrorKind {
  InvalidInput,
  Degenerate,
  PartitionFailure,
  NumericFailure,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Process exit status for an error kind (0 is reserved for success).
inline int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::PartitionFailure: return 2;
    case ErrorKind::Io: return 4;
    case ErrorKind::InvalidInput: return 1;
    default: return 3;
  }
}

}  // namespace lfe
