#ifndef TPACK_ERRORS_HPP
#define TPACK_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

namespace tpack {

/// Failure categories, mapped to CLI exit codes by the front end:
/// Domain/Internal -> 1, Precondition -> 2, Unstabilized -> 3.
enum class ErrorKind {
  Domain,        // malformed input, unknown name, size-guard refusal
  Precondition,  // a stated precondition or premise fails; witness attached
  Unstabilized,  // no certificate within the configured radius budget
  Internal,      // invariant the library promised to maintain was violated
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  Error(ErrorKind kind, std::string message, nlohmann::json witness)
      : std::runtime_error(std::move(message)),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const { return kind_; }
  const nlohmann::json& witness() const { return witness_; }

 private:
  ErrorKind kind_;
  nlohmann::json witness_;
};

}  // namespace tpack

#endif
