#ifndef LL_ERRORS_HPP
#define LL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ll {

// Exit-code contract of the CLI. Library code throws one of the typed
// errors below; the CLI maps them to these codes and emits an error JSON
// on stderr.
enum class ExitCode : int {
  Ok = 0,
  Parse = 2,
  Param = 3,
  Budget = 4,
  Internal = 5,
};

class Error : public std::runtime_error {
public:
  Error(ExitCode code, std::string kind, const std::string& msg)
      : std::runtime_error(msg), code_(code), kind_(std::move(kind)) {}
  ExitCode code() const { return code_; }
  const std::string& kind() const { return kind_; }

private:
  ExitCode code_;
  std::string kind_;
};

// Malformed input files or value strings.
class ParseError : public Error {
public:
  explicit ParseError(const std::string& msg) : Error(ExitCode::Parse, "parse", msg) {}
};

// Structurally valid input with out-of-contract values (window too small,
// shift past the window, bad block ordering, ...).
class ParamError : public Error {
public:
  explicit ParamError(const std::string& msg) : Error(ExitCode::Param, "param", msg) {}
};

// A configured cap was hit: search budget, preimage resolution,
// enumeration size.
class BudgetError : public Error {
public:
  explicit BudgetError(const std::string& msg) : Error(ExitCode::Budget, "budget", msg) {}
};

// A should-never-happen invariant failed.
class InternalError : public Error {
public:
  explicit InternalError(const std::string& msg) : Error(ExitCode::Internal, "internal", msg) {}
};

}  // namespace ll

#endif
