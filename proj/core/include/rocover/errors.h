#ifndef ROCOVER_ERRORS_H_
#define ROCOVER_ERRORS_H_

#include <stdexcept>
#include <string>

namespace rocover {

// Process exit codes used by the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitInfeasible = 3,
  kExitPropertyFailure = 4,
  kExitSizeCap = 5,
};

// Base class of every error thrown by the library. Each subclass knows the
// exit code the CLI reports for it.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return kExitUsage; }
};

// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A document could not be parsed or failed semantic validation.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Some element cannot be served by any resource.
class InfeasibleInstance : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return kExitInfeasible; }
};

// A runtime check on an oracle or learner contract failed. This always
// indicates a bug in a problem adapter or in the framework.
class ContractViolation : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return kExitPropertyFailure; }
};

// An exact search was asked to run beyond its stated size cap.
class SizeCapExceeded : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return kExitSizeCap; }
};

}  // namespace rocover

#endif  // ROCOVER_ERRORS_H_
