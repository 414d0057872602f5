// Error taxonomy shared by the whole library.  The C layer and the CLI map
// ErrorKind onto stable integer codes, so keep the enumerator order fixed.
#pragma once

#include <stdexcept>
#include <string>

namespace blowup {

enum class ErrorKind {
  invalid_argument = 1,  // bad parameter to a library call
  config = 2,            // malformed or inconsistent run configuration
  cfl = 3,               // time step violates the stability bound
  solver_fault = 4,      // overflow / non-finite values during a march
  verify_fail = 5,       // a verification suite reported failures
  unsupported = 6,       // operation not defined for this domain kind
  io = 7,                // file system trouble
  internal = 8,          // broken invariant inside the library
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

}  // namespace blowup
