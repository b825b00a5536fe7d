#ifndef NNSC_ERROR_HPP_
#define NNSC_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace nnsc {

enum class ErrorKind {
  kConfig,        // unparseable or inconsistent problem description
  kDomain,        // argument outside the domain of a function
  kDimension,     // operation not defined in this ambient dimension
  kPrecondition,  // documented precondition violated
  kResolution,    // sampling too coarse or finite differences unstable
  kSolver,        // integrator or BVP failure, blowup
  kConstruction,  // explicit construction produced an invalid metric
  kExtraction,    // asymptotic limit could not be extracted
};

const char* to_string(ErrorKind kind);

// Stable process exit code for the command line frontend.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace nnsc

#endif  // NNSC_ERROR_HPP_
