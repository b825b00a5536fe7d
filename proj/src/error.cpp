#include "nnsc/error.hpp"

namespace nnsc {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kDimension: return "dimension";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kResolution: return "resolution";
    case ErrorKind::kSolver: return "solver";
    case ErrorKind::kConstruction: return "construction";
    case ErrorKind::kExtraction: return "extraction";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig: return 1;
    case ErrorKind::kDomain:
    case ErrorKind::kDimension:
    case ErrorKind::kPrecondition: return 2;
    case ErrorKind::kResolution:
    case ErrorKind::kSolver:
    case ErrorKind::kConstruction: return 3;
    case ErrorKind::kExtraction: return 4;
  }
  return 1;
}

}  // namespace nnsc
