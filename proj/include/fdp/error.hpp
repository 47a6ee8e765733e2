#ifndef FDP_ERROR_HPP_
#define FDP_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace fdp {

enum class ErrorKind {
  kParse,
  kLabel,
  kUniqueness,
  kIndicator,
  kSampleSize,
  kCollinearity,
  kDomain,
  kImputation,
  kParameter,
  kStratification,
  kShape,
  kArgument,
  kClass,
  kConvergence,
  kDivergence,
  kJoin,
  kConfig,
  kIo,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kLabel: return "label";
    case ErrorKind::kUniqueness: return "uniqueness";
    case ErrorKind::kIndicator: return "indicator";
    case ErrorKind::kSampleSize: return "sample-size";
    case ErrorKind::kCollinearity: return "collinearity";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kImputation: return "imputation";
    case ErrorKind::kParameter: return "parameter";
    case ErrorKind::kStratification: return "stratification";
    case ErrorKind::kShape: return "shape";
    case ErrorKind::kArgument: return "argument";
    case ErrorKind::kClass: return "class";
    case ErrorKind::kConvergence: return "convergence";
    case ErrorKind::kDivergence: return "divergence";
    case ErrorKind::kJoin: return "join";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

/// Every failure raised by the library carries a kind so callers (and the
/// CLI's exit-status mapping) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 protected:
  struct Verbatim {};
  Error(ErrorKind kind, const std::string& message, Verbatim)
      : std::runtime_error(message), kind_(kind) {}

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace fdp

#endif  // FDP_ERROR_HPP_
