#pragma once

#include <stdexcept>
#include <string>

namespace scoregraph {

enum class ErrorKind {
  MalformedFile,
  UnsupportedFeature,
  EmptyInput,
  TooFewEvents,
  TooFewNodes,
  NotConverged,
  DirectedUnsupported,
  NoEdges,
  AllZero,
  PartitionMismatch,
  NodeNotFound,
  NoMeasures,
  EmptySeries,
  MissingColumn,
  InvalidArgument,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedFile:       return "MalformedFile";
    case ErrorKind::UnsupportedFeature:  return "UnsupportedFeature";
    case ErrorKind::EmptyInput:          return "EmptyInput";
    case ErrorKind::TooFewEvents:        return "TooFewEvents";
    case ErrorKind::TooFewNodes:         return "TooFewNodes";
    case ErrorKind::NotConverged:        return "NotConverged";
    case ErrorKind::DirectedUnsupported: return "DirectedUnsupported";
    case ErrorKind::NoEdges:             return "NoEdges";
    case ErrorKind::AllZero:             return "AllZero";
    case ErrorKind::PartitionMismatch:   return "PartitionMismatch";
    case ErrorKind::NodeNotFound:        return "NodeNotFound";
    case ErrorKind::NoMeasures:          return "NoMeasures";
    case ErrorKind::EmptySeries:         return "EmptySeries";
    case ErrorKind::MissingColumn:       return "MissingColumn";
    case ErrorKind::InvalidArgument:     return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (and tests) can branch on the category without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Non-fatal diagnostics collected while parsing or sweeping windows.
struct Diagnostic {
  std::string code;
  std::string message;
};

}  // namespace scoregraph
