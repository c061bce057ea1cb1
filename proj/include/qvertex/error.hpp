#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qvertex {

enum class ErrorKind {
  SingularMatrix,
  RankDeficient,
  NotSelfAdjoint,
  ShapeMismatch,
  NotUnitary,
  InvalidRankPair,
  SingularSBlock,
  SingularShift,
  InvalidShape,
  InvalidArgument,
  InconsistentForm,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::InvalidRankPair: return "InvalidRankPair";
    case ErrorKind::SingularSBlock: return "SingularSBlock";
    case ErrorKind::SingularShift: return "SingularShift";
    case ErrorKind::InvalidShape: return "InvalidShape";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InconsistentForm: return "InconsistentForm";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above, so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qvertex
