#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace greedy_lab {

enum class ErrorKind {
  kInvalidGraph,
  kParse,
  kInvalidArgument,
  kEmptyGraph,
  kMissingEdge,
  kInfeasible,
  kTooLarge,
  kExplosion,
  kInvalidBipartition,
  kInvalidMatching,
  kNotMaximum,
  kNotMaximal,
  kNonCanonical,
  kTraceMismatch,
  kNonGreedyStrategy,
  kIllegalDecision,
  kInconsistentTranscript,
  kIo,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace greedy_lab
