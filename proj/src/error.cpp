#include "greedy_lab/error.hpp"

namespace greedy_lab {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidGraph: return "invalid-graph";
    case ErrorKind::kParse: return "parse-error";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kEmptyGraph: return "empty-graph";
    case ErrorKind::kMissingEdge: return "missing-edge";
    case ErrorKind::kInfeasible: return "infeasible";
    case ErrorKind::kTooLarge: return "too-large";
    case ErrorKind::kExplosion: return "explosion";
    case ErrorKind::kInvalidBipartition: return "invalid-bipartition";
    case ErrorKind::kInvalidMatching: return "invalid-matching";
    case ErrorKind::kNotMaximum: return "opt-not-maximum";
    case ErrorKind::kNotMaximal: return "matching-not-maximal";
    case ErrorKind::kNonCanonical: return "non-canonical-input";
    case ErrorKind::kTraceMismatch: return "trace-graph-mismatch";
    case ErrorKind::kNonGreedyStrategy: return "non-greedy-strategy";
    case ErrorKind::kIllegalDecision: return "illegal-decision";
    case ErrorKind::kInconsistentTranscript: return "inconsistent-transcript";
    case ErrorKind::kIo: return "io-error";
  }
  return "unknown";
}

}  // namespace greedy_lab
