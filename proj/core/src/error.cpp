#include "fink/error.hpp"

namespace fink {

std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::mismatched_level: return "MismatchedLevel";
    case ErrorCode::overlapping_support: return "OverlappingSupport";
    case ErrorCode::not_a_block: return "NotABlock";
    case ErrorCode::index_out_of_range: return "IndexOutOfRange";
    case ErrorCode::invalid_sequence: return "InvalidSequence";
    case ErrorCode::enumeration_cap_exceeded: return "EnumerationCapExceeded";
    case ErrorCode::past_end: return "PastEnd";
    case ErrorCode::witness_mismatch: return "WitnessMismatch";
    case ErrorCode::not_intertwined: return "NotIntertwined";
    case ErrorCode::claim_violation: return "ClaimViolation";
    case ErrorCode::minimality_violation: return "MinimalityViolation";
    case ErrorCode::horizon_exhausted: return "HorizonExhausted";
    case ErrorCode::not_almost_disjoint: return "NotAlmostDisjoint";
  }
  return "Unknown";
}

NotAlmostDisjoint::NotAlmostDisjoint(std::size_t first, std::size_t second)
    : Error(ErrorCode::not_almost_disjoint,
            "members " + std::to_string(first) + " and " +
                std::to_string(second) +
                " have a nonempty tail intersection at the horizon"),
      first_(first),
      second_(second) {}

}  // namespace fink
